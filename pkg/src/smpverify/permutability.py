"""Swap-similarity machinery for 2x2 matrix pairs.

A pair {A, B} is swap-permutable when a single similarity conjugation
exchanges the two matrices.  For irreducible pairs this reduces to a
trace/determinant test (the five traces tr A, tr A^2, tr B, tr B^2, tr AB
are a complete invariant of simultaneous similarity in dimension 2), and
permutability forces every odd-length product to share its spectrum with
a product that has a different number of A-factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .matrix2 import Mat2, Vec2, similarity
from .scalar import Scalar
from .words import Word, cyclic_normal_form, evaluate, factor_counts

__all__ = [
    "TauMap",
    "ReducibleSetError",
    "SwapSpectrumReport",
    "is_irreducible",
    "friedland_5tuple",
    "friedland_permutable",
    "verify_tau",
    "tau_word",
    "swap_spectrum_check",
]


class ReducibleSetError(ValueError):
    """The trace/determinant permutability criterion needs irreducibility."""


@dataclass(frozen=True)
class TauMap:
    """The conjugation x -> s^-1 @ x @ s for a fixed invertible s."""

    s: Mat2

    def apply(self, x: Mat2) -> Mat2:
        return similarity(self.s, x)


def _line_quadratic(m: Mat2):
    """Coefficients (p, q, r) of p*x^2 + q*x*y + r*y^2, whose roots are
    the directions (x, y) of lines invariant under m."""
    return (m.m21, m.m22 - m.m11, -m.m12)


def _is_zero_quadratic(coeffs) -> bool:
    return all(c == 0 for c in coeffs)


def _isqrt_exact(n: int):
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def _exact_is_irreducible(a: Mat2, b: Mat2) -> bool:
    from fractions import Fraction

    qa = _line_quadratic(a)
    qb = _line_quadratic(b)
    if _is_zero_quadratic(qa) or _is_zero_quadratic(qb):
        # One matrix is scalar, so every line it sees is invariant; a
        # common invariant line exists iff the other has a real one.
        other = qb if _is_zero_quadratic(qa) else qa
        if _is_zero_quadratic(other):
            return False
        disc = other[1] * other[1] - 4 * other[0] * other[2]
        return disc < 0
    disc_a = qa[1] * qa[1] - 4 * qa[0] * qa[2]
    if disc_a < 0:
        return True
    frac = disc_a.as_fraction()
    sq_num = _isqrt_exact(frac.numerator)
    sq_den = _isqrt_exact(frac.denominator)
    if sq_num is not None and sq_den is not None:
        # Rational eigendirections of a: enumerate and test invariance
        # under b by the exact cross-product condition q_b(direction) == 0.
        root = Scalar.exact(Fraction(sq_num, sq_den))
        p, q, r = qa
        directions = []
        if p == 0:
            directions.append(Vec2.exact(1, 0))  # y = 0 root of q*x*y + r*y^2
            if q != 0:
                directions.append(Vec2(-r / q, Scalar.one_like(r)))
        else:
            for s in (root, -root):
                directions.append(Vec2((-qa[1] + s) / (2 * p), Scalar.one_like(p)))
        for u in directions:
            if qb[0] * u.x1 * u.x1 + qb[1] * u.x1 * u.x2 + qb[2] * u.x2 * u.x2 == 0:
                return False
        return True
    # Real but irrational eigendirections: q_a is irreducible over the
    # rationals, so a shared root forces q_b to be a rational multiple of
    # q_a.  Cross-multiplication tests proportionality exactly.
    prop = (
        qa[0] * qb[1] == qb[0] * qa[1]
        and qa[0] * qb[2] == qb[0] * qa[2]
        and qa[1] * qb[2] == qb[1] * qa[2]
    )
    return not prop


def _float_real_eigendirections(m: Mat2, tol: float):
    """Directions of real eigenvectors; None if m is (near) scalar."""
    t, d = m.trace(), m.det()
    disc = float(t * t - 4 * d)
    scale = max(abs(float(e)) for e in m.entries()) or 1.0
    if (
        abs(float(m.m12)) <= tol * scale
        and abs(float(m.m21)) <= tol * scale
        and abs(float(m.m11 - m.m22)) <= tol * scale
    ):
        return None
    if disc < 0:
        return []
    tf = float(t)
    r = math.sqrt(max(disc, 0.0))
    dirs = []
    for lf in ((tf + r) / 2, (tf - r) / 2):
        lam = Scalar.flt(lf)
        rows = ((m.m11 - lam, m.m12), (m.m21, m.m22 - lam))
        row = max(rows, key=lambda rw: abs(float(rw[0])) + abs(float(rw[1])))
        dirs.append(Vec2(row[1], -row[0]))
    return dirs


def _float_direction_invariant(m: Mat2, u: Vec2, tol: float) -> bool:
    v = m @ u
    cross = float(v.x1 * u.x2 - v.x2 * u.x1)
    scale = math.hypot(float(v.x1), float(v.x2)) * math.hypot(
        float(u.x1), float(u.x2)
    )
    return abs(cross) <= tol * max(1.0, scale)


def is_irreducible(a: Mat2, b: Mat2, rel_tol: float | None = None) -> bool:
    """True iff a and b share no common real eigendirection.

    Exact matrices get an exact answer (including irrational
    eigendirections, via proportionality of the invariant-line
    quadratics); float matrices use a residual tolerance, default 1e-10.
    """
    if a.is_exact != b.is_exact:
        raise TypeError("matrix backends must match")
    if a.is_exact:
        return _exact_is_irreducible(a, b)
    tol = 1e-10 if rel_tol is None else rel_tol
    dirs_a = _float_real_eigendirections(a, tol)
    if dirs_a is None:
        dirs_b = _float_real_eigendirections(b, tol)
        return dirs_b is not None and len(dirs_b) == 0
    if not dirs_a:
        return True
    return not any(_float_direction_invariant(b, u, tol) for u in dirs_a)


def friedland_5tuple(a: Mat2, b: Mat2):
    """(tr a, tr a^2, tr b, tr b^2, tr ab) - the similarity invariants."""
    return (
        a.trace(),
        (a @ a).trace(),
        b.trace(),
        (b @ b).trace(),
        (a @ b).trace(),
    )


def friedland_permutable(a: Mat2, b: Mat2, rel_tol: float | None = None) -> bool:
    """Trace/determinant permutability test for an irreducible pair."""
    if a == b:
        raise ValueError("the pair must consist of two distinct matrices")
    if not is_irreducible(a, b, rel_tol):
        raise ReducibleSetError(
            "criterion inapplicable: the pair has a common invariant line"
        )
    if a.is_exact:
        return a.trace() == b.trace() and a.det() == b.det()
    return a.trace().isclose(b.trace(), rel_tol) and a.det().isclose(
        b.det(), rel_tol
    )


def verify_tau(a: Mat2, b: Mat2, tau: TauMap, rel_tol: float | None = None) -> bool:
    """Check the swap identities tau(a) == b and tau(b) == a."""
    ta, tb = tau.apply(a), tau.apply(b)
    if a.is_exact:
        return ta == b and tb == a
    tol = 1e-10 if rel_tol is None else rel_tol
    return ta.isclose(b, tol) and tb.isclose(a, tol)


def tau_word(w: Word) -> Word:
    """The word with every A and B exchanged, order preserved."""
    swap = {"A": "B", "B": "A"}
    return Word(tuple(swap[s] for s in w.symbols))


@dataclass(frozen=True)
class SwapSpectrumReport:
    """Spectrum and factor-count comparison of a product and its swap image."""

    word: Word
    image_word: Word
    trace_equal: bool
    det_equal: bool
    counts: tuple[int, int]
    image_counts: tuple[int, int]
    odd_length: bool
    counts_differ: bool | None
    normal_forms_distinct: bool | None

    @property
    def passed(self) -> bool:
        ok = self.trace_equal and self.det_equal
        if self.odd_length:
            ok = ok and bool(self.counts_differ) and bool(self.normal_forms_distinct)
        return ok

    def as_kv(self) -> list[tuple[str, str]]:
        items = [
            ("word", self.word.display),
            ("image_word", self.image_word.display),
            ("trace_equal", str(self.trace_equal).lower()),
            ("det_equal", str(self.det_equal).lower()),
            ("count_a", str(self.counts[0])),
            ("count_b", str(self.counts[1])),
            ("image_count_a", str(self.image_counts[0])),
            ("image_count_b", str(self.image_counts[1])),
            ("odd_length", str(self.odd_length).lower()),
        ]
        if self.odd_length:
            items.append(("counts_differ", str(self.counts_differ).lower()))
            items.append(
                ("normal_forms_distinct", str(self.normal_forms_distinct).lower())
            )
        items.append(("passed", str(self.passed).lower()))
        return items

    def as_text(self) -> str:
        lines = [f"product {self.word.display} vs swap image {self.image_word.display}"]
        lines.append(
            f"  isospectral: trace {'==' if self.trace_equal else '!='}, "
            f"det {'==' if self.det_equal else '!='}"
        )
        lines.append(
            f"  factor counts: {self.counts} vs {self.image_counts}"
            + ("" if self.odd_length else "  (even length: count clause skipped)")
        )
        if self.odd_length:
            lines.append(
                f"  counts differ: {self.counts_differ}; "
                f"cyclic classes distinct: {self.normal_forms_distinct}"
            )
        lines.append(f"  passed: {self.passed}")
        return "\n".join(lines)


def swap_spectrum_check(
    a: Mat2, b: Mat2, tau: TauMap, w: Word, rel_tol: float | None = None
) -> SwapSpectrumReport:
    """Compare a word's product with its swap image's product.

    Requires the swap identities to hold for tau; checks isospectrality
    (trace and determinant) and, for odd lengths, that the factor counts
    and the cyclic classes differ.
    """
    if not verify_tau(a, b, tau, rel_tol):
        raise ValueError("tau does not swap the pair")
    iw = tau_word(w)
    m = evaluate(w, a, b)
    tm = evaluate(iw, a, b)
    if a.is_exact:
        trace_equal = m.trace() == tm.trace()
        det_equal = m.det() == tm.det()
    else:
        trace_equal = m.trace().isclose(tm.trace(), rel_tol)
        det_equal = m.det().isclose(tm.det(), rel_tol)
    counts = factor_counts(w)
    image_counts = factor_counts(iw)
    odd = len(w) % 2 == 1
    counts_differ = counts != image_counts if odd else None
    distinct = (
        cyclic_normal_form(w).display != cyclic_normal_form(iw).display
        if odd
        else None
    )
    return SwapSpectrumReport(
        word=w,
        image_word=iw,
        trace_equal=trace_equal,
        det_equal=det_equal,
        counts=counts,
        image_counts=image_counts,
        odd_length=odd,
        counts_differ=counts_differ,
        normal_forms_distinct=distinct,
    )
