"""The twelve-vertex invariant polygon and its certificates.

Construction: starting from the fixed vectors v (of B~A~A~) and w (of
B~B~A~), scaled by mu > 0, six base vertices are generated by alternately
applying -A~ and -B~; the other six are their mirror images through the
origin.  If the resulting balanced polygon is convex and swallowed by
both A~ and B~, its Minkowski gauge is a norm in which both matrices are
contractions by the cube root of lam, which pins the generalized spectral
radius of the original pair to lam**(1/3) and certifies the length-3
products as spectrum maximizing.

Membership in a sector or triangle spanned by two vertices x, y reduces to
sign tests on the three ratios

    s = (z, Ty)/(x, Ty),  t = (z, Tx)/(y, Tx),  h = (y - x, Tz)/(y, Tx)

with T the quarter-turn rotation; h = s + t, and z lies in the triangle
x, y, 0 exactly when s, t >= 0 and h <= 1.  On the exact backend every one
of these quantities is a rational number, so the certificate carries no
rounding at all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .families import (
    DISTINGUISHED_PHI,
    MatrixSet,
    NormalizedSet,
    eigenvectors_from_products,
    example_alt,
    example_main_special,
    normalize,
)
from .matrix2 import Mat2, Vec2, dot, rot90
from .permutability import ReducibleSetError, TauMap, friedland_permutable, verify_tau
from .scalar import FloatKappa, KappaContext, Scalar
from .words import Word, factor_counts

__all__ = [
    "Polygon",
    "ImagePoints",
    "OrderReport",
    "InclusionReport",
    "CheckResult",
    "SmpClass",
    "Certificate",
    "ConformanceReport",
    "DegenerateSectorError",
    "sector_coords",
    "triangle_h",
    "build_polygon",
    "images",
    "mu_thresholds",
    "omega_thresholds",
    "admissible_mu_interval",
    "empirical_mu_thresholds",
    "kappa_max",
    "vertex_order_check",
    "convexity_check",
    "convexity_values",
    "polygon_gauge",
    "verify_inclusions",
    "certify_smp",
    "symbolic_conformance",
]


class DegenerateSectorError(ValueError):
    """The two sector generators lie on one line."""


def _as_kappa(kappa) -> KappaContext | FloatKappa:
    if isinstance(kappa, (KappaContext, FloatKappa)):
        return kappa
    if isinstance(kappa, Scalar):
        if kappa.is_exact:
            raise TypeError(
                "exact thresholds need a KappaContext (kappa = c**3); "
                "pass the context instead of a bare rational"
            )
        return FloatKappa(float(kappa))
    return FloatKappa(float(kappa))


def _check_denominator(x: Vec2, y: Vec2, denom: Scalar) -> None:
    if denom.is_exact:
        if denom == 0:
            raise DegenerateSectorError("sector generators are collinear")
        return
    scale = math.hypot(float(x.x1), float(x.x2)) * math.hypot(
        float(y.x1), float(y.x2)
    )
    if abs(float(denom)) <= 1e-14 * max(1.0, scale):
        raise DegenerateSectorError("sector generators are collinear")


def sector_coords(x: Vec2, y: Vec2, z: Vec2) -> tuple[Scalar, Scalar]:
    """Coordinates of z in the basis (x, y); both >= 0 iff z is in the
    sector spanned by x and y."""
    x_ty = dot(x, rot90(y))
    _check_denominator(x, y, x_ty)
    s = dot(z, rot90(y)) / x_ty
    t = dot(z, rot90(x)) / (-x_ty)
    return s, t


def triangle_h(x: Vec2, y: Vec2, z: Vec2) -> Scalar:
    """The level of z relative to the chord from x to y; equals s + t.
    Given z in the sector of (x, y), z lies in the triangle x, y, 0 iff
    h <= 1."""
    y_tx = dot(y, rot90(x))
    _check_denominator(x, y, y_tx)
    return dot(y - x, rot90(z)) / y_tx


@dataclass(frozen=True)
class Polygon:
    """Balanced twelve-gon: vertices in clockwise index order, plus the
    parameters that generated it."""

    vertices: tuple[Vec2, ...]
    mu: Scalar
    kappa: Scalar
    ctx: KappaContext | None
    family: str

    def __post_init__(self):
        if len(self.vertices) != 12:
            raise ValueError("the polygon has exactly 12 vertices")

    @property
    def is_exact(self) -> bool:
        return self.vertices[0].is_exact

    def v(self, i: int) -> Vec2:
        """1-indexed vertex access with wraparound (v13 == v1)."""
        return self.vertices[(i - 1) % 12]

    def gauge(self, x: Vec2, rel_tol: float | None = None) -> Scalar:
        return polygon_gauge(self, x, rel_tol)

    def matrix_norm(self, m: Mat2, rel_tol: float | None = None) -> Scalar:
        """Operator norm induced by the polygon gauge: the maximum of the
        gauge over the images of the vertices."""
        best = None
        for vert in self.vertices:
            g = polygon_gauge(self, m @ vert, rel_tol)
            if best is None or g > best:
                best = g
        return best


def _coerce_mu(mu, exact: bool) -> Scalar:
    if isinstance(mu, Scalar):
        if mu.is_exact != exact:
            raise TypeError(
                f"mu backend ({mu.backend}) does not match the set backend"
            )
        return mu
    if isinstance(mu, (int, Fraction)):
        return Scalar.exact(mu) if exact else Scalar.flt(float(mu))
    if isinstance(mu, float):
        if exact:
            raise TypeError("an exact certificate needs a rational mu, got a float")
        return Scalar.flt(mu)
    raise TypeError(f"cannot interpret mu={mu!r}")


def build_polygon(
    norm: NormalizedSet, v: Vec2, w: Vec2, mu, rel_tol: float | None = None
) -> Polygon:
    """Vertices v1..v12 from the fixed vectors and the scale mu > 0.

    Validates the fixed-vector identities (v and w must be fixed by
    B~A~A~ and B~B~A~) and cross-checks the recursive construction
    against the direct expressions -mu*A~v, mu*A~A~v and B~A~w.
    """
    at, bt = norm.at, norm.bt
    mu = _coerce_mu(mu, at.is_exact)
    if not mu > 0:
        raise ValueError(f"need mu > 0, got {mu}")
    for vec, m3, name in ((v, bt @ at @ at, "v"), (w, bt @ bt @ at, "w")):
        image = m3 @ vec
        if at.is_exact:
            ok = image == vec
        else:
            ok = image.isclose(vec, rel_tol)
        if not ok:
            raise ValueError(f"{name} is not fixed by its triple product")
    v1 = v.scale(mu)
    v2 = w
    v3 = -(at @ v1)
    v4 = -(at @ v2)
    v5 = -(at @ v3)
    v6 = -(bt @ v4)
    # Cross-check the unrolled forms of the same vertices.
    direct = (
        (v3, (at @ v).scale(-mu), "v3"),
        (v5, (at @ (at @ v)).scale(mu), "v5"),
        (v6, bt @ (at @ w), "v6"),
    )
    for built, unrolled, name in direct:
        ok = built == unrolled if at.is_exact else built.isclose(unrolled, rel_tol)
        if not ok:
            raise RuntimeError(f"vertex cross-check failed for {name}")
    base = (v1, v2, v3, v4, v5, v6)
    verts = base + tuple(-x for x in base)
    src = norm.source
    return Polygon(
        vertices=verts, mu=mu, kappa=src.kappa, ctx=src.ctx, family=src.family
    )


@dataclass(frozen=True)
class ImagePoints:
    """Images a_i = A~ v_i and b_i = B~ v_i of all twelve vertices."""

    a: tuple[Vec2, ...]
    b: tuple[Vec2, ...]


def images(poly: Polygon, norm: NormalizedSet) -> ImagePoints:
    at, bt = norm.at, norm.bt
    return ImagePoints(
        a=tuple(at @ v for v in poly.vertices),
        b=tuple(bt @ v for v in poly.vertices),
    )


# -- threshold algebra ----------------------------------------------------


def mu_thresholds(kappa) -> tuple[Scalar, Scalar, Scalar, Scalar]:
    """The four closed-form scale thresholds of the zero-corner family.

    mu0 = 1, mu1 = kappa**(2/3), mu2 = (kappa^2+1)^2/(kappa^4+kappa^2+1),
    mu3 = kappa**(2/3) * mu2.  The polygon is admissible iff
    mu1 <= mu <= mu2.
    """
    pw = _as_kappa(kappa).power
    one = pw(0)
    k2 = pw(6)
    k4 = pw(12)
    mu2 = (k2 + 1) * (k2 + 1) / (k4 + k2 + 1)
    return (one, pw(2), mu2, pw(2) * mu2)


def omega_thresholds(kappa) -> tuple[Scalar, ...]:
    """The six convexity thresholds of the zero-corner family."""
    pw = _as_kappa(kappa).power
    k2 = pw(6)
    k4 = pw(12)
    w1 = (k2 + 1) / (pw(4) + 1)
    w2 = (k2 + 1) * (k2 + pw(2)) / (k4 + k2 + 1)
    w3 = pw(2) * (k2 + 1) / (pw(8) + 1)
    w6 = (k2 + 1) * (pw(8) + 1) / (k4 + k2 + 1)
    return (w1, w2, w3, w2, w1, w6)


def admissible_mu_interval(kappa):
    """[mu1, mu2] when nonempty (endpoints included), else None."""
    _, mu1, mu2, _ = mu_thresholds(kappa)
    return (mu1, mu2) if mu1 <= mu2 else None


def _threshold_h_values(norm: NormalizedSet, v: Vec2, w: Vec2, mu) -> tuple:
    """The four inclusion levels h(a4), h(a6), h(b3), h(b7) at a given mu."""
    poly = build_polygon(norm, v, w, mu)
    at, bt = norm.at, norm.bt
    v2, v3 = poly.v(2), poly.v(3)
    v11, v12 = poly.v(11), poly.v(12)
    a4 = at @ poly.v(4)
    a6 = at @ poly.v(6)
    b3 = bt @ poly.v(3)
    b7 = bt @ poly.v(7)
    return (
        triangle_h(v11, v12, a4),
        triangle_h(v2, v3, a6),
        triangle_h(v11, v12, b3),
        triangle_h(v2, v3, b7),
    )


def empirical_mu_thresholds(
    mset: MatrixSet, rel_tol: float | None = None
) -> tuple[Scalar, Scalar, Scalar, Scalar]:
    """Scale thresholds extracted from the construction itself.

    Works for any admissible pair (either backend): the two lower levels
    h(a4), h(a6) are affine in 1/mu and the two upper levels h(b3), h(b7)
    are affine in mu, so two samples determine each threshold; a third
    sample validates the model.  On the exact backend the result is exact
    and must coincide with the closed forms for the zero-corner family.
    """
    norm = normalize(mset, rel_tol)
    v, w = eigenvectors_from_products(norm, rel_tol)
    exact = norm.at.is_exact
    samples = {}
    for m in (1, 2, 3):
        mu = Scalar.exact(m) if exact else Scalar.flt(m)
        samples[m] = _threshold_h_values(norm, v, w, mu)

    def check_model(expected: Scalar, actual: Scalar) -> None:
        ok = expected == actual if exact else expected.isclose(actual, rel_tol)
        if not ok:
            raise RuntimeError("inclusion level does not follow the affine model")

    out = []
    for idx in (0, 1):  # h = p + q/mu -> threshold mu = q/(1 - p)
        h1, h2, h3 = samples[1][idx], samples[2][idx], samples[3][idx]
        q = (h1 - h2) * 2
        p = h1 - q
        check_model(p + q / 3, h3)
        out.append(q / (1 - p))
    for idx in (2, 3):  # h = p + q*mu -> threshold mu = (1 - p)/q
        h1, h2, h3 = samples[1][idx], samples[2][idx], samples[3][idx]
        q = h2 - h1
        p = h1 - q
        check_model(p + q * 3, h3)
        out.append((1 - p) / q)
    return tuple(out)


def _main_threshold_gap(kappa: float) -> float:
    _, mu1, mu2, _ = mu_thresholds(FloatKappa(kappa))
    return float(mu1) - float(mu2)


def _alt_threshold_gap(kappa: float) -> float:
    mset = example_alt(kappa, DISTINGUISHED_PHI)
    # Near kappa = 1 the unit eigenvalue almost collides with 1/lam^2, so
    # the fixed-vector residual is ill-conditioned; 1e-9 is still far below
    # the bisection resolution.
    _, mu1, mu2, _ = empirical_mu_thresholds(mset, rel_tol=1e-9)
    return float(mu1) - float(mu2)


def kappa_max(family: str = "main", tol: float = 1e-10) -> Scalar:
    """Largest kappa with a nonempty admissible scale interval, found by
    bisection of mu1(kappa) - mu2(kappa) on (1, 2)."""
    if family == "main":
        gap = _main_threshold_gap
    elif family == "alt":
        gap = _alt_threshold_gap
    else:
        raise ValueError(f"unknown family {family!r}")
    lo, hi = 1.01, 2.0
    if not (gap(lo) < 0 < gap(hi)):
        raise ValueError("bracketing failure: no sign change on (1, 2)")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if gap(mid) <= 0:
            lo = mid
        else:
            hi = mid
    # lo is the admissible side (mu1 <= mu2 there), within tol of the root.
    return Scalar.flt(lo)


# -- geometric checks ------------------------------------------------------


_ORDER_PAIRS = tuple((i, j) for i in range(1, 6) for j in range(i + 1, 7))


def _order_products_closed(pw, mu: Scalar) -> dict:
    """Closed forms of (v_i, T v_j) for the zero-corner family."""
    k2 = pw(6)
    k4 = pw(12)
    poly_q = k4 + k2 + 1
    denom = k2 + 1
    mu2 = mu * mu
    return {
        (1, 2): pw(3) * mu / denom,
        (1, 3): pw(1) * poly_q * mu2 / (denom * denom),
        (1, 4): pw(1) * mu,
        (1, 5): poly_q * mu2 / (pw(1) * denom * denom),
        (1, 6): mu / (pw(1) * denom),
        (2, 3): pw(7) * mu / denom,
        (2, 4): pw(1),
        (2, 5): mu / pw(1),
        (2, 6): 1 / pw(1),
        (3, 4): mu / (pw(1) * denom),
        (3, 5): poly_q * mu2 / (pw(3) * denom * denom),
        (3, 6): (k4 + 1) * mu / (pw(3) * denom),
        (4, 5): pw(3) * mu / denom,
        (4, 6): pw(3),
        (5, 6): pw(7) * mu / denom,
    }


@dataclass(frozen=True)
class OrderReport:
    """Positivity (and, for the zero-corner family, closed-form agreement)
    of the fifteen pairwise products (v_i, T v_j), 1 <= i < j <= 6."""

    products: tuple[tuple[int, int, Scalar], ...]
    all_positive: bool
    closed_form_checked: bool
    closed_form_match: bool

    @property
    def passed(self) -> bool:
        return self.all_positive and (
            self.closed_form_match or not self.closed_form_checked
        )

    def as_kv(self) -> list[tuple[str, str]]:
        items = [
            (f"order.v{i}_Tv{j}", str(val)) for i, j, val in self.products
        ]
        items.append(("order.all_positive", str(self.all_positive).lower()))
        if self.closed_form_checked:
            items.append(
                ("order.closed_form_match", str(self.closed_form_match).lower())
            )
        return items


def vertex_order_check(poly: Polygon, rel_tol: float | None = None) -> OrderReport:
    """All fifteen products (v_i, T v_j), i < j <= 6, must be positive:
    the rays are then pairwise distinct and the clockwise traversal meets
    the vertices in index order, for any kappa > 1 and mu > 0."""
    products = []
    all_positive = True
    for i, j in _ORDER_PAIRS:
        val = dot(poly.v(i), rot90(poly.v(j)))
        products.append((i, j, val))
        if not val > 0:
            all_positive = False
    checked = poly.family == "main"
    match = True
    if checked:
        pw = (
            poly.ctx.power
            if poly.ctx is not None
            else FloatKappa(float(poly.kappa)).power
        )
        closed = _order_products_closed(pw, poly.mu)
        for i, j, val in products:
            expected = closed[(i, j)]
            ok = val == expected if poly.is_exact else val.isclose(expected, rel_tol)
            if not ok:
                match = False
    return OrderReport(
        products=tuple(products),
        all_positive=all_positive,
        closed_form_checked=checked,
        closed_form_match=match,
    )


def convexity_values(poly: Polygon) -> list[tuple[int, Scalar]]:
    """h(v_{i-1}, v_{i+1}, v_i) for i = 1..6; the polygon is convex iff
    every level is >= 1 (the mirrored half repeats by symmetry)."""
    return [
        (i, triangle_h(poly.v(i - 1), poly.v(i + 1), poly.v(i)))
        for i in range(1, 7)
    ]


def convexity_check(poly: Polygon, rel_tol: float | None = None) -> bool:
    return all(h.ge(1, rel_tol) for _, h in convexity_values(poly))


def polygon_gauge(poly: Polygon, x: Vec2, rel_tol: float | None = None) -> Scalar:
    """Minkowski gauge of the polygon: 0 at the origin, 1 on the boundary.

    Locates the sector (v_i, v_{i+1}) containing x in index order and
    returns the level h there.  Requires a convex polygon with verified
    vertex order to be a norm.
    """
    zero = Scalar.zero_like(x.x1)
    if x.x1 == zero and x.x2 == zero:
        return zero
    for i in range(1, 13):
        vi, vj = poly.v(i), poly.v(i + 1)
        s, t = sector_coords(vi, vj, x)
        if s.ge(0, rel_tol) and t.ge(0, rel_tol):
            return triangle_h(vi, vj, x)
    raise ValueError("no sector contains the point; polygon is not convex?")


_AUTOMATIC_IDENTITIES = (
    # (label, image list, image index 1..12, target vertex index, scaled by 1/lam?)
    ("a1 == v9", "a", 1, 9, False),
    ("a2 == v10", "a", 2, 10, False),
    ("a3 == v11", "a", 3, 11, False),
    ("a5 == v1/lam", "a", 5, 1, True),
    ("b2 == v10/lam", "b", 2, 10, True),
    ("b4 == v12", "b", 4, 12, False),
    ("b5 == v1", "b", 5, 1, False),
    ("b6 == v2", "b", 6, 2, False),
)

_NONOBVIOUS = (
    # (point label, image list, index, sector pair)
    ("a4", "a", 4, (11, 12)),
    ("a6", "a", 6, (2, 3)),
    ("b3", "b", 3, (11, 12)),
    ("b7", "b", 7, (2, 3)),
)


@dataclass(frozen=True)
class NonobviousEntry:
    label: str
    sector: tuple[int, int]
    s: Scalar
    t: Scalar
    h: Scalar
    in_sector: bool
    within: bool

    @property
    def passed(self) -> bool:
        return self.in_sector and self.within


@dataclass(frozen=True)
class InclusionReport:
    automatic: tuple[tuple[str, bool], ...]
    nonobvious: tuple[NonobviousEntry, ...]
    gauge_checked: bool
    gauge_values: tuple[tuple[str, Scalar, bool], ...]

    @property
    def passed(self) -> bool:
        return (
            all(ok for _, ok in self.automatic)
            and all(e.passed for e in self.nonobvious)
            and (not self.gauge_checked or all(ok for _, _, ok in self.gauge_values))
        )

    @property
    def failures(self) -> list[str]:
        out = [label for label, ok in self.automatic if not ok]
        out += [e.label for e in self.nonobvious if not e.passed]
        if self.gauge_checked:
            out += [label for label, _, ok in self.gauge_values if not ok]
        return list(dict.fromkeys(out))

    def as_kv(self) -> list[tuple[str, str]]:
        items = [
            (f"inclusion.identity.{label.split(' ')[0]}", str(ok).lower())
            for label, ok in self.automatic
        ]
        for e in self.nonobvious:
            base = f"inclusion.{e.label}"
            items.append((f"{base}.sector", f"v{e.sector[0]},v{e.sector[1]}"))
            items.append((f"{base}.s", str(e.s)))
            items.append((f"{base}.t", str(e.t)))
            items.append((f"{base}.h", str(e.h)))
            items.append((f"{base}.passed", str(e.passed).lower()))
        if self.gauge_checked:
            for label, val, ok in self.gauge_values:
                items.append((f"inclusion.gauge.{label}", str(val)))
                items.append((f"inclusion.gauge.{label}.passed", str(ok).lower()))
        return items


def verify_inclusions(
    poly: Polygon, norm: NormalizedSet, rel_tol: float | None = None
) -> InclusionReport:
    """All 24 image points must stay inside the polygon.

    Eight images land on vertices (or 1/lam-scaled vertices) by
    construction and are checked as identities; the four nonobvious points
    a4, a6, b3, b7 are tested in their designated sectors; and, when the
    polygon is convex, every image is additionally re-checked with the
    generic gauge.  A verdict disagreement between the sector test and the
    gauge test raises RuntimeError: it would mean the geometry primitives
    contradict each other.
    """
    ipts = images(poly, norm)
    lists = {"a": ipts.a, "b": ipts.b}
    lam = norm.lam
    exact = poly.is_exact

    automatic = []
    for label, kind, idx, target, scaled in _AUTOMATIC_IDENTITIES:
        point = lists[kind][idx - 1]
        expected = poly.v(target).scale(1 / lam) if scaled else poly.v(target)
        ok = point == expected if exact else point.isclose(expected, rel_tol)
        automatic.append((label, ok))

    nonobvious = []
    for label, kind, idx, (i, j) in _NONOBVIOUS:
        point = lists[kind][idx - 1]
        x, y = poly.v(i), poly.v(j)
        s, t = sector_coords(x, y, point)
        h = triangle_h(x, y, point)
        entry = NonobviousEntry(
            label=label,
            sector=(i, j),
            s=s,
            t=t,
            h=h,
            in_sector=s.ge(0, rel_tol) and t.ge(0, rel_tol),
            within=h.le(1, rel_tol),
        )
        nonobvious.append(entry)

    gauge_checked = convexity_check(poly, rel_tol)
    gauge_values = []
    if gauge_checked:
        for kind in ("a", "b"):
            for idx, point in enumerate(lists[kind], start=1):
                g = polygon_gauge(poly, point, rel_tol)
                gauge_values.append((f"{kind}{idx}", g, g.le(1, rel_tol)))
        by_label = {label: ok for label, _, ok in gauge_values}
        for e in nonobvious:
            if by_label[e.label] != e.passed:
                raise RuntimeError(
                    f"sector test and gauge test disagree on {e.label}"
                )

    return InclusionReport(
        automatic=tuple(automatic),
        nonobvious=tuple(nonobvious),
        gauge_checked=gauge_checked,
        gauge_values=tuple(gauge_values),
    )


# -- certificates ----------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    data: tuple[tuple[str, str], ...] = ()


@dataclass(frozen=True)
class SmpClass:
    representative: Word
    count_a: int
    count_b: int

    @property
    def members(self) -> tuple[str, ...]:
        d = self.representative.display
        return tuple(sorted({d[i:] + d[:i] for i in range(len(d))}))


_CHECK_SEQUENCE = (
    "parameters",
    "permutable",
    "normalize",
    "eigenvectors",
    "build",
    "vertex_order",
    "convexity",
    "inclusions",
    "extremal_norm",
)


@dataclass(frozen=True)
class Certificate:
    """Full verification record; rho_bar is present only when every check
    passed, and then equals the cube root of the top triple-product
    eigenvalue (kappa**(2/3) for the zero-corner family)."""

    family: str
    backend: str
    kappa: Scalar
    c: Fraction | None
    mu: Scalar
    checks: tuple[CheckResult, ...]
    rho_bar: Scalar | None
    smp_classes: tuple[SmpClass, ...]

    @property
    def passed(self) -> bool:
        names = {c.name: c.passed for c in self.checks}
        return all(names.get(n, False) for n in _CHECK_SEQUENCE)

    @property
    def failed_checks(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    @property
    def first_failure(self) -> CheckResult | None:
        for c in self.checks:
            if not c.passed:
                return c
        if not self.passed:
            run = {c.name for c in self.checks}
            missing = [n for n in _CHECK_SEQUENCE if n not in run]
            return CheckResult(missing[0], False, "not run")
        return None

    def as_kv(self) -> list[tuple[str, str]]:
        items = [
            ("family", self.family),
            ("backend", self.backend),
            ("kappa", str(self.kappa)),
        ]
        if self.c is not None:
            items.append(("c", str(self.c)))
        items.append(("mu", str(self.mu)))
        for c in self.checks:
            items.append((f"check.{c.name}", "pass" if c.passed else "fail"))
            if c.detail:
                items.append((f"check.{c.name}.detail", c.detail))
            items.extend(c.data)
        items.append(("certified", str(self.passed).lower()))
        if self.rho_bar is not None:
            items.append(("rho_bar", str(self.rho_bar)))
        for k, smp in enumerate(self.smp_classes, start=1):
            items.append((f"smp.{k}.class", smp.representative.display))
            items.append((f"smp.{k}.members", ";".join(smp.members)))
            items.append((f"smp.{k}.count_a", str(smp.count_a)))
            items.append((f"smp.{k}.count_b", str(smp.count_b)))
        return items

    def as_text(self) -> str:
        lines = [
            f"certificate: family={self.family} backend={self.backend} "
            f"kappa={self.kappa} mu={self.mu}"
        ]
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            detail = f"  ({c.detail})" if c.detail else ""
            lines.append(f"  [{status}] {c.name}{detail}")
        if self.passed:
            lines.append(f"  certified: rho_bar = {self.rho_bar}")
            for smp in self.smp_classes:
                lines.append(
                    f"  spectrum maximizing class {{{smp.representative.display}}}"
                    f" = {{{', '.join(smp.members)}}}"
                    f" with factor counts ({smp.count_a}, {smp.count_b})"
                )
        else:
            failing = self.first_failure
            lines.append(f"  NOT certified; first failing check: {failing.name}")
        return "\n".join(lines)


def certify_smp(mset: MatrixSet, mu, rel_tol: float | None = None) -> Certificate:
    """Run the whole pipeline and assemble the verification record.

    Never raises on a failed condition: every failure is recorded in the
    certificate and later steps that depend on it are simply not run.
    """
    checks: list[CheckResult] = []

    def add(name, passed, detail="", data=()):
        checks.append(CheckResult(name, bool(passed), detail, tuple(data)))
        return bool(passed)

    def finish(rho_bar=None, smp=()):
        return Certificate(
            family=mset.family,
            backend="exact" if mset.is_exact else "float",
            kappa=mset.kappa,
            c=mset.ctx.c if mset.ctx is not None else None,
            mu=mu_scalar,
            checks=tuple(checks),
            rho_bar=rho_bar,
            smp_classes=tuple(smp),
        )

    # parameters
    try:
        mu_scalar = _coerce_mu(mu, mset.is_exact)
        ok = mu_scalar > 0 and not mset.reducible
        detail = "" if ok else ("reducible pair" if mset.reducible else "mu <= 0")
        add("parameters", ok, detail)
        if not ok:
            return finish()
    except TypeError as exc:
        mu_scalar = Scalar.flt(float("nan")) if not mset.is_exact else Scalar.exact(0)
        add("parameters", False, str(exc))
        return finish()

    # permutability of the pair (gives the second maximizing class)
    if mset.tau_s is not None:
        ok = verify_tau(mset.a, mset.b, TauMap(mset.tau_s), rel_tol)
        add("permutable", ok, "" if ok else "tau does not swap the pair")
    else:
        try:
            ok = friedland_permutable(mset.a, mset.b, rel_tol)
            add("permutable", ok, "trace/det criterion (no tau supplied)")
        except (ReducibleSetError, ValueError) as exc:
            add("permutable", False, str(exc))
            ok = False
    if not ok:
        return finish()

    # normalization
    try:
        norm = normalize(mset, rel_tol)
        add("normalize", True, f"lam = {norm.lam}", (("lam", str(norm.lam)),))
    except (ValueError, TypeError) as exc:
        add("normalize", False, str(exc))
        return finish()

    # fixed vectors
    try:
        v, w = eigenvectors_from_products(norm, rel_tol)
        add(
            "eigenvectors",
            True,
            data=(
                ("v", f"({v.x1},{v.x2})"),
                ("w", f"({w.x1},{w.x2})"),
            ),
        )
    except ValueError as exc:
        add("eigenvectors", False, str(exc))
        return finish()

    # polygon
    try:
        poly = build_polygon(norm, v, w, mu_scalar, rel_tol)
        add("build", True)
    except (ValueError, RuntimeError) as exc:
        add("build", False, str(exc))
        return finish()

    order = vertex_order_check(poly, rel_tol)
    add("vertex_order", order.passed, "", order.as_kv())

    convex_vals = convexity_values(poly)
    convex_ok = all(h.ge(1, rel_tol) for _, h in convex_vals)
    add(
        "convexity",
        convex_ok,
        "" if convex_ok else "polygon is not convex",
        tuple((f"convexity.h.v{i}", str(h)) for i, h in convex_vals),
    )

    incl = verify_inclusions(poly, norm, rel_tol)
    add(
        "inclusions",
        incl.passed,
        "" if incl.passed else "escaping points: " + ",".join(incl.failures),
        incl.as_kv(),
    )

    if not (order.passed and convex_ok and incl.passed):
        return finish()

    norms = (poly.matrix_norm(norm.at, rel_tol), poly.matrix_norm(norm.bt, rel_tol))
    ok = all(n.isclose(1, rel_tol) and n.le(1, rel_tol) for n in norms)
    add(
        "extremal_norm",
        ok,
        "" if ok else "an induced norm differs from 1",
        (("norm.at", str(norms[0])), ("norm.bt", str(norms[1]))),
    )
    if not ok:
        return finish()

    smp = (
        SmpClass(Word.from_display("AAB"), *factor_counts(Word.from_display("AAB"))),
        SmpClass(Word.from_display("ABB"), *factor_counts(Word.from_display("ABB"))),
    )
    return finish(rho_bar=norm.scale, smp=smp)


# -- symbolic conformance --------------------------------------------------


@dataclass(frozen=True)
class ConformanceReport:
    """Exact agreement between constructed geometry and the closed-form
    tables of the zero-corner family."""

    entries: tuple[tuple[str, str, str, bool], ...]  # name, actual, expected, match
    notes: tuple[str, ...]

    @property
    def all_match(self) -> bool:
        return all(ok for _, _, _, ok in self.entries)

    def as_text(self) -> str:
        lines = []
        for name, actual, expected, ok in self.entries:
            mark = "ok " if ok else "BAD"
            lines.append(f"  [{mark}] {name}: {actual} vs {expected}")
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines)


def symbolic_conformance(ctx: KappaContext, mu) -> ConformanceReport:
    """Compare every tabulated quantity with its constructed value, exactly.

    Covers the fifteen ordering products, the eight sector coordinates and
    four inclusion levels of the nonobvious points, and the six convexity
    levels (equivalently the omega thresholds).  Also records which of the
    two candidate points, b7 or b3, carries the value 1/kappa^4 as its
    second coordinate in the (v2, v3) sector; the two are easy to mix up.
    """
    mset = example_main_special(ctx)
    norm = normalize(mset)
    v, w = eigenvectors_from_products(norm)
    mu = _coerce_mu(mu, True)
    poly = build_polygon(norm, v, w, mu)
    pw = ctx.power
    at, bt = norm.at, norm.bt

    entries = []

    def record(name, actual: Scalar, expected: Scalar):
        entries.append((name, str(actual), str(expected), actual == expected))

    closed = _order_products_closed(pw, mu)
    for (i, j), expected in sorted(closed.items()):
        actual = dot(poly.v(i), rot90(poly.v(j)))
        record(f"dot.v{i}.Tv{j}", actual, expected)

    k4 = pw(12)
    k6 = pw(18)
    k2_plus_1 = pw(6) + 1
    points = {
        "a4": at @ poly.v(4),
        "a6": at @ poly.v(6),
        "b3": bt @ poly.v(3),
        "b7": bt @ poly.v(7),
    }
    sectors = {"a4": (11, 12), "a6": (2, 3), "b3": (11, 12), "b7": (2, 3)}
    s_expected = {
        "a4": (k4 - 1) / (k4 * mu),
        "a6": 1 / k4,
        "b3": 1 / k4,
        "b7": (k6 - 1) * mu / (pw(14) * k2_plus_1),
    }
    t_expected = {
        "a4": 1 / k4,
        "a6": (k4 - 1) / (pw(10) * mu),
        "b3": (k6 - 1) * mu / (k4 * k2_plus_1),
        "b7": 1 / k4,
    }
    h_expected = {
        "a4": (k4 + mu - 1) / (k4 * mu),
        "a6": (pw(2) * (k4 - 1) + mu) / (k4 * mu),
        "b3": ((k6 - 1) * mu + pw(6) + 1) / (k4 * k2_plus_1),
        "b7": ((k6 - 1) * mu + pw(2) * k2_plus_1) / (pw(14) * k2_plus_1),
    }
    st_actual = {}
    for label in ("a4", "a6", "b3", "b7"):
        i, j = sectors[label]
        x, y, z = poly.v(i), poly.v(j), points[label]
        s, t = sector_coords(x, y, z)
        st_actual[label] = (s, t)
        record(f"s.v{i}_v{j}.{label}", s, s_expected[label])
        record(f"t.v{i}_v{j}.{label}", t, t_expected[label])
        record(f"h.v{i}_v{j}.{label}", triangle_h(x, y, z), h_expected[label])

    # b3 and b7 are easy to confuse in the (v2, v3) sector; record which
    # one actually carries the second coordinate 1/kappa^4.
    quarter_power = 1 / k4
    t_b7 = st_actual["b7"][1]
    _, t_b3_in_23 = sector_coords(poly.v(2), poly.v(3), points["b3"])
    notes = []
    if t_b7 == quarter_power and t_b3_in_23 != quarter_power:
        notes.append(
            "t = 1/kappa^4 in the (v2, v3) sector belongs to b7, not b3 "
            f"(t(v2,v3,b3) = {t_b3_in_23})"
        )
    elif t_b3_in_23 == quarter_power:
        notes.append("t(v2,v3,b3) also equals 1/kappa^4")

    # Convexity levels against their closed forms and the omega thresholds.
    omegas = omega_thresholds(ctx)
    conv = dict(convexity_values(poly))
    conv_closed = {
        1: (pw(4) + 1) * mu / k2_plus_1,
        2: k2_plus_1 * (pw(6) + pw(2)) / ((k4 + pw(6) + 1) * mu),
        3: (pw(8) + 1) * mu / (pw(2) * k2_plus_1),
        4: k2_plus_1 * (pw(6) + pw(2)) / ((k4 + pw(6) + 1) * mu),
        5: (pw(4) + 1) * mu / k2_plus_1,
        6: k2_plus_1 * (pw(8) + 1) / ((k4 + pw(6) + 1) * mu),
    }
    for i in range(1, 7):
        record(f"h.convexity.v{i}", conv[i], conv_closed[i])
    # Each level relates to its omega threshold by h*omega == mu (lower
    # rows) or h*mu == omega (upper rows); this pins the omega forms to
    # the constructed geometry.
    for i, omega in enumerate(omegas, start=1):
        if i in (1, 3, 5):
            record(f"omega.{i}.times_h", conv[i] * omega, mu)
        else:
            record(f"omega.{i}.times_mu", conv[i] * mu, omega)

    return ConformanceReport(entries=tuple(entries), notes=tuple(notes))
