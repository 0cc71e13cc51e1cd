"""Words over the two-letter alphabet {A, B} and finite growth bounds.

A word stores its symbols in application order (the first symbol acts
first), while the display form is the usual matrix juxtaposition, i.e. the
reverse: the word displayed "BAA" evaluates to B @ A @ A.  Cyclic
operations (normal form, necklace enumeration) work on the display string.

The finite bounds are the brute-force oracle of the workbench:

  rho_bar_n = max over length-n products of spectral_radius(product)**(1/n)
  rho_n     = max over length-n products of norm(product)**(1/n)

The first maximum runs over one representative per cyclic class (the
spectral radius is invariant under rotation of factors); the second runs
over all 2**n words because norms are not cyclic-invariant.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matrix2 import Mat2
from .scalar import Scalar
from . import matrix2

__all__ = [
    "Word",
    "BoundsRow",
    "BoxNorm",
    "DEFAULT_WORD_CAP",
    "evaluate",
    "cyclic_normal_form",
    "necklaces",
    "factor_counts",
    "rho_bar_n",
    "rho_n",
    "bounds_table",
    "format_bounds_text",
    "format_bounds_csv",
]

DEFAULT_WORD_CAP = 20

_ALPHABET = ("A", "B")


@dataclass(frozen=True)
class Word:
    """A nonempty word over {A, B} in application order."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        if len(self.symbols) == 0:
            raise ValueError("words must have length >= 1")
        if any(s not in _ALPHABET for s in self.symbols):
            raise ValueError(f"symbols must be 'A' or 'B', got {self.symbols!r}")

    @classmethod
    def from_display(cls, text: str) -> "Word":
        """Build from the juxtaposition form, e.g. 'BAA' for B @ A @ A."""
        return cls(tuple(reversed(text)))

    @property
    def display(self) -> str:
        return "".join(reversed(self.symbols))

    def __len__(self):
        return len(self.symbols)

    def __str__(self):
        return self.display


def evaluate(w: Word, a: Mat2, b: Mat2) -> Mat2:
    """The matrix product named by the word's display form."""
    if a.is_exact != b.is_exact:
        raise TypeError("matrix backends must match")
    factors = {"A": a, "B": b}
    product = factors[w.symbols[0]]
    for sym in w.symbols[1:]:
        product = factors[sym] @ product
    return product


def cyclic_normal_form(w: Word) -> Word:
    """Lexicographically least rotation of the display form (A < B)."""
    d = w.display
    best = min(d[i:] + d[:i] for i in range(len(d)))
    return Word.from_display(best)


def necklaces(n: int) -> list[Word]:
    """One representative per cyclic class of {A,B}**n, sorted.

    Uses the classic recursive pre-necklace generator, which emits exactly
    the lexicographically least rotations in increasing order.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    a = [0] * (n + 1)
    out: list[str] = []

    def gen(t: int, p: int) -> None:
        if t > n:
            if n % p == 0:
                out.append("".join(_ALPHABET[a[i]] for i in range(1, n + 1)))
            return
        a[t] = a[t - p]
        gen(t + 1, p)
        for j in range(a[t - p] + 1, 2):
            a[t] = j
            gen(t + 1, t)

    gen(1, 1)
    return [Word.from_display(s) for s in out]


def factor_counts(w: Word) -> tuple[int, int]:
    """Multiplicities (count of A, count of B)."""
    n_a = sum(1 for s in w.symbols if s == "A")
    return (n_a, len(w.symbols) - n_a)


@dataclass(frozen=True)
class BoundsRow:
    n: int
    rho_bar: float
    rho: float | None
    maximizers: tuple[Word, ...]


class BoxNorm:
    """Operator norm induced by the max-absolute-coordinate vector norm."""

    def matrix_norm(self, m: Mat2) -> Scalar:
        rows = (abs(m.m11) + abs(m.m12), abs(m.m21) + abs(m.m22))
        return rows[0] if rows[0] >= rows[1] else rows[1]


def _check_cap(n: int, cap: int) -> None:
    if n < 1:
        raise ValueError("need n >= 1")
    if n > cap:
        raise ValueError(f"word length {n} exceeds cap {cap}")


def rho_bar_n(
    a: Mat2,
    b: Mat2,
    n: int,
    tie_rel_tol: float = 1e-9,
    cap: int = DEFAULT_WORD_CAP,
) -> BoundsRow:
    """Brute-force lower bound row: max of rooted spectral radii.

    The maximizer list holds every necklace whose rooted spectral radius is
    within tie_rel_tol (relative) of the maximum.
    """
    _check_cap(n, cap)
    scored = []
    for w in necklaces(n):
        r = float(matrix2.spectral_radius(evaluate(w, a, b))) ** (1.0 / n)
        scored.append((r, w))
    best = max(r for r, _ in scored)
    cut = best - tie_rel_tol * max(1.0, abs(best))
    maximizers = tuple(w for r, w in scored if r >= cut)
    return BoundsRow(n=n, rho_bar=best, rho=None, maximizers=maximizers)


def rho_n(
    a: Mat2,
    b: Mat2,
    n: int,
    norm=None,
    cap: int = DEFAULT_WORD_CAP,
) -> Scalar:
    """Upper bound over all 2**n words: max of norm(product)**(1/n).

    `norm` is any object with matrix_norm(Mat2) -> Scalar; defaults to the
    box norm.  The maximum itself is taken in the input backend (exact if
    the matrices are exact) and only the final root is floating point.
    """
    _check_cap(n, cap)
    if norm is None:
        norm = BoxNorm()
    best: Scalar | None = None

    # Depth-first over suffix products; each step applies one more factor
    # on the left, so depth k holds the product of the last k factors.
    def walk(product: Mat2, depth: int) -> None:
        nonlocal best
        if depth == n:
            v = norm.matrix_norm(product)
            if best is None or v > best:
                best = v
            return
        walk(a @ product, depth + 1)
        walk(b @ product, depth + 1)

    walk(a, 1)
    walk(b, 1)
    return Scalar.flt(float(best) ** (1.0 / n))


def bounds_table(
    a: Mat2,
    b: Mat2,
    n_max: int,
    norm=None,
    tie_rel_tol: float = 1e-9,
    cap: int = DEFAULT_WORD_CAP,
) -> list[BoundsRow]:
    """Rows for n = 1..n_max with both bound columns filled."""
    rows = []
    for n in range(1, n_max + 1):
        lower = rho_bar_n(a, b, n, tie_rel_tol=tie_rel_tol, cap=cap)
        upper = rho_n(a, b, n, norm=norm, cap=cap)
        rows.append(
            BoundsRow(
                n=n, rho_bar=lower.rho_bar, rho=float(upper), maximizers=lower.maximizers
            )
        )
    return rows


def _fmt_maximizers(row: BoundsRow) -> str:
    return ";".join(w.display for w in row.maximizers)


def format_bounds_text(rows) -> str:
    lines = [f"{'n':>3}  {'rho_bar_n':<22}  {'rho_n':<22}  maximizers"]
    for row in rows:
        rho = "" if row.rho is None else repr(row.rho)
        lines.append(
            f"{row.n:>3}  {row.rho_bar!r:<22}  {rho:<22}  {_fmt_maximizers(row)}"
        )
    return "\n".join(lines)


def format_bounds_csv(rows) -> str:
    lines = ["n,rho_bar_n,rho_n,maximizers"]
    for row in rows:
        rho = "" if row.rho is None else repr(row.rho)
        lines.append(f"{row.n},{row.rho_bar!r},{rho},{_fmt_maximizers(row)}")
    return "\n".join(lines)
