"""2x2 linear algebra over dual-backend scalars.

Everything is closed form: trace, determinant, inverse, spectra.  The
spectral radius is the only operation that leaves the rationals (it takes
a square root), so it always returns a float-backend scalar; exact
certificate logic sticks to trace/determinant comparisons instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .scalar import Scalar, default_tolerance

__all__ = [
    "Vec2",
    "Mat2",
    "SingularMatrixError",
    "EigenvectorError",
    "mul",
    "dot",
    "rot90",
    "quarter_turn",
    "spectral_radius",
    "similarity",
    "eigenvector_unit_first",
]


class SingularMatrixError(ValueError):
    """Inverse or similarity requested for a singular matrix."""


class EigenvectorError(ValueError):
    """Eigenvector extraction failed (bad eigenvalue or degenerate direction)."""


def _check_same_backend(scalars) -> bool:
    kinds = {s.is_exact for s in scalars}
    if len(kinds) > 1:
        raise TypeError("all entries must share one backend")
    return kinds.pop()


@dataclass(frozen=True)
class Vec2:
    x1: Scalar
    x2: Scalar

    def __post_init__(self):
        _check_same_backend((self.x1, self.x2))

    @classmethod
    def exact(cls, x1, x2) -> "Vec2":
        return cls(Scalar.exact(x1), Scalar.exact(x2))

    @classmethod
    def flt(cls, x1, x2) -> "Vec2":
        return cls(Scalar.flt(x1), Scalar.flt(x2))

    @property
    def is_exact(self) -> bool:
        return self.x1.is_exact

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x1 + other.x1, self.x2 + other.x2)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x1 - other.x1, self.x2 - other.x2)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x1, -self.x2)

    def scale(self, s: Scalar) -> "Vec2":
        return Vec2(self.x1 * s, self.x2 * s)

    def isclose(self, other: "Vec2", rel_tol: float | None = None) -> bool:
        return self.x1.isclose(other.x1, rel_tol) and self.x2.isclose(
            other.x2, rel_tol
        )

    def as_strings(self) -> tuple[str, str]:
        return (str(self.x1), str(self.x2))


def dot(x: Vec2, y: Vec2) -> Scalar:
    return x.x1 * y.x1 + x.x2 * y.x2


def rot90(x: Vec2) -> Vec2:
    """Counterclockwise quarter turn: (x1, x2) -> (-x2, x1)."""
    return Vec2(-x.x2, x.x1)


@dataclass(frozen=True)
class Mat2:
    m11: Scalar
    m12: Scalar
    m21: Scalar
    m22: Scalar

    def __post_init__(self):
        _check_same_backend((self.m11, self.m12, self.m21, self.m22))

    @classmethod
    def exact(cls, m11, m12, m21, m22) -> "Mat2":
        return cls(*(Scalar.exact(v) for v in (m11, m12, m21, m22)))

    @classmethod
    def flt(cls, m11, m12, m21, m22) -> "Mat2":
        return cls(*(Scalar.flt(v) for v in (m11, m12, m21, m22)))

    @classmethod
    def identity_like(cls, sample: "Mat2") -> "Mat2":
        one = Scalar.one_like(sample.m11)
        zero = Scalar.zero_like(sample.m11)
        return cls(one, zero, zero, one)

    @classmethod
    def from_strings(cls, entries) -> "Mat2":
        from .scalar import parse_scalar

        vals = [parse_scalar(e) for e in entries]
        if len(vals) != 4:
            raise ValueError("a 2x2 matrix needs exactly 4 entries")
        return cls(*vals)

    @property
    def is_exact(self) -> bool:
        return self.m11.is_exact

    def entries(self) -> tuple[Scalar, Scalar, Scalar, Scalar]:
        return (self.m11, self.m12, self.m21, self.m22)

    def as_strings(self) -> tuple[str, str, str, str]:
        """Row-major 4-tuple of scalar strings."""
        return tuple(str(e) for e in self.entries())

    def trace(self) -> Scalar:
        return self.m11 + self.m22

    def det(self) -> Scalar:
        return self.m11 * self.m22 - self.m12 * self.m21

    def __matmul__(self, other):
        if isinstance(other, Mat2):
            return Mat2(
                self.m11 * other.m11 + self.m12 * other.m21,
                self.m11 * other.m12 + self.m12 * other.m22,
                self.m21 * other.m11 + self.m22 * other.m21,
                self.m21 * other.m12 + self.m22 * other.m22,
            )
        if isinstance(other, Vec2):
            return Vec2(
                self.m11 * other.x1 + self.m12 * other.x2,
                self.m21 * other.x1 + self.m22 * other.x2,
            )
        return NotImplemented

    def scale(self, s: Scalar) -> "Mat2":
        return Mat2(self.m11 * s, self.m12 * s, self.m21 * s, self.m22 * s)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.m11, -self.m12, -self.m21, -self.m22)

    def inverse(self) -> "Mat2":
        d = self.det()
        if d == 0:
            raise SingularMatrixError("matrix is singular")
        return Mat2(self.m22 / d, -self.m12 / d, -self.m21 / d, self.m11 / d)

    def isclose(self, other: "Mat2", rel_tol: float | None = None) -> bool:
        return all(
            a.isclose(b, rel_tol) for a, b in zip(self.entries(), other.entries())
        )


def quarter_turn(exact: bool = True) -> Mat2:
    """The rotation by a quarter turn counterclockwise; squares to -I."""
    return Mat2.exact(0, -1, 1, 0) if exact else Mat2.flt(0.0, -1.0, 1.0, 0.0)


def mul(m: Mat2, n: Mat2) -> Mat2:
    """Matrix product m @ n."""
    return m @ n


def spectral_radius(m: Mat2) -> Scalar:
    """Largest eigenvalue modulus; always a float-backend scalar.

    The discriminant sign is decided on the input backend, so the complex
    vs. real branch is exact for exact matrices.
    """
    t = m.trace()
    d = m.det()
    disc = t * t - 4 * d
    tf, df = float(t), float(d)
    if disc >= 0:
        r = math.sqrt(max(float(disc), 0.0))
        return Scalar.flt(max(abs((tf + r) / 2), abs((tf - r) / 2)))
    # Complex-conjugate pair: |lambda|^2 = det, which is positive here.
    return Scalar.flt(math.sqrt(df))


def similarity(s: Mat2, x: Mat2) -> Mat2:
    """The conjugate s^-1 @ x @ s."""
    return s.inverse() @ x @ s


def eigenvector_unit_first(
    m: Mat2, lam: Scalar | int, rel_tol: float | None = None
) -> Vec2:
    """Eigenvector of a simple real eigenvalue, scaled to first coordinate 1.

    Raises EigenvectorError if lam is not an eigenvalue (exact residual on
    the exact backend, tolerance on float), if it is not simple, or if the
    eigendirection is parallel to (0, 1).
    """
    if isinstance(lam, int):
        lam = Scalar.exact(lam) if m.is_exact else Scalar.flt(lam)
    if lam.is_exact != m.is_exact:
        raise TypeError("eigenvalue backend must match the matrix backend")
    t, d = m.trace(), m.det()
    residual = lam * lam - t * lam + d
    simple = lam * 2 - t
    if m.is_exact:
        if residual != 0:
            raise EigenvectorError(f"{lam} is not an eigenvalue")
        if simple == 0:
            raise EigenvectorError("eigenvalue is not simple")
    else:
        tol = default_tolerance() if rel_tol is None else rel_tol
        lam_f = float(lam)
        if abs(float(residual)) > tol * max(1.0, lam_f * lam_f):
            raise EigenvectorError(f"{lam} is not an eigenvalue (residual too large)")
        if abs(float(simple)) <= tol * max(1.0, abs(lam_f)):
            raise EigenvectorError("eigenvalue is not simple")
    # Rows of (m - lam*I); the eigenvector is orthogonal to both, so take
    # the more robust nonzero row (a, b) and use (b, -a).
    rows = ((m.m11 - lam, m.m12), (m.m21, m.m22 - lam))
    if m.is_exact:
        row = rows[0] if (rows[0][0] != 0 or rows[0][1] != 0) else rows[1]
    else:
        row = max(rows, key=lambda r: abs(float(r[0])) + abs(float(r[1])))
    a, b = row
    x1, x2 = b, -a
    if m.is_exact:
        first_zero = x1 == 0
    else:
        tol = default_tolerance() if rel_tol is None else rel_tol
        first_zero = abs(float(x1)) <= tol * abs(float(x2))
    if first_zero:
        raise EigenvectorError("eigenvector is parallel to (0, 1)")
    one = Scalar.one_like(x1)
    return Vec2(one, x2 / x1)
