"""Dual-backend scalar arithmetic: exact rationals or binary64 floats.

The exact backend stores arbitrary-precision rationals and is closed under
+, -, *, / and comparison.  Fractional powers of the stretch parameter are
handled through the substitution kappa = c**3 with rational c: every
exponent that occurs in the polygon construction is a multiple of one
third, so all derived quantities stay inside the rationals.  The float
backend mirrors the same operations in binary64 for parameter scans.

Backends never mix silently: combining an exact and a float scalar raises
BackendMismatchError, so a certificate that starts exact stays exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "BackendMismatchError",
    "Scalar",
    "KappaContext",
    "FloatKappa",
    "kappa_power",
    "to_float",
    "parse_scalar",
    "default_tolerance",
    "set_default_tolerance",
]

# Single global relative tolerance used by float-backend comparisons.
_DEFAULT_REL_TOL = 1e-12


def default_tolerance() -> float:
    return _DEFAULT_REL_TOL


def set_default_tolerance(tol: float) -> None:
    global _DEFAULT_REL_TOL
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    _DEFAULT_REL_TOL = tol


def _tol(tol: float | None) -> float:
    return _DEFAULT_REL_TOL if tol is None else tol


class BackendMismatchError(TypeError):
    """Exact and float scalars met in one expression."""


class Scalar:
    """A number carried by exactly one backend: Fraction or float."""

    __slots__ = ("value",)

    def __init__(self, value):
        if isinstance(value, bool) or not isinstance(value, (Fraction, float)):
            raise TypeError(f"Scalar wraps Fraction or float, got {value!r}")
        self.value = value

    @classmethod
    def exact(cls, value) -> "Scalar":
        """Exact-backend scalar from an int, Fraction, or 'p/q' string."""
        return cls(Fraction(value))

    @classmethod
    def flt(cls, value) -> "Scalar":
        """Float-backend scalar."""
        return cls(float(value))

    @classmethod
    def one_like(cls, sample: "Scalar") -> "Scalar":
        return cls(Fraction(1)) if sample.is_exact else cls(1.0)

    @classmethod
    def zero_like(cls, sample: "Scalar") -> "Scalar":
        return cls(Fraction(0)) if sample.is_exact else cls(0.0)

    @property
    def is_exact(self) -> bool:
        return isinstance(self.value, Fraction)

    @property
    def backend(self) -> str:
        return "exact" if self.is_exact else "float"

    def as_fraction(self) -> Fraction:
        if not self.is_exact:
            raise BackendMismatchError("float scalar has no exact value")
        return self.value

    def to_float(self) -> "Scalar":
        return Scalar(float(self.value))

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if self.is_exact != other.is_exact:
                raise BackendMismatchError(
                    f"cannot combine {self.backend} and {other.backend} scalars"
                )
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return Fraction(other) if self.is_exact else float(other)
        return None

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        ov = self._coerce(other)
        return NotImplemented if ov is None else Scalar(self.value + ov)

    __radd__ = __add__

    def __sub__(self, other):
        ov = self._coerce(other)
        return NotImplemented if ov is None else Scalar(self.value - ov)

    def __rsub__(self, other):
        ov = self._coerce(other)
        return NotImplemented if ov is None else Scalar(ov - self.value)

    def __mul__(self, other):
        ov = self._coerce(other)
        return NotImplemented if ov is None else Scalar(self.value * ov)

    __rmul__ = __mul__

    def __truediv__(self, other):
        ov = self._coerce(other)
        if ov is None:
            return NotImplemented
        if ov == 0:
            raise ZeroDivisionError("scalar division by zero")
        return Scalar(self.value / ov)

    def __rtruediv__(self, other):
        ov = self._coerce(other)
        if ov is None:
            return NotImplemented
        if self.value == 0:
            raise ZeroDivisionError("scalar division by zero")
        return Scalar(ov / self.value)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if self.value == 0 and exponent < 0:
            raise ZeroDivisionError("zero to a negative power")
        return Scalar(self.value**exponent)

    def __neg__(self):
        return Scalar(-self.value)

    def __abs__(self):
        return Scalar(abs(self.value))

    # -- comparison ---------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Scalar):
            if self.is_exact != other.is_exact:
                return False
            return self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.is_exact, self.value))

    def _cmp_value(self, other):
        ov = self._coerce(other)
        if ov is None:
            raise TypeError(f"cannot compare Scalar with {other!r}")
        return ov

    def __lt__(self, other):
        return self.value < self._cmp_value(other)

    def __le__(self, other):
        return self.value <= self._cmp_value(other)

    def __gt__(self, other):
        return self.value > self._cmp_value(other)

    def __ge__(self, other):
        return self.value >= self._cmp_value(other)

    # -- tolerance-aware comparison (float backend only) --------------

    def isclose(self, other, rel_tol: float | None = None) -> bool:
        """Equality check: exact on the exact backend, tolerant on float."""
        ov = self._cmp_value(other)
        if self.is_exact:
            return self.value == ov
        t = _tol(rel_tol)
        return math.isclose(self.value, ov, rel_tol=t, abs_tol=t)

    def le(self, other, rel_tol: float | None = None) -> bool:
        """self <= other, allowing a relative slack on the float backend."""
        ov = self._cmp_value(other)
        if self.is_exact:
            return self.value <= ov
        t = _tol(rel_tol)
        return self.value <= ov + t * max(1.0, abs(ov))

    def ge(self, other, rel_tol: float | None = None) -> bool:
        ov = self._cmp_value(other)
        if self.is_exact:
            return self.value >= ov
        t = _tol(rel_tol)
        return self.value >= ov - t * max(1.0, abs(ov))

    # -- formatting ---------------------------------------------------

    def __float__(self):
        return float(self.value)

    def __str__(self):
        # Exact rationals print decimal-free as p/q; floats print as the
        # shortest round-trip decimal.
        return str(self.value) if self.is_exact else repr(self.value)

    def __repr__(self):
        return f"Scalar({self.value!r})"


def to_float(s: Scalar) -> Scalar:
    """Nearest binary64 value of a scalar, as a float-backend scalar."""
    return s.to_float()


def parse_scalar(text: str) -> Scalar:
    """Parse 'p/q' or an integer as exact, a decimal literal as float."""
    text = text.strip()
    if "/" in text or text.lstrip("+-").isdigit():
        return Scalar.exact(Fraction(text))
    return Scalar.flt(float(text))


@dataclass(frozen=True)
class KappaContext:
    """Exact stretch parameter kappa = c**3 for a rational c > 1.

    Every power kappa**(k/3) that the construction needs is c**k, so the
    whole certificate can run without leaving the rationals.
    """

    c: Fraction

    def __post_init__(self):
        c = Fraction(self.c)
        object.__setattr__(self, "c", c)
        if not c > 1:
            raise ValueError(f"need c > 1, got {c}")

    def power(self, k_thirds: int) -> Scalar:
        """kappa**(k_thirds/3) == c**k_thirds, exactly."""
        return Scalar.exact(self.c**k_thirds)

    @property
    def kappa(self) -> Scalar:
        return self.power(3)

    @property
    def lam(self) -> Scalar:
        """The squared stretch kappa**2 = c**6."""
        return self.power(6)

    @property
    def is_exact(self) -> bool:
        return True


@dataclass(frozen=True)
class FloatKappa:
    """Float-backend stretch parameter with the same power interface."""

    kappa_value: float

    def __post_init__(self):
        object.__setattr__(self, "kappa_value", float(self.kappa_value))
        if not self.kappa_value > 1:
            raise ValueError(f"need kappa > 1, got {self.kappa_value}")

    def power(self, k_thirds: int) -> Scalar:
        return Scalar.flt(self.kappa_value ** (k_thirds / 3.0))

    @property
    def kappa(self) -> Scalar:
        return Scalar.flt(self.kappa_value)

    @property
    def lam(self) -> Scalar:
        return Scalar.flt(self.kappa_value**2)

    @property
    def is_exact(self) -> bool:
        return False


def kappa_power(ctx: KappaContext | FloatKappa, k_thirds: int) -> Scalar:
    """kappa**(k_thirds/3) in the backend of the given context."""
    return ctx.power(k_thirds)
