"""Constructors for the two parametric matrix pairs under study.

Both families are rotation-with-stretching pairs sharing trace 2*cos(phi)
and determinant 1.  The `main` family additionally has a zero upper-left
entry, which keeps every derived quantity rational once kappa is a
rational cube; at the distinguished angle phi = 2*pi/3 the pair satisfies
A**3 = B**3 = I, which is what the whole polygon construction rests on.

The `alt` family keeps the textbook rotation shape.  Its entries involve
sines and cosines, so that path runs on the float backend.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .matrix2 import Mat2, Vec2, eigenvector_unit_first, quarter_turn, spectral_radius
from .scalar import FloatKappa, KappaContext, Scalar

__all__ = [
    "MatrixSet",
    "NormalizedSet",
    "DISTINGUISHED_PHI",
    "example_alt",
    "example_main",
    "example_main_special",
    "custom_set",
    "normalize",
    "eigenvectors_vw",
    "eigenvectors_from_products",
]

DISTINGUISHED_PHI = 2 * math.pi / 3


@dataclass(frozen=True)
class MatrixSet:
    """A labeled pair {A, B} plus the similarity matrix that swaps it."""

    a: Mat2
    b: Mat2
    tau_s: Mat2 | None
    family: str  # "main" | "alt" | "custom"
    kappa: Scalar
    phi: float | None
    ctx: KappaContext | None = None
    reducible: bool = False

    @property
    def is_exact(self) -> bool:
        return self.a.is_exact

    def kappa_like(self) -> KappaContext | FloatKappa:
        return self.ctx if self.ctx is not None else FloatKappa(float(self.kappa))


@dataclass(frozen=True)
class NormalizedSet:
    """The pair divided by the cube root of its top triple-product
    eigenvalue, so that the six mixed triple products have spectral
    radius exactly 1."""

    at: Mat2
    bt: Mat2
    lam: Scalar
    scale: Scalar  # lam**(1/3)
    source: MatrixSet


def _snap_angle(phi: float) -> tuple[float, float]:
    """cos/sin with the distinguished angle snapped to exact halves."""
    if math.isclose(phi, DISTINGUISHED_PHI, rel_tol=0, abs_tol=1e-13):
        return -0.5, math.sqrt(3.0) / 2.0
    return math.cos(phi), math.sin(phi)


def _reducible_phi(s: float) -> bool:
    return abs(s) < 1e-15


def example_alt(kappa: float, phi: float) -> MatrixSet:
    """Rotation-with-stretching pair; float backend.

    At phi = 0 or pi the pair is reducible; the set is still built but
    carries a `reducible` flag so bounds can be explored.
    """
    kappa = float(kappa)
    if not kappa > 1:
        raise ValueError(f"need kappa > 1, got {kappa}")
    c, s = _snap_angle(phi)
    a = Mat2.flt(c, -s / kappa, kappa * s, c)
    b = Mat2.flt(c, -kappa * s, s / kappa, c)
    return MatrixSet(
        a=a,
        b=b,
        tau_s=quarter_turn(exact=False),
        family="alt",
        kappa=Scalar.flt(kappa),
        phi=float(phi),
        reducible=_reducible_phi(s),
    )


def example_main(kappa: float, phi: float) -> MatrixSet:
    """Zero-corner pair; float backend for general angles."""
    kappa = float(kappa)
    if not kappa > 1:
        raise ValueError(f"need kappa > 1, got {kappa}")
    c, s = _snap_angle(phi)
    t2 = 2.0 * c
    a = Mat2.flt(0.0, -1.0 / kappa, kappa, t2)
    b = Mat2.flt(0.0, -kappa, 1.0 / kappa, t2)
    d = t2 * kappa / (kappa * kappa + 1.0)
    tau_s = Mat2.flt(d, 1.0, -1.0, -d)
    return MatrixSet(
        a=a,
        b=b,
        tau_s=tau_s,
        family="main",
        kappa=Scalar.flt(kappa),
        phi=float(phi),
        reducible=_reducible_phi(s),
    )


def example_main_special(ctx: KappaContext) -> MatrixSet:
    """The zero-corner pair at phi = 2*pi/3, exact: trace -1, det 1."""
    kappa = ctx.power(3)
    inv_kappa = ctx.power(-3)
    zero = Scalar.exact(0)
    minus_one = Scalar.exact(-1)
    a = Mat2(zero, -inv_kappa, kappa, minus_one)
    b = Mat2(zero, -kappa, inv_kappa, minus_one)
    d = -kappa / (kappa * kappa + 1)
    tau_s = Mat2(d, Scalar.exact(1), minus_one, -d)
    return MatrixSet(
        a=a,
        b=b,
        tau_s=tau_s,
        family="main",
        kappa=kappa,
        phi=DISTINGUISHED_PHI,
        ctx=ctx,
    )


def custom_set(
    a: Mat2,
    b: Mat2,
    tau_s: Mat2 | None = None,
    ctx: KappaContext | None = None,
    kappa: Scalar | None = None,
) -> MatrixSet:
    """Wrap a user-supplied pair.  kappa defaults so that kappa**2 is the
    spectral radius of B @ A @ A, matching the normalization convention."""
    if a.is_exact != b.is_exact:
        raise TypeError("matrix backends must match")
    if kappa is None:
        if ctx is not None:
            kappa = ctx.power(3)
        else:
            baa = b @ a @ a
            kappa = Scalar.flt(math.sqrt(float(spectral_radius(baa))))
    return MatrixSet(
        a=a, b=b, tau_s=tau_s, family="custom", kappa=kappa, phi=None, ctx=ctx
    )


def _check_cube_identity(m: Mat2, rel_tol: float | None) -> bool:
    cube = m @ m @ m
    identity = Mat2.identity_like(m)
    if m.is_exact:
        return cube == identity
    return cube.isclose(identity, rel_tol)


def normalize(mset: MatrixSet, rel_tol: float | None = None) -> NormalizedSet:
    """Divide both matrices by lam**(1/3), lam the top eigenvalue of BAA.

    Requires A**3 = B**3 = I (that is what makes the twelve-vertex
    construction close up); on the exact backend lam = kappa**2 exactly
    and the scale is c**2, so the normalized entries stay rational.
    """
    a, b = mset.a, mset.b
    if a.is_exact and mset.ctx is None:
        raise ValueError(
            "exact pairs need a cube-root context (kappa = c**3) to normalize"
        )
    for m, name in ((a, "A"), (b, "B")):
        if not _check_cube_identity(m, rel_tol):
            raise ValueError(f"{name}**3 is not the identity; cannot normalize")
    baa = b @ a @ a
    if mset.ctx is not None:
        lam = mset.ctx.power(6)
        # lam must be an eigenvalue of BAA: x^2 - tr*x + det annihilates it.
        if lam * lam - baa.trace() * lam + baa.det() != 0:
            raise ValueError("kappa**2 is not an eigenvalue of B @ A @ A")
        scale = mset.ctx.power(2)
    else:
        lam = spectral_radius(baa)
        scale = Scalar.flt(float(lam) ** (1.0 / 3.0))
    inv = 1 / scale
    at, bt = a.scale(inv), b.scale(inv)
    norm = NormalizedSet(at=at, bt=bt, lam=lam, scale=scale, source=mset)
    # Sanity: the normalized cubes must equal (1/lam) * I.
    cube = at @ at @ at
    expected = Mat2.identity_like(at).scale(1 / lam)
    if at.is_exact:
        ok = cube == expected
    else:
        ok = cube.isclose(expected, rel_tol)
    if not ok:
        raise ValueError("normalization failed the cube identity")
    return norm


def eigenvectors_vw(ctx: KappaContext) -> tuple[Vec2, Vec2]:
    """Closed-form fixed vectors of the normalized triple products for the
    exact zero-corner family: v = (1, kappa/(1+kappa^2)), w = (1, 0)."""
    kappa = ctx.power(3)
    v = Vec2(Scalar.exact(1), kappa / (1 + kappa * kappa))
    w = Vec2(Scalar.exact(1), Scalar.exact(0))
    return v, w


def eigenvectors_from_products(
    norm: NormalizedSet, rel_tol: float | None = None
) -> tuple[Vec2, Vec2]:
    """Fixed vectors of B~A~A~ and B~B~A~ (eigenvalue 1), first coordinate 1.

    Works on either backend and for any pair satisfying the normalization
    contract; the eigenvalue-1 residual is checked inside the extraction.
    """
    at, bt = norm.at, norm.bt
    one = Scalar.exact(1) if at.is_exact else Scalar.flt(1.0)
    v = eigenvector_unit_first(bt @ at @ at, one, rel_tol)
    w = eigenvector_unit_first(bt @ bt @ at, one, rel_tol)
    return v, w
