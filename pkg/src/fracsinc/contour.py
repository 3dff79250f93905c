"""Hyperbolic integration contours for the operator sector.

The solver represents functions of a sectorial operator by a contour integral
over a right-opening hyperbola that separates the operator's spectrum from the
imaginary axis.  Two curves matter:

* the *spectral* hyperbola, which envelopes the spectrum from the left and
  passes through the sector vertex ``rho0``;
* the *integral* hyperbola, on which the quadrature nodes live.  Shifting its
  parameter by an imaginary amount ``nu`` sweeps a family of curves that fill
  the gap between a vertical line in the right half-plane (``nu = -d1/2``) and
  a copy of the spectral hyperbola (``nu = +d1/2``).  The width ``d1`` of that
  family is what drives the exponential convergence of the quadrature.

With the fixed normalization used here the coefficients are

    a0 = cos(phi) / cos(pi/4 + phi/2),   b0 = sin(phi) / cos(pi/4 + phi/2),
    aI = 1,  bI = tan(pi/4 + phi/2),  d1 = pi/2 - phi,  shift q = rho0/2 + 1.

All angles are radians.  Everything in this module is immutable and pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import AngleViolation, ContourCollision, VertexTooSmall


@dataclass(frozen=True)
class SectorSpec:
    """Sector data of a strongly positive operator.

    ``rho0`` is the sector vertex (leftmost spectrum point), ``phi`` the
    half-angle of the sector, and ``M`` the resolvent bound constant in
    ``||(zI - A)^-1|| <= M / (1 + |z|)`` outside the sector.
    """

    rho0: float
    phi: float
    M: float = 1.0

    def __post_init__(self):
        if not (self.rho0 > 0.0):
            raise ValueError(f"rho0 must be positive, got {self.rho0!r}")
        if not (0.0 < self.phi < math.pi / 2):
            raise ValueError(f"phi must lie in (0, pi/2), got {self.phi!r}")
        if not (self.M > 0.0):
            raise ValueError(f"M must be positive, got {self.M!r}")


@dataclass(frozen=True)
class FractionalOrder:
    """Validated fractional order alpha in (-1, 1)."""

    alpha: float

    def __post_init__(self):
        if not (-1.0 < self.alpha < 1.0):
            raise ValueError(f"alpha must lie in (-1, 1), got {self.alpha!r}")


def as_order(alpha) -> float:
    """Accept a FractionalOrder or a bare float; return the validated float."""
    if isinstance(alpha, FractionalOrder):
        return alpha.alpha
    return FractionalOrder(float(alpha)).alpha


@dataclass(frozen=True)
class Hyperbola:
    """Right-opening hyperbola ``z(xi) = a(cosh xi - 1) + shift - i b sinh xi``.

    ``d1`` is the half-width of the analyticity family swept by imaginary
    parameter shifts; it is 0 for the spectral hyperbola (which is a single
    curve, not a quadrature contour).
    """

    a: float
    b: float
    shift: float
    d1: float

    def __post_init__(self):
        if not (self.a > 0.0):
            raise ValueError(f"hyperbola coefficient a must be positive, got {self.a!r}")
        if not (self.b > 0.0):
            raise ValueError(f"hyperbola coefficient b must be positive, got {self.b!r}")
        if self.d1 < 0.0:
            raise ValueError(f"strip half-width d1 must be nonnegative, got {self.d1!r}")


def spectral_coefficients(phi: float) -> tuple[float, float]:
    """Coefficients (a0, b0) of the spectral hyperbola for half-angle phi.

    Defined for phi in [0, pi/2); phi = 0 is the degenerate real-spectrum
    limit with b0 = 0.
    """
    if not (0.0 <= phi < math.pi / 2):
        raise ValueError(f"phi must lie in [0, pi/2), got {phi!r}")
    denom = math.cos(math.pi / 4 + phi / 2)
    return math.cos(phi) / denom, math.sin(phi) / denom


def integral_coefficients(phi: float) -> tuple[float, float, float]:
    """Coefficients (aI, bI, d1) of the integral hyperbola for half-angle phi."""
    if not (0.0 <= phi < math.pi / 2):
        raise ValueError(f"phi must lie in [0, pi/2), got {phi!r}")
    return 1.0, math.tan(math.pi / 4 + phi / 2), math.pi / 2 - phi


def strip_coefficients(phi: float, nu: float) -> tuple[float, float]:
    """Rotated coefficients (a(nu), b(nu)) of the contour family.

    a(nu) = aI cos nu + bI sin nu and b(nu) = bI cos nu - aI sin nu.  At
    nu = +d1/2 they reduce to (a0, b0); at nu = -d1/2, a vanishes and the
    curve degenerates to a vertical line.
    """
    a_i, b_i, _ = integral_coefficients(phi)
    return (
        a_i * math.cos(nu) + b_i * math.sin(nu),
        b_i * math.cos(nu) - a_i * math.sin(nu),
    )


def build_spectral_hyperbola(sector: SectorSpec) -> Hyperbola:
    """Spectral hyperbola through the sector vertex.

    Raises VertexTooSmall when rho0 <= a0: with the fixed normalization the
    curve could not envelope the spectrum from the left.  Rescaling the
    operator instead would silently change the problem, so we fail loudly.
    """
    a0, b0 = spectral_coefficients(sector.phi)
    if sector.rho0 <= a0:
        raise VertexTooSmall(sector.rho0, a0)
    return Hyperbola(a=a0, b=b0, shift=sector.rho0, d1=0.0)


def build_integral_hyperbola(sector: SectorSpec) -> Hyperbola:
    """Integration contour for the sector, vertex at q = rho0/2 + 1.

    Postcondition: 0 < shift - a < rho0, i.e. the vertical line swept at the
    bottom of the contour family stays strictly between the imaginary axis
    and the sector vertex.
    """
    a_i, b_i, d1 = integral_coefficients(sector.phi)
    q = sector.rho0 / 2 + 1.0
    gap = q - a_i
    if gap <= 0.0 or gap >= sector.rho0:
        raise ContourCollision(
            f"contour base at q - aI = {gap:g} must lie strictly inside "
            f"(0, rho0={sector.rho0:g})"
        )
    return Hyperbola(a=a_i, b=b_i, shift=q, d1=d1)


def contour_point(h: Hyperbola, xi: float) -> tuple[complex, complex]:
    """Point z(xi) and derivative z'(xi) of the parametrized contour.

    z(xi)  = a (cosh xi - 1) + shift - i b sinh xi
    z'(xi) = a sinh xi - i b cosh xi
    """
    z = h.a * (math.cosh(xi) - 1.0) + h.shift - 1j * h.b * math.sinh(xi)
    dz = h.a * math.sinh(xi) - 1j * h.b * math.cosh(xi)
    return z, dz


def max_admissible_angle(alpha) -> float:
    """Largest sector half-angle compatible with the fractional order."""
    a = as_order(alpha)
    if a < 0.0:
        return (1.0 + a) * math.pi / 2
    return math.pi / 2


def validate_angle(alpha, sector: SectorSpec) -> None:
    """Check the sector half-angle against the order constraint.

    For alpha >= 0 any phi < pi/2 is admissible; for alpha < 0 the half-angle
    must satisfy phi < (1 + alpha) * pi/2 (strict at the boundary).  Raises
    AngleViolation carrying the maximal admissible angle.
    """
    a = as_order(alpha)
    max_phi = max_admissible_angle(a)
    if not (sector.phi < max_phi):
        raise AngleViolation(sector.phi, max_phi, a)
