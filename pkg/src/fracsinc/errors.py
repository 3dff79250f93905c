"""Exception types raised by the solver components."""

from __future__ import annotations


class FracsincError(Exception):
    """Base class for all solver errors."""


class VertexTooSmall(FracsincError):
    """Sector vertex rho0 is too small for the fixed hyperbola normalization.

    The spectral hyperbola with coefficient ``a0 = cos(phi)/cos(pi/4 + phi/2)``
    can only envelope the spectrum from the left when ``rho0 > a0``.  Operators
    violating this are rejected instead of silently rescaled.
    """

    def __init__(self, rho0: float, a0: float):
        self.rho0 = rho0
        self.a0 = a0
        super().__init__(
            f"sector vertex rho0={rho0:g} must exceed the spectral hyperbola "
            f"coefficient a0={a0:g}"
        )


class ContourCollision(FracsincError):
    """Integration contour would touch the imaginary axis or the spectrum."""


class AngleViolation(FracsincError):
    """Sector half-angle too large for the requested fractional order.

    Carries the maximal admissible angle for the offending order.
    """

    def __init__(self, phi: float, max_phi: float, alpha: float):
        self.phi = phi
        self.max_phi = max_phi
        self.alpha = alpha
        super().__init__(
            f"sector half-angle phi={phi:g} not admissible for order "
            f"alpha={alpha:g}; require phi < {max_phi:g}"
        )


class SingularShift(FracsincError):
    """Resolvent shift z is (numerically) an eigenvalue of the operator."""


class DimensionMismatch(FracsincError):
    """State vector length does not match the operator dimension."""


class ZeroBase(FracsincError):
    """Fractional power of z = 0 requested."""


class RepeatedRoot(FracsincError):
    """Characteristic roots coincide; confluent kernels are unsupported."""


class TailDivergence(FracsincError):
    """Declared tail decay rate is nonpositive; the tail integral diverges."""


class NonConvergence(FracsincError):
    """Adaptive quadrature exhausted its refinement budget."""


class ConfigError(FracsincError):
    """Malformed or inconsistent experiment configuration."""
