"""Contour construction, validity checks, and strip-family identities."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracsinc import (
    AngleViolation,
    FractionalOrder,
    SectorSpec,
    VertexTooSmall,
    build_integral_hyperbola,
    build_spectral_hyperbola,
    contour_point,
    integral_coefficients,
    max_admissible_angle,
    spectral_coefficients,
    strip_coefficients,
    validate_angle,
)

PHI_RANGE = st.floats(min_value=1e-3, max_value=math.pi / 2 - 1e-3)


class TestSectorSpec:
    def test_valid(self):
        s = SectorSpec(rho0=2.0, phi=0.3, M=1.5)
        assert s.rho0 == 2.0 and s.phi == 0.3 and s.M == 1.5

    @pytest.mark.parametrize("kwargs", [
        dict(rho0=0.0, phi=0.3),
        dict(rho0=-1.0, phi=0.3),
        dict(rho0=1.0, phi=0.0),
        dict(rho0=1.0, phi=math.pi / 2),
        dict(rho0=1.0, phi=0.3, M=0.0),
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            SectorSpec(**kwargs)


class TestFractionalOrder:
    @pytest.mark.parametrize("alpha", [-0.999, 0.0, 0.5, 0.999])
    def test_valid(self, alpha):
        assert FractionalOrder(alpha).alpha == alpha

    @pytest.mark.parametrize("alpha", [-1.0, 1.0, 2.0, -1.5])
    def test_invalid(self, alpha):
        with pytest.raises(ValueError):
            FractionalOrder(alpha)


class TestSpectralHyperbola:
    def test_degenerate_angle_formula(self):
        # phi = 0: a0 = 1/cos(pi/4) = sqrt(2), b0 = 0
        a0, b0 = spectral_coefficients(0.0)
        assert a0 == pytest.approx(math.sqrt(2.0), abs=1e-15)
        assert b0 == 0.0

    def test_quarter_pi_coefficients(self):
        a0, b0 = spectral_coefficients(math.pi / 4)
        expected = math.cos(math.pi / 4) / math.cos(3 * math.pi / 8)
        assert a0 == pytest.approx(expected, rel=1e-15)
        assert b0 == pytest.approx(math.sin(math.pi / 4) / math.cos(3 * math.pi / 8), rel=1e-15)
        assert a0 == pytest.approx(1.847759, abs=5e-7)

    def test_build(self):
        hyp = build_spectral_hyperbola(SectorSpec(rho0=9.8696, phi=math.pi / 4))
        assert hyp.shift == 9.8696
        assert hyp.d1 == 0.0
        assert hyp.a == pytest.approx(1.847759, abs=5e-7)
        assert hyp.b == pytest.approx(1.847759, abs=5e-7)

    def test_vertex_too_small(self):
        with pytest.raises(VertexTooSmall):
            build_spectral_hyperbola(SectorSpec(rho0=1.0, phi=math.pi / 4))

    @given(phi=PHI_RANGE)
    @settings(max_examples=60, deadline=None)
    def test_vertex_threshold_is_a0(self, phi):
        a0, _ = spectral_coefficients(phi)
        build_spectral_hyperbola(SectorSpec(rho0=a0 * 1.01, phi=phi))
        with pytest.raises(VertexTooSmall):
            build_spectral_hyperbola(SectorSpec(rho0=a0 * 0.99, phi=phi))


class TestIntegralHyperbola:
    def test_degenerate_angle_formula(self):
        a_i, b_i, d1 = integral_coefficients(0.0)
        assert a_i == 1.0
        assert b_i == pytest.approx(1.0, abs=1e-15)
        assert d1 == pytest.approx(math.pi / 2, abs=1e-15)

    def test_quarter_pi(self):
        hyp = build_integral_hyperbola(SectorSpec(rho0=9.8696, phi=math.pi / 4))
        assert hyp.a == 1.0
        assert hyp.b == pytest.approx(math.tan(3 * math.pi / 8), rel=1e-15)
        assert hyp.b == pytest.approx(2.414214, abs=5e-7)
        assert hyp.d1 == pytest.approx(math.pi / 4, rel=1e-15)
        assert hyp.shift == pytest.approx(9.8696 / 2 + 1.0, rel=1e-15)

    def test_sixth_pi(self):
        hyp = build_integral_hyperbola(SectorSpec(rho0=4.0, phi=math.pi / 6))
        assert hyp.d1 == pytest.approx(math.pi / 3, rel=1e-14)
        assert hyp.d1 == pytest.approx(1.047198, abs=5e-7)
        assert hyp.shift == pytest.approx(3.0, rel=1e-15)

    @given(phi=PHI_RANGE, rho0=st.floats(min_value=1e-3, max_value=1e6))
    @settings(max_examples=80, deadline=None)
    def test_base_line_between_axis_and_vertex(self, phi, rho0):
        hyp = build_integral_hyperbola(SectorSpec(rho0=rho0, phi=phi))
        assert 0.0 < hyp.shift - hyp.a < rho0


class TestContourPoint:
    def test_vertex(self):
        hyp = build_integral_hyperbola(SectorSpec(rho0=4.0, phi=0.3))
        z, dz = contour_point(hyp, 0.0)
        assert z == pytest.approx(hyp.shift)
        assert dz == pytest.approx(-1j * hyp.b)

    def test_unit_coefficients_at_one(self):
        # a=1, b=1, shift=2 at xi=1: values from cosh(1), sinh(1) directly
        from fracsinc import Hyperbola

        hyp = Hyperbola(a=1.0, b=1.0, shift=2.0, d1=math.pi / 2)
        z, dz = contour_point(hyp, 1.0)
        assert z == pytest.approx((math.cosh(1.0) - 1.0) + 2.0 - 1j * math.sinh(1.0), rel=1e-15)
        assert z == pytest.approx(2.543081 - 1.175201j, abs=5e-7)
        assert dz == pytest.approx(math.sinh(1.0) - 1j * math.cosh(1.0), rel=1e-15)
        assert dz == pytest.approx(1.175201 - 1.543081j, abs=5e-7)

    @given(phi=PHI_RANGE, rho0=st.floats(min_value=0.1, max_value=1e3),
           xi=st.floats(min_value=-20.0, max_value=20.0))
    @settings(max_examples=100, deadline=None)
    def test_conjugate_symmetry(self, phi, rho0, xi):
        hyp = build_integral_hyperbola(SectorSpec(rho0=rho0, phi=phi))
        z_pos, _ = contour_point(hyp, xi)
        z_neg, _ = contour_point(hyp, -xi)
        assert z_neg == z_pos.conjugate()


class TestValidateAngle:
    def test_boundary_is_strict(self):
        # alpha = -0.5 requires phi < pi/4 strictly
        with pytest.raises(AngleViolation) as info:
            validate_angle(-0.5, SectorSpec(rho0=2.0, phi=math.pi / 4))
        assert info.value.max_phi == pytest.approx(math.pi / 4)

    def test_positive_order_wide_angle(self):
        validate_angle(0.5, SectorSpec(rho0=2.0, phi=0.4 * math.pi))

    def test_strongly_negative_order(self):
        validate_angle(-0.9, SectorSpec(rho0=2.0, phi=0.04 * math.pi))
        with pytest.raises(AngleViolation):
            validate_angle(-0.9, SectorSpec(rho0=2.0, phi=0.06 * math.pi))

    def test_accepts_fractional_order_type(self):
        validate_angle(FractionalOrder(0.25), SectorSpec(rho0=2.0, phi=0.3))

    @given(alpha=st.floats(min_value=-0.99, max_value=0.99))
    @settings(max_examples=50, deadline=None)
    def test_max_angle_formula(self, alpha):
        expected = (1 + alpha) * math.pi / 2 if alpha < 0 else math.pi / 2
        assert max_admissible_angle(alpha) == pytest.approx(expected)


class TestStripFamily:
    @given(phi=PHI_RANGE)
    @settings(max_examples=80, deadline=None)
    def test_family_edges_match_named_curves(self, phi):
        # rotating by +d1/2 recovers the spectral coefficients, by -d1/2 a line
        a0, b0 = spectral_coefficients(phi)
        _, _, d1 = integral_coefficients(phi)
        a_top, b_top = strip_coefficients(phi, d1 / 2)
        a_bot, _ = strip_coefficients(phi, -d1 / 2)
        assert abs(a_top - a0) < 1e-12
        assert abs(b_top - b0) < 1e-12
        assert abs(a_bot) < 1e-12

    @pytest.mark.parametrize("phi,rho0", [
        (math.pi / 12, 9.8696),
        (0.2, 4.0),
        (math.pi / 4, 50.0),
        (1.2, 100.0),
    ])
    def test_family_stays_in_right_half_plane(self, phi, rho0):
        hyp = build_integral_hyperbola(SectorSpec(rho0=rho0, phi=phi))
        _, _, d1 = integral_coefficients(phi)
        for nu in np.linspace(-d1 / 2, d1 / 2, 9):
            a_nu, b_nu = strip_coefficients(phi, nu)
            for xi in np.linspace(-20.0, 20.0, 81):
                real = a_nu * math.cosh(xi) - hyp.a + hyp.shift
                assert real > 0.0
