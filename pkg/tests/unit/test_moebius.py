"""Unit tests for PSL(2,R) isometries, axes and crossing geometry."""

import math

import numpy as np
import pytest

from core.errors import AxesDoNotCrossError, DomainError, NotHyperbolicError
from core.moebius import (
    Axis,
    BoundaryPoint,
    Isometry,
    IsometryType,
    axis,
    check_cosh_product,
    classify,
    crossing_geometry,
    endpoints_interleave,
    hyperbolic_distance,
    normalizing_frame,
    translation_length,
)

LAMBDA = 2.0 + math.sqrt(3.0)
DIAGONAL = Isometry(LAMBDA, 0.0, 0.0, 1.0 / LAMBDA)
B_GEN = Isometry(2.0, 1.0, 3.0, 2.0)


class TestIsometry:
    def test_compose_with_inverse_is_identity(self):
        assert B_GEN.compose(B_GEN.inverse()).is_close(Isometry.identity())

    def test_identity_is_neutral(self):
        assert Isometry.identity().compose(B_GEN).is_close(B_GEN)

    def test_compose_matches_matrix_product(self):
        """diag(l, 1/l) [[2,1],[3,2]] = [[2l, l], [3/l, 2/l]]."""
        product = DIAGONAL.compose(B_GEN)
        expected = np.array([[2 * LAMBDA, LAMBDA], [3 / LAMBDA, 2 / LAMBDA]])
        assert np.allclose(product.as_array(), expected, atol=1e-10)

    def test_determinant_renormalized(self):
        g = Isometry(2.0, 0.0, 0.0, 2.0)
        assert g.a * g.d - g.b * g.c == pytest.approx(1.0, abs=1e-12)

    def test_negative_determinant_rejected(self):
        with pytest.raises(DomainError):
            Isometry(1.0, 0.0, 0.0, -1.0)

    def test_is_close_ignores_sign_of_lift(self):
        assert B_GEN.is_close(Isometry(-2.0, -1.0, -3.0, -2.0))

    def test_from_array_shape_checked(self):
        with pytest.raises(DomainError):
            Isometry.from_array([[1.0, 0.0, 0.0]])

    def test_boundary_action(self):
        """z -> (2z + 1)/(3z + 2) sends infinity to 2/3."""
        image = B_GEN.apply_boundary(BoundaryPoint.infinity())
        assert image.value == pytest.approx(2.0 / 3.0)


class TestClassify:
    def test_parabolic(self):
        assert classify(Isometry(1.0, 0.5, 0.0, 1.0)) is IsometryType.PARABOLIC

    def test_hyperbolic(self):
        assert classify(DIAGONAL) is IsometryType.HYPERBOLIC

    def test_identity(self):
        assert classify(Isometry.identity()) is IsometryType.IDENTITY

    def test_elliptic(self):
        c, s = math.cos(0.3), math.sin(0.3)
        assert classify(Isometry(c, -s, s, c)) is IsometryType.ELLIPTIC


class TestTranslationLength:
    def test_trace_four(self):
        assert translation_length(DIAGONAL) == pytest.approx(2 * math.acosh(2.0), abs=1e-12)
        assert translation_length(DIAGONAL) == pytest.approx(2.633916, abs=1e-6)

    def test_square_doubles_length(self):
        assert translation_length(B_GEN.power(2)) == pytest.approx(
            2 * translation_length(B_GEN), abs=1e-10
        )

    def test_matches_displacement_on_axis(self):
        """A diagonal isometry moves i to lambda^2 i, at distance 2 log(lambda)."""
        z = 1j
        assert hyperbolic_distance(z, DIAGONAL.apply(z)) == pytest.approx(
            translation_length(DIAGONAL), abs=1e-10
        )

    def test_parabolic_rejected(self):
        with pytest.raises(NotHyperbolicError):
            translation_length(Isometry(1.0, 1.0, 0.0, 1.0))


class TestAxis:
    def test_diagonal_axis_is_vertical_upward(self):
        ax = axis(DIAGONAL)
        assert ax.repelling == BoundaryPoint.finite(0.0)
        assert ax.attracting.at_infinity

    def test_b_generator_axis(self):
        """Fixed points solve 3z^2 = 1; the attracting one is +1/sqrt3."""
        ax = axis(B_GEN)
        assert ax.repelling.value == pytest.approx(-1 / math.sqrt(3), abs=1e-12)
        assert ax.attracting.value == pytest.approx(1 / math.sqrt(3), abs=1e-12)

    def test_inverse_reverses_axis(self):
        forward, backward = axis(B_GEN), axis(B_GEN.inverse())
        assert backward.repelling.value == pytest.approx(forward.attracting.value)
        assert backward.attracting.value == pytest.approx(forward.repelling.value)

    def test_normalizing_frame(self):
        frame = normalizing_frame(axis(B_GEN))
        ax = axis(B_GEN)
        assert frame.apply_boundary(ax.repelling).value == pytest.approx(0.0, abs=1e-12)
        assert frame.apply_boundary(ax.attracting).at_infinity


class TestCrossings:
    def test_interleaving(self):
        vertical = Axis.between(0.0, None)
        assert endpoints_interleave(vertical, Axis.between(-1.0, 1.0))
        assert not endpoints_interleave(vertical, Axis.between(1.0, 2.0))

    def test_shared_endpoint_does_not_cross(self):
        assert not endpoints_interleave(Axis.between(0.0, None), Axis.between(0.0, 1.0))

    def test_nearly_shared_endpoint_does_not_cross(self):
        vertical = Axis.between(0.0, None)
        close = Axis.between(-1e-13, 1.0)
        assert not endpoints_interleave(vertical, close)
        assert endpoints_interleave(vertical, close, tol=0.0)
        with pytest.raises(AxesDoNotCrossError):
            crossing_geometry(vertical, close)

    def test_orthogonal_crossing(self):
        """The vertical axis meets the semicircle of radius 1/sqrt3 at its apex."""
        r = 1 / math.sqrt(3)
        geometry = crossing_geometry(Axis.between(0.0, None), Axis.between(-r, r))
        assert geometry.forward_angle == pytest.approx(math.pi / 2, abs=1e-12)
        assert geometry.point == pytest.approx(complex(0.0, r))

    def test_reversing_second_axis(self):
        first = Axis.between(0.0, None)
        second = Axis.between(-0.5, 2.0)
        forward = crossing_geometry(first, second)
        backward = crossing_geometry(first, second.reversed())
        assert backward.forward_angle == pytest.approx(math.pi - forward.forward_angle)
        assert backward.standard_sign == -forward.standard_sign

    def test_angle_stays_in_open_interval(self):
        geometry = crossing_geometry(Axis.between(0.0, None), Axis.between(-1e-4, 1e4))
        assert 0.0 < geometry.forward_angle < math.pi

    def test_disjoint_axes_rejected(self):
        with pytest.raises(AxesDoNotCrossError):
            crossing_geometry(Axis.between(0.0, None), Axis.between(1.0, 2.0))


class TestCoshProduct:
    def test_analytic_pair(self):
        """tr(gh) = 8 and both half-lengths have cosh 2."""
        assert abs(DIAGONAL.compose(B_GEN).trace) == pytest.approx(8.0)
        assert check_cosh_product(DIAGONAL, B_GEN) < 1e-9

    def test_symmetric_in_arguments(self):
        assert check_cosh_product(B_GEN, DIAGONAL) < 1e-9

    def test_equal_axes_rejected(self):
        with pytest.raises(AxesDoNotCrossError):
            check_cosh_product(DIAGONAL, DIAGONAL.power(2))
