"""Smoothstep polynomial construction, evaluation, and seam smoothness."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bernblend import (DomainError, SmoothstepPoly, build_smoothstep,
                       determinant_check, determinant_reference, psi_derivative,
                       psi_eval, solve_psi_coefficients, system_matrix)


class TestCoefficients:
    def test_order_one_exact(self):
        assert solve_psi_coefficients(1).tolist() == [10.0, -15.0, 6.0]

    @pytest.mark.parametrize("r", range(1, 7))
    def test_residual_small(self, r):
        a = system_matrix(r)
        coeffs = solve_psi_coefficients(r)
        rhs = np.zeros(2 * r + 1)
        rhs[0] = 1.0
        resid = a @ coeffs - rhs
        scale = np.abs(a) @ np.abs(coeffs)
        assert np.max(np.abs(resid) / np.maximum(scale, 1.0)) <= 1e-11

    @pytest.mark.parametrize("r,rtol", [(1, 1e-12), (2, 1e-12), (3, 1e-7)])
    def test_against_linear_solver(self, r, rtol):
        # the double solve is trustworthy at these sizes; its forward error
        # tracks the condition number (about 6e10 at r = 3), hence the
        # looser tolerance for the last case
        a = system_matrix(r)
        rhs = np.zeros(2 * r + 1)
        rhs[0] = 1.0
        want = np.linalg.solve(a, rhs)
        np.testing.assert_allclose(solve_psi_coefficients(r), want, rtol=rtol)

    def test_order_validation(self):
        for bad in (0, -1, 9, 1.5):
            with pytest.raises(DomainError):
                solve_psi_coefficients(bad)


class TestDeterminant:
    def test_reference_values(self):
        assert determinant_reference(1) == 2.0
        assert determinant_reference(2) == 288.0
        assert determinant_reference(3) == 24883200.0

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_lu_matches_closed_form(self, r):
        assert determinant_check(r) == pytest.approx(determinant_reference(r), rel=1e-9)

    def test_order_four(self):
        assert determinant_check(4) == pytest.approx(determinant_reference(4), rel=1e-7)


class TestValidation:
    def test_wrong_length(self):
        with pytest.raises(DomainError):
            SmoothstepPoly(1, np.array([1.0]))

    def test_does_not_reach_one(self):
        with pytest.raises(DomainError):
            SmoothstepPoly(1, np.array([10.0, -15.0, 5.0]))

    def test_derivative_rows_checked(self):
        with pytest.raises(DomainError):
            SmoothstepPoly(1, np.array([0.2, 0.3, 0.5]))

    def test_coeffs_frozen(self):
        poly = build_smoothstep(2)
        with pytest.raises(ValueError):
            poly.coeffs[0] = 0.0


class TestEvaluation:
    def test_step_values(self):
        poly = build_smoothstep(1)
        assert psi_eval(poly, 0.0) == 0.0
        assert psi_eval(poly, 1.0) == 1.0
        assert psi_eval(poly, -0.5) == 0.0
        assert psi_eval(poly, 2.0) == 1.0
        assert psi_eval(poly, 0.5) == pytest.approx(0.5, abs=1e-15)

    @pytest.mark.parametrize("r", [1, 2, 3, 4])
    def test_midpoint_is_half(self, r):
        assert psi_eval(build_smoothstep(r), 0.5) == pytest.approx(0.5, abs=1e-12)

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_range_and_monotonicity(self, r):
        poly = build_smoothstep(r)
        xs = np.linspace(-0.5, 1.5, 2001)
        vals = psi_eval(poly, xs)
        assert vals.min() >= -1e-12
        assert vals.max() <= 1.0 + 1e-12
        inner = np.linspace(0.0, 1.0, 1001)
        assert psi_derivative(poly, inner, 1).min() >= -1e-12

    def test_scalar_and_array_agree(self):
        poly = build_smoothstep(2)
        xs = np.linspace(-0.2, 1.2, 29)
        arr = psi_eval(poly, xs)
        for x, v in zip(xs, arr):
            assert psi_eval(poly, float(x)) == v

    @given(r=st.integers(1, 4), x=st.floats(0.0, 1.0))
    def test_mirror_identity(self, r, x):
        poly = build_smoothstep(r)
        assert psi_eval(poly, x) + psi_eval(poly, 1.0 - x) == pytest.approx(
            1.0, abs=1e-13
        )


class TestDerivatives:
    def test_order_zero_is_eval(self):
        poly = build_smoothstep(2)
        xs = np.linspace(-0.2, 1.2, 17)
        np.testing.assert_array_equal(psi_derivative(poly, xs, 0), psi_eval(poly, xs))

    def test_first_derivative_values(self):
        poly = build_smoothstep(1)
        assert psi_derivative(poly, 0.0, 1) == 0.0
        assert psi_derivative(poly, 1.0, 1) == 0.0
        assert psi_derivative(poly, -0.3, 1) == 0.0
        assert psi_derivative(poly, 0.5, 1) == pytest.approx(1.875, rel=1e-13)

    def test_order_validation(self):
        poly = build_smoothstep(1)
        with pytest.raises(DomainError):
            psi_derivative(poly, 0.5, -1)
        with pytest.raises(DomainError):
            psi_derivative(poly, 0.5, 3)
        with pytest.raises(DomainError):
            psi_derivative(poly, 0.5, 2.0)

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_seam_smoothness(self, r):
        # derivatives through order 2r vanish at both seams, and the
        # one-sided polynomial limit decays like h^(2r+1-i), so halving h
        # must shrink the inside/outside gap by at least a factor ~2
        poly = build_smoothstep(r)
        for i in range(1, 2 * r + 1):
            assert psi_derivative(poly, 0.0, i) == 0.0
            assert psi_derivative(poly, 1.0, i) == 0.0
            for seam, into in ((0.0, 1.0), (1.0, -1.0)):
                gaps = []
                for h in (1e-3, 5e-4, 2.5e-4):
                    inside = psi_derivative(poly, seam + into * h, i)
                    outside = psi_derivative(poly, seam - into * h, i)
                    gaps.append(abs(inside - outside))
                assert gaps[1] <= 0.75 * gaps[0] + 1e-12
                assert gaps[2] <= 0.75 * gaps[1] + 1e-12

    def test_mirror_antisymmetry(self):
        # psi'(x) = psi'(1-x); psi''(x) = -psi''(1-x)
        poly = build_smoothstep(2)
        for x in (0.1, 0.3, 0.45):
            assert psi_derivative(poly, x, 1) == pytest.approx(
                psi_derivative(poly, 1.0 - x, 1), rel=1e-12
            )
            assert psi_derivative(poly, x, 2) == pytest.approx(
                -psi_derivative(poly, 1.0 - x, 2), rel=1e-12
            )
