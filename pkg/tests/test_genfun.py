"""Tests for the generating functions of coupling-coefficient rows."""

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import MU_GRID, grid_mus, signs
from parabose.cgc_closed import vacuum_cgc_norm_sq
from parabose.core_arith import mu_factorial
from parabose.genfun import (GenFunCase, bracket_params, expected_absorbed_constant,
                             genfun_lhs, genfun_lhs_coeffs, genfun_rhs, genfun_rhs_coeffs,
                             hypergeom_sum, hypergeom_sum_direct, match_coefficients,
                             su11_genfun_lhs_coeffs, su11_genfun_rhs, su11_verify,
                             verify_genfun)

half = Fraction(1, 2)
L_GRID = (half, Fraction(1), Fraction(3, 2))
levels = st.integers(0, 10).flatmap(lambda E: st.tuples(st.just(E), st.integers(0, E)))


class TestBracket:
    """The hypergeometric bracket of the closed form."""

    def test_trivial_cases(self):
        assert hypergeom_sum(GenFunCase(2, 0, Fraction(1, 4), Fraction(3, 4))) == [1]
        for eps2 in (1, -1):
            case = GenFunCase(1, 0, Fraction(1, 4), Fraction(3, 4), 1, eps2)
            assert hypergeom_sum(case) == [1, Fraction(1, eps2)]

    @given(grid_mus, grid_mus, signs, levels)
    def test_direct_sum_matches(self, m1, m2, eps2, level):
        E, j = level
        case = GenFunCase(E - j, j, m1, m2, 1, eps2)
        assert hypergeom_sum_direct(case) == hypergeom_sum(case)

    def test_parameters_are_rational(self):
        first, second, coef = bracket_params("odd", 2, half, half, 1)
        assert all(isinstance(v, Fraction) for v in first + second + (coef,))
        first, second, coef = bracket_params("even", 0, half, half, 1)
        assert second is None or coef == 0


class TestIdentity:
    """Closed form against the oracle series."""

    def test_ground_row(self):
        case = GenFunCase(0, 0)
        for s in (-1.5, 0.0, 0.3, 2.0):
            assert genfun_rhs(case, s) == pytest.approx(1.0)
            assert genfun_lhs(case, s) == pytest.approx(1.0)
        assert verify_genfun(case).residual == 0

    @given(grid_mus, grid_mus, st.integers(0, 5), st.integers(0, 3))
    def test_value_at_origin(self, m1, m2, j, k):
        case = GenFunCase(2 * k, j, m1, m2)
        anchor = vacuum_cgc_norm_sq(j, case.reps).unitarity
        expected = math.sqrt(anchor / (mu_factorial(j, m2) * mu_factorial(2 * k, case.mu12)))
        assert genfun_rhs(case, 0.0) == pytest.approx(expected)

    def test_point_example(self):
        case = GenFunCase(2, 2, half, Fraction(1, 4))
        assert genfun_rhs(case, 1 / 3) == pytest.approx(genfun_lhs(case, 1 / 3), abs=1e-10)

    def test_level_one_coefficients(self):
        lhs = genfun_lhs_coeffs(GenFunCase(0, 1, half, half))
        assert abs(lhs[0]) == pytest.approx(0.5)
        assert abs(lhs[1]) == pytest.approx(0.5)

    @given(grid_mus, grid_mus, signs, levels)
    def test_residual_small(self, m1, m2, eps2, level):
        E, j = level
        check = verify_genfun(GenFunCase(E - j, j, m1, m2, 1, eps2))
        assert check.residual <= 1e-10

    @pytest.mark.parametrize("n12,j", [(2, 2), (2, 3), (3, 2), (3, 3)])
    def test_all_parity_cases(self, n12, j):
        for m1 in MU_GRID:
            for m2 in MU_GRID:
                assert verify_genfun(GenFunCase(n12, j, m1, m2)).residual <= 1e-10

    @given(grid_mus, grid_mus, signs, levels)
    def test_absorbed_constant_predicted(self, m1, m2, eps2, level):
        E, j = level
        case = GenFunCase(E - j, j, m1, m2, 1, eps2)
        check = verify_genfun(case)
        assert check.absorbed_constant == pytest.approx(expected_absorbed_constant(case))

    @given(grid_mus, grid_mus, levels)
    def test_closed_table_series(self, m1, m2, level):
        E, j = level
        case = GenFunCase(E - j, j, m1, m2)
        assert genfun_lhs_coeffs(case, "closed") == pytest.approx(
            genfun_lhs_coeffs(case, "oracle"), abs=1e-12)

    def test_sensitivity_to_mu2(self):
        case = GenFunCase(2, 3, half, Fraction(1, 4))
        moved = GenFunCase(2, 3, half, Fraction(1, 4) + Fraction(1, 1000))
        assert verify_genfun(case, rhs_case=moved).residual > 1e-5

    def test_displayed_anchor_breaks_scale(self):
        case = GenFunCase(0, 1, half, half)
        lhs = genfun_lhs_coeffs(case)
        rhs = genfun_rhs_coeffs(case, anchor="displayed")
        assert abs(lhs[0]) != pytest.approx(abs(rhs[0]))

    def test_match_coefficients(self):
        assert match_coefficients([0, 2, 4], [0, 1, 2]) == (0.0, 2.0)


class TestSu11:
    """su(1,1) generating function."""

    def test_ground(self):
        assert su11_genfun_lhs_coeffs(0, 0, half, half) == pytest.approx([1.0])
        assert su11_genfun_rhs(0, 0, half, half, 0.7) == pytest.approx(1.0)

    def test_first_level(self):
        assert su11_verify(1, 0, half, half) <= 1e-12

    @given(st.sampled_from(L_GRID), st.sampled_from(L_GRID), st.integers(0, 8),
           st.integers(0, 8))
    def test_sweep(self, l1, l2, k, m12):
        assert su11_verify(k, m12, l1, l2) <= 1e-10

    def test_displayed_anchor_fails_beyond_first_level(self):
        assert su11_verify(2, 0, half, half, anchor="displayed") > 1e-3
