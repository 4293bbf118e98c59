"""Tests for hypergeometric series and the orthogonal polynomial families."""

import math
from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import special

from conftest import MU_GRID, grid_mus, mus
from parabose.core_arith import mu_number
from parabose.orthopoly import (DomainError, HypergeomSpec, dm1h_data, dm1h_recurrence,
                                dual_m1_hahn, dual_m1_hahn_all, dual_m1_hahn_hyper,
                                generalized_hermite, hypergeom, jacobi, jacobi_homogeneous,
                                laguerre, poly_eval)

half = Fraction(1, 2)


class TestHypergeom:
    """Terminating pFq series."""

    def test_zero_numerator(self):
        assert hypergeom([0, Fraction(3, 2)], [Fraction(5, 7)], Fraction(9)) == 1

    def test_two_term_2f1(self):
        b, c, z = Fraction(2, 3), Fraction(5, 4), Fraction(-3, 7)
        assert hypergeom(HypergeomSpec((-1, b), (c,), z)) == 1 - b * z / c

    def test_two_term_3f2(self):
        a, b, c, d = Fraction(1, 3), Fraction(2), Fraction(7, 2), Fraction(1, 5)
        assert hypergeom([-1, a, b], [c, d], 1) == 1 - a * b / (c * d)

    def test_non_terminating_rejected(self):
        with pytest.raises(DomainError):
            hypergeom([half, 1], [2], half)

    def test_vanishing_denominator(self):
        with pytest.raises(DomainError):
            hypergeom([-3, 1], [-1], 1)

    @given(st.integers(0, 8), st.fractions(-3, 3, max_denominator=6),
           st.fractions(Fraction(1, 6), 4, max_denominator=6),
           st.floats(-0.9, 0.9))
    def test_2f1_matches_scipy(self, n, b, c, z):
        ours = float(hypergeom([-n, b], [c], Fraction(z)))
        ref = special.hyp2f1(-n, float(b), float(c), z)
        assert ours == pytest.approx(ref, rel=1e-9, abs=1e-9)

    @given(st.integers(0, 6), st.fractions(1, 5, max_denominator=5),
           st.fractions(1, 5, max_denominator=5))
    def test_chu_vandermonde(self, n, b, c):
        assert hypergeom([-n, b], [c], 1) == (
            math.prod(c - b + i for i in range(n)) / math.prod(c + i for i in range(n)))


class TestClassical:
    """Laguerre and Jacobi polynomials against scipy."""

    def test_laguerre_examples(self):
        a, x = Fraction(3, 5), Fraction(7, 3)
        assert laguerre(0, a, x) == 1
        assert laguerre(1, a, x) == 1 + a - x
        assert laguerre(2, 0, x) == (x * x - 4 * x + 2) / 2

    def test_jacobi_examples(self):
        a, b, x = Fraction(1, 3), Fraction(-1, 3), Fraction(2, 5)
        assert jacobi(0, a, b, x) == 1
        assert jacobi(1, a, b, x) == (a + 1) + (a + b + 2) * (x - 1) / 2

    @given(st.integers(0, 10), st.fractions(-Fraction(1, 2), 4, max_denominator=8),
           st.floats(0, 10))
    def test_laguerre_scipy(self, n, a, x):
        ours = float(laguerre(n, a, Fraction(x)))
        assert ours == pytest.approx(special.eval_genlaguerre(n, float(a), x), rel=1e-8, abs=1e-8)

    @given(st.integers(0, 8), st.fractions(-Fraction(1, 2), 3, max_denominator=8),
           st.fractions(-Fraction(1, 2), 3, max_denominator=8), st.floats(-1, 1))
    def test_jacobi_scipy(self, n, a, b, x):
        ours = float(jacobi(n, a, b, Fraction(x)))
        ref = special.eval_jacobi(n, float(a), float(b), x)
        assert ours == pytest.approx(ref, rel=1e-8, abs=1e-8)

    @given(st.integers(0, 6), mus, mus, st.floats(-2, 2), st.floats(-2, 2))
    def test_jacobi_homogeneous_form(self, n, a, b, x, y):
        # rho**(2n) P_n(cos 2 phi) with x = rho cos phi, y = rho sin phi
        rho2 = x * x + y * y
        if rho2 < 1e-6:
            return
        terms = jacobi_homogeneous(n, a, b)
        lhs = sum(float(c) * x ** i * y ** k for (i, k), c in terms.items())
        rhs = rho2 ** n * float(jacobi(n, a, b, Fraction((x * x - y * y) / rho2)))
        assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-9)


class TestGeneralizedHermite:
    """Normalized generalized Hermite polynomials."""

    @given(mus)
    def test_low_degrees(self, mu):
        m = float(mu)
        assert generalized_hermite(0, mu) == pytest.approx([1 / math.sqrt(math.gamma(m + 0.5))])
        assert generalized_hermite(1, mu) == pytest.approx([0, 1 / math.sqrt(math.gamma(m + 1.5))])
        h2 = np.array([-(m + 0.5), 0, 1]) / math.sqrt(math.gamma(m + 1.5))
        assert generalized_hermite(2, mu) == pytest.approx(h2)

    @given(st.integers(0, 10), mus)
    def test_exact_pair(self, n, mu):
        monic, lead = generalized_hermite(n, mu, exact=True)
        assert monic[-1] == 1
        assert all(isinstance(c, Fraction) for c in monic)
        assert [float(c) * lead for c in monic] == pytest.approx(generalized_hermite(n, mu))

    @given(st.integers(0, 10), mus)
    def test_parity(self, n, mu):
        monic, _ = generalized_hermite(n, mu, exact=True)
        assert all(c == 0 for i, c in enumerate(monic) if (i - n) % 2)

    def test_mu_zero_is_hermite(self):
        # mu = 0 reduces to the physicists' Hermite polynomials, H_n / 2**n monic
        for n in range(8):
            monic, _ = generalized_hermite(n, 0, exact=True)
            ref = special.hermite(n).coeffs[::-1] / 2 ** n
            assert [float(c) for c in monic] == pytest.approx(ref)


class TestDualMinusOneHahn:
    """Dual -1 Hahn polynomials: recurrence, 3F2 forms and orthogonality data."""

    def test_examples(self):
        eta = xi = half
        assert dual_m1_hahn(0, eta, xi, 4) == [1]
        for N in (0, 2, 4):
            eta, xi = Fraction(1, 3), Fraction(3, 4)
            assert dual_m1_hahn(1, eta, xi, N) == [2 * eta + 2 * xi + 1, 1]
        data = dm1h_data(half, half, 2)
        assert data.grid[0] == -7
        assert poly_eval(dual_m1_hahn(1, half, half, 2), data.grid[0]) == -4

    @given(mus, mus)
    def test_small_data(self, eta, xi):
        assert dm1h_data(eta, xi, 0).kappa0 == 1
        data = dm1h_data(eta, xi, 1)
        assert data.weights[0] == 1
        assert data.weights[1] == (xi + half) / (eta + half)
        assert data.kappa0 == (eta + xi + 1) / (eta + half)

    @given(grid_mus, grid_mus, st.integers(0, 8))
    def test_weights_sum_to_kappa0(self, eta, xi, N):
        data = dm1h_data(eta, xi, N)
        assert sum(data.weights) == data.kappa0

    @given(grid_mus, grid_mus, st.integers(0, 8))
    def test_next_polynomial_vanishes_on_grid(self, eta, xi, N):
        data = dm1h_data(eta, xi, N)
        top = dual_m1_hahn(N + 1, eta, xi, N)
        assert all(poly_eval(top, y) == 0 for y in data.grid)

    @given(grid_mus, grid_mus, st.integers(0, 8))
    def test_orthogonality_exact(self, eta, xi, N):
        data = dm1h_data(eta, xi, N)
        polys = dual_m1_hahn_all(eta, xi, N)
        u, _ = dm1h_recurrence(eta, xi, N)
        for n, m in product(range(N + 1), repeat=2):
            total = sum(w * poly_eval(polys[n], y) * poly_eval(polys[m], y)
                        for w, y in zip(data.weights, data.grid))
            expected = data.kappa0 * math.prod(u(i) for i in range(1, n + 1)) if n == m else 0
            assert total == expected

    @given(mus, mus, st.integers(0, 7), st.fractions(-20, 20, max_denominator=5))
    def test_hyper_matches_recurrence(self, eta, xi, N, y):
        for n in range(N + 1):
            assert dual_m1_hahn_hyper(n, y, eta, xi, N) == poly_eval(
                dual_m1_hahn(n, eta, xi, N), y)

    def test_displayed_form_disagrees(self):
        # the commonly displayed parameters do not reproduce the recurrence
        eta, xi = Fraction(1, 4), Fraction(3, 4)
        mismatches = 0
        for N in range(1, 5):
            for n in range(N + 1):
                for y in dm1h_data(eta, xi, N).grid:
                    rec = poly_eval(dual_m1_hahn(n, eta, xi, N), y)
                    try:
                        shown = dual_m1_hahn_hyper(n, y, eta, xi, N, form="displayed")
                    except DomainError:
                        shown = None
                    mismatches += shown != rec
        assert mismatches > 0

    def test_recurrence_coefficients(self):
        eta, xi, N = Fraction(1, 4), Fraction(3, 2), 5
        u, b = dm1h_recurrence(eta, xi, N)
        assert u(1) == 4 * mu_number(1, xi) * mu_number(N, eta)
        assert b(0) == 2 * mu_number(N, eta) - 2 * eta - 2 * xi - 2 * N - 1

    def test_grid_distinct(self):
        for eta, xi in product(MU_GRID, repeat=2):
            for N in range(9):
                grid = dm1h_data(eta, xi, N).grid
                assert len(set(grid)) == N + 1
