"""Generating-function identities for the coupling coefficients.

Both sides of each identity are finite polynomials in the formal variable,
so every check compares coefficient vectors rather than sampled values.
"""

import math
from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .cgc_closed import closed_table, vacuum_cgc_norm_sq
from .core_arith import (as_rational, mu_factorial, mu_falling, mu_number,
                         parity_sign, pochhammer)
from .orthopoly import hypergeom_coeffs, poly_add, poly_mul, poly_scale
from .osp_rep import (RepLabel, coupled_label, su11_oracle_cgc,
                      su11_vacuum_norm, su11_vacuum_norm_unitarity, oracle_cgc)

GenFunCheck = namedtuple("GenFunCheck", ["residual", "absorbed_constant", "lhs", "rhs"])


@dataclass(frozen=True)
class GenFunCase:
    """One coupled row ``(n12, j)`` together with the two representations."""

    n12: int
    j: int
    mu1: Fraction = Fraction(1, 2)
    mu2: Fraction = Fraction(1, 2)
    eps1: int = 1
    eps2: int = 1

    def __post_init__(self):
        object.__setattr__(self, "mu1", as_rational(self.mu1))
        object.__setattr__(self, "mu2", as_rational(self.mu2))
        if self.n12 < 0 or self.j < 0:
            raise ValueError("n12 and j must be non-negative")

    @property
    def parity(self):
        return "odd" if self.n12 % 2 else "even"

    @property
    def level(self):
        return self.n12 + self.j

    @property
    def reps(self):
        return (RepLabel(self.mu1, self.eps1), RepLabel(self.mu2, self.eps2))

    @property
    def mu12(self):
        return coupled_label(self.j, self.reps).mu


@lru_cache(maxsize=256)
def _oracle(reps, emax):
    return oracle_cgc(reps, emax)


@lru_cache(maxsize=256)
def _closed(reps, emax):
    return closed_table(reps, emax)


# ---------------------------------------------------------------------------
# bracketed two-2F1 combination


def bracket_params(n12_parity, j, mu1, mu2, eps2):
    """Parameters of ``2F1(a, b; c; -s**2) + s * coef * 2F1(a', b'; c'; -s**2)``.

    Returns ``((a, b, c), (a', b', c'), coef)`` as Fractions. The second
    series is absent (``None``) when its coefficient vanishes identically,
    which happens only for ``n12`` even and ``j = 0``.
    """
    mu1 = as_rational(mu1)
    mu2 = as_rational(mu2)
    h = Fraction(1, 2)
    jj = Fraction(j)
    den = (1 + 2 * mu1) * eps2
    if n12_parity == "even":
        if j % 2 == 0:
            first = (-jj / 2, h - jj / 2 - mu2, h + mu1)
            second = (1 - jj / 2, h - jj / 2 - mu2, 3 * h + mu1)
            coef = jj / den
        else:
            first = (-(jj - 1) / 2, -jj / 2 - mu2, h + mu1)
            second = (-(jj - 1) / 2, 1 - jj / 2 - mu2, 3 * h + mu1)
            coef = -(jj + 2 * mu2) / den
    elif n12_parity == "odd":
        if j % 2 == 0:
            first = (-jj / 2, -(jj + 1) / 2 - mu2, h + mu1)
            second = (-jj / 2, -(jj - 1) / 2 - mu2, 3 * h + mu1)
            coef = (jj + 1 + 2 * mu1) / den
        else:
            first = (-(jj + 1) / 2, -jj / 2 - mu2, h + mu1)
            second = (-(jj - 1) / 2, -jj / 2 - mu2, 3 * h + mu1)
            coef = -(1 + jj + 2 * mu1 + 2 * mu2) / den
    else:
        raise ValueError(f"parity must be 'even' or 'odd', got {n12_parity!r}")
    if coef == 0:
        second = None
    return first, second, coef


def _series_in_neg_s2(a, b, c):
    coeffs = hypergeom_coeffs([a, b], [c])
    out = [Fraction(0)] * (2 * len(coeffs) - 1)
    for k, v in enumerate(coeffs):
        out[2 * k] = v * (-1) ** k
    return out


def hypergeom_sum(case):
    """Exact coefficients in ``s`` of the bracketed two-2F1 combination."""
    first, second, coef = bracket_params(case.parity, case.j, case.mu1, case.mu2, case.eps2)
    out = _series_in_neg_s2(*first)
    if second is not None:
        out = poly_add(out, [Fraction(0)] + poly_scale(_series_in_neg_s2(*second), coef))
    return out


def hypergeom_sum_direct(case):
    """The same polynomial summed term by term from the mu-combinatorics.

    Even ``n12``: ``sum_{n<=j} (-s/eps2)**n sign(n, j) [j]..[j-n+1]_mu2 / [n]_mu1!``.
    Odd ``n12``: ``sum_{n<=j+1} (-s/eps2)**n sign(n, j) [j]..[j-n+2]_mu2
    ([n]_mu1 + [1+j-n]_mu2) / [n]_mu1!``, where the length -1 falling
    product is ``1/[j+1]_mu2``.
    """
    j, mu1, mu2, eps2 = case.j, case.mu1, case.mu2, case.eps2
    out = []
    if case.parity == "even":
        for n in range(j + 1):
            term = mu_falling(j, n, mu2) / mu_factorial(n, mu1)
            out.append((-eps2) ** n * parity_sign(n, j) * term)
    else:
        for n in range(j + 2):
            if n == 0:
                falling = 1 / mu_number(j + 1, mu2)
            else:
                falling = mu_falling(j, n - 1, mu2)
            term = falling * (mu_number(n, mu1) + mu_number(1 + j - n, mu2)) / mu_factorial(n, mu1)
            out.append((-eps2) ** n * parity_sign(n, j) * term)
    return out


# ---------------------------------------------------------------------------
# both sides of the identity


def _binomial_in_s2(k):
    out = [Fraction(0)] * (2 * k + 1)
    for i in range(k + 1):
        out[2 * i] = Fraction(math.comb(k, i))
    return out


def genfun_prefactor(case, anchor="unitarity"):
    """Scalar multiplying ``(s**2+1)**K`` times the bracket.

    Even ``n12``: ``A / sqrt([j]_mu2! [n12]_mu12!)``. Odd ``n12``:
    ``A / (sqrt([n12-1]_mu12! [1]_mu12) sqrt([j]_mu2!))``. ``A`` is the
    vacuum anchor, from unitarity by default or from the quoted closed form
    with ``anchor="displayed"``.
    """
    norms = vacuum_cgc_norm_sq(case.j, case.reps)
    a_sq = norms.unitarity if anchor == "unitarity" else norms.displayed
    mu12 = case.mu12
    if case.parity == "even":
        den = mu_factorial(case.j, case.mu2) * mu_factorial(case.n12, mu12)
    else:
        den = (mu_factorial(case.n12 - 1, mu12) * mu_number(1, mu12)
               * mu_factorial(case.j, case.mu2))
    return math.sqrt(a_sq / den)


def genfun_rhs_coeffs(case, anchor="unitarity"):
    """Float coefficients in ``s`` of the closed-form side."""
    k = case.n12 // 2
    poly = poly_mul(_binomial_in_s2(k), hypergeom_sum(case))
    pref = genfun_prefactor(case, anchor)
    return np.array([float(c) * pref for c in poly])


def genfun_rhs(case, s, anchor="unitarity"):
    """Closed-form side evaluated at ``s``."""
    return float(np.polynomial.polynomial.polyval(s, genfun_rhs_coeffs(case, anchor)))


def genfun_lhs_coeffs(case, method="oracle"):
    """Coefficients ``<n, E-n | n12, j> / sqrt([n]_mu1! [E-n]_mu2!)``, ``n = 0..E``."""
    E = case.level
    if method == "oracle":
        table = _oracle(case.reps, E)
    elif method == "closed":
        table = _closed(case.reps, E)
    else:
        raise ValueError(f"unknown method {method!r}")
    row = table.row(case.n12, case.j)
    return np.array([row[n] / math.sqrt(mu_factorial(n, case.mu1) * mu_factorial(E - n, case.mu2))
                     for n in range(E + 1)])


def genfun_lhs(case, s, method="oracle"):
    """Series side evaluated at ``s``."""
    return float(np.polynomial.polynomial.polyval(s, genfun_lhs_coeffs(case, method)))


def match_coefficients(lhs, rhs, tol=1e-13):
    """Scale ``rhs`` to ``lhs`` at the lowest nonvanishing coefficient.

    Returns ``(residual, constant)`` with ``residual = max |lhs - constant *
    rhs|`` after zero padding both vectors to a common length.
    """
    n = max(len(lhs), len(rhs))
    a = np.zeros(n)
    b = np.zeros(n)
    a[:len(lhs)] = lhs
    b[:len(rhs)] = rhs
    nz = np.flatnonzero(np.abs(a) > tol)
    if len(nz) == 0 or abs(b[nz[0]]) <= tol:
        return float(np.abs(a - b).max()), 1.0
    c = a[nz[0]] / b[nz[0]]
    return float(np.abs(a - c * b).max()), float(c)


def verify_genfun(case, method="oracle", rhs_case=None, anchor="unitarity"):
    """Compare the series and closed-form sides coefficient by coefficient.

    The overall constant is fixed at the lowest nonvanishing coefficient
    and reported as ``absorbed_constant``; the residual is the pass/fail
    signal. ``rhs_case`` lets the closed side use different parameters
    (used to probe sensitivity).
    """
    lhs = genfun_lhs_coeffs(case, method)
    rhs = genfun_rhs_coeffs(rhs_case or case, anchor)
    residual, const = match_coefficients(lhs, rhs)
    return GenFunCheck(residual, const, lhs, rhs)


def expected_absorbed_constant(case):
    """Constant the closed side is off by under the unitarity anchor.

    It is 1 for even ``n12``. For odd ``n12`` the prefactor
    ``sqrt([n12-1]_mu12! [1]_mu12)`` should read ``sqrt([n12]_mu12!)``, so
    the constant is ``sqrt([n12-1]_mu12! [1]_mu12 / [n12]_mu12!)``; it equals
    1 only for ``n12 = 1``.
    """
    if case.parity == "even":
        return 1.0
    mu12 = case.mu12
    return math.sqrt(mu_factorial(case.n12 - 1, mu12) * mu_number(1, mu12)
                     / mu_factorial(case.n12, mu12))


# ---------------------------------------------------------------------------
# su(1,1)


@lru_cache(maxsize=64)
def _su11(l1, l2, emax):
    return su11_oracle_cgc(l1, l2, emax)


def su11_genfun_rhs_coeffs(k, m12, l1, l2, anchor="unitarity"):
    """Coefficients in ``z`` of
    ``2F1(-k, 1-k-2l2; 2l1; z) (1-z)**m12 A / sqrt(m12! (2l12)_m12 k! (2l2)_k)``.
    """
    l1 = as_rational(l1)
    l2 = as_rational(l2)
    l12 = l1 + l2 + k
    series = hypergeom_coeffs([-k, 1 - k - 2 * l2], [2 * l1])
    binom = [Fraction(math.comb(m12, i) * (-1) ** i) for i in range(m12 + 1)]
    poly = poly_mul(series, binom)
    if anchor == "unitarity":
        a_sq = su11_vacuum_norm_unitarity(k, l1, l2)
    else:
        a_sq = su11_vacuum_norm(k, l1, l2)
    den = (math.factorial(m12) * pochhammer(2 * l12, m12)
           * math.factorial(k) * pochhammer(2 * l2, k))
    pref = math.sqrt(a_sq / den)
    return np.array([float(c) * pref for c in poly])


def su11_genfun_rhs(k, m12, l1, l2, z, anchor="unitarity"):
    """Closed-form su(1,1) generating function evaluated at ``z``."""
    coeffs = su11_genfun_rhs_coeffs(k, m12, l1, l2, anchor)
    return float(np.polynomial.polynomial.polyval(z, coeffs))


def su11_genfun_lhs_coeffs(k, m12, l1, l2):
    """``(-1)**m <m, E-m | m12, k> / sqrt(m! (2l1)_m (E-m)! (2l2)_{E-m})``."""
    l1 = as_rational(l1)
    l2 = as_rational(l2)
    E = m12 + k
    row = _su11(l1, l2, E).row(m12, k)
    return np.array([(-1) ** m * row[m] / math.sqrt(
        math.factorial(m) * pochhammer(2 * l1, m)
        * math.factorial(E - m) * pochhammer(2 * l2, E - m)) for m in range(E + 1)])


def su11_verify(k, m12, l1, l2, anchor="unitarity"):
    """Largest coefficient difference between the two su(1,1) sides.

    No sign or scale matching is applied.
    """
    lhs = su11_genfun_lhs_coeffs(k, m12, l1, l2)
    rhs = su11_genfun_rhs_coeffs(k, m12, l1, l2, anchor)
    n = max(len(lhs), len(rhs))
    a = np.zeros(n)
    b = np.zeros(n)
    a[:len(lhs)] = lhs
    b[:len(rhs)] = rhs
    return float(np.abs(a - b).max())
