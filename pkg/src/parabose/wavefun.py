"""Position-space realization: Dunkl calculus on polynomial times Gaussian.

One-dimensional functions are ``scale * p(x) * exp(-x**2/2)`` and
two-dimensional ones ``scale * p(x, y) * exp(-(x**2 + y**2)/2)``. The
polynomial part is exact (Fractions) wherever the construction allows it;
Gamma-function normalizations live in the float ``scale``.
"""

import math
from collections import namedtuple
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.special import roots_genlaguerre

from .core_arith import as_rational, pochhammer
from .genfun import GenFunCase, _oracle, genfun_rhs_coeffs, match_coefficients
from .orthopoly import (generalized_hermite_monic, hermite_leading, hypergeom_coeffs,
                        jacobi_homogeneous, laguerre_coeffs, poly_add, poly_scale)
from .osp_rep import RepLabel

SQRT2 = math.sqrt(2.0)

EigenCheck = namedtuple("EigenCheck", ["eigenvalue", "residual"])
DecompositionCheck = namedtuple("DecompositionCheck", ["residual", "sign"])
Concordance = namedtuple("Concordance", ["deviation", "constant"])


# ---------------------------------------------------------------------------
# one dimension


@dataclass
class GaussianPoly1D:
    """``scale * sum_i coeffs[i] x**i * exp(-x**2/2)`` with Dunkl parameter ``mu``."""

    coeffs: list
    mu: Fraction = Fraction(0)
    scale: float = 1.0

    def __post_init__(self):
        self.mu = as_rational(self.mu)
        self.coeffs = list(self.coeffs) or [Fraction(0)]

    def values(self):
        """Float coefficients with the scale folded in."""
        return np.array([float(c) * self.scale for c in self.coeffs])

    def __call__(self, x):
        return float(np.polynomial.polynomial.polyval(x, self.values()) * math.exp(-x * x / 2))


def _dunkl_poly(p, mu):
    zero = 0 * p[0]
    out = [zero] * (len(p) + 1)
    for i, c in enumerate(p):
        if i > 0:
            out[i - 1] += i * c          # p'
            if i % 2:
                out[i - 1] += 2 * mu * c  # mu (p(x) - p(-x)) / x
        out[i + 1] -= c                  # Gaussian chain rule
    return out


def dunkl_apply(f):
    """Dunkl derivative ``d/dx + (mu/x)(1 - P_x)`` on ``p(x) exp(-x**2/2)``.

    On the polynomial part this is ``p' - x p + mu (p(x) - p(-x))/x``; the
    last quotient is exact because only odd powers survive the difference.
    """
    return GaussianPoly1D(_dunkl_poly(f.coeffs, f.mu), f.mu, f.scale)


def _times_x(p):
    return [0 * p[0]] + list(p)


def realize_apply(generator, f):
    """Apply ``J0 = (x**2 - D**2)/2``, ``J+- = (x -+ D)/sqrt(2)`` or ``R = P_x``.

    The ``1/sqrt(2)`` of the ladder operators is carried in ``scale`` so the
    polynomial part stays exact.
    """
    if generator == "J0":
        dd = _dunkl_poly(_dunkl_poly(f.coeffs, f.mu), f.mu)
        xx = _times_x(_times_x(f.coeffs))
        p = poly_scale(poly_add(xx, poly_scale(dd, -1)), Fraction(1, 2))
        return GaussianPoly1D(p, f.mu, f.scale)
    if generator in ("J+", "J-"):
        d = _dunkl_poly(f.coeffs, f.mu)
        sign = -1 if generator == "J+" else 1
        p = poly_add(_times_x(f.coeffs), poly_scale(d, sign))
        return GaussianPoly1D(p, f.mu, f.scale / SQRT2)
    if generator == "R":
        return GaussianPoly1D([c * (-1) ** i for i, c in enumerate(f.coeffs)], f.mu, f.scale)
    raise ValueError(f"unknown generator {generator!r}")


def psi1d(n, mu):
    """Parabose oscillator eigenfunction ``exp(-x**2/2) H_n^mu(x)``.

    The polynomial part is the exact monic generalized Hermite polynomial;
    its normalization is the float ``scale``.
    """
    return GaussianPoly1D(generalized_hermite_monic(n, mu), mu, hermite_leading(n, mu))


def inner_product_1d(f, g, order=None):
    """``int f(x) g(x) |x|**(2 mu) dx`` over the real line.

    Only the even part of ``p_f p_g`` contributes. After ``t = x**2`` the
    integral becomes a generalized Gauss-Laguerre rule with exponent
    ``mu - 1/2``, exact for polynomials of the degree encountered.
    """
    prod = np.polynomial.polynomial.polymul(f.values(), g.values())
    even = prod[0::2]
    order = order or max(len(even), 2)
    t, w = roots_genlaguerre(order, float(f.mu) - 0.5)
    return float(np.sum(w * np.polynomial.polynomial.polyval(t, even)))


def norm_sq_coefficient(n, mu):
    """``N_mu(n)**2 = 2**n / ([n]_mu! Gamma(mu + 1/2))``, the squared leading coefficient."""
    return hermite_leading(n, mu) ** 2


# ---------------------------------------------------------------------------
# two dimensions


@dataclass
class GaussianPoly2D:
    """``scale * sum c_ik x**i y**k * exp(-(x**2+y**2)/2)``; ``coeffs`` maps ``(i, k) -> c``."""

    coeffs: dict = field(default_factory=dict)
    mu1: Fraction = Fraction(0)
    mu2: Fraction = Fraction(0)
    scale: float = 1.0

    def __post_init__(self):
        self.mu1 = as_rational(self.mu1)
        self.mu2 = as_rational(self.mu2)

    def degree(self, tol=0.0):
        live = [i + k for (i, k), c in self.coeffs.items() if abs(c) > tol]
        return max(live) if live else -1

    def to_array(self):
        """Dense float array ``a[i, k]`` including the scale."""
        if not self.coeffs:
            return np.zeros((1, 1))
        di = max(i for i, _ in self.coeffs) + 1
        dk = max(k for _, k in self.coeffs) + 1
        out = np.zeros((di, dk))
        for (i, k), c in self.coeffs.items():
            out[i, k] += float(c) * self.scale
        return out

    def homogeneous_part(self, degree):
        """Terms of total degree ``degree`` as a float dict (scale included)."""
        return {(i, k): float(c) * self.scale for (i, k), c in self.coeffs.items()
                if i + k == degree}

    def __call__(self, x, y):
        a = self.to_array()
        return float(np.polynomial.polynomial.polyval2d(x, y, a) * math.exp(-(x * x + y * y) / 2))


def _add_into(out, key, value):
    out[key] = out.get(key, 0) + value


def _combine(*terms):
    out = {}
    for scale, d in terms:
        for key, c in d.items():
            _add_into(out, key, scale * c)
    return out


def _dmul(a, b):
    out = {}
    for (i1, k1), c1 in a.items():
        for (i2, k2), c2 in b.items():
            _add_into(out, (i1 + i2, k1 + k2), c1 * c2)
    return out


def _dunkl2d(coeffs, axis, mu):
    out = {}
    for (i, k), c in coeffs.items():
        e = (i, k)[axis]
        step = (1, 0) if axis == 0 else (0, 1)
        down = (i - step[0], k - step[1])
        up = (i + step[0], k + step[1])
        if e > 0:
            _add_into(out, down, e * c)
            if e % 2:
                _add_into(out, down, 2 * mu * c)
        _add_into(out, up, -c)
    return out


def _reflect(coeffs, axis):
    return {(i, k): c * (-1) ** ((i, k)[axis]) for (i, k), c in coeffs.items()}


def _times(coeffs, i0, k0):
    return {(i + i0, k + k0): c for (i, k), c in coeffs.items()}


def dunkl2d_apply(f, axis):
    """Dunkl derivative along ``x`` (axis 0, parameter mu1) or ``y`` (axis 1, mu2)."""
    mu = f.mu1 if axis == 0 else f.mu2
    return GaussianPoly2D(_dunkl2d(f.coeffs, axis, mu), f.mu1, f.mu2, f.scale)


def hamiltonian2d_apply(f):
    """``H_xy = J0(x) + J0(y)`` with ``J0 = (x**2 - D**2)/2`` on each axis."""
    out = {}
    for axis, mu in ((0, f.mu1), (1, f.mu2)):
        dd = _dunkl2d(_dunkl2d(f.coeffs, axis, mu), axis, mu)
        sq = _times(f.coeffs, 2, 0) if axis == 0 else _times(f.coeffs, 0, 2)
        out = _combine((1, out), (Fraction(1, 2), sq), (Fraction(-1, 2), dd))
    return GaussianPoly2D(out, f.mu1, f.mu2, f.scale)


def casimir2d_apply(f):
    """``(y D_x - x D_y) P_x - mu1 P_y - mu2 P_x - (1/2) P_x P_y`` on ``f``."""
    px = _reflect(f.coeffs, 0)
    py = _reflect(f.coeffs, 1)
    pxy = _reflect(px, 1)
    ang = _combine((1, _times(_dunkl2d(px, 0, f.mu1), 0, 1)),
                   (-1, _times(_dunkl2d(px, 1, f.mu2), 1, 0)))
    out = _combine((1, ang), (-f.mu1, py), (-f.mu2, px), (Fraction(-1, 2), pxy))
    return GaussianPoly2D(out, f.mu1, f.mu2, f.scale)


def eigen_check(image, f):
    """Rayleigh quotient of ``image`` against ``f`` and the residual ``max|image - lam f|``.

    Both are taken over the coefficient vectors (scales included).
    """
    keys = sorted(set(image.coeffs) | set(f.coeffs))
    a = np.array([float(image.coeffs.get(k, 0)) * image.scale for k in keys])
    b = np.array([float(f.coeffs.get(k, 0)) * f.scale for k in keys])
    lam = float(a @ b / (b @ b))
    return EigenCheck(lam, float(np.abs(a - lam * b).max()))


def _xi(J, mu1, mu2):
    mu1, mu2 = float(mu1), float(mu2)
    return math.sqrt(math.factorial(J) * math.gamma(J + mu1 + mu2 + 1)
                     / (2 * math.gamma(J + mu1 + 0.5) * math.gamma(J + mu2 + 0.5)))


def angular_normalization(j, mu1, mu2, kind):
    """Angular normalizations ``xi+`` (``kind="+"``) and ``xi-`` (``kind="-"``)."""
    if kind == "+":
        J = j // 2 if j % 2 == 0 else (j + 1) // 2
    elif kind == "-":
        J = j // 2 if j % 2 == 0 else (j - 1) // 2
    else:
        raise ValueError("kind must be '+' or '-'")
    return _xi(J, mu1, mu2)


def radial_leading(n, mu):
    """Signed leading factor ``Lambda_n^mu`` of the radial wavefunction.

    ``sqrt(2 / (Gamma((n+1)/2 + mu) (n/2)!)) (-1)**(n/2)`` for even ``n`` and
    ``sqrt(2 / (Gamma(n/2 + mu + 1) ((n-1)/2)!)) (-1)**((n-1)/2)`` for odd.
    """
    mu = float(mu)
    if n % 2 == 0:
        return math.sqrt(2 / (math.gamma((n + 1) / 2 + mu) * math.factorial(n // 2))) * (-1) ** (n // 2)
    return math.sqrt(2 / (math.gamma(n / 2 + mu + 1) * math.factorial((n - 1) // 2))) * (-1) ** ((n - 1) // 2)


def angular_homogeneous(n12, j, mu1, mu2):
    """``rho**r F_j(phi)`` as a homogeneous polynomial in ``(x, y)``.

    ``r = j`` for even ``n12`` and ``j + 1`` for odd ``n12``. Coefficients
    are floats because the odd-``j`` combinations involve square roots.
    """
    mu1 = as_rational(mu1)
    mu2 = as_rational(mu2)
    h = Fraction(1, 2)

    def jac(n, a, b):
        if n < 0:
            return {}
        return jacobi_homogeneous(n, a, b)

    even_n, even_j = n12 % 2 == 0, j % 2 == 0
    if even_n and even_j:
        J = j // 2
        terms = [(1.0, jac(J, mu2 - h, mu1 - h)),
                 (-1.0, _times(jac(J - 1, mu2 + h, mu1 + h), 1, 1))]
        norm = angular_normalization(j, mu1, mu2, "+")
    elif not even_n and not even_j:
        J = (j - 1) // 2
        s = float(J + mu1 + mu2 + 1)
        terms = [(math.sqrt((J + 1) / s), jac(J + 1, mu2 - h, mu1 - h)),
                 (math.sqrt(s / (J + 1)), _times(jac(J, mu2 + h, mu1 + h), 1, 1))]
        norm = angular_normalization(j, mu1, mu2, "+")
    elif not even_n and even_j:
        J = j // 2
        terms = [(1.0, _times(jac(J, mu2 + h, mu1 - h), 0, 1)),
                 (1.0, _times(jac(J, mu2 - h, mu1 + h), 1, 0))]
        norm = angular_normalization(j, mu1, mu2, "-")
    else:
        J = (j - 1) // 2
        a = float(J + mu1 + h)
        b = float(J + mu2 + h)
        terms = [(math.sqrt(a / b), _times(jac(J, mu2 + h, mu1 - h), 0, 1)),
                 (-math.sqrt(b / a), _times(jac(J, mu2 - h, mu1 + h), 1, 0))]
        norm = angular_normalization(j, mu1, mu2, "-")
    return {key: norm * float(c) for key, c in _combine(*terms).items()}


def coupled_psi(n12, j, mu1, mu2):
    """Coupled wavefunction ``P_{n12}(rho) F_j(phi)`` in Cartesian form.

    The radial factor is
    ``sqrt(2 K!/Gamma(K + r + mu1 + mu2 + 1)) rho**r L_K^(r + mu1 + mu2)(rho**2)``
    with ``K = n12 // 2`` and ``r = j`` (``n12`` even) or ``r = j + 1``
    (``n12`` odd). The factor ``rho**r`` is absorbed by the angular part so
    the product is a polynomial of total degree ``n12 + j``.
    """
    mu1 = as_rational(mu1)
    mu2 = as_rational(mu2)
    K = n12 // 2
    r = j + (n12 % 2)
    alpha = r + mu1 + mu2
    norm = math.sqrt(2 * math.factorial(K) / math.gamma(K + r + float(mu1 + mu2) + 1))
    radial = {}
    rho2 = {(2, 0): 1, (0, 2): 1}
    power = {(0, 0): 1}
    for m, c in enumerate(laguerre_coeffs(K, alpha)):
        if m:
            power = _dmul(power, rho2)
        radial = _combine((1, radial), (c, power))
    angular = angular_homogeneous(n12, j, mu1, mu2)
    poly = {key: float(c) for key, c in _dmul(radial, angular).items()}
    return GaussianPoly2D(poly, mu1, mu2, norm)


def product_psi(n1, n2, mu1, mu2):
    """Uncoupled product ``psi_{n1}^{mu1}(x) psi_{n2}^{mu2}(y)``."""
    px = generalized_hermite_monic(n1, mu1)
    py = generalized_hermite_monic(n2, mu2)
    coeffs = {(i, k): a * b for i, a in enumerate(px) if a for k, b in enumerate(py) if b}
    return GaussianPoly2D(coeffs, mu1, mu2, hermite_leading(n1, mu1) * hermite_leading(n2, mu2))


def _lowest_key(keys):
    return min(keys, key=lambda ik: (ik[0] + ik[1], ik[0]))


def decomposition_check(n12, j, mu1, mu2, drop_term=None):
    """Compare the coupled wavefunction with ``sum_n C psi_n(x) psi_{E-n}(y)``.

    Coefficients come from the oracle with ``eps1 = eps2 = +1``. The overall
    sign is matched at the lowest nonvanishing monomial (ordered by total
    degree, then by the power of ``x``) and reported. ``drop_term`` omits
    one term of the sum, for sensitivity probes.
    """
    mu1 = as_rational(mu1)
    mu2 = as_rational(mu2)
    E = n12 + j
    reps = (RepLabel(mu1, 1), RepLabel(mu2, 1))
    row = _oracle(reps, E).row(n12, j)
    expansion = {}
    for n in range(E + 1):
        if n == drop_term:
            continue
        prod = product_psi(n, E - n, mu1, mu2)
        for key, c in prod.coeffs.items():
            _add_into(expansion, key, row[n] * prod.scale * float(c))
    psi = coupled_psi(n12, j, mu1, mu2)
    coupled = {key: c * psi.scale for key, c in psi.coeffs.items()}
    keys = set(coupled) | set(expansion)
    live = [k for k in keys if abs(coupled.get(k, 0.0)) > 1e-12]
    k0 = _lowest_key(live)
    sign = 1 if coupled[k0] * expansion.get(k0, 0.0) >= 0 else -1
    residual = max(abs(coupled.get(k, 0.0) - sign * expansion.get(k, 0.0)) for k in keys)
    return DecompositionCheck(float(residual), sign)


def decomposition_residual(n12, j, mu1, mu2, drop_term=None):
    """Largest coefficient of ``Psi - sign * sum_n C psi_n psi_{E-n}``."""
    return decomposition_check(n12, j, mu1, mu2, drop_term).residual


# ---------------------------------------------------------------------------
# angular generating functions in z = cot(phi)


def _series_in_neg_z2(a, b, c):
    coeffs = hypergeom_coeffs([a, b], [c])
    out = np.zeros(2 * len(coeffs) - 1)
    for k, v in enumerate(coeffs):
        out[2 * k] = float(v) * (-1) ** k
    return out


def angular_genfun_coeffs(n12, j, mu1, mu2):
    """Coefficients in ``z`` of ``Lambda_{n12}^{mu12} F_j(phi(z)) csc(phi)**(n12+j)``.

    Uses the closed two-2F1 form in ``-z**2`` for each parity case, with
    ``(1 + z**2)**K`` expanded exactly.
    """
    mu1 = as_rational(mu1)
    mu2 = as_rational(mu2)
    h = Fraction(1, 2)
    f = float
    m1, m2 = f(mu1), f(mu2)
    if n12 % 2 == 0 and j % 2 == 0:
        J = j // 2
        pre = angular_normalization(j, mu1, mu2, "+") * (-1) ** J * f(pochhammer(mu1 + h, J)) / math.factorial(J)
        first = (-J, h - J - mu2, h + mu1)
        second = (1 - J, h - J - mu2, 3 * h + mu1) if J >= 1 else None
        coef = j / (2 * m1 + 1)
    elif n12 % 2 == 0:
        J = (j - 1) // 2
        pre = (angular_normalization(j, mu1, mu2, "-") * (-1) ** J / math.factorial(J)
               * math.sqrt((J + m1 + 0.5) / (J + m2 + 0.5)) * f(pochhammer(mu1 + h, J)))
        first = (-J, Fraction(-j, 2) - mu2, h + mu1)
        second = (-J, 1 - Fraction(j, 2) - mu2, 3 * h + mu1)
        coef = -(j + 2 * m2) / (2 * m1 + 1)
    elif j % 2 == 0:
        J = j // 2
        pre = angular_normalization(j, mu1, mu2, "-") * (-1) ** J / math.factorial(J) * f(pochhammer(mu1 + h, J))
        first = (-J, Fraction(-j, 2) - mu2 - h, h + mu1)
        second = (-J, h - Fraction(j, 2) - mu2, 3 * h + mu1)
        coef = (j + 2 * m1 + 1) / (2 * m1 + 1)
    else:
        J = (j + 1) // 2
        pre = (angular_normalization(j, mu1, mu2, "+") * (-1) ** J / math.factorial(J)
               * math.sqrt(((j - 1) / 2 + 1) / ((j - 1) / 2 + m1 + m2 + 1)) * f(pochhammer(mu1 + h, J)))
        first = (-J, Fraction(-j, 2) - mu2, h + mu1)
        second = (-((j - 1) // 2), Fraction(-j, 2) - mu2, 3 * h + mu1)
        coef = -(j + 2 * m1 + 2 * m2 + 1) / (2 * m1 + 1)
    bracket = _series_in_neg_z2(*first)
    if second is not None:
        tail = np.concatenate([[0.0], coef * _series_in_neg_z2(*second)])
        n = max(len(bracket), len(tail))
        bracket = np.pad(bracket, (0, n - len(bracket))) + np.pad(tail, (0, n - len(tail)))
    K = n12 // 2
    binom = np.zeros(2 * K + 1)
    for i in range(K + 1):
        binom[2 * i] = math.comb(K, i)
    mu12 = mu1 + mu2 + h + j
    return radial_leading(n12, mu12) * pre * np.convolve(bracket, binom)


def angular_genfun(z, n12, j, mu1, mu2):
    """Angular generating function evaluated at ``z = cot(phi)``."""
    return float(np.polynomial.polynomial.polyval(z, angular_genfun_coeffs(n12, j, mu1, mu2)))


def angular_series_coeffs(n12, j, mu1, mu2):
    """``C^{n, E-n}_{n12, j} N_mu1(n) N_mu2(E-n)`` for ``n = 0..E`` (oracle, eps = +1)."""
    mu1 = as_rational(mu1)
    mu2 = as_rational(mu2)
    E = n12 + j
    row = _oracle((RepLabel(mu1, 1), RepLabel(mu2, 1)), E).row(n12, j)
    return np.array([row[n] * hermite_leading(n, mu1) * hermite_leading(E - n, mu2)
                     for n in range(E + 1)])


def angular_genfun_check(n12, j, mu1, mu2):
    """Closed angular form against the oracle series, sign-matched.

    Returns ``(residual, constant)`` where ``constant`` is the sign absorbed
    at the lowest nonvanishing coefficient.
    """
    closed = angular_genfun_coeffs(n12, j, mu1, mu2)
    series = angular_series_coeffs(n12, j, mu1, mu2)
    return match_coefficients(series, closed)


def concordance(n12, j, mu1, mu2):
    """Proportionality of the angular and algebraic generating polynomials.

    Returns ``Concordance(deviation, constant)`` where ``constant`` maps the
    algebraic coefficient vector onto the angular one and ``deviation`` is
    ``max |angular - constant * algebraic|``.
    """
    angular = angular_genfun_coeffs(n12, j, mu1, mu2)
    algebraic = genfun_rhs_coeffs(GenFunCase(n12, j, mu1, mu2, 1, 1))
    deviation, constant = match_coefficients(angular, algebraic)
    return Concordance(deviation, constant)


def level_sign(E):
    """``(-1)**floor(E/2)``: phase of the position realization relative to the oracle."""
    return (-1) ** (E // 2)
