"""Orthogonal polynomials used by the coupling-coefficient routes.

Polynomials are dense coefficient lists indexed by degree. Coefficients are
Fractions whenever the inputs are rational, so identities can be checked
exactly; the Gamma-function normalizations of the Hermite family are the
only floating point quantities.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction

from .core_arith import as_rational, mu_number, pochhammer


class DomainError(ValueError):
    """Parameters outside the domain where a formula is defined."""


# ---------------------------------------------------------------------------
# dense polynomial helpers


def poly_eval(coeffs, x):
    """Horner evaluation of a dense coefficient list at ``x``."""
    out = 0 * x
    for c in reversed(coeffs):
        out = out * x + c
    return out


def poly_add(p, q):
    n = max(len(p), len(q))
    zero = Fraction(0)
    return [(p[i] if i < len(p) else zero) + (q[i] if i < len(q) else zero)
            for i in range(n)]


def poly_scale(p, c):
    return [c * a for a in p]


def poly_mul(p, q):
    if not p or not q:
        return []
    out = [0 * p[0] * q[0]] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for k, b in enumerate(q):
            out[i + k] += a * b
    return out


def poly_trim(p):
    """Drop trailing zero coefficients, keeping at least one entry."""
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def poly_substitute_square(p):
    """Coefficients of ``p(x**2)`` in ``x``."""
    out = [0 * p[0]] * (2 * len(p) - 1)
    for k, c in enumerate(p):
        out[2 * k] = c
    return out


# ---------------------------------------------------------------------------
# hypergeometric series


@dataclass(frozen=True)
class HypergeomSpec:
    """Parameters of a terminating generalized hypergeometric series."""

    numerator: tuple
    denominator: tuple
    argument: object = Fraction(1)


def _termination_index(numerator):
    stops = [-a for a in numerator if a <= 0 and a == int(a)]
    if not stops:
        raise DomainError(f"series is not terminating: numerator {numerator}")
    return int(min(stops))


def hypergeom_coeffs(numerator, denominator):
    """Series coefficients ``c_m`` with ``pFq(...; z) = sum_m c_m z**m``.

    The series must terminate; a denominator Pochhammer that vanishes
    before the termination index raises :class:`DomainError`.
    """
    numerator = [as_rational(a) for a in numerator]
    denominator = [as_rational(b) for b in denominator]
    top = _termination_index(numerator)
    coeffs = [Fraction(1)]
    term = Fraction(1)
    for m in range(top):
        for b in denominator:
            if b + m == 0:
                raise DomainError(
                    f"denominator parameter {b} vanishes at order {m + 1}")
        for a in numerator:
            term *= a + m
        for b in denominator:
            term /= b + m
        term /= m + 1
        coeffs.append(term)
    return coeffs


def hypergeom(spec_or_numerator, denominator=None, argument=None):
    """Evaluate a terminating hypergeometric series.

    Accepts either a :class:`HypergeomSpec` or the three pieces
    ``(numerator, denominator, argument)``. The result is exact when the
    argument is rational.
    """
    if isinstance(spec_or_numerator, HypergeomSpec):
        spec = spec_or_numerator
    else:
        spec = HypergeomSpec(tuple(spec_or_numerator), tuple(denominator),
                             Fraction(1) if argument is None else argument)
    z = spec.argument
    if isinstance(z, (int, str)):
        z = as_rational(z)
    return poly_eval(hypergeom_coeffs(spec.numerator, spec.denominator), z)


# ---------------------------------------------------------------------------
# classical families


def laguerre_coeffs(n, alpha):
    """Coefficients of the Laguerre polynomial ``L_n^alpha``."""
    alpha = as_rational(alpha)
    out = []
    for m in range(n + 1):
        # binom(n + alpha, n - m) * (-1)**m / m!
        c = pochhammer(alpha + m + 1, n - m) / math.factorial(n - m)
        out.append(c * (-1) ** m / math.factorial(m))
    return out


def laguerre(n, alpha, x):
    """Laguerre polynomial ``L_n^alpha(x)``."""
    return poly_eval(laguerre_coeffs(n, alpha), x)


def _gen_binomial(top, k):
    """``binom(top, k)`` for rational ``top`` and integer ``k >= 0``."""
    return pochhammer(top - k + 1, k) / math.factorial(k)


def jacobi_coeffs(n, alpha, beta):
    """Coefficients in ``x`` of the Jacobi polynomial ``P_n^(alpha,beta)``."""
    alpha = as_rational(alpha)
    beta = as_rational(beta)
    minus = [Fraction(-1, 2), Fraction(1, 2)]  # (x - 1)/2
    plus = [Fraction(1, 2), Fraction(1, 2)]    # (x + 1)/2
    out = [Fraction(0)]
    for m in range(n + 1):
        c = _gen_binomial(alpha + n, n - m) * _gen_binomial(beta + n, m)
        term = [c]
        for _ in range(m):
            term = poly_mul(term, minus)
        for _ in range(n - m):
            term = poly_mul(term, plus)
        out = poly_add(out, term)
    return out


def jacobi(n, alpha, beta, x):
    """Jacobi polynomial ``P_n^(alpha,beta)(x)``."""
    return poly_eval(jacobi_coeffs(n, alpha, beta), x)


def jacobi_homogeneous(n, alpha, beta):
    """Homogenized Jacobi polynomial in the plane.

    With ``x = r cos(phi)``, ``y = r sin(phi)``, returns the coefficients of
    ``r**(2n) P_n^(alpha,beta)(cos 2phi)`` as a dict ``{(i, k): c}`` for
    monomials ``x**i y**k``. This uses ``r**2 (cos 2phi - 1)/2 = -y**2`` and
    ``r**2 (cos 2phi + 1)/2 = x**2``, so no trigonometry is evaluated.
    """
    alpha = as_rational(alpha)
    beta = as_rational(beta)
    out = {}
    for m in range(n + 1):
        c = _gen_binomial(alpha + n, n - m) * _gen_binomial(beta + n, m)
        out[(2 * (n - m), 2 * m)] = c * (-1) ** m
    return out


# ---------------------------------------------------------------------------
# generalized Hermite


def hermite_leading(n, mu):
    """Leading coefficient of the normalized generalized Hermite polynomial.

    For ``n = 2k + p`` this is ``1/sqrt(k! Gamma(k + p + mu + 1/2))``.
    """
    k, p = divmod(n, 2)
    return 1.0 / math.sqrt(math.factorial(k) * math.gamma(k + p + float(mu) + 0.5))


def generalized_hermite_monic(n, mu):
    """Exact monic generalized Hermite polynomial (normalization deferred).

    Equal to ``(-1)**k k! x**p L_k^(mu - 1/2 + p)(x**2)`` for ``n = 2k + p``;
    multiply by :func:`hermite_leading` to get the normalized polynomial.
    """
    mu = as_rational(mu)
    k, p = divmod(n, 2)
    lag = laguerre_coeffs(k, mu - Fraction(1, 2) + p)
    lag = poly_scale(lag, Fraction((-1) ** k * math.factorial(k)))
    coeffs = poly_substitute_square(lag)
    return [Fraction(0)] * p + coeffs


def generalized_hermite(n, mu, exact=False):
    """Generalized Hermite polynomial ``H_n^mu`` as coefficients in ``x``.

    With ``n = 2k + p`` this is
    ``(-1)**k sqrt(k!/Gamma(k + p + mu + 1/2)) x**p L_k^(mu - 1/2 + p)(x**2)``.
    Float coefficients are returned by default. ``exact=True`` returns the
    pair ``(monic, leading)`` with the exact monic polynomial and the float
    leading coefficient.
    """
    monic = generalized_hermite_monic(n, mu)
    lead = hermite_leading(n, mu)
    if exact:
        return monic, lead
    return [float(c) * lead for c in monic]


# ---------------------------------------------------------------------------
# dual -1 Hahn


@dataclass(frozen=True)
class Dm1hData:
    """Grid, weights and normalization of the dual -1 Hahn polynomials."""

    grid: tuple
    weights: tuple
    kappa0: Fraction
    params: tuple


def dm1h_recurrence(eta, xi, N):
    """Return the recurrence coefficient functions ``(u, b)``.

    ``u(n) = 4 [n]_xi [N-n+1]_eta`` and
    ``b(n) = 2([n]_xi + [N-n]_eta) - 2 eta - 2 xi - 2N - 1``.
    """
    eta = as_rational(eta)
    xi = as_rational(xi)

    def u(n):
        return 4 * mu_number(n, xi) * mu_number(N - n + 1, eta)

    def b(n):
        return (2 * (mu_number(n, xi) + mu_number(N - n, eta))
                - 2 * eta - 2 * xi - 2 * N - 1)

    return u, b


def dual_m1_hahn_all(eta, xi, N):
    """Monic polynomials ``R_0 .. R_{N+1}`` from the three-term recurrence.

    ``R_{n+1}(x) = (x - b_n) R_n(x) - u_n R_{n-1}(x)``.
    """
    return [list(p) for p in _dm1h_polys(as_rational(eta), as_rational(xi), N)]


@lru_cache(maxsize=1024)
def _dm1h_polys(eta, xi, N):
    u, b = dm1h_recurrence(eta, xi, N)
    polys = [[Fraction(1)]]
    for n in range(N + 1):
        nxt = poly_add([Fraction(0)] + polys[n], poly_scale(polys[n], -b(n)))
        if n > 0:
            nxt = poly_add(nxt, poly_scale(polys[n - 1], -u(n)))
        polys.append(nxt)
    return tuple(tuple(p) for p in polys)


def dual_m1_hahn(n, eta, xi, N):
    """Monic dual -1 Hahn polynomial ``R_n`` (exact coefficients)."""
    if not 0 <= n <= N + 1:
        raise ValueError(f"degree {n} outside 0..{N + 1}")
    return dual_m1_hahn_all(eta, xi, N)[n]


def _hyper_params(k, p, eta, xi, N, form):
    half = Fraction(1, 2)
    if form == "corrected":
        if N % 2 == 0:
            delta = -(eta + xi + N) / 2
            b = Fraction(-N, 2) + p
            c = half - eta - Fraction(N, 2)
            shift = 2 * eta + 2 * xi
        else:
            delta = (eta + xi + 1) / 2
            b = Fraction(1 - N, 2)
            c = xi + half + p
            shift = -2 * eta + 2 * xi
        gamma = 16 ** k * pochhammer(b, k) * pochhammer(c, k)
        return delta, (b, c), gamma, shift
    if form == "displayed":
        if N % 2 == 0:
            delta = (eta + xi + N) / 2
            c = -(2 * eta + N - 1) / 2
            b = Fraction(-N, 2) if p == 0 else 1 - Fraction(N, 2)
            g1 = Fraction(-N, 2) if p == 0 else Fraction(1 - N, 2)
            gamma = 16 ** k * pochhammer(g1, k) * pochhammer((1 - 2 * eta - N) / 2, k)
            shift = -2 * eta - 2 * xi
        else:
            delta = (eta + xi + 1) / 2
            b = -Fraction(N - 1, 2)
            c = eta + 1 + (Fraction(N, 2) if p == 0 else Fraction(N + 1, 2))
            g2 = (2 * eta + 1) / 2 if p == 0 else (2 * eta + 3) / 2
            gamma = 16 ** k * pochhammer(Fraction(1 - N, 2), k) * pochhammer(g2, k)
            shift = 2 * eta - 2 * xi
        return delta, (b, c), gamma, shift
    raise ValueError(f"unknown form {form!r}")


def dual_m1_hahn_hyper(n, y, eta, xi, N, form="corrected"):
    """Evaluate ``R_n(y)`` from its explicit 3F2 representation.

    With ``x = y + 1`` and ``n = 2k + p`` the polynomial is
    ``gamma_k 3F2(-k, delta + x/4, delta - x/4; b, c; 1)``, times the linear
    factor ``x + shift`` when ``p = 1``. The default ``form="corrected"``
    uses parameters that reproduce the recurrence exactly; ``"displayed"``
    evaluates the widely quoted variant, kept for comparison (it disagrees
    with the recurrence).
    """
    eta = as_rational(eta)
    xi = as_rational(xi)
    if not isinstance(y, float):
        y = as_rational(y)
    x = y + 1
    k, p = divmod(n, 2)
    delta, (b, c), gamma, shift = _hyper_params(k, p, eta, xi, N, form)
    value = gamma * hypergeom([-k, delta + x / 4, delta - x / 4], [b, c], 1)
    if p:
        value = value * (x + shift)
    return value


def dm1h_data(eta, xi, N):
    """Grid points, weights and ``kappa0`` for parameters ``(eta, xi, N)``.

    Grid and weights share the index ``j = 0..N``; the weight index splits as
    ``j = 2s + q``. The invariant ``sum(weights) == kappa0`` holds exactly.
    """
    return _dm1h_data(as_rational(eta), as_rational(xi), N)


@lru_cache(maxsize=1024)
def _dm1h_data(eta, xi, N):
    half = Fraction(1, 2)
    try:
        if N % 2 == 0:
            h = N // 2
            kappa0 = (pochhammer(-eta - xi - N, h)
                      / pochhammer(half - xi - Fraction(N, 2), h))
            grid = [(-1) ** s * (-2 * eta - 2 * xi - 2 * N + 2 * s - 1)
                    for s in range(N + 1)]
            weights = []
            for j in range(N + 1):
                s, q = divmod(j, 2)
                num = (pochhammer(Fraction(-N, 2), s + q)
                       * pochhammer(half - eta - Fraction(N, 2), s)
                       * pochhammer(-eta - xi - N, s))
                den = (math.factorial(s)
                       * pochhammer(half - xi - Fraction(N, 2), s)
                       * pochhammer(-eta - xi - Fraction(N, 2), s + q))
                weights.append((-1) ** s * num / den)
        else:
            h = (N + 1) // 2
            kappa0 = pochhammer(eta + xi + 1, h) / pochhammer(eta + half, h)
            grid = [(-1) ** s * (2 * eta + 2 * xi + 2 * s + 1)
                    for s in range(N + 1)]
            weights = []
            for j in range(N + 1):
                s, q = divmod(j, 2)
                num = (pochhammer(Fraction(-(N - 1), 2), s)
                       * pochhammer(xi + half, s + q)
                       * pochhammer(eta + xi + 1, s))
                den = (math.factorial(s)
                       * pochhammer(eta + half, s + q)
                       * pochhammer(eta + xi + Fraction(N, 2) + Fraction(3, 2), s))
                weights.append((-1) ** s * num / den)
    except ZeroDivisionError as exc:
        raise DomainError(
            f"vanishing denominator for eta={eta}, xi={xi}, N={N}") from exc
    return Dm1hData(tuple(grid), tuple(weights), kappa0, (eta, xi, N))
