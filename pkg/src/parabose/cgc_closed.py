"""Closed-form coupling coefficients.

Three closed routes, each checked against the ladder oracle:

* the dual -1 Hahn formula for a general coefficient;
* the lowest-weight (vacuum) row from its two-term recursion;
* the first excited row obtained by one application of the raising
  coproduct to the vacuum row.
"""

import math
from collections import namedtuple
from fractions import Fraction

import numpy as np

from .core_arith import (as_rational, mu_factorial, mu_falling, mu_number,
                         parity_sign, pochhammer)
from .orthopoly import DomainError, dm1h_data, dual_m1_hahn, poly_eval
from .osp_rep import CgcTable, RepLabel, coupled_label

VacuumNorm = namedtuple("VacuumNorm", ["unitarity", "displayed"])

CLOSED_PHASE = (
    "oracle phase: literal dual -1 Hahn value times "
    "eps2**n1 (-1)**(n1(n1-1)/2 + n1 n2)"
)


def _reps(reps):
    r1, r2 = reps
    if not isinstance(r1, RepLabel):
        r1 = RepLabel(*r1) if isinstance(r1, tuple) else RepLabel(r1)
    if not isinstance(r2, RepLabel):
        r2 = RepLabel(*r2) if isinstance(r2, tuple) else RepLabel(r2)
    return r1, r2


def column_phase(n1, n2, eps2):
    """Sign relating the literal dual -1 Hahn value to the oracle convention."""
    exponent = n1 * (n1 - 1) // 2 + n1 * n2
    return (eps2 ** n1) * (-1) ** exponent


def hahn_grid_index(j, N, literal=False):
    """Grid/weight index used for the coupled label ``j`` at ``N = n1 + n2``.

    For odd ``N`` the index is ``j``. For even ``N`` the grid is listed in
    the opposite order, so the matching index is ``N - j``; ``literal=True``
    returns ``j`` unconditionally.
    """
    if literal or N % 2:
        return j
    return N - j


def cgc_closed_squared(n1, n2, n12, j, reps, literal_index=False):
    """Exact ``(w kappa0^-1 [n2]! / ([n1]! [N]!)) 4**-n1 R_{n1}(y)**2`` and the sign of ``R``.

    Returns ``(magnitude_sq, sign)`` with ``magnitude_sq`` a Fraction. The
    weight must be non-negative; a negative weight raises DomainError.
    """
    r1, r2 = _reps(reps)
    N = n1 + n2
    if N != n12 + j:
        return Fraction(0), 0
    data = dm1h_data(r2.mu, r1.mu, N)
    idx = hahn_grid_index(j, N, literal_index)
    w = data.weights[idx]
    if w < 0:
        raise DomainError(
            f"weight-positivity failure: w_{idx}({r2.mu}, {r1.mu}, {N}) = {w}")
    value = poly_eval(dual_m1_hahn(n1, r2.mu, r1.mu, N), data.grid[idx])
    arg = (w * mu_factorial(n2, r2.mu)
           / (data.kappa0 * mu_factorial(n1, r1.mu) * mu_factorial(N, r2.mu)))
    mag_sq = arg * value * value / Fraction(4) ** n1
    sign = (value > 0) - (value < 0)
    return mag_sq, sign


def cgc_closed(n1, n2, n12, j, reps, convention="oracle"):
    """Coupling coefficient from the dual -1 Hahn closed form.

    ``2**-n1 sqrt(w [n2]_mu2! / (kappa0 [n1]_mu1! [N]_mu2!)) R_{n1}(y)``
    with ``eta = mu2``, ``xi = mu1``, ``N = n1 + n2``. Returns 0 unless
    ``n1 + n2 == n12 + j``.

    ``convention`` selects how the formula is read:

    * ``"oracle"`` (default): grid index matched for even ``N`` and the
      column sign of :func:`column_phase` applied, which reproduces the
      oracle table exactly;
    * ``"magnitude"``: matched grid index, no column sign;
    * ``"literal"``: grid index ``j`` as written, no column sign.
    """
    r1, r2 = _reps(reps)
    if n1 + n2 != n12 + j:
        return 0.0
    literal_index = convention == "literal"
    mag_sq, sign = cgc_closed_squared(n1, n2, n12, j, (r1, r2), literal_index)
    value = sign * math.sqrt(mag_sq)
    if convention == "oracle":
        value *= column_phase(n1, n2, r2.eps)
    elif convention not in ("magnitude", "literal"):
        raise ValueError(f"unknown convention {convention!r}")
    return value


def closed_table(reps, emax, convention="oracle"):
    """Assemble :func:`cgc_closed` into a :class:`CgcTable`."""
    r1, r2 = _reps(reps)
    mats = {}
    for E in range(emax + 1):
        M = np.zeros((E + 1, E + 1))
        for j in range(E + 1):
            for n1 in range(E + 1):
                M[j, n1] = cgc_closed(n1, E - n1, E - j, j, (r1, r2), convention)
        mats[E] = M
    phase = CLOSED_PHASE if convention == "oracle" else f"closed form, {convention}"
    return CgcTable((r1.mu, r1.eps, r2.mu, r2.eps), emax, mats, phase)


def row_constants(table, reference, tol=1e-12):
    """Per-row ratio of ``table`` to ``reference`` and its spread.

    Returns ``{(n12, j): (ratio, spread)}`` where ``ratio`` is taken at the
    largest reference entry and ``spread`` is the largest deviation
    ``|table - ratio * reference|`` across the row.
    """
    out = {}
    for E, M in table.matrices.items():
        ref = reference.matrices[E]
        for j in range(E + 1):
            a, b = M[j], ref[j]
            i = int(np.argmax(np.abs(b)))
            ratio = a[i] / b[i] if abs(b[i]) > tol else float("nan")
            out[(E - j, j)] = (float(ratio), float(np.abs(a - ratio * b).max()))
    return out


# ---------------------------------------------------------------------------
# vacuum row


def vacuum_ratio_sq(n, j, reps):
    """``|<n, j-n | 0, j> / <0, j | 0, j>|**2 = [j]..[j-n+1]_mu2 / [n]_mu1!`` exactly."""
    r1, r2 = _reps(reps)
    return mu_falling(j, n, r2.mu) / mu_factorial(n, r1.mu)


def vacuum_sign(n, j, eps2):
    """Sign ``(-1/eps2)**n (-1)**(nj - n(n+1)/2)`` of the vacuum row."""
    return (-eps2) ** n * parity_sign(n, j)


def vacuum_norm_sq_displayed(j, mu1, mu2):
    """Closed form quoted for ``|<0, j | 0, j>|**2``.

    ``(j/2 + 1 + mu1 + mu2)_{j/2} / (2**(j/2) (1/2 + mu1)_{j/2})`` for even
    ``j`` and the same with ``(j+1)/2`` for odd ``j``. It does not agree
    with unitarity; see :func:`vacuum_cgc_norm_sq`.
    """
    mu1 = as_rational(mu1)
    mu2 = as_rational(mu2)
    half = Fraction(1, 2)
    if j % 2 == 0:
        h = j // 2
        return pochhammer(Fraction(j, 2) + 1 + mu1 + mu2, h) / (2 ** h * pochhammer(half + mu1, h))
    h = (j + 1) // 2
    return pochhammer(Fraction(j + 1, 2) + mu1 + mu2, h) / (2 ** h * pochhammer(half + mu1, h))


def vacuum_cgc_norm_sq(j, reps):
    """Squared vacuum anchor ``|<0, j | 0, j>|**2``.

    Returns ``VacuumNorm(unitarity, displayed)``: the exact value forced by
    unit norm of the vacuum row, and the quoted closed form for comparison.
    """
    r1, r2 = _reps(reps)
    total = sum(vacuum_ratio_sq(n, j, (r1, r2)) for n in range(j + 1))
    return VacuumNorm(1 / total, vacuum_norm_sq_displayed(j, r1.mu, r2.mu))


def vacuum_cgc(n, j, reps):
    """Vacuum-row coefficient ``<n, j-n | 0, j>`` anchored by unitarity."""
    r1, r2 = _reps(reps)
    if not 0 <= n <= j:
        raise ValueError("need 0 <= n <= j")
    anchor = vacuum_cgc_norm_sq(j, (r1, r2)).unitarity
    return vacuum_sign(n, j, r2.eps) * math.sqrt(vacuum_ratio_sq(n, j, (r1, r2)) * anchor)


# ---------------------------------------------------------------------------
# first excited row


def first_cgc(n, j, reps, literal=False):
    """First excited coefficient ``<n, 1+j-n | 1, j>``.

    By default the value comes from applying the raising coproduct to the
    vacuum row and dividing by ``sqrt([1]_mu12)``:

    ``eps2 (-1)**n2 sqrt([n]_mu1) <n-1, n2|0> + sqrt([n2]_mu2) <n, n2-1|0>``.

    ``literal=True`` evaluates the compact product form
    ``sign * sqrt([j]..[j-n+2]_mu2 / [n]_mu1!) ([n]_mu1 + [1+j-n]_mu2) A / sqrt([1]_mu12)``
    reading the falling product at ``n = 0`` as an empty product. That
    reading differs from the derived value at ``n = 0``.
    """
    r1, r2 = _reps(reps)
    if not 0 <= n <= j + 1:
        raise ValueError("need 0 <= n <= j + 1")
    mu12 = coupled_label(j, (r1, r2)).mu
    norm = math.sqrt(mu_number(1, mu12))
    n2 = 1 + j - n
    if literal:
        anchor = math.sqrt(vacuum_cgc_norm_sq(j, (r1, r2)).unitarity)
        falling = mu_falling(j, n - 1, r2.mu) if n >= 1 else Fraction(1)
        bracket = mu_number(n, r1.mu) + mu_number(n2, r2.mu)
        mag = math.sqrt(falling / mu_factorial(n, r1.mu)) * float(bracket)
        return vacuum_sign(n, j, r2.eps) * mag * anchor / norm
    value = 0.0
    if n >= 1:
        value += (r2.eps * (-1) ** n2 * math.sqrt(mu_number(n, r1.mu))
                  * vacuum_cgc(n - 1, j, (r1, r2)))
    if n2 >= 1:
        value += math.sqrt(mu_number(n2, r2.mu)) * vacuum_cgc(n, j, (r1, r2))
    return value / norm
