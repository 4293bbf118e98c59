"""Discrete-series representations and the ladder-operator oracle.

The oracle builds coupling coefficients directly from the generator actions
on the twisted tensor product, with no closed form involved:

* the lowest-weight vector of each coupled irrep is the null vector of the
  lowering coproduct, obtained from a two-term recursion;
* higher rows follow by applying the raising coproduct and dividing by the
  known mu-number norm.

Tables are floating point; rows are indexed by ``(n12, j)`` with
``n12 + j = E`` and columns by ``n1 = 0..E`` (so ``n2 = E - n1``).
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .core_arith import as_rational, mu_number, pochhammer

GENERATORS = ("J0", "J+", "J-", "R", "C")

PHASE_CONVENTION = (
    "lowest-weight and raised vectors have a positive coefficient at n1=0; "
    "rows raised with Delta(J+)/sqrt([n12+1]_mu12)"
)


@dataclass(frozen=True)
class RepLabel:
    """Positive discrete series label ``(mu, eps)`` with ``mu >= 0``."""

    mu: Fraction
    eps: int = 1

    def __post_init__(self):
        object.__setattr__(self, "mu", as_rational(self.mu))
        if self.mu < 0:
            raise ValueError(f"mu must be non-negative, got {self.mu}")
        if self.eps not in (1, -1):
            raise ValueError(f"eps must be +1 or -1, got {self.eps}")


def coupled_label(j, reps):
    """Label ``(mu12, eps12)`` of the irrep with lowest weight at level ``j``."""
    r1, r2 = reps
    mu12 = r1.mu + r2.mu + Fraction(1, 2) + j
    eps12 = (-1) ** j * r1.eps * r2.eps
    return RepLabel(mu12, eps12)


def rep_apply(generator, n, rep):
    """Action of one generator on the basis vector ``|n>``.

    Returns a list of ``(coefficient, n')`` pairs; empty when the result is
    zero. ``J0``, ``R`` and ``C`` give exact Fractions, ``J+`` and ``J-``
    give floats.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if generator == "J0":
        return [(n + rep.mu + Fraction(1, 2), n)]
    if generator == "J+":
        return [(math.sqrt(mu_number(n + 1, rep.mu)), n + 1)]
    if generator == "J-":
        if n == 0:
            return []
        return [(math.sqrt(mu_number(n, rep.mu)), n - 1)]
    if generator == "R":
        return [(rep.eps * (-1) ** n, n)]
    if generator == "C":
        return [(-rep.eps * rep.mu, n)]
    raise ValueError(f"unknown generator {generator!r}; expected one of {GENERATORS}")


@dataclass
class TensorState:
    """Vector at fixed level ``E``; ``vector[n1]`` is the (n1, E - n1) amplitude."""

    level: int
    vector: np.ndarray

    def __post_init__(self):
        self.vector = np.asarray(self.vector, dtype=float)
        if self.vector.shape != (self.level + 1,):
            raise ValueError("vector length must be level + 1")

    def norm(self):
        return float(np.linalg.norm(self.vector))

    def as_dict(self):
        return {(n1, self.level - n1): float(c) for n1, c in enumerate(self.vector)}


def _raise(state, reps):
    r1, r2 = reps
    E = state.level
    out = np.zeros(E + 2)
    for n1, c in enumerate(state.vector):
        n2 = E - n1
        out[n1 + 1] += math.sqrt(mu_number(n1 + 1, r1.mu)) * r2.eps * (-1) ** n2 * c
        out[n1] += math.sqrt(mu_number(n2 + 1, r2.mu)) * c
    return TensorState(E + 1, out)


def _lower(state, reps):
    r1, r2 = reps
    E = state.level
    if E == 0:
        return TensorState(0, np.zeros(1))
    out = np.zeros(E)
    for n1, c in enumerate(state.vector):
        n2 = E - n1
        if n1 > 0:
            out[n1 - 1] += math.sqrt(mu_number(n1, r1.mu)) * r2.eps * (-1) ** n2 * c
        if n2 > 0:
            out[n1] += math.sqrt(mu_number(n2, r2.mu)) * c
    return TensorState(E - 1, out)


def _diagonal(state, values):
    return TensorState(state.level, state.vector * np.asarray(values, dtype=float))


def coproduct_apply(generator, state, reps):
    """Apply the coproduct of a generator to a tensor-product state.

    ``Delta(J+-) = J+- (x) R + 1 (x) J+-``, ``Delta(J0) = J0 (x) 1 + 1 (x) J0``,
    ``Delta(R) = R (x) R`` and ``Delta(C) = (Delta(J+)Delta(J-) - Delta(J0)
    + 1/2) Delta(R)``. Lowering level 0 yields the zero state at level 0.
    """
    r1, r2 = reps
    E = state.level
    if generator == "J+":
        return _raise(state, reps)
    if generator == "J-":
        return _lower(state, reps)
    if generator == "J0":
        return _diagonal(state, [float(E + r1.mu + r2.mu + 1)] * (E + 1))
    if generator == "R":
        return _diagonal(state, [r1.eps * r2.eps * (-1) ** E] * (E + 1))
    if generator == "C":
        rs = coproduct_apply("R", state, reps)
        if E == 0:
            jj = np.zeros(1)
        else:
            jj = _raise(_lower(rs, reps), reps).vector
        h = coproduct_apply("J0", rs, reps).vector
        return TensorState(E, jj - h + 0.5 * rs.vector)
    raise ValueError(f"unknown generator {generator!r}; expected one of {GENERATORS}")


def lowest_weight(j, reps):
    """Unit lowest-weight vector of the coupled irrep at level ``j``.

    Uses the two-term recursion
    ``c(n+1, n2) = -eps2 (-1)**n2 sqrt([n2+1]_mu2/[n+1]_mu1) c(n, n2+1)``
    that follows from ``Delta(J-) v = 0``, then normalizes so the
    coefficient at ``(0, j)`` is positive.
    """
    r1, r2 = reps
    v = np.zeros(j + 1)
    v[0] = 1.0
    for n in range(j):
        n2 = j - n - 1
        ratio = math.sqrt(mu_number(n2 + 1, r2.mu) / mu_number(n + 1, r1.mu))
        v[n + 1] = -r2.eps * (-1) ** n2 * ratio * v[n]
    return TensorState(j, v / np.linalg.norm(v))


def lowest_weight_nullspace(j, reps):
    """Debug cross-check of :func:`lowest_weight` by a generic null-space solve."""
    E = j
    lower = np.zeros((max(E, 1), E + 1))
    for n1 in range(E + 1):
        e = np.zeros(E + 1)
        e[n1] = 1.0
        lower[:, n1] = coproduct_apply("J-", TensorState(E, e), reps).vector
    _, _, vt = np.linalg.svd(lower)
    v = vt[-1]
    if v[0] < 0:
        v = -v
    return TensorState(E, v / np.linalg.norm(v))


@dataclass
class CgcTable:
    """Coupling coefficients per level.

    ``matrices[E][j, n1]`` is the coefficient of ``(n1, E - n1)`` in the
    coupled vector ``(n12 = E - j, j)``.
    """

    params: tuple
    emax: int
    matrices: dict = field(default_factory=dict)
    phase_convention: str = PHASE_CONVENTION

    def row(self, n12, j):
        return self.matrices[n12 + j][j]

    def coefficient(self, n1, n2, n12, j):
        if n1 + n2 != n12 + j:
            return 0.0
        return float(self.matrices[n12 + j][j, n1])


def oracle_cgc(reps, emax):
    """Coupling-coefficient table from lowest weights and raising."""
    r1, r2 = reps
    mats = {E: np.zeros((E + 1, E + 1)) for E in range(emax + 1)}
    for j in range(emax + 1):
        mu12 = coupled_label(j, reps).mu
        state = lowest_weight(j, reps)
        mats[j][j] = state.vector
        for n12 in range(emax - j):
            state = coproduct_apply("J+", state, reps)
            state = TensorState(state.level,
                                state.vector / math.sqrt(mu_number(n12 + 1, mu12)))
            mats[state.level][j] = state.vector
    return CgcTable((r1.mu, r1.eps, r2.mu, r2.eps), emax, mats)


def orthogonality_defect(table):
    """Largest entry of ``|M M^T - I|`` over all levels of a table."""
    worst = 0.0
    for M in table.matrices.values():
        worst = max(worst, float(np.abs(M @ M.T - np.eye(len(M))).max()))
    return worst


# ---------------------------------------------------------------------------
# su(1,1) analogue


def su11_oracle_cgc(l1, l2, emax):
    """su(1,1) coupling coefficients with the untwisted coproduct.

    Rows are ``(m12, k)`` with ``l12 = l1 + l2 + k``; the lowest-weight
    vector satisfies
    ``c(m+1) = -sqrt((m2+1)(2l2+m2)/((m+1)(2l1+m))) c(m)`` and has a
    positive coefficient at ``m1 = 0``.
    """
    l1 = as_rational(l1)
    l2 = as_rational(l2)
    mats = {E: np.zeros((E + 1, E + 1)) for E in range(emax + 1)}
    for k in range(emax + 1):
        v = np.zeros(k + 1)
        v[0] = 1.0
        for m in range(k):
            m2 = k - m - 1
            v[m + 1] = -math.sqrt((m2 + 1) * (2 * l2 + m2) / ((m + 1) * (2 * l1 + m))) * v[m]
        v /= np.linalg.norm(v)
        mats[k][k] = v
        l12 = l1 + l2 + k
        for m12 in range(emax - k):
            E = m12 + k
            w = np.zeros(E + 2)
            for a, c in enumerate(v):
                b = E - a
                w[a + 1] += math.sqrt((a + 1) * (2 * l1 + a)) * c
                w[a] += math.sqrt((b + 1) * (2 * l2 + b)) * c
            v = w / math.sqrt((m12 + 1) * (2 * l12 + m12))
            mats[E + 1][k] = v
    return CgcTable((l1, l2), emax, mats,
                    "positive coefficient at m1=0; untwisted coproduct")


def su11_vacuum_ratio_sq(m, k, l1, l2):
    """``|<m, k-m | 0> / <0, k | 0>|**2`` from the lowest-weight recursion."""
    return (math.comb(k, m) * pochhammer(2 * l2, k)
            / (pochhammer(2 * l1, m) * pochhammer(2 * l2, k - m)))


def su11_vacuum_norm(k, l1, l2):
    """Closed form ``(2l1+k-1)!(2l1+2l2-2)! / ((2l1-1)!(2l12-2)!)``.

    The factorial ratios are rewritten as Pochhammer symbols, giving
    ``(2l1)_k / (2l1+2l2-1)_{2k}`` exactly.
    """
    l1 = as_rational(l1)
    l2 = as_rational(l2)
    return pochhammer(2 * l1, k) / pochhammer(2 * l1 + 2 * l2 - 1, 2 * k)


def su11_vacuum_norm_unitarity(k, l1, l2):
    """``|<0, k | 0>|**2`` fixed by requiring the lowest-weight row to have unit norm.

    Equals ``(2l1)_k / (2l1+2l2+k-1)_k``.
    """
    l1 = as_rational(l1)
    l2 = as_rational(l2)
    total = sum(su11_vacuum_ratio_sq(m, k, l1, l2) for m in range(k + 1))
    return 1 / total
