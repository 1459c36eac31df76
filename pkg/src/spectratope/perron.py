"""Perron-similarity classification and the necessary realizability conditions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ShapeMismatch, Singular
from .linalg import RatMatrix, hadamard_product, inverse
from .spectrum import as_spectrum


@dataclass(frozen=True)
class PerronSimilarity:
    """Classification of a basis S.

    ``perron_indices`` holds the one-based i with S e_i >= 0 and
    e_i^T S^-1 >= 0.  ``strong_index`` is set when exactly one i has both
    strictly positive.
    """

    S: RatMatrix
    S_inv: RatMatrix
    perron_indices: frozenset[int]
    strong_index: int | None

    @property
    def is_perron_similarity(self) -> bool:
        return bool(self.perron_indices)


def classify(S: RatMatrix) -> PerronSimilarity:
    # Rows of S form a basis, so e_i = S^T y has the unique solution y = S^-T e_i,
    # i.e. row i of S^-1: the conical-hull test is a sign check.
    if not S.is_square:
        raise ShapeMismatch("basis must be square")
    S_inv = inverse(S)
    n = S.rows
    nonneg, positive = set(), []
    for i in range(n):
        col, row = S.col(i), S_inv.row(i)
        if all(x >= 0 for x in col) and all(y >= 0 for y in row):
            nonneg.add(i + 1)
        if all(x > 0 for x in col) and all(y > 0 for y in row):
            positive.append(i + 1)
    strong = positive[0] if len(positive) == 1 else None
    return PerronSimilarity(S, S_inv, frozenset(nonneg), strong)


def relative_gain_array(S: RatMatrix) -> RatMatrix:
    """Phi(S) = S o S^-T."""
    return hadamard_product(S, inverse(S).T)


def is_m_matrix(S: RatMatrix) -> bool:
    """Z-sign pattern plus a nonnegative inverse."""
    if not S.is_square:
        return False
    n = S.rows
    if any(S[i, j] > 0 for i in range(n) for j in range(n) if i != j):
        return False
    try:
        return inverse(S).is_nonnegative()
    except Singular:
        return False


def doubly_stochastic_eligible(S: RatMatrix) -> tuple[int, Fraction, Fraction] | None:
    """First i with S e_i = alpha e and e_i^T S^-1 = beta e^T, as (i, alpha, beta)."""
    S_inv = inverse(S)
    for i in range(S.rows):
        col, row = S.col(i), S_inv.row(i)
        if len(set(col)) == 1 and len(set(row)) == 1:
            return i + 1, col[0], row[0]
    return None


# -- necessary conditions --------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    condition: str
    witness: object

    def to_json(self) -> dict:
        w = self.witness
        if isinstance(w, Fraction):
            w = str(w)
        elif isinstance(w, tuple):
            w = list(w)
        return {"condition": self.condition, "witness": w}


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of the power-sum, spectral-radius and J-LL checks.

    ``bound_sufficient`` is true when the finitely many checks provably
    settle every condition in the family: for n <= 4 the first two
    conditions already characterise realizability, and Suleimanova spectra
    are always realizable.
    """

    n: int
    k_max: int
    violations: tuple[Violation, ...] = field(default_factory=tuple)
    bound_sufficient: bool = False

    @property
    def passed(self) -> bool:
        return not self.violations

    def conditions(self) -> set[str]:
        return {v.condition for v in self.violations}

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "violations": [v.to_json() for v in self.violations],
            "k_max": self.k_max,
            "bound_sufficient": self.bound_sufficient,
        }


POWER_SUM = "power_sum"  # s_k >= 0
SPECTRAL_RADIUS = "spectral_radius"  # max |lambda| in the spectrum
JLL = "jll"  # s_k^m <= n^(m-1) s_km


def necessary_conditions(sigma, k_max: int | None = None) -> ConditionReport:
    sigma = as_spectrum(sigma)
    n = len(sigma)
    if k_max is None:
        k_max = 2 * n
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    sums, powers = {}, [Fraction(1)] * n
    for k in range(1, k_max + 1):
        powers = [p * x for p, x in zip(powers, sigma.values)]
        sums[k] = sum(powers, Fraction(0))
    violations = [Violation(POWER_SUM, k) for k, s in sums.items() if s < 0]
    rho = sigma.spectral_radius
    if rho not in sigma.values:
        violations.append(Violation(SPECTRAL_RADIUS, rho))
    for k in range(1, k_max + 1):
        for m in range(2, k_max // k + 1):
            if sums[k] ** m > n ** (m - 1) * sums[k * m]:
                violations.append(Violation(JLL, (k, m)))
    positives = sum(1 for x in sigma.values if x > 0)
    suleimanova = positives == 1 and sums[1] >= 0
    return ConditionReport(n, k_max, tuple(violations), not violations and (n <= 4 or suleimanova))
