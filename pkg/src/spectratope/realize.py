"""Constructive realization of real spectra by nonnegative matrices.

Every construction is a similarity A = S diag(v) S^-1 with an explicit basis
S, and the result is wrapped in a :class:`RealizationCertificate` carrying
(S, v, A) so that it can be re-verified independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .errors import (
    ConditionsFail,
    InternalDispatchFailure,
    NotSuleimanova,
    NotSupported,
    OrderMismatch,
    OutOfRange,
    Singular,
)
from .hadamard import (
    NormalizedHadamard,
    WalshMatrix,
    hadamard_of_order,
    is_supported_order,
    next_hadamard_order,
    walsh,
)
from .linalg import (
    RatMatrix,
    as_rational,
    char_poly,
    diag_from,
    direct_sum,
    format_rational,
    matrix_from_json,
    matrix_to_json,
    parse_rational,
    poly_from_roots,
    similarity,
    vector,
)
from .perron import ConditionReport, necessary_conditions
from .spectrum import Spectrum, as_spectrum, normalize

__all__ = [
    "RealizationCertificate",
    "VerificationReport",
    "Spectrum",
    "normalize",
    "realize_n1",
    "realize_n2",
    "realize_n3",
    "realize_n3_symmetric",
    "realize_n4",
    "n3_parameter_interval",
    "n3_basis",
    "is_suleimanova",
    "suleimanova_decomposition",
    "realize_suleimanova",
    "realize_suleimanova_padded",
    "realize_auto",
    "verify_certificate",
    "trace_zero_3x3_circulant",
    "matrix_flags",
]

NUMERIC_TOL = 1e-12
FLAG_NAMES = ("nonnegative", "symmetric", "row_stochastic", "doubly_stochastic", "trisymmetric")

H1 = RatMatrix([[1, 1], [1, -1]])
H0 = RatMatrix([[1]])


@dataclass(frozen=True)
class RealizationCertificate:
    method: str
    basis: RatMatrix
    diagonal: tuple[Fraction, ...]
    realizer: RatMatrix | tuple[tuple[float, ...], ...]
    flags: dict[str, bool]
    spectrum: Spectrum
    numeric: bool = False
    padded_zeros: int = 0

    def to_json(self) -> dict:
        if self.numeric:
            realizer = [list(map(float, row)) for row in self.realizer]
        else:
            realizer = matrix_to_json(self.realizer)
        return {
            "method": self.method,
            "basis": matrix_to_json(self.basis),
            "diagonal": [format_rational(x) for x in self.diagonal],
            "realizer": realizer,
            "flags": dict(self.flags),
            "numeric": self.numeric,
            "padded_zeros": self.padded_zeros,
            "spectrum": [format_rational(x) for x in self.spectrum],
        }

    @classmethod
    def from_json(cls, obj: dict) -> RealizationCertificate:
        numeric = bool(obj.get("numeric", False))
        if numeric:
            realizer = tuple(tuple(float(x) for x in row) for row in obj["realizer"])
        else:
            realizer = matrix_from_json(obj["realizer"])
        diagonal = tuple(parse_rational(x) for x in obj["diagonal"])
        spectrum = Spectrum(tuple(parse_rational(x) for x in obj.get("spectrum", obj["diagonal"])))
        return cls(
            method=obj["method"],
            basis=matrix_from_json(obj["basis"]),
            diagonal=diagonal,
            realizer=realizer,
            flags={k: bool(v) for k, v in obj.get("flags", {}).items()},
            spectrum=spectrum,
            numeric=numeric,
            padded_zeros=int(obj.get("padded_zeros", 0)),
        )


def matrix_flags(A: RatMatrix) -> dict[str, bool]:
    nonneg = A.is_nonnegative()
    ones = tuple(Fraction(1) for _ in range(A.rows))
    rows_one = A.is_square and A.row_sums() == ones
    cols_one = A.is_square and A.col_sums() == ones
    return {
        "nonnegative": nonneg,
        "symmetric": A.is_symmetric(),
        "row_stochastic": nonneg and rows_one,
        "doubly_stochastic": nonneg and rows_one and cols_one,
        "trisymmetric": A.is_trisymmetric(),
    }


def _numeric_flags(A: Sequence[Sequence[float]], tol: float = NUMERIC_TOL) -> dict[str, bool]:
    n = len(A)
    close = lambda a, b: abs(a - b) <= tol  # noqa: E731
    sym = all(close(A[i][j], A[j][i]) for i in range(n) for j in range(n))
    per = all(close(A[i][j], A[n - 1 - j][n - 1 - i]) for i in range(n) for j in range(n))
    cen = all(close(A[i][j], A[n - 1 - i][n - 1 - j]) for i in range(n) for j in range(n))
    nonneg = all(x >= -tol for row in A for x in row)
    rows_one = all(close(sum(row), 1.0) for row in A)
    cols_one = all(close(sum(A[i][j] for i in range(n)), 1.0) for j in range(n))
    return {
        "nonnegative": nonneg,
        "symmetric": sym,
        "row_stochastic": nonneg and rows_one,
        "doubly_stochastic": nonneg and rows_one and cols_one,
        "trisymmetric": sym + per + cen >= 2,
    }


def _certificate(method, S, v, sigma, S_inv=None, padded_zeros=0) -> RealizationCertificate:
    v = vector(v)
    A = similarity(S, v, S_inv)
    if not A.is_nonnegative():
        raise InternalDispatchFailure(f"{method} construction produced a negative entry")
    return RealizationCertificate(method, S, v, A, matrix_flags(A), as_spectrum(sigma), False, padded_zeros)


def _require_conditions(sigma: Spectrum) -> ConditionReport:
    # for n <= 4 the power-sum and spectral-radius conditions are the whole story
    report = necessary_conditions(sigma, k_max=1)
    if not report.passed:
        names = ", ".join(sorted(report.conditions()))
        raise ConditionsFail(f"spectrum {list(map(str, sigma))} violates: {names}", report)
    return report


def _require_size(sigma: Spectrum, n: int):
    if len(sigma) != n:
        raise OrderMismatch(f"expected {n} values, got {len(sigma)}")


def _ratio(sigma: Spectrum, i: int) -> Fraction:
    top = sigma[0]
    return sigma[i] / top if top else Fraction(0)


# -- n <= 4 -----------------------------------------------------------------------


def realize_n1(sigma) -> RealizationCertificate:
    sigma = as_spectrum(sigma)
    _require_size(sigma, 1)
    _require_conditions(sigma)
    return _certificate("n1", H0, sigma.values, sigma)


def realize_n2(sigma) -> RealizationCertificate:
    """S = H_1, v = (l1, l2): A = (1/2)[[l1+l2, l1-l2], [l1-l2, l1+l2]]."""
    sigma = as_spectrum(sigma)
    _require_size(sigma, 2)
    _require_conditions(sigma)
    return _certificate("n2", H1, sigma.values, sigma)


def n3_basis(a) -> RatMatrix:
    a = as_rational(a)
    return RatMatrix([[1, 1, 0], [1, -a, 1], [1, -a, -1]])


def n3_parameter_interval(sigma) -> tuple[Fraction, Fraction] | None:
    """The closed set of a in [0, 1] for which S_a diag(sigma) S_a^-1 >= 0.

    Each entry of 2(1+a) S_a D_v S_a^-1 (normalized v = (1, x, y)) is affine
    in a; intersecting the half-lines gives an interval, or None if empty.
    """
    sigma = as_spectrum(sigma)
    _require_size(sigma, 3)
    x, y = _ratio(sigma, 1), _ratio(sigma, 2)
    lo, hi = Fraction(0), Fraction(1)
    # (slope, intercept) of each distinct entry
    for c, d in ((2, 2 * x), (0, 1 - x), (2 * (1 - x), 0), (x + y, y + 1), (x - y, 1 - y)):
        if c > 0:
            lo = max(lo, -d / c)
        elif c < 0:
            hi = min(hi, -d / c)
        elif d < 0:
            return None
    return (lo, hi) if lo <= hi else None


def realize_n3(sigma) -> RealizationCertificate:
    """Basis S_a with a = max(0, -l2/l1)."""
    sigma = as_spectrum(sigma)
    _require_size(sigma, 3)
    _require_conditions(sigma)
    a = max(Fraction(0), -_ratio(sigma, 1))
    return _certificate("n3", n3_basis(a), sigma.values, sigma)


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    p, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if p * p == q.numerator and d * d == q.denominator:
        return Fraction(p, d)
    return None


def realize_n3_symmetric(sigma) -> RealizationCertificate:
    """Symmetric realizer for three values.

    With l2 >= 0 the pairing ({l1, l3}, {l2}) on H_1 (+) H_0 is used.
    Otherwise S_a is rescaled by diag(1, r, r)^-1 with r = sqrt(2a); when r
    is irrational the realizer is returned in floating point and flagged
    ``numeric``.
    """
    sigma = as_spectrum(sigma)
    _require_size(sigma, 3)
    _require_conditions(sigma)
    l1, l2, l3 = sigma.values
    if l2 >= 0:
        return _certificate("n3-symmetric", direct_sum([H1, H0]), (l1, l3, l2), sigma)
    a = -_ratio(sigma, 1)
    S_a = n3_basis(a)
    r = _rational_sqrt(2 * a)
    if r is not None:
        return _certificate("n3-symmetric", diag_from((1, 1 / r, 1 / r)) @ S_a, sigma.values, sigma)
    exact = similarity(S_a, sigma.values)
    u = (1.0, math.sqrt(2 * a), math.sqrt(2 * a))
    A = tuple(tuple(float(exact[i, j]) * u[j] / u[i] for j in range(3)) for i in range(3))
    if any(x < -NUMERIC_TOL for row in A for x in row):
        raise InternalDispatchFailure("n3-symmetric construction produced a negative entry")
    # symmetrize away the rounding in the off-diagonal pair
    A = tuple(tuple((A[i][j] + A[j][i]) / 2 for j in range(3)) for i in range(3))
    return RealizationCertificate(
        "n3-symmetric", S_a, sigma.values, A, _numeric_flags(A), sigma, numeric=True
    )


def realize_n4(sigma) -> RealizationCertificate:
    """v = (l1, l4, l2, l3) on H_1 (+) H_1 when l2 + l3 >= 0, else on H_2."""
    sigma = as_spectrum(sigma)
    _require_size(sigma, 4)
    _require_conditions(sigma)
    l1, l2, l3, l4 = sigma.values
    v = (l1, l4, l2, l3)
    blocks = ("n4-blocks", direct_sum([H1, H1]))
    walsh_route = ("n4-walsh", walsh(2).matrix)
    order = (blocks, walsh_route) if l2 + l3 >= 0 else (walsh_route, blocks)
    for method, S in order:
        A = similarity(S, v)
        if A.is_nonnegative():
            return RealizationCertificate(method, S, vector(v), A, matrix_flags(A), sigma)
    raise InternalDispatchFailure(f"neither n=4 basis realizes {list(map(str, sigma))}")


# -- Suleimanova spectra ----------------------------------------------------------


def is_suleimanova(sigma) -> bool:
    """Nonnegative sum and exactly one positive value (counted with multiplicity)."""
    sigma = as_spectrum(sigma)
    return sigma.power_sum(1) >= 0 and sum(1 for x in sigma if x > 0) == 1


def suleimanova_decomposition(sigma) -> tuple[Fraction, ...]:
    """mu with v = mu_1 e_1 + sum_{k>=2} mu_k (e_1 - e_k), mu >= 0, sum mu = 1."""
    sigma = as_spectrum(sigma)
    _require_normalized_suleimanova(sigma)
    return (sigma.power_sum(1),) + tuple(-x for x in sigma.values[1:])


def _require_normalized_suleimanova(sigma: Spectrum):
    if not is_suleimanova(sigma):
        raise NotSuleimanova(f"{list(map(str, sigma))} is not a Suleimanova spectrum")
    if not sigma.normalized:
        raise NotSuleimanova("Suleimanova realization expects a normalized spectrum (largest value 1)")


def _hadamard_matrix(H) -> tuple[RatMatrix, int]:
    if isinstance(H, (NormalizedHadamard, WalshMatrix)):
        return H.matrix, H.matrix.rows
    if isinstance(H, RatMatrix):
        NormalizedHadamard(H.rows, H)  # validates
        return H, H.rows
    raise TypeError(f"expected a Hadamard matrix, got {type(H).__name__}")


def realize_suleimanova(sigma, H=None) -> RealizationCertificate:
    """A = (1/n) H diag(1, l2, ..., ln) H^T for a normalized Hadamard H of order n.

    The result is symmetric and doubly stochastic; it is trisymmetric when H
    is a Walsh matrix.
    """
    sigma = as_spectrum(sigma)
    _require_normalized_suleimanova(sigma)
    n = len(sigma)
    if H is None:
        H = hadamard_of_order(n)
    M, order = _hadamard_matrix(H)
    if order != n:
        raise OrderMismatch(f"spectrum has {n} values, Hadamard matrix has order {order}")
    return _certificate("suleimanova", M, sigma.values, sigma, S_inv=M.T.scale(Fraction(1, n)))


def realize_suleimanova_padded(sigma) -> RealizationCertificate:
    """Append N zeros to reach the next supported Hadamard order, then realize."""
    sigma = as_spectrum(sigma)
    _require_normalized_suleimanova(sigma)
    N = next_hadamard_order(len(sigma)) - len(sigma)
    cert = realize_suleimanova(sigma.with_zeros(N))
    return replace(cert, method="suleimanova-padded", padded_zeros=N)


# -- dispatch -----------------------------------------------------------------------


def _rescaled(cert: RealizationCertificate, c: Fraction, sigma: Spectrum) -> RealizationCertificate:
    if c == 1:
        return cert
    v = tuple(c * x for x in cert.diagonal)
    A = cert.realizer.scale(c)
    return replace(cert, diagonal=v, realizer=A, flags=matrix_flags(A), spectrum=cert.spectrum.scaled(c))


_SMALL = {1: realize_n1, 2: realize_n2, 3: realize_n3, 4: realize_n4}


def realize_auto(values, *, symmetric: bool = False) -> RealizationCertificate:
    """Pick a constructive route for a raw spectrum.

    Order of preference: the Hadamard construction for Suleimanova spectra
    of a supported order, the explicit n <= 4 constructions, then zero
    padding for the remaining Suleimanova spectra.  ``symmetric`` selects the
    symmetric n = 3 construction (possibly numeric).
    """
    sigma = as_spectrum(values)
    report = necessary_conditions(sigma)
    if not report.passed:
        names = ", ".join(sorted(report.conditions()))
        raise ConditionsFail(f"necessary conditions fail: {names}", report)
    n = len(sigma)
    if sigma[0] > 0:
        unit, scale = normalize(sigma)
        if n >= 2 and is_suleimanova(unit) and is_supported_order(n):
            return _rescaled(realize_suleimanova(unit), scale, sigma)
    if n <= 4:
        if n == 3 and symmetric:
            return realize_n3_symmetric(sigma)
        return _SMALL[n](sigma)
    if sigma[0] > 0 and is_suleimanova(unit):
        return _rescaled(realize_suleimanova_padded(unit), scale, sigma)
    raise NotSupported(f"no constructive route for {n} values that are not Suleimanova", report)


# -- verification -------------------------------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    failures: tuple[dict, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return not self.failures

    def checks_failed(self) -> set[str]:
        return {f["check"] for f in self.failures}

    def to_json(self) -> dict:
        return {"passed": self.passed, "failures": list(self.failures)}


def _float_char_poly(A: Sequence[Sequence[float]]) -> list[float]:
    n = len(A)
    coeffs = [1.0]
    M = [[float(i == j) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        if k > 1:
            M = [[sum(A[i][l] * M[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
            for i in range(n):
                M[i][i] += coeffs[-1]
        tr = sum(A[i][l] * M[l][i] for i in range(n) for l in range(n))
        coeffs.append(-tr / k)
    return coeffs


def verify_certificate(cert: RealizationCertificate, sigma=None) -> VerificationReport:
    """Re-derive every claim of a certificate from scratch.

    Checks that S diag(v) S^-1 reproduces the realizer, that the realizer is
    nonnegative, that the characteristic polynomial matches prod (t - l_i),
    and that each flag agrees with the matrix.  Numeric certificates are
    checked in floating point with tolerance 1e-12.
    """
    sigma = cert.spectrum if sigma is None else as_spectrum(sigma)
    target = poly_from_roots(sigma.values)
    failures: list[dict] = []
    n = cert.basis.rows
    if len(sigma) != n or len(cert.diagonal) != n:
        return VerificationReport(({"check": "shape", "detail": "basis, diagonal and spectrum sizes differ"},))

    if cert.numeric:
        A = cert.realizer
        for i, row in enumerate(A):
            for j, x in enumerate(row):
                if x < -NUMERIC_TOL:
                    failures.append({"check": "nonnegative", "entry": [i + 1, j + 1], "value": x})
        got = _float_char_poly(A)
        if any(abs(a - float(b)) > NUMERIC_TOL * max(1.0, abs(float(b))) for a, b in zip(got, target)):
            failures.append({"check": "char_poly", "detail": f"coefficients {got}"})
        flags = _numeric_flags(A)
    else:
        A = cert.realizer
        if A.shape != (n, n):
            return VerificationReport(({"check": "shape", "detail": "realizer has the wrong shape"},))
        try:
            rebuilt = similarity(cert.basis, cert.diagonal)
        except Singular:
            failures.append({"check": "basis", "detail": "basis is singular"})
            rebuilt = None
        if rebuilt is not None and rebuilt != A:
            failures.append({"check": "reconstruction", "detail": "S diag(v) S^-1 differs from the realizer"})
        for i, j in A.negative_entries():
            failures.append({"check": "nonnegative", "entry": [i + 1, j + 1], "value": format_rational(A[i, j])})
        for name, M in (("char_poly", rebuilt), ("char_poly", A if rebuilt != A else None)):
            if M is not None and char_poly(M) != target:
                failures.append({"check": name, "detail": [format_rational(c) for c in char_poly(M)]})
        flags = matrix_flags(A)

    for name in FLAG_NAMES:
        if name in cert.flags and cert.flags[name] != flags[name]:
            failures.append({"check": f"flag:{name}", "claimed": cert.flags[name], "actual": flags[name]})
    return VerificationReport(tuple(failures))


def trace_zero_3x3_circulant(a) -> tuple[RatMatrix, bool]:
    """The trace-zero 3x3 doubly stochastic circulant and whether its spectrum is real.

    Its characteristic polynomial is (t - 1)(t^2 + p t + q); the spectrum is
    real exactly when p^2 - 4q >= 0.
    """
    a = as_rational(a)
    if not 0 <= a <= 1:
        raise OutOfRange(f"a={a} outside [0, 1]")
    A = RatMatrix([[0, a, 1 - a], [1 - a, 0, a], [a, 1 - a, 0]])
    _, c2, c1, c0 = char_poly(A)
    # synthetic division by (t - 1)
    p = c2 + 1
    q = c1 + p
    if q + c0 != 0:
        raise AssertionError("1 is not an eigenvalue of a stochastic matrix")
    return A, p * p - 4 * q >= 0

