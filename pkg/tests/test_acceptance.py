"""The ten acceptance criteria, each at its stated tolerance and time budget.

Every test records a PASS/FAIL line that the terminal summary prints at the
end of the run.
"""

from __future__ import annotations

import math
import random
import time
from fractions import Fraction as F

from spectratope.errors import ConditionsFail
from spectratope.hadamard import (
    group_matrix,
    hadamard_of_order,
    perm_basis,
    perm_from_walsh_row,
    scheme_basis,
    walsh,
)
from spectratope.linalg import (
    Permutation,
    RatMatrix,
    diag_from,
    direct_sum,
    hadamard_product,
    inverse,
    similarity,
    vector,
)
from spectratope.perron import POWER_SUM, SPECTRAL_RADIUS
from spectratope.polyhedra import (
    cone_membership_direct,
    enumerate_vertices,
    hrep_membership,
    project_p1,
    simplex_volume,
    spectracone_hrep,
    wpolytope_hrep,
)
from spectratope.realize import (
    n3_basis,
    realize_auto,
    realize_suleimanova,
    realize_suleimanova_padded,
    trace_zero_3x3_circulant,
    verify_certificate,
)
from spectratope.spectrum import Spectrum


class Clock:
    def __init__(self, budget: float):
        self.budget = budget
        self.start = time.perf_counter()

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.start

    @property
    def within(self) -> bool:
        return self.elapsed < self.budget

    def __str__(self) -> str:
        return f"{self.elapsed:.2f}s of {self.budget:g}s"


def _rational(rng: random.Random, lo=-1, hi=1) -> F:
    q = rng.randint(1, 24)
    return F(rng.randint(lo * q, hi * q), q)


def _random_invertible(rng: random.Random, n: int) -> RatMatrix:
    while True:
        S = RatMatrix([[F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)])
        try:
            inverse(S)
            return S
        except Exception:
            continue


def _random_perm(rng: random.Random, n: int) -> RatMatrix:
    image = list(range(n))
    rng.shuffle(image)
    return Permutation(tuple(image)).as_matrix()


def test_criterion_01_walsh_volumes(acceptance):
    clock = Clock(10)
    got, want = [], []
    for n in (1, 2, 3):
        verts = enumerate_vertices(wpolytope_hrep(walsh(n).matrix))
        got.append(simplex_volume(verts))
        want.append(F(2 ** (n * 2 ** (n - 1)), math.factorial(2**n)))
    for n in (1, 2):
        verts = enumerate_vertices(project_p1(walsh(n).matrix))
        got.append(simplex_volume(verts))
        want.append(F(2 ** (n * 2 ** (n - 1)), math.factorial(2**n - 1)))
    assert want == [1, F(2, 3), F(32, 315), 2, F(8, 3)]
    ok = got == want and clock.within
    acceptance(1, "Walsh simplex volumes", ok, f"{', '.join(map(str, got))}; {clock}")
    assert got == want
    assert clock.within


def test_criterion_02_order12_observation(acceptance):
    clock = Clock(1)
    H = hadamard_of_order(12).matrix
    members = [i for i in range(12) if cone_membership_direct(H, H.row(i))[0]]
    ok = members == [0] and H.row(0) == (1,) * 12 and clock.within
    acceptance(2, "order-12 rows in the spectratope", ok, f"member rows {[i + 1 for i in members]}; {clock}")
    assert members == [0]
    assert clock.within


def _normalized_spectrum(rng: random.Random, n: int) -> Spectrum:
    while True:
        sigma = Spectrum(tuple([F(1)] + [_rational(rng) for _ in range(n - 1)]))
        if sigma.power_sum(1) >= 0:
            return sigma


def _violating_spectrum(rng: random.Random, n: int) -> Spectrum:
    if n > 2 and rng.random() < 0.5:
        # power-sum failure: normalized with negative trace (impossible for n = 2)
        while True:
            sigma = Spectrum(tuple([F(1)] + [_rational(rng) for _ in range(n - 1)]))
            if sigma.power_sum(1) < 0:
                return sigma
    # spectral-radius failure: some value below -lambda_1
    top = _rational(rng, 0, 1) or F(1, 2)
    rest = [_rational(rng, -1, 0) * top for _ in range(n - 2)]
    return Spectrum(tuple([top, -top - _rational(rng, 0, 1) - F(1, 100)] + rest))


def test_criterion_03_low_dimensional(acceptance):
    clock = Clock(60)
    rng = random.Random(20240603)
    bad = []
    for n in (2, 3, 4):
        for _ in range(10_000):
            sigma = _normalized_spectrum(rng, n)
            try:
                cert = realize_auto(sigma)
            except Exception as exc:  # pragma: no cover - reported below
                bad.append((sigma, repr(exc)))
                continue
            if cert.numeric or not verify_certificate(cert).passed:
                bad.append((sigma, "verification"))
    wrong_reports = []
    for i in range(1000):
        n = (2, 3, 4)[i % 3]
        sigma = _violating_spectrum(rng, n)
        expect_trace = sigma.power_sum(1) < 0
        expect_radius = sigma.spectral_radius not in sigma.values
        assert expect_trace or expect_radius
        try:
            realize_auto(sigma)
        except ConditionsFail as exc:
            report = exc.report
            has_trace = any(v.condition == POWER_SUM and v.witness == 1 for v in report.violations)
            has_radius = SPECTRAL_RADIUS in report.conditions()
            if report.passed or has_trace != expect_trace or has_radius != expect_radius:
                wrong_reports.append(sigma)
        else:
            wrong_reports.append(sigma)
    ok = not bad and not wrong_reports and clock.within
    acceptance(3, "n <= 4 realizations and violation reports", ok,
               f"{len(bad)} realization failures, {len(wrong_reports)} wrong reports; {clock}")
    assert not bad, bad[:3]
    assert not wrong_reports, wrong_reports[:3]
    assert clock.within


def _suleimanova(rng: random.Random, n: int) -> Spectrum:
    weights = [rng.randint(0, 12) for _ in range(n - 1)]
    total = sum(weights) or 1
    budget = F(rng.randint(0, 12), 12)
    return Spectrum(tuple([F(1)] + [-budget * F(w, total) for w in weights]))


def test_criterion_04_suleimanova_suite(acceptance):
    clock = Clock(60)
    rng = random.Random(6204)
    failures = []
    for n in (2, 4, 8, 12, 16):
        H = hadamard_of_order(n)
        for _ in range(500):
            sigma = _suleimanova(rng, n)
            c = realize_suleimanova(sigma, H)
            fl = c.flags
            ok = fl["symmetric"] and fl["doubly_stochastic"] and verify_certificate(c).passed
            if n != 12:
                ok = ok and fl["trisymmetric"]
            if not ok:
                failures.append((n, sigma))
    padding = {}
    for n, (order, N) in {3: (4, 1), 5: (8, 3), 6: (8, 2), 7: (8, 1), 9: (12, 3)}.items():
        c = realize_suleimanova_padded(_suleimanova(rng, n))
        padding[n] = (c.realizer.rows, c.padded_zeros)
        if padding[n] != (order, N) or not verify_certificate(c).passed:
            failures.append((n, "padding"))
    ok = not failures and clock.within
    acceptance(4, "Suleimanova and padding suites", ok, f"{len(failures)} failures; {clock}")
    assert not failures, failures[:3]
    assert clock.within


def test_criterion_05_association_scheme(acceptance):
    clock = Clock(30)
    problems = []
    for n in range(1, 5):
        N = 2**n
        mats = scheme_basis(n).matrices()
        I, K, J = RatMatrix.identity(N), RatMatrix.exchange(N), RatMatrix.ones(N)
        checks = {
            "i": mats[0] == I,
            "ii": mats[-1] == K,
            "iii": all(P.is_trisymmetric() and Permutation.from_matrix(P) for P in mats),
            "iv": sum(mats[1:], mats[0]) == J,
            "vi": all(P @ P == I for P in mats),
            "vii": all(perm_from_walsh_row(n, k) == mats[k - 1] for k in range(1, N + 1)),
            "viii": all((mats[k].T @ mats[l]).trace() == 0 for k in range(N) for l in range(N) if k != l),
        }
        # (v) and (ix): closed, commutative, every element an involution, and the
        # index map k-1 -> bit vector is an isomorphism onto (Z_2)^n
        index = {M: k for k, M in enumerate(mats)}
        closed = commutes = iso = True
        for k in range(N):
            for l in range(N):
                prod = mats[k] @ mats[l]
                j = index.get(prod)
                closed &= j is not None
                commutes &= prod == mats[l] @ mats[k]
                iso &= j == (k ^ l)
        checks["v"] = closed and iso and len(index) == N
        checks["ix"] = closed and commutes
        problems += [f"n={n} ({name})" for name, good in checks.items() if not good]
    ok = not problems and clock.within
    acceptance(5, "association-scheme claims (i)-(ix), n <= 4", ok, f"{problems or 'all hold'}; {clock}")
    assert not problems
    assert clock.within


def test_criterion_06_bose_mesner(acceptance):
    clock = Clock(10)
    rng = random.Random(77)
    perms = [perm_basis(3, k) for k in range(1, 9)]
    failures = 0
    for _ in range(200):
        x = [_rational(rng, -3, 3) for _ in range(8)]
        y = [_rational(rng, -3, 3) for _ in range(8)]
        Mx, My = group_matrix(3, x), group_matrix(3, y)
        z = [sum(a * b for a, b in zip(x, p.apply(vector(y)))) for p in perms]
        if hadamard_product(Mx, My) != group_matrix(3, [a * b for a, b in zip(x, y)]):
            failures += 1
        elif Mx @ My != group_matrix(3, z):
            failures += 1
    ok = failures == 0 and clock.within
    acceptance(6, "Bose-Mesner closure at n = 3", ok, f"{failures} failures; {clock}")
    assert failures == 0
    assert clock.within


def test_criterion_07_hrep_direct_oracle(acceptance):
    clock = Clock(60)
    rng = random.Random(31337)
    disagreements = members = checks = 0
    for s in range(50):
        n = 2 + s % 4
        S = _random_invertible(rng, n)
        h = spectracone_hrep(S)
        for t in range(1000):
            if t % 2:
                # near e, so that a healthy share of points land inside the cone
                x = [1 + _rational(rng) / rng.randint(1, 20) for _ in range(n)]
            else:
                x = [_rational(rng, -2, 2) for _ in range(n)]
            a = hrep_membership(h, x)
            b = cone_membership_direct(S, x)[0]
            disagreements += a != b
            members += b
            checks += 1
    ok = disagreements == 0 and clock.within
    acceptance(7, "H-rep vs direct membership", ok,
               f"{checks} checks, {members} members, {disagreements} disagreements; {clock}")
    assert disagreements == 0
    assert clock.within


def test_criterion_08_cone_invariants(acceptance):
    clock = Clock(60)
    rng = random.Random(348)
    names = ("SP", "PS", "DS", "SD", "S^-T", "T+U")
    failures = dict.fromkeys(names, 0)

    def member(S, x):
        return hrep_membership(spectracone_hrep(S), x)

    def point(n):
        if rng.random() < 0.5:
            return [1 + _rational(rng) / 4 for _ in range(n)]
        return [_rational(rng) for _ in range(n)]

    for _ in range(500):
        n = rng.randint(2, 4)
        S = _random_invertible(rng, n)
        P = _random_perm(rng, n)
        x = point(n)
        base = member(S, x)
        pos = [F(rng.randint(1, 9), rng.randint(1, 4)) for _ in range(n)]
        nonzero = [p if rng.random() < 0.5 else -p for p in pos]
        failures["SP"] += member(S @ P, x) != member(S, P @ vector(x))
        failures["PS"] += member(P @ S, x) != base
        failures["DS"] += member(diag_from(pos) @ S, x) != base
        failures["SD"] += member(S @ diag_from(nonzero), x) != base
        failures["S^-T"] += member(inverse(S).T, x) != base
        T, U = _random_invertible(rng, 2), _random_invertible(rng, rng.randint(1, 2))
        y, w = point(2), point(U.rows)
        failures["T+U"] += member(direct_sum([T, U]), y + w) != (member(T, y) and member(U, w))
    ok = not any(failures.values()) and clock.within
    acceptance(8, "cone invariants under P, D_v, transpose-inverse, direct sums", ok,
               f"failures {failures}; {clock}")
    assert not any(failures.values()), failures
    assert clock.within


def test_criterion_09_trace_zero_circulant(acceptance):
    clock = Clock(1)
    real_at = [F(k, 100) for k in range(101) if trace_zero_3x3_circulant(F(k, 100))[1]]
    circulant = trace_zero_3x3_circulant(F(1, 2))[0]
    same = realize_auto([1, F(-1, 2), F(-1, 2)]).realizer == circulant
    ok = real_at == [F(1, 2)] and same and clock.within
    acceptance(9, "trace-zero circulant real only at a = 1/2", ok, f"real at {list(map(str, real_at))}; {clock}")
    assert real_at == [F(1, 2)]
    assert same
    assert clock.within


def test_criterion_10_n3_parameter_sweep(acceptance):
    clock = Clock(120)
    grid = [F(-1) + F(2 * i, 199) for i in range(200)]
    tested = negative_display = negative_product = 0
    for l2 in grid:
        a = max(F(0), -l2)
        S_a = n3_basis(a)
        for l3 in grid:
            if l3 > l2 or 1 + l2 + l3 < 0:
                continue
            tested += 1
            x, y = l2, l3
            entries = (
                2 * (x + a), 1 - x, 2 * a * (1 - x),
                a * (x + y) + y + 1, a * (x - y) - y + 1,
            )
            negative_display += any(e < 0 for e in entries)
            negative_product += not similarity(S_a, (1, x, y)).is_nonnegative()
    ok = negative_display == 0 and negative_product == 0 and clock.within
    acceptance(10, "n = 3 parameter choice a = max(0, -l2)", ok,
               f"{tested} grid points, {negative_display + negative_product} negative; {clock}")
    assert negative_display == 0 and negative_product == 0
    assert clock.within
