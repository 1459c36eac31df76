"""H-representations of Perron spectracones and spectratopes.

For an invertible basis S the spectracone is C(S) = {x : S diag(x) S^-1 >= 0},
one homogeneous inequality per matrix entry.  The bounded sections are

* W(S)  = C(S) intersected with the box [-1, 1]^n,
* P(S)  = W(S) with x_1 = 1 (the spectratope),
* P1(S) = P(S) with the pinned first coordinate dropped.

All sets are closed; every inequality is non-strict.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import Degenerate, LengthMismatch, ResourceLimit, ShapeMismatch, Singular, Unbounded
from .hadamard import walsh
from .linalg import (
    RatMatrix,
    _bareiss_gauss_jordan,
    _int_rank,
    _lcm_of,
    determinant,
    format_rational,
    inverse,
    parse_rational,
    similarity,
    vector,
)

MAX_ENUM_DIM = 8
BRUTE_FORCE_LIMIT = 200_000


@dataclass(frozen=True)
class Inequality:
    """``normal . x <= offset``, tagged with where it came from."""

    normal: tuple[Fraction, ...]
    offset: Fraction
    tag: str

    def holds(self, x: Sequence[Fraction]) -> bool:
        return sum((a * b for a, b in zip(self.normal, x)), Fraction(0)) <= self.offset


@dataclass(frozen=True)
class HRep:
    dim: int
    rows: tuple[Inequality, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        for r in self.rows:
            if len(r.normal) != self.dim:
                raise LengthMismatch(f"row {r.tag!r} has length {len(r.normal)}, dim is {self.dim}")

    def __len__(self) -> int:
        return len(self.rows)

    def tagged(self, prefix: str) -> list[Inequality]:
        return [r for r in self.rows if r.tag.startswith(prefix)]

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "rows": [
                {"a": [format_rational(x) for x in r.normal], "b": format_rational(r.offset), "tag": r.tag}
                for r in self.rows
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> HRep:
        rows = tuple(
            Inequality(tuple(parse_rational(x) for x in r["a"]), parse_rational(r["b"]), r.get("tag", ""))
            for r in obj["rows"]
        )
        return cls(int(obj["dim"]), rows)


@dataclass(frozen=True)
class SimplexSpec:
    vertices: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        verts = tuple(vector(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        dim = len(verts[0]) if verts else 0
        if len(verts) != dim + 1 or any(len(v) != dim for v in verts):
            raise ShapeMismatch(f"an n-simplex needs n+1 vertices in R^n, got {len(verts)} of length {dim}")

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1


# -- constructions ---------------------------------------------------------------


def _cone_rows(S: RatMatrix, S_inv: RatMatrix) -> list[Inequality]:
    # entry (i, j) of S D_x S^-1 is sum_k s_ik t_kj x_k; rows follow the
    # column-major vectorization of the matrix
    n = S.rows
    zero = Fraction(0)
    rows = []
    for j in range(n):
        t_col = S_inv.col(j)
        for i in range(n):
            s_row = S.row(i)
            rows.append(Inequality(tuple(-s * t for s, t in zip(s_row, t_col)), zero, f"entry({i + 1},{j + 1})"))
    return rows


def _box_rows(n: int, first: int = 0) -> list[Inequality]:
    rows = []
    for i in range(first, n):
        e = tuple(Fraction(int(k == i - first)) for k in range(n - first))
        rows.append(Inequality(e, Fraction(1), f"box(+{i + 1})"))
        rows.append(Inequality(tuple(-x for x in e), Fraction(1), f"box(-{i + 1})"))
    return rows


def _check_basis(S: RatMatrix) -> RatMatrix:
    if not S.is_square:
        raise ShapeMismatch(f"basis must be square, got {S.rows}x{S.cols}")
    return inverse(S)


def spectracone_hrep(S: RatMatrix) -> HRep:
    """The n**2 homogeneous inequalities describing C(S).

    Identically zero rows are kept so that row ``entry(i,j)`` always maps to
    matrix entry (i, j).
    """
    return HRep(S.rows, _cone_rows(S, _check_basis(S)))


def wpolytope_hrep(S: RatMatrix) -> HRep:
    S_inv = _check_basis(S)
    return HRep(S.rows, _cone_rows(S, S_inv) + _box_rows(S.rows))


def spectratope_hrep(S: RatMatrix) -> HRep:
    """P(S): the cone rows, the box rows, and the slice x_1 = 1 as two inequalities."""
    S_inv = _check_basis(S)
    n = S.rows
    e1 = tuple(Fraction(int(k == 0)) for k in range(n))
    slice_rows = [
        Inequality(e1, Fraction(1), "slice(+1)"),
        Inequality(tuple(-x for x in e1), Fraction(-1), "slice(-1)"),
    ]
    return HRep(n, _cone_rows(S, S_inv) + _box_rows(n) + slice_rows)


def project_p1(S: RatMatrix) -> HRep:
    """P1(S) in R^(n-1), by substituting x_1 = 1 into the cone rows."""
    S_inv = _check_basis(S)
    n = S.rows
    if n < 2:
        raise ShapeMismatch("P1(S) needs n >= 2")
    rows = [Inequality(r.normal[1:], -r.normal[0], r.tag) for r in _cone_rows(S, S_inv)]
    return HRep(n - 1, rows + _box_rows(n, first=1))


# -- membership ------------------------------------------------------------------


def hrep_membership(h: HRep, x: Sequence) -> bool:
    x = vector(x)
    if len(x) != h.dim:
        raise LengthMismatch(f"point has length {len(x)}, polyhedron lives in R^{h.dim}")
    return all(r.holds(x) for r in h.rows)


def cone_membership_direct(S: RatMatrix, x: Sequence) -> tuple[bool, RatMatrix]:
    """Form A = S diag(x) S^-1 and test A >= 0; A is returned as the witness."""
    x = vector(x)
    if len(x) != S.cols:
        raise LengthMismatch(f"vector has length {len(x)}, basis is {S.rows}x{S.cols}")
    A = similarity(S, x, _check_basis(S))
    return A.is_nonnegative(), A


def walsh_cone_coefficients(n: int, v: Sequence) -> tuple[Fraction, ...]:
    """The x >= 0 test vector 2^-n H_n v, so that v = H_n x."""
    v = vector(v)
    H = walsh(n).matrix
    if len(v) != H.rows:
        raise LengthMismatch(f"need length {H.rows}, got {len(v)}")
    return tuple(c / H.rows for c in H @ v)


def walsh_cone_membership(n: int, v: Sequence) -> bool:
    """v lies in C(H_n) exactly when H_n v >= 0."""
    return all(c >= 0 for c in walsh_cone_coefficients(n, v))


# -- volume ----------------------------------------------------------------------


def simplex_volume(s: SimplexSpec | Sequence[Sequence]) -> Fraction:
    """|det M| / n! where M has rows [1, v_i]."""
    if not isinstance(s, SimplexSpec):
        s = SimplexSpec(tuple(s))
    n = s.dim
    if n == 0:
        return Fraction(1)
    M = RatMatrix([[1, *v] for v in s.vertices])
    det = determinant(M)
    if det == 0:
        raise Degenerate("vertices are affinely dependent")
    return abs(det) / math.factorial(n)


# -- vertex enumeration ----------------------------------------------------------


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = math.gcd(*v)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _homogenize(h: HRep) -> tuple[list[tuple[int, ...]], bool]:
    """Rows g with g . (t, x) >= 0 for each a . x <= b; flags infeasible zero rows."""
    seen = {}
    for r in h.rows:
        entries = (r.offset, *(-a for a in r.normal))
        if all(a == 0 for a in r.normal):
            if r.offset < 0:
                return [], True
            continue
        d = _lcm_of(x.denominator for x in entries)
        g = _primitive([x.numerator * (d // x.denominator) for x in entries])
        seen.setdefault(g, None)
    return list(seen), False


def _extreme_rays(G: list[tuple[int, ...]], d: int) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone {y in R^d : G y >= 0}.

    Double description with the combinatorial adjacency test.  Zero sets are
    bitmasks over row indices of G.
    """
    if not G or _int_rank([list(g) for g in G]) < d:
        raise Unbounded("constraint normals do not span the space (lineality or empty set)")
    basis: list[int] = []
    for idx, g in enumerate(G):
        if _int_rank([list(G[b]) for b in basis] + [list(g)]) > len(basis):
            basis.append(idx)
            if len(basis) == d:
                break
    B_inv = inverse(RatMatrix([list(G[b]) for b in basis]))
    rays: list[tuple[int, ...]] = []
    zeros: list[int] = []
    full = 0
    for b in basis:
        full |= 1 << b
    for j, b in enumerate(basis):
        col = B_inv.col(j)
        den = _lcm_of(x.denominator for x in col)
        rays.append(_primitive([x.numerator * (den // x.denominator) for x in col]))
        zeros.append(full & ~(1 << b))

    in_basis = set(basis)
    for h, g in enumerate(G):
        if h in in_basis:
            continue
        vals = [sum(a * b for a, b in zip(g, r)) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        bit = 1 << h
        new_rays = []
        new_zeros = []
        for i, v in enumerate(vals):
            if v >= 0:
                new_rays.append(rays[i])
                new_zeros.append(zeros[i] | bit if v == 0 else zeros[i])
        for p in pos:
            for q in neg:
                common = zeros[p] & zeros[q]
                if common.bit_count() < d - 2:
                    continue
                if any(
                    r != p and r != q and common & ~zeros[r] == 0 for r in range(len(rays))
                ):
                    continue
                vp, vq = vals[p], -vals[q]
                ray = _primitive([vp * a + vq * b for a, b in zip(rays[q], rays[p])])
                new_rays.append(ray)
                new_zeros.append(common | bit)
        rays, zeros = new_rays, new_zeros
    return rays


def _enumerate_dd(h: HRep) -> list[tuple[Fraction, ...]]:
    G, infeasible = _homogenize(h)
    if infeasible:
        return []
    d = h.dim + 1
    G.append((1,) + (0,) * h.dim)
    rays = _extreme_rays(G, d)
    verts = [tuple(Fraction(x, r[0]) for x in r[1:]) for r in rays if r[0] > 0]
    if verts and any(r[0] == 0 for r in rays):
        raise Unbounded("polyhedron has a recession direction")
    return sorted(set(verts))


def _is_bounded(h: HRep) -> bool:
    G = []
    for r in h.rows:
        if any(a != 0 for a in r.normal):
            d = _lcm_of(a.denominator for a in r.normal)
            G.append(_primitive([-a.numerator * (d // a.denominator) for a in r.normal]))
    G = list(dict.fromkeys(G))
    try:
        return not _extreme_rays(G, h.dim)
    except Unbounded:
        return False


def _enumerate_brute(h: HRep) -> list[tuple[Fraction, ...]]:
    rows = list(dict.fromkeys((r.normal, r.offset) for r in h.rows if any(a != 0 for a in r.normal)))
    if any(r.offset < 0 and all(a == 0 for a in r.normal) for r in h.rows):
        return []
    dim = h.dim
    if math.comb(len(rows), dim) > BRUTE_FORCE_LIMIT:
        raise ResourceLimit(f"C({len(rows)}, {dim}) active sets exceed the brute-force limit")
    if not _is_bounded(h):
        raise Unbounded("polyhedron has a recession direction")
    found = set()
    for combo in itertools.combinations(rows, dim):
        dens = [_lcm_of([b.denominator, *(a.denominator for a in normal)]) for normal, b in combo]
        aug = [
            [a.numerator * (d // a.denominator) for a in normal] + [b.numerator * (d // b.denominator)]
            for (normal, b), d in zip(combo, dens)
        ]
        try:
            piv = _bareiss_gauss_jordan(aug, dim)
        except Singular:
            continue
        x = tuple(Fraction(row[dim], piv) for row in aug)
        if all(r.holds(x) for r in h.rows):
            found.add(x)
    return sorted(found)


def enumerate_vertices(h: HRep, *, method: str = "auto", max_dim: int = MAX_ENUM_DIM) -> list[tuple[Fraction, ...]]:
    """Exact vertex set of a bounded polyhedron, sorted lexicographically.

    ``method`` is ``"brute"`` (every dim-subset of inequalities solved at
    equality), ``"dd"`` (double description on the homogenized cone), or
    ``"auto"``, which picks brute force when the subset count is small.
    """
    if h.dim > max_dim:
        raise ResourceLimit(f"dimension {h.dim} exceeds the enumeration cap {max_dim}")
    if method == "auto":
        distinct = len({(r.normal, r.offset) for r in h.rows})
        method = "brute" if math.comb(distinct, h.dim) <= 2000 else "dd"
    if method == "brute":
        return _enumerate_brute(h)
    if method == "dd":
        return _enumerate_dd(h)
    raise ValueError(f"unknown method {method!r}")
