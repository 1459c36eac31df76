"""Exact rational dense linear algebra.

Scalars are :class:`fractions.Fraction`.  A :class:`RatMatrix` stores an
integer numerator grid over a single positive common denominator, kept in
lowest terms, so products, inverses and characteristic polynomials run in
integer arithmetic and only touch ``Fraction`` at the boundary.

Vectors are plain tuples of ``Fraction``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import LengthMismatch, ShapeMismatch, Singular

__all__ = [
    "RatMatrix",
    "Permutation",
    "as_rational",
    "vector",
    "inverse",
    "determinant",
    "char_poly",
    "poly_from_roots",
    "kron",
    "direct_sum",
    "hadamard_product",
    "diag_from",
    "diag_of",
    "solve",
    "rank",
    "dot",
    "format_rational",
    "parse_rational",
    "parse_vector",
    "format_decimal",
    "matrix_to_json",
    "matrix_from_json",
    "vector_to_json",
]

Rational = Fraction
RatVector = tuple  # tuple[Fraction, ...]


def as_rational(x) -> Fraction:
    """Coerce an int, Fraction or rational literal string to ``Fraction``.

    Floats are refused: silently importing binary rounding error would break
    every exact identity downstream.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError(f"float {x!r} is not exact; pass a Fraction or a 'p/q' string")
    try:
        return Fraction(x)
    except (TypeError, ValueError):
        raise TypeError(f"cannot interpret {x!r} as a rational") from None


def vector(values: Iterable) -> tuple:
    v = tuple(as_rational(x) for x in values)
    if not v:
        raise LengthMismatch("vectors must have length >= 1")
    return v


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise LengthMismatch(f"lengths {len(u)} and {len(v)} differ")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def _lcm_of(dens: Iterable[int]) -> int:
    out = 1
    for d in dens:
        out = out * d // math.gcd(out, d)
    return out


class RatMatrix:
    """Immutable dense matrix of rationals."""

    __slots__ = ("_num", "_den", "rows", "cols", "_hash")

    def __init__(self, entries: Iterable[Iterable]):
        grid = [[as_rational(x) for x in row] for row in entries]
        if not grid or not grid[0]:
            raise ShapeMismatch("a matrix needs at least one row and one column")
        cols = len(grid[0])
        if any(len(row) != cols for row in grid):
            raise ShapeMismatch("ragged rows")
        den = _lcm_of(x.denominator for row in grid for x in row)
        num = tuple(tuple(x.numerator * (den // x.denominator) for x in row) for row in grid)
        self._set(num, den)

    def _set(self, num, den):
        g = math.gcd(den, *(x for row in num for x in row))
        if g > 1:
            num = tuple(tuple(x // g for x in row) for row in num)
            den //= g
        self._num = num
        self._den = den
        self.rows = len(num)
        self.cols = len(num[0])
        self._hash = None

    @classmethod
    def _raw(cls, num, den: int) -> RatMatrix:
        """Build from an integer grid and positive denominator (not necessarily reduced)."""
        out = cls.__new__(cls)
        if den < 0:
            num = [[-x for x in row] for row in num]
            den = -den
        out._set(tuple(tuple(row) for row in num), den)
        return out

    # -- constructors -----------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        return cls._raw([[int(i == j) for j in range(n)] for i in range(n)], 1)

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> RatMatrix:
        return cls._raw([[0] * (rows if cols is None else cols) for _ in range(rows)], 1)

    @classmethod
    def ones(cls, rows: int, cols: int | None = None) -> RatMatrix:
        """The all-ones matrix J."""
        return cls._raw([[1] * (rows if cols is None else cols) for _ in range(rows)], 1)

    @classmethod
    def exchange(cls, n: int) -> RatMatrix:
        """The exchange matrix K = [e_n | ... | e_1]."""
        return cls._raw([[int(i + j == n - 1) for j in range(n)] for i in range(n)], 1)

    # -- access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def numerators(self) -> tuple[tuple[int, ...], ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def __getitem__(self, idx) -> Fraction:
        i, j = idx
        return Fraction(self._num[i][j], self._den)

    def row(self, i: int) -> tuple:
        return tuple(Fraction(x, self._den) for x in self._num[i])

    def col(self, j: int) -> tuple:
        return tuple(Fraction(row[j], self._den) for row in self._num)

    def tolist(self) -> list[list[Fraction]]:
        return [[Fraction(x, self._den) for x in row] for row in self._num]

    def __iter__(self):
        for i in range(self.rows):
            yield self.row(i)

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(format_rational(x) for x in r) + "]" for r in self)
        return f"RatMatrix([{body}])"

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self._den == other._den and self._num == other._num

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._num, self._den))
        return self._hash

    # -- predicates -------------------------------------------------------

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for row in self._num for x in row)

    def is_positive(self) -> bool:
        return all(x > 0 for row in self._num for x in row)

    def negative_entries(self) -> list[tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self._num) for j, x in enumerate(row) if x < 0]

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self._num[i][j] == self._num[j][i] for i in range(self.rows) for j in range(i)
        )

    def trace(self) -> Fraction:
        self._require_square()
        return Fraction(sum(self._num[i][i] for i in range(self.rows)), self._den)

    def row_sums(self) -> tuple:
        return tuple(Fraction(sum(row), self._den) for row in self._num)

    def col_sums(self) -> tuple:
        return tuple(Fraction(sum(c), self._den) for c in zip(*self._num))

    def _require_square(self):
        if not self.is_square:
            raise ShapeMismatch(f"expected a square matrix, got {self.rows}x{self.cols}")

    # -- arithmetic -------------------------------------------------------

    @property
    def T(self) -> RatMatrix:
        return RatMatrix._raw(list(zip(*self._num)), self._den)

    def __neg__(self) -> RatMatrix:
        return RatMatrix._raw([[-x for x in row] for row in self._num], self._den)

    def _combine(self, other: RatMatrix, sign: int) -> RatMatrix:
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")
        d = self._den * other._den // math.gcd(self._den, other._den)
        a, b = d // self._den, d // other._den
        return RatMatrix._raw(
            [[a * x + sign * b * y for x, y in zip(r, s)] for r, s in zip(self._num, other._num)], d
        )

    def __add__(self, other: RatMatrix) -> RatMatrix:
        return self._combine(other, 1)

    def __sub__(self, other: RatMatrix) -> RatMatrix:
        return self._combine(other, -1)

    def scale(self, c) -> RatMatrix:
        c = as_rational(c)
        return RatMatrix._raw(
            [[x * c.numerator for x in row] for row in self._num], self._den * c.denominator
        )

    def __mul__(self, c) -> RatMatrix:
        if isinstance(c, RatMatrix):
            raise TypeError("use @ for matrix products and hadamard_product() for entrywise")
        return self.scale(c)

    __rmul__ = __mul__

    def __truediv__(self, c) -> RatMatrix:
        return self.scale(1 / as_rational(c))

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.cols != other.rows:
                raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
            cols = list(zip(*other._num))
            prod = [[sum(a * b for a, b in zip(row, c)) for c in cols] for row in self._num]
            return RatMatrix._raw(prod, self._den * other._den)
        v = vector(other)
        if len(v) != self.cols:
            raise LengthMismatch(f"matrix has {self.cols} columns, vector has length {len(v)}")
        return tuple(
            sum((Fraction(a, self._den) * x for a, x in zip(row, v)), Fraction(0))
            for row in self._num
        )

    def __rmatmul__(self, other):
        # row vector times matrix
        v = vector(other)
        return self.T @ v

    def is_trisymmetric(self) -> bool:
        """At least two of symmetric, persymmetric (AK = KA^T), centrosymmetric (AK = KA)."""
        if not self.is_square:
            return False
        A, m = self._num, self.rows - 1
        # entrywise forms of AK = KA^T and AK = KA
        per = all(A[i][j] == A[m - j][m - i] for i in range(m + 1) for j in range(m + 1))
        centro = all(A[i][j] == A[m - i][m - j] for i in range(m + 1) for j in range(m + 1))
        return self.is_symmetric() + per + centro >= 2


@dataclass(frozen=True)
class Permutation:
    """Permutation matrix stored as an index map.

    ``image[i]`` is the row that row ``i`` of the identity moves to, so the
    matrix has a one in position ``(image[i], i)`` and ``(P x)[image[i]] = x[i]``.
    Indices are zero-based.
    """

    image: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "image", tuple(int(i) for i in self.image))
        if sorted(self.image) != list(range(len(self.image))):
            raise ValueError(f"{self.image} is not a bijection on 0..{len(self.image) - 1}")

    @property
    def size(self) -> int:
        return len(self.image)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_matrix(cls, M: RatMatrix) -> Permutation:
        image = [None] * M.cols
        for i in range(M.rows):
            for j in range(M.cols):
                if M[i, j] == 1:
                    image[j] = i
                elif M[i, j] != 0:
                    raise ValueError("not a permutation matrix")
        return cls(tuple(image))

    def as_matrix(self) -> RatMatrix:
        n = self.size
        grid = [[0] * n for _ in range(n)]
        for i, r in enumerate(self.image):
            grid[r][i] = 1
        return RatMatrix._raw(grid, 1)

    def apply(self, x: Sequence) -> tuple:
        if len(x) != self.size:
            raise LengthMismatch(f"permutation of size {self.size} applied to length {len(x)}")
        out = [None] * self.size
        for i, r in enumerate(self.image):
            out[r] = x[i]
        return tuple(out)

    def __matmul__(self, other: Permutation) -> Permutation:
        """Matrix product ``self @ other``."""
        return Permutation(tuple(self.image[j] for j in other.image))

    def inverse(self) -> Permutation:
        inv = [0] * self.size
        for i, r in enumerate(self.image):
            inv[r] = i
        return Permutation(tuple(inv))


# -- fraction-free elimination ------------------------------------------------


def _bareiss_gauss_jordan(rows: list[list[int]], n: int):
    """Fraction-free Gauss-Jordan on an integer n x m augmented array, in place.

    Returns the final pivot (which equals +-det of the left n x n block) or
    raises Singular.  On return the left block is ``pivot * I`` and every
    other column has been multiplied by the same inverse-times-pivot factor.
    """
    m = len(rows[0])
    prev = 1
    for k in range(n):
        p = next((i for i in range(k, n) if rows[i][k] != 0), None)
        if p is None:
            raise Singular("matrix is singular")
        if p != k:
            rows[k], rows[p] = rows[p], rows[k]
        pivot_row = rows[k]
        pk = pivot_row[k]
        for i in range(n):
            if i == k:
                continue
            r = rows[i]
            f = r[k]
            rows[i] = [(pk * r[j] - f * pivot_row[j]) // prev for j in range(m)]
        prev = pk
    return prev


@functools.lru_cache(maxsize=512)
def inverse(M: RatMatrix) -> RatMatrix:
    """Exact inverse by fraction-free Gauss-Jordan elimination."""
    M._require_square()
    n = M.rows
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(M._num)]
    d = _bareiss_gauss_jordan(aug, n)
    # (N/den)^-1 = den * N^-1 and the right block holds d * N^-1
    return RatMatrix._raw([row[n:] for row in aug], d).scale(M._den)


def solve(M: RatMatrix, b: Sequence) -> tuple:
    """Solve ``M x = b`` exactly for square nonsingular ``M``."""
    M._require_square()
    n = M.rows
    b = vector(b)
    if len(b) != n:
        raise LengthMismatch(f"right-hand side has length {len(b)}, expected {n}")
    bden = _lcm_of(x.denominator for x in b)
    aug = [list(row) + [b[i].numerator * (bden // b[i].denominator)] for i, row in enumerate(M._num)]
    d = _bareiss_gauss_jordan(aug, n)
    # N x = (bden * den)^-1 ... rescaled: x = den * rhs / (d * bden)
    return tuple(Fraction(row[n] * M._den, d * bden) for row in aug)


def determinant(M: RatMatrix) -> Fraction:
    """Exact determinant via the Bareiss algorithm."""
    M._require_square()
    n = M.rows
    a = [list(row) for row in M._num]
    sign = 1
    prev = 1
    for k in range(n - 1):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], M._den**n)


def rank(rows: Sequence[Sequence]) -> int:
    """Rank of a list of rational row vectors."""
    rows = [vector(r) for r in rows]
    if not rows:
        return 0
    return _int_rank([_int_row(r) for r in rows])


def _int_row(r: Sequence[Fraction]) -> list[int]:
    d = _lcm_of(x.denominator for x in r)
    return [x.numerator * (d // x.denominator) for x in r]


def _int_rank(rows: list[list[int]]) -> int:
    a = [list(r) for r in rows]
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(r + 1, len(a)):
            if a[i][c]:
                f, g = a[i][c], a[r][c]
                a[i] = [g * x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r


def char_poly(M: RatMatrix) -> list[Fraction]:
    """Coefficients of det(tI - M), highest degree first (leading 1).

    Faddeev-LeVerrier on the integer numerator matrix N, where the division
    by k is exact, then rescaled by the denominator: det(tI - N/d) has
    coefficient c_j * d^(j-n) on t^j.
    """
    M._require_square()
    n = M.rows
    N = M._num
    coeffs = [1]  # c_n, c_{n-1}, ...
    Mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk <- N @ Mk + c_{n-k+1} I
        if k == 1:
            Mk = [[int(i == j) for j in range(n)] for i in range(n)]
        else:
            mcols = list(zip(*Mk))
            Mk = [[sum(a * b for a, b in zip(row, c)) for c in mcols] for row in N]
            c = coeffs[-1]
            for i in range(n):
                Mk[i][i] += c
        tr = sum(sum(N[i][j] * Mk[j][i] for j in range(n)) for i in range(n))
        coeffs.append(-tr // k)
    d = M._den
    return [Fraction(c, d**k) for k, c in enumerate(coeffs)]


def poly_from_roots(roots: Iterable) -> list[Fraction]:
    """Monic coefficients of prod (t - r), highest degree first."""
    out = [Fraction(1)]
    for r in roots:
        r = as_rational(r)
        out = [a - r * b for a, b in zip(out + [Fraction(0)], [Fraction(0)] + out)]
    return out


# -- structural products -------------------------------------------------------


def kron(A: RatMatrix, B: RatMatrix) -> RatMatrix:
    grid = [
        [a * b for a in arow for b in brow]
        for arow in A._num
        for brow in B._num
    ]
    return RatMatrix._raw(grid, A._den * B._den)


def direct_sum(blocks: Sequence[RatMatrix]) -> RatMatrix:
    if not blocks:
        raise ShapeMismatch("direct_sum needs at least one block")
    for b in blocks:
        b._require_square()
    n = sum(b.rows for b in blocks)
    d = _lcm_of(b._den for b in blocks)
    grid = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        f = d // b._den
        for i, row in enumerate(b._num):
            for j, x in enumerate(row):
                grid[off + i][off + j] = x * f
        off += b.rows
    return RatMatrix._raw(grid, d)


def hadamard_product(A: RatMatrix, B: RatMatrix) -> RatMatrix:
    if A.shape != B.shape:
        raise ShapeMismatch(f"{A.shape} vs {B.shape}")
    return RatMatrix._raw(
        [[x * y for x, y in zip(r, s)] for r, s in zip(A._num, B._num)], A._den * B._den
    )


def diag_from(v: Sequence) -> RatMatrix:
    v = vector(v)
    n = len(v)
    return RatMatrix([[v[i] if i == j else 0 for j in range(n)] for i in range(n)])


def diag_of(M: RatMatrix) -> tuple:
    M._require_square()
    return tuple(M[i, i] for i in range(M.rows))


def similarity(S: RatMatrix, v: Sequence, S_inv: RatMatrix | None = None) -> RatMatrix:
    """``S @ diag(v) @ S^-1`` without forming the diagonal matrix."""
    v = vector(v)
    if len(v) != S.cols:
        raise LengthMismatch(f"basis has {S.cols} columns, diagonal has length {len(v)}")
    if S_inv is None:
        S_inv = inverse(S)
    vden = _lcm_of(x.denominator for x in v)
    vi = [x.numerator * (vden // x.denominator) for x in v]
    scaled = [[x * w for x, w in zip(row, vi)] for row in S._num]
    left = RatMatrix._raw(scaled, S._den * vden)
    return left @ S_inv


# -- serialization -------------------------------------------------------------


def format_rational(x) -> str:
    x = as_rational(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, (int, Fraction)) and not isinstance(s, bool):
        return Fraction(s)
    if not isinstance(s, str):
        raise TypeError(f"expected a rational literal, got {s!r}")
    text = s.strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational literal: {s!r}") from None


def parse_vector(text: str) -> tuple:
    """Parse comma-separated rational literals, e.g. ``"1,-1/4,-1/4,-1/2"``."""
    parts = [p for p in text.replace(" ", "").split(",")]
    if not parts or any(p == "" for p in parts):
        raise ValueError(f"malformed vector literal: {text!r}")
    return tuple(parse_rational(p) for p in parts)


def format_decimal(x, digits: int) -> str:
    x = as_rational(x)
    scaled = round(x * 10**digits)
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    if digits == 0:
        return f"{sign}{scaled}"
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def vector_to_json(v: Sequence) -> list[str]:
    return [format_rational(x) for x in v]


def matrix_to_json(M: RatMatrix) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in M]


def matrix_from_json(obj) -> RatMatrix:
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise ValueError("matrix JSON must be an array of row arrays")
    return RatMatrix([[parse_rational(x) for x in row] for row in obj])
