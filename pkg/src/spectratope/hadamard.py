"""Walsh and normalized Hadamard matrices, the permutation basis of the
Walsh association scheme, and its Bose-Mesner group-matrix algebra.

Permutation-basis indices ``k`` are one-based (``1 <= k <= 2**n``) to match
the usual P_{n1}, ..., P_{n 2^n} labelling; ``P_{n1}`` is the identity and
``P_{n 2^n}`` the exchange matrix.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import IndexOutOfRange, LengthMismatch, NotHadamard, ResourceLimit, UnsupportedOrder
from .linalg import Permutation, RatMatrix, kron, similarity, vector

WALSH_ORDER_CAP = 2**12

# Paley type I construction for q = 11 (q = 3 mod 4): with the Jacobsthal
# matrix Q[i][j] = chi(j - i) over GF(11), H = I + [[0, e^T], [-e, Q]],
# followed by negating rows and columns so the first row and column are +1.
_ORDER_12 = """\
++++++++++++
+--+---+++-+
++--+---+++-
+-+--+---+++
++-+--+---++
+++-+--+---+
++++-+--+---
+-+++-+--+--
+--+++-+--+-
+---+++-+--+
++---+++-+--
+-+---+++-+-
"""


def _is_hadamard(M: RatMatrix) -> bool:
    if not M.is_square or M.denominator != 1:
        return False
    if any(abs(x) != 1 for row in M.numerators for x in row):
        return False
    return M @ M.T == RatMatrix.identity(M.rows).scale(M.rows)


@dataclass(frozen=True)
class WalshMatrix:
    n: int
    matrix: RatMatrix

    @property
    def order(self) -> int:
        return self.matrix.rows


@dataclass(frozen=True)
class NormalizedHadamard:
    order: int
    matrix: RatMatrix

    def __post_init__(self):
        M = self.matrix
        if M.shape != (self.order, self.order) or not _is_hadamard(M):
            raise NotHadamard("matrix is not Hadamard of the stated order")
        if any(x != 1 for x in M.row(0)) or any(x != 1 for x in M.col(0)):
            raise NotHadamard("first row and column must be all ones")

    @property
    def is_walsh(self) -> bool:
        n = self.order.bit_length() - 1
        return self.order == 1 << n and self.matrix == walsh(n).matrix


@functools.lru_cache(maxsize=None)
def _walsh_matrix(n: int) -> RatMatrix:
    if n == 0:
        return RatMatrix([[1]])
    return kron(RatMatrix([[1, 1], [1, -1]]), _walsh_matrix(n - 1))


def walsh(n: int, cap: int = WALSH_ORDER_CAP) -> WalshMatrix:
    """Sylvester construction H_n = H_1 (x) H_{n-1}, of order 2**n."""
    if n < 0:
        raise ValueError("exponent must be nonnegative")
    if 2**n > cap:
        raise ResourceLimit(f"order 2**{n} exceeds the configured cap {cap}")
    return WalshMatrix(n, _walsh_matrix(n))


def normalize_hadamard(H: RatMatrix) -> NormalizedHadamard:
    """Flip row then column signs so the first column and row are all ones."""
    if not _is_hadamard(H):
        raise NotHadamard("input is not a +-1 matrix with H H^T = nI")
    rows = [list(r) if r[0] > 0 else [-x for x in r] for r in H.numerators]
    flip = [x < 0 for x in rows[0]]
    rows = [[-x if f else x for x, f in zip(r, flip)] for r in rows]
    return NormalizedHadamard(H.rows, RatMatrix(rows))


def from_pm(text: str) -> RatMatrix:
    """Parse the compact '+'/'-' text form, one row per line."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty +/- matrix")
    try:
        return RatMatrix([[{"+": 1, "-": -1}[c] for c in ln] for ln in lines])
    except KeyError as exc:
        raise ValueError(f"unexpected character {exc.args[0]!r} in +/- matrix") from None


def to_pm(M: RatMatrix) -> str:
    out = []
    for row in M:
        if any(abs(x) != 1 for x in row):
            raise ValueError("only +-1 matrices have a +/- text form")
        out.append("".join("+" if x > 0 else "-" for x in row))
    return "\n".join(out) + "\n"


@functools.lru_cache(maxsize=1)
def order12() -> NormalizedHadamard:
    M = from_pm(_ORDER_12)
    if not _is_hadamard(M):  # load-time integrity check
        raise AssertionError("embedded order-12 constant is not Hadamard")
    return NormalizedHadamard(12, M)


def _decompose(m: int) -> tuple[int, int] | None:
    """m = 2**a * 12**b with a, b >= 0, or None."""
    if m < 1:
        return None
    b = 0
    while m % 3 == 0:
        m //= 3
        b += 1
    # each 12 contributes 3 * 2**2
    if m & (m - 1):
        return None
    twos = m.bit_length() - 1
    a = twos - 2 * b
    if a < 0:
        return None
    return a, b


def is_supported_order(m: int) -> bool:
    return _decompose(m) is not None


def hadamard_of_order(m: int) -> NormalizedHadamard:
    """Normalized Hadamard matrix of order 2**a * 12**b."""
    split = _decompose(m)
    if split is None:
        below = next((k for k in range(m - 1, 0, -1) if _decompose(k) is not None), None)
        raise UnsupportedOrder(m, below, next_hadamard_order(m))
    a, b = split
    M = walsh(a).matrix
    for _ in range(b):
        M = kron(M, order12().matrix)
    if b == 0:
        return NormalizedHadamard(m, M)
    return normalize_hadamard(M)


def next_hadamard_order(m: int) -> int:
    """Smallest supported Hadamard order >= m."""
    if m < 1:
        raise ValueError("order must be positive")
    k = m
    while _decompose(k) is None:
        k += 1
    return k


# -- association scheme ---------------------------------------------------------


def _check_index(n: int, k: int):
    if n < 0:
        raise ValueError("exponent must be nonnegative")
    if not 1 <= k <= 2**n:
        raise IndexOutOfRange(f"k={k} outside 1..{2**n}")


@functools.lru_cache(maxsize=None)
def perm_basis(n: int, k: int) -> Permutation:
    """P_{nk} by the Kronecker recursion on its index map.

    P_{nk} = P_11 (x) P_{(n-1)k} for k <= 2**(n-1), otherwise
    P_12 (x) P_{(n-1)l} with l = k - 2**(n-1).
    """
    _check_index(n, k)
    if n == 0:
        return Permutation((0,))
    half = 2 ** (n - 1)
    if k <= half:
        sub = perm_basis(n - 1, k).image
        return Permutation(sub + tuple(r + half for r in sub))
    sub = perm_basis(n - 1, k - half).image
    # [[0, P], [P, 0]]: column c of the left block lands in the lower block
    return Permutation(tuple(r + half for r in sub) + sub)


def perm_from_walsh_row(n: int, k: int) -> RatMatrix:
    """2^-n H_n D_v H_n with v the k-th row of H_n."""
    _check_index(n, k)
    H = walsh(n).matrix
    return similarity(H, H.row(k - 1), H.scale(Fraction(1, 2**n)))


@dataclass(frozen=True)
class SchemeBasis:
    n: int
    perms: tuple[Permutation, ...]

    def matrices(self) -> list[RatMatrix]:
        return [p.as_matrix() for p in self.perms]


def scheme_basis(n: int) -> SchemeBasis:
    return SchemeBasis(n, tuple(perm_basis(n, k) for k in range(1, 2**n + 1)))


def group_matrix(n: int, x: Sequence) -> RatMatrix:
    """M_x = sum_k x_k P_{nk}."""
    x = vector(x)
    size = 2**n
    if len(x) != size:
        raise LengthMismatch(f"need {size} coefficients, got {len(x)}")
    grid = [[0] * size for _ in range(size)]
    for k in range(1, size + 1):
        for col, row in enumerate(perm_basis(n, k).image):
            grid[row][col] += x[k - 1]
    return RatMatrix(grid)


def scheme_index_product(n: int, k: int, l: int) -> int:
    """The index j with P_{nk} P_{nl} = P_{nj}."""
    _check_index(n, k)
    _check_index(n, l)
    return ((k - 1) ^ (l - 1)) + 1
