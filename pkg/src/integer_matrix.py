"""
Slice Workbench - Integer Matrices
Smith normal form with unimodular transforms, F2 row reduction, and the
group-ring unit test
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
import sympy

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntMatrix:
    """Dense big-integer matrix stored row-major"""

    rows: int
    cols: int
    entries: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError(f"negative matrix shape {self.rows}x{self.cols}")
        entries = tuple(int(e) for e in self.entries) if self.entries else (0,) * (self.rows * self.cols)
        if len(entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(entries)}"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(e for r in rows for e in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols)

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.entries[i * self.cols + j]

    def to_rows(self) -> List[List[int]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([[self[i, j] for i in range(self.rows)] for j in range(self.cols)], self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        a, b = self.to_rows(), other.to_rows()
        out = [[sum(a[i][k] * b[k][j] for k in range(self.cols) if a[i][k]) for j in range(other.cols)]
               for i in range(self.rows)]
        return IntMatrix.from_rows(out, other.cols)

    def apply(self, vector: Sequence[int]) -> List[int]:
        rows = self.to_rows()
        return [sum(r[k] * vector[k] for k in range(self.cols)) for r in rows]

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)

    def to_f2(self) -> np.ndarray:
        arr = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for i in range(self.rows):
            for j in range(self.cols):
                arr[i, j] = self[i, j] & 1
        return arr

    def determinant(self) -> int:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        if self.rows == 0:
            return 1
        return int(sympy.Matrix(self.to_rows()).det(method="bareiss"))


@dataclass(frozen=True)
class SNFResult:
    """
    U @ A @ V = D with D diagonal; invariant_factors are the nonzero
    diagonal entries, each dividing the next.
    """

    invariant_factors: Tuple[int, ...]
    rank: int
    shape: Tuple[int, int]
    U: IntMatrix
    V: IntMatrix
    D: IntMatrix

    @property
    def kernel_rank(self) -> int:
        return self.shape[1] - self.rank

    @property
    def cokernel_free_rank(self) -> int:
        return self.shape[0] - self.rank

    @property
    def cokernel_torsion(self) -> Tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d > 1)


def snf(matrix: IntMatrix) -> SNFResult:
    """
    Smith normal form with full transform tracking.

    Args:
        matrix: any integer matrix (empty shapes allowed)

    Returns:
        SNFResult with U @ matrix @ V = D
    """
    m, n = matrix.rows, matrix.cols
    a = matrix.to_rows()
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(target, source, factor):
        # row_target += factor * row_source
        if factor:
            ra, rs = a[target], a[source]
            for k in range(n):
                if rs[k]:
                    ra[k] += factor * rs[k]
            ua, us = u[target], u[source]
            for k in range(m):
                if us[k]:
                    ua[k] += factor * us[k]

    def add_col(target, source, factor):
        if factor:
            for row in a:
                if row[source]:
                    row[target] += factor * row[source]
            for row in v:
                if row[source]:
                    row[target] += factor * row[source]

    rank = 0
    for t in range(min(m, n)):
        pivot = _smallest_entry(a, t, m, n)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        dirty = True
            if dirty:
                pivot = _smallest_in_cross(a, t, m, n)
                swap_rows(t, pivot[0])
                swap_cols(t, pivot[1])
                continue
            offender = _non_divisible(a, t, m, n)
            if offender is None:
                break
            add_row(t, offender, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        rank += 1

    factors = tuple(a[i][i] for i in range(rank))
    return SNFResult(
        invariant_factors=factors,
        rank=rank,
        shape=(m, n),
        U=IntMatrix.from_rows(u, m),
        V=IntMatrix.from_rows(v, n),
        D=IntMatrix.from_rows(a, n),
    )


def _smallest_entry(a, t, m, n):
    best = None
    for i in range(t, m):
        row = a[i]
        for j in range(t, n):
            x = row[j]
            if x and (best is None or abs(x) < best[2]):
                best = (i, j, abs(x))
                if best[2] == 1:
                    return best[:2]
    return None if best is None else best[:2]


def _smallest_in_cross(a, t, m, n):
    best = (t, t, abs(a[t][t]) if a[t][t] else math.inf)
    for i in range(t + 1, m):
        if a[i][t] and abs(a[i][t]) < best[2]:
            best = (i, t, abs(a[i][t]))
    for j in range(t + 1, n):
        if a[t][j] and abs(a[t][j]) < best[2]:
            best = (t, j, abs(a[t][j]))
    return best[:2]


def _non_divisible(a, t, m, n):
    d = a[t][t]
    for i in range(t + 1, m):
        for j in range(t + 1, n):
            if a[i][j] % d:
                return i
    return None


def subquotient(dim: int, outgoing: Optional[IntMatrix], incoming: Optional[IntMatrix]) -> Tuple[int, Tuple[int, ...]]:
    """
    Structure of ker(outgoing) / im(incoming) inside Z^dim.

    Returns:
        (free rank, torsion invariant factors > 1)
    """
    out_rank = snf(outgoing).rank if outgoing is not None and outgoing.rows and outgoing.cols else 0
    if incoming is not None and incoming.rows and incoming.cols:
        in_snf = snf(incoming)
        in_rank, torsion = in_snf.rank, in_snf.cokernel_torsion
    else:
        in_rank, torsion = 0, ()
    return dim - out_rank - in_rank, torsion


def order_modulo_image(vector: Sequence[int], image: IntMatrix) -> float:
    """Additive order of vector in Z^k / im(image); math.inf if infinite."""
    result = snf(image)
    w = result.U.apply(list(vector))
    order = 1
    for i, x in enumerate(w):
        if i < result.rank:
            d = result.invariant_factors[i]
            order = math.lcm(order, d // math.gcd(d, x))
        elif x:
            return math.inf
    return order


# ---- F2 linear algebra ----------------------------------------------------

def f2_row_reduce(matrix: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form over F2 and the pivot columns."""
    work = (np.asarray(matrix, dtype=np.uint8) & 1).copy()
    rows, cols = work.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        candidates = np.nonzero(work[r:, c])[0]
        if candidates.size == 0:
            continue
        p = r + int(candidates[0])
        if p != r:
            work[[r, p]] = work[[p, r]]
        mask = work[:, c].astype(bool)
        mask[r] = False
        work[mask] ^= work[r]
        pivots.append(c)
        r += 1
    return work, pivots


def f2_rank(matrix: np.ndarray) -> int:
    arr = np.asarray(matrix)
    if arr.size == 0:
        return 0
    return len(f2_row_reduce(arr)[1])


def f2_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % 2


def f2_kernel(matrix: np.ndarray) -> np.ndarray:
    """Null space over F2, one basis vector per column."""
    arr = np.asarray(matrix, dtype=np.uint8)
    cols = arr.shape[1]
    if arr.size == 0:
        return np.eye(cols, dtype=np.uint8)
    reduced, pivots = f2_row_reduce(arr)
    pivot_set = set(pivots)
    free = np.array([c for c in range(cols) if c not in pivot_set], dtype=np.intp)
    slots = np.arange(free.size)
    basis = np.zeros((cols, free.size), dtype=np.uint8)
    basis[free, slots] = 1
    if pivots and free.size:
        basis[np.ix_(pivots, slots)] = reduced[:len(pivots)][:, free]
    return basis


# ---- group ring ------------------------------------------------------------

def group_ring_matrix(a: Sequence[int], k: int, g: int) -> IntMatrix:
    """
    Multiplication-by-a matrix on Z[C_g]/(gamma^{g/2} - (-1)^k), basis
    1, gamma, ..., gamma^{g/2 - 1}.
    """
    if g < 2 or g & (g - 1):
        raise ValueError(f"group order must be a power of 2 and at least 2, got {g}")
    half = g // 2
    a = list(a)
    if len(a) > half:
        raise ValueError(f"coefficient vector longer than g/2 = {half}")
    a = a + [0] * (half - len(a))
    wrap = -1 if k % 2 else 1
    rows = [[0] * half for _ in range(half)]
    for j in range(half):
        for i, coeff in enumerate(a):
            if not coeff:
                continue
            target = i + j
            sign = 1
            if target >= half:
                target -= half
                sign = wrap
            rows[target][j] += sign * coeff
    return IntMatrix.from_rows(rows, half)


def unit_test_group_ring(a: Sequence[int], k: int, g: int) -> bool:
    """True iff a is a 2-local unit in Z[C_g]/(gamma^{g/2} -+ 1)."""
    det = group_ring_matrix(a, k, g).determinant()
    logger.debug("group ring det for a=%s k=%s g=%s is %s", list(a), k, g, det)
    return det % 2 == 1
