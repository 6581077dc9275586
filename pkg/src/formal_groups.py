"""
Slice Workbench - Formal Group Laws
Symbolic logarithms, the unoriented cobordism generators h_j, the
specific generators rbar_k, and group laws built from logarithms
"""

import logging
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Tuple

import numpy as np

from errors import ConsistencyError
from integer_matrix import f2_rank
from power_series import MultiSeries, TruncSeries
from slice_spectral_sequence import is_two_power_minus_one, mo_poincare
from sparse_poly import SparsePoly, SparsePolyRing

logger = logging.getLogger(__name__)


@dataclass
class SymbolicLog:
    """x + sum_i c_i x^{i+1} with c_i the variable (family, i) of a sparse polynomial ring"""

    ring: SparsePolyRing
    family: str
    series: TruncSeries

    @classmethod
    def universal(cls, ring: SparsePolyRing, family: str, precision: int) -> "SymbolicLog":
        terms = {1: ring.one()}
        for i in range(1, precision):
            terms[i + 1] = ring.var(family, i)
        return cls(ring, family, TruncSeries.from_terms(ring, terms, precision))

    @classmethod
    def two_power_part(cls, ring: SparsePolyRing, family: str, precision: int) -> "SymbolicLog":
        """x + sum_l c_{2^l - 1} x^{2^l}: only the 2-power terms survive."""
        terms = {1: ring.one()}
        power = 2
        while power <= precision:
            terms[power] = ring.var(family, power - 1)
            power *= 2
        return cls(ring, family, TruncSeries.from_terms(ring, terms, precision))

    @property
    def precision(self) -> int:
        return self.series.precision


def strict_isomorphism(source: TruncSeries, target: TruncSeries) -> TruncSeries:
    """target^{-1} o source, the unique strict isomorphism between the two logs"""
    return target.revert().compose(source)


def _coefficient_table(series: TruncSeries, top: int) -> Dict[int, SparsePoly]:
    return {j: series[j + 1] for j in range(1, top + 1)}


# ---- unoriented cobordism ---------------------------------------------------

@dataclass
class MOGenerators:
    ring: SparsePolyRing
    h: Dict[int, SparsePoly]

    @property
    def top(self) -> int:
        return max(self.h)

    def vanishing(self) -> List[int]:
        return [j for j, p in sorted(self.h.items()) if not p]


def mo_generators(N: int, ring: Optional[SparsePolyRing] = None) -> MOGenerators:
    """
    h_1..h_N over F2[alpha] from
    (a + sum alpha_{2^j-1} a^{2^j})^{-1} o (a + sum alpha_n a^{n+1}) = a + sum h_j a^{j+1}.

    Raises:
        ConsistencyError: h_j nonzero for j + 1 a power of 2, or zero otherwise
    """
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    ring = ring or SparsePolyRing(2, name="F2[alpha]")
    log = SymbolicLog.universal(ring, "alpha", N + 1)
    left = SymbolicLog.two_power_part(ring, "alpha", N + 1)
    composite = strict_isomorphism(log.series, left.series)
    h = _coefficient_table(composite, N)
    for j, value in h.items():
        if is_two_power_minus_one(j) and value:
            raise ConsistencyError(f"h_{j} should vanish but is {value}")
        if not is_two_power_minus_one(j) and not value:
            raise ConsistencyError(f"h_{j} vanished unexpectedly")
        if value and value.degrees() != {j}:
            raise ConsistencyError(f"h_{j} is not homogeneous of degree {j}")
    logger.info("computed h_1..h_%d over F2", N)
    return MOGenerators(ring, h)


def frobenius_h(N: int, ring: SparsePolyRing) -> Dict[int, SparsePoly]:
    """
    The same h_j from the characteristic 2 recursion
    h_n = alpha_n + sum_{j >= 1, 2^j | n+1} alpha_{2^j - 1} h_{(n+1)/2^j - 1}^{2^j}, h_0 = 1.
    """
    if ring.modulus != 2:
        raise ValueError("the Frobenius recursion needs an F2 ring")
    h: Dict[int, SparsePoly] = {0: ring.one()}
    for n in range(1, N + 1):
        value = ring.var("alpha", n)
        j = 1
        while (n + 1) % 2 ** j == 0:
            value = value + ring.var("alpha", 2 ** j - 1) * h[(n + 1) // 2 ** j - 1] ** (2 ** j)
            j += 1
        h[n] = value
    del h[0]
    return h


def mo_independence(generators: MOGenerators, max_degree: int) -> Dict[int, Tuple[int, int]]:
    """
    For each degree D <= max_degree: (number of monomials in the h_j with
    j != 2^k - 1, F2 rank of their expansions). Both equal dim MO_D.
    """
    if max_degree > generators.top:
        raise ValueError(f"h_j only known through {generators.top}")
    usable = [j for j in range(1, max_degree + 1) if not is_two_power_minus_one(j)]
    expected = mo_poincare(max_degree)
    out = {}
    for D in range(1, max_degree + 1):
        products = []
        for size in range(1, D + 1):
            for combo in combinations_with_replacement(usable, size):
                if sum(combo) == D:
                    value = generators.ring.one()
                    for j in combo:
                        value = value * generators.h[j]
                    products.append(value)
        columns = sorted({k for p in products for k in p.terms})
        index = {k: i for i, k in enumerate(columns)}
        matrix = np.zeros((len(products), len(columns)), dtype=np.uint8)
        for row, p in enumerate(products):
            for k in p.terms:
                matrix[row, index[k]] = 1
        rank = f2_rank(matrix) if products else 0
        out[D] = (len(products), rank)
        if len(products) != expected[D] or rank != expected[D]:
            raise ConsistencyError(f"degree {D}: {len(products)} products of rank {rank}, MO has {expected[D]}")
    return out


# ---- specific generators rbar_k ----------------------------------------------

@dataclass
class RbarGenerators:
    ring: SparsePolyRing
    rbar: Dict[int, SparsePoly]

    def expected_linear_part(self, k: int) -> SparsePoly:
        m = self.ring.var("m", k)
        if is_two_power_minus_one(k):
            return m - self.ring.var("gm", k)
        return m


def rbar_generators(N: int) -> RbarGenerators:
    """
    rbar_1..rbar_N over Z[mbar, gamma mbar]:
    sum rbar_k x^{k+1} = (x + sum gamma mbar_{2^l-1} x^{2^l})^{-1} o log(x).

    Raises:
        ConsistencyError: a generator disagrees with its expected
            indecomposable part
    """
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    ring = SparsePolyRing(0, name="Z[m, gm]")
    log = SymbolicLog.universal(ring, "m", N + 1)
    left = SymbolicLog.two_power_part(ring, "gm", N + 1)
    composite = strict_isomorphism(log.series, left.series)
    result = RbarGenerators(ring, _coefficient_table(composite, N))
    for k, value in result.rbar.items():
        if value.linear_part() != result.expected_linear_part(k):
            raise ConsistencyError(f"rbar_{k} has indecomposable part {value.linear_part()}")
        if value.degrees() != {k}:
            raise ConsistencyError(f"rbar_{k} is not homogeneous of degree {k}")
    logger.info("computed rbar_1..rbar_%d", N)
    return result


def rbar_geometric_reduction(rbar: RbarGenerators, target: SparsePolyRing) -> Dict[int, SparsePoly]:
    """Reduce rbar_k mod 2 with mbar_i and gamma mbar_i both sent to alpha_i."""
    images = {}
    for k in range(1, max(rbar.rbar) + 1):
        images[("m", k)] = target.var("alpha", k)
        images[("gm", k)] = target.var("alpha", k)
    return {k: value.substitute(images, target) for k, value in rbar.rbar.items()}


# ---- group laws ----------------------------------------------------------------

def fgl_from_log(log: TruncSeries, N: Optional[int] = None) -> MultiSeries:
    """
    F(x, y) = exp(log x + log y) truncated at total degree N.

    Raises:
        NotInvertibleError: the linear coefficient of log is not a unit
    """
    N = log.precision if N is None else min(N, log.precision)
    log = log.truncate(N)
    exp = log.revert()
    total = MultiSeries.from_univariate(log, 2, 0, N) + MultiSeries.from_univariate(log, 2, 1, N)
    return total.apply_univariate(exp)
