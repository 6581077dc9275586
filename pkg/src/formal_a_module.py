"""
Slice Workbench - Formal A-Module
The formal A-module over R_* = A[w^{+-1}] with logarithm
sum_k w^{2^k - 1} x^{2^k} / pi^k, its zeta-series, Hazewinkel images
and t-functions
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple, Union

from cyclotomic import CyclotomicFrac, CyclotomicInt, GradedElem
from errors import ConsistencyError, NonIntegralError
from formal_groups import fgl_from_log
from power_series import CYCLOTOMIC_FRACTIONS, MultiSeries, TruncSeries

logger = logging.getLogger(__name__)

# Every series here is homogeneous with |x| of w-weight -1, so the
# coefficient of x^k carries w^(k-1) and w is set to 1 in the arithmetic.

Scalar = Union[int, CyclotomicInt, CyclotomicFrac]


def ell(n: int) -> CyclotomicFrac:
    """Image of the logarithm coefficient l_n, namely 1/pi^n."""
    return CyclotomicFrac.pi_power(-n)


def logarithm(precision: int, twist: Optional[CyclotomicInt] = None) -> TruncSeries:
    """
    x + sum_{j >= 1} c x^{2^j} / pi^j through x^precision, with c = 1
    or the given twist.
    """
    ring = CYCLOTOMIC_FRACTIONS
    c = CyclotomicFrac(twist) if twist is not None else ring.one()
    terms = {1: ring.one()}
    j = 1
    while 2 ** j <= precision:
        terms[2 ** j] = c * ell(j)
        j += 1
    return TruncSeries.from_terms(ring, terms, precision)


def coefficient_elem(series: TruncSeries, k: int) -> GradedElem:
    """The coefficient of x^k as an element of A * w^(k-1)."""
    try:
        return GradedElem.from_frac(series[k], k - 1)
    except NonIntegralError as exc:
        raise NonIntegralError(f"coefficient of x^{k} is not integral: {series[k]!r}") from exc


def integrality_failures(series: TruncSeries) -> List[int]:
    return [k for k, c in enumerate(series.coeffs) if not c.is_integral()]


class FormalAModule:
    """
    Group law F, exponential and [a]-series built from the logarithm.

    Args:
        precision: Truncation degree N used by every series
    """

    def __init__(self, precision: int = 16):
        if precision < 2:
            raise ValueError(f"precision must be at least 2, got {precision}")
        self.precision = precision
        self.ring = CYCLOTOMIC_FRACTIONS
        self.log = logarithm(precision)
        self.exp = self.log.revert()
        self._laws: Dict[int, MultiSeries] = {}
        self._zeta: Dict[int, TruncSeries] = {}
        logger.debug("formal A-module ready at precision %d", precision)

    # -- structure ------------------------------------------------------

    def group_law(self, precision: Optional[int] = None) -> MultiSeries:
        """F(x, y) truncated at total degree `precision` (default: the module's)."""
        n = min(precision or self.precision, self.precision)
        if n not in self._laws:
            self._laws[n] = fgl_from_log(self.log, n)
        return self._laws[n]

    def endomorphism(self, a: Scalar) -> TruncSeries:
        """[a](x) = exp(a log x)."""
        return self.exp.compose(self.log.scale(CyclotomicFrac(a)))

    def zeta_series(self, k: int) -> TruncSeries:
        k %= 8
        if k not in self._zeta:
            self._zeta[k] = self.endomorphism(CyclotomicInt.zeta(k))
        return self._zeta[k]

    def add(self, a: TruncSeries, b: TruncSeries, precision: Optional[int] = None) -> TruncSeries:
        n = min(precision or self.precision, a.precision, b.precision)
        return self.group_law(n).evaluate([a.truncate(n), b.truncate(n)])

    def formal_sum(self, terms: Sequence[TruncSeries], precision: Optional[int] = None) -> TruncSeries:
        """Iterated F-addition, truncating after each step."""
        if not terms:
            raise ValueError("formal sum of no terms")
        n = min([precision or self.precision] + [t.precision for t in terms])
        total = terms[0].truncate(n)
        for term in terms[1:]:
            total = self.add(total, term, n)
        return total

    def n_series_by_addition(self, n: int, precision: Optional[int] = None) -> TruncSeries:
        if n < 1:
            raise ValueError(f"n must be positive, got {n}")
        x = TruncSeries.identity(self.ring, min(precision or self.precision, self.precision))
        return self.formal_sum([x] * n)

    # -- checks ---------------------------------------------------------

    def check_inverse_pair(self):
        identity = TruncSeries.identity(self.ring, self.precision)
        if self.exp.compose(self.log) != identity or self.log.compose(self.exp) != identity:
            raise ConsistencyError("exp and log are not mutually inverse")

    def check_integrality(self, precision: int = 8):
        """The exponential is rational; F and the zeta-series must be integral."""
        law = self.group_law(precision)
        bad = [e for e, c in law.terms.items() if not c.is_integral()]
        if bad:
            raise NonIntegralError(f"group law has non-integral coefficients at {bad[:5]}")
        for k in range(8):
            failures = integrality_failures(self.zeta_series(k))
            if failures:
                raise NonIntegralError(f"[zeta^{k}](x) is non-integral in degrees {failures}")

    def check_group_axioms(self, precision: int = 6):
        """Unit, commutativity and associativity of F through `precision`."""
        law = self.group_law(precision)
        n = law.precision
        x = MultiSeries.variable(self.ring, 2, 0, n)
        zero = MultiSeries(self.ring, 2, n)
        if law.substitute([x, zero]) != x:
            raise ConsistencyError("F(x, 0) != x")
        if law.permute([1, 0]) != law:
            raise ConsistencyError("F(x, y) != F(y, x)")
        xs = [MultiSeries.variable(self.ring, 3, i, n) for i in range(3)]
        left = law.substitute([law.substitute(xs[:2]), xs[2]])
        right = law.substitute([xs[0], law.substitute(xs[1:])])
        if left != right:
            raise ConsistencyError("F is not associative")
        logger.debug("group law axioms hold through degree %d", n)

    def verify_zeta_composition(self) -> int:
        """
        [z1]([z2](x)) = [z1 z2](x) for all 64 pairs of eighth roots of unity.

        Returns:
            Number of pairs checked
        """
        n = self.precision
        checked = 0
        for k2 in range(8):
            inner = self.zeta_series(k2)
            powers = inner.powers(n)
            for k1 in range(8):
                composite = self.zeta_series(k1).compose_with_powers(powers, n)
                if composite != self.zeta_series(k1 + k2):
                    raise ConsistencyError(f"[zeta^{k1}] o [zeta^{k2}] != [zeta^{k1 + k2}]")
                checked += 1
        logger.info("zeta-series composition law holds for %d pairs at precision %d", checked, n)
        return checked

    def verify_n_series(self, n_max: int = 4, precision: int = 6) -> int:
        """[n](x) by repeated F-addition agrees with exp(n log x)."""
        for n in range(1, n_max + 1):
            added = self.n_series_by_addition(n, precision)
            direct = self.endomorphism(n).truncate(added.precision)
            if added != direct:
                raise ConsistencyError(f"[{n}](x) by addition disagrees with exp({n} log x)")
        return n_max


# ---- Hazewinkel generators ---------------------------------------------------

def hazewinkel_images(N: int = 4) -> Dict[int, GradedElem]:
    """
    Images of v_1..v_N under l_n -> w^{2^n - 1}/pi^n, solving
    v_n = 2 l_n - sum_{1 <= i < n} l_i v_{n-i}^{2^i}.

    Raises:
        ValueError: N outside 1..4
        NonIntegralError: a solved value is not in A
        ConsistencyError: v_pi(v_n) != 4 - n
    """
    if not 1 <= N <= 4:
        raise ValueError(f"Hazewinkel images are available for 1 <= N <= 4, got {N}")
    v: Dict[int, CyclotomicFrac] = {}
    out: Dict[int, GradedElem] = {}
    for n in range(1, N + 1):
        value = 2 * ell(n)
        for i in range(1, n):
            value = value - ell(i) * v[n - i] ** (2 ** i)
        v[n] = value
        if not value.is_integral():
            raise NonIntegralError(f"image of v_{n} is not integral: {value!r}")
        elem = GradedElem.from_frac(value, 2 ** n - 1)
        if elem.pi_valuation() != 4 - n:
            raise ConsistencyError(f"v_pi of the image of v_{n} is {elem.pi_valuation()}, expected {4 - n}")
        out[n] = elem
    return out


# ---- t-functions ----------------------------------------------------------------

def t_functions(N: int) -> Dict[Tuple[int, int], GradedElem]:
    """
    t_n(zeta) for zeta = zeta_8^k, 0 <= k < 8 and 0 <= n <= N, from
    zeta l_n = zeta^{2^n} sum_{0 <= i <= n} l_i t_{n-i}(zeta)^{2^i}.

    Returns:
        Mapping (k, n) -> t_n(zeta_8^k), t_n carrying w^(2^n - 1)
    """
    if N < 0:
        raise ValueError(f"N must be nonnegative, got {N}")
    table: Dict[Tuple[int, int], GradedElem] = {}
    for k in range(8):
        t: Dict[int, CyclotomicFrac] = {0: CyclotomicFrac(1)}
        for n in range(1, N + 1):
            value = CyclotomicFrac(CyclotomicInt.zeta(k * (1 - 2 ** n))) * ell(n)
            for i in range(1, n + 1):
                value = value - ell(i) * t[n - i] ** (2 ** i)
            t[n] = value
        if N >= 1 and t[1] != t1_closed_form(k):
            raise ConsistencyError(f"t_1(zeta^{k}) = {t[1]!r} disagrees with (1 - zeta)/(pi zeta)")
        for n, value in t.items():
            if not value.is_integral():
                raise NonIntegralError(f"t_{n}(zeta^{k}) is not integral: {value!r}")
            table[(k, n)] = GradedElem.from_frac(value, 2 ** n - 1)
    logger.debug("solved t-functions through n=%d", N)
    return table


def t1_closed_form(k: int) -> CyclotomicFrac:
    """t_1(zeta) = (1 - zeta)/(pi zeta) with w = 1."""
    zeta = CyclotomicFrac(CyclotomicInt.zeta(k))
    return (CyclotomicFrac(1) - zeta) / (CyclotomicFrac.pi_power(1) * zeta)


def verify_t_functions(module: FormalAModule, table: Dict[Tuple[int, int], GradedElem],
                       precision: int = 8) -> int:
    """
    [zeta](x) = sum^F_i t_i(zeta) (zeta x)^{2^i} through `precision`,
    the formal sum taken with the module's group law.
    """
    n = min(precision, module.precision)
    ring = module.ring
    for k in range(8):
        zeta = CyclotomicInt.zeta(k)
        terms = []
        i = 0
        while 2 ** i <= n:
            if (k, i) not in table:
                raise ValueError(f"t_{i} missing from the table at precision {n}")
            c = CyclotomicFrac(table[(k, i)].coeff * zeta ** (2 ** i))
            terms.append(TruncSeries.from_terms(ring, {2 ** i: c}, n))
            i += 1
        total = module.formal_sum(terms, n)
        if total != module.zeta_series(k).truncate(n):
            raise ConsistencyError(f"formal sum of t-terms differs from [zeta^{k}](x)")
    return 8
