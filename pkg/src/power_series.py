"""
Slice Workbench - Truncated Power Series
One- and several-variable truncated series over pluggable exact
coefficient rings, with composition and reversion
"""

import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from cyclotomic import CyclotomicFrac
from errors import NotInvertibleError

logger = logging.getLogger(__name__)


# ---- coefficient rings ---------------------------------------------------
#
# A coefficient ring supplies zero(), one(), from_int(n) and inverse(c);
# the values themselves support +, -, * and truthiness.

class IntegerRing:
    name = "Z"

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n: int):
        return int(n)

    def inverse(self, c):
        if c in (1, -1):
            return c
        raise NotInvertibleError(f"{c} is not a unit in Z")


class RationalRing:
    name = "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n: int):
        return Fraction(n)

    def inverse(self, c):
        if not c:
            raise NotInvertibleError("0 is not a unit in Q")
        return 1 / Fraction(c)


class CyclotomicFracRing:
    name = "Q(zeta_8)"

    def zero(self):
        return CyclotomicFrac(0)

    def one(self):
        return CyclotomicFrac(1)

    def from_int(self, n: int):
        return CyclotomicFrac(n)

    def inverse(self, c):
        if not c:
            raise NotInvertibleError("0 is not a unit in Q(zeta_8)")
        return CyclotomicFrac(1) / c


INTEGERS = IntegerRing()
RATIONALS = RationalRing()
CYCLOTOMIC_FRACTIONS = CyclotomicFracRing()


class TruncSeries:
    """
    c_0 + c_1 x + ... + c_N x^N, with arithmetic truncated at degree N.

    Composable series have c_0 = 0.
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs: Sequence[Any], precision: Optional[int] = None):
        coeffs = list(coeffs)
        if precision is None:
            precision = len(coeffs) - 1
        if precision < 1:
            raise ValueError(f"precision must be positive, got {precision}")
        zero = ring.zero()
        coeffs = coeffs[:precision + 1] + [zero] * (precision + 1 - len(coeffs))
        self.ring = ring
        self.coeffs = tuple(coeffs)

    @classmethod
    def identity(cls, ring, precision: int) -> "TruncSeries":
        return cls(ring, [ring.zero(), ring.one()], precision)

    @classmethod
    def from_terms(cls, ring, terms: Dict[int, Any], precision: int) -> "TruncSeries":
        coeffs = [ring.zero()] * (precision + 1)
        for k, c in terms.items():
            if k <= precision:
                coeffs[k] = coeffs[k] + c
        return cls(ring, coeffs, precision)

    @property
    def precision(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int):
        return self.coeffs[k] if k <= self.precision else self.ring.zero()

    def truncate(self, precision: int) -> "TruncSeries":
        return TruncSeries(self.ring, self.coeffs[:precision + 1], precision)

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        n = min(self.precision, other.precision)
        return TruncSeries(self.ring, [self.coeffs[k] + other.coeffs[k] for k in range(n + 1)], n)

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.ring, [-c for c in self.coeffs], self.precision)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def scale(self, c) -> "TruncSeries":
        return TruncSeries(self.ring, [c * a for a in self.coeffs], self.precision)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        n = min(self.precision, other.precision)
        a, b = self.coeffs, other.coeffs
        out = [self.ring.zero()] * (n + 1)
        for i in range(n + 1):
            ai = a[i]
            if not ai:
                continue
            for j in range(n + 1 - i):
                bj = b[j]
                if bj:
                    out[i + j] = out[i + j] + ai * bj
        return TruncSeries(self.ring, out, n)

    def __pow__(self, exponent: int) -> "TruncSeries":
        if exponent < 0:
            raise ValueError("negative series power")
        result = TruncSeries(self.ring, [self.ring.one()], self.precision)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        n = min(self.precision, other.precision)
        return all(self.coeffs[k] == other.coeffs[k] for k in range(n + 1))

    def __repr__(self):
        terms = [f"({c})x^{k}" for k, c in enumerate(self.coeffs) if c]
        return "TruncSeries(" + (" + ".join(terms) or "0") + f"; N={self.precision})"

    @property
    def valuation(self) -> int:
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return self.precision + 1

    # -- composition ---------------------------------------------------

    def powers(self, count: int) -> List["TruncSeries"]:
        """[self^1, ..., self^count], each product truncated."""
        out = [self]
        for _ in range(count - 1):
            out.append(out[-1] * self)
        return out

    def compose(self, inner: "TruncSeries") -> "TruncSeries":
        """self(inner(x)); inner must have zero constant term."""
        if inner.coeffs[0]:
            raise ValueError("inner series of a composition must have zero constant term")
        n = min(self.precision, inner.precision)
        return self.compose_with_powers(inner.truncate(n).powers(n), n)

    def compose_with_powers(self, powers: Sequence["TruncSeries"], precision: int) -> "TruncSeries":
        out = [self.ring.zero()] * (precision + 1)
        out[0] = self.coeffs[0]
        for k in range(1, min(precision, self.precision) + 1):
            c = self.coeffs[k]
            if not c:
                continue
            p = powers[k - 1].coeffs
            for m in range(k, precision + 1):
                if p[m]:
                    out[m] = out[m] + c * p[m]
        return TruncSeries(self.ring, out, precision)

    def revert(self) -> "TruncSeries":
        """
        Compositional inverse g with self(g(x)) = x through the precision.

        Raises:
            ValueError: nonzero constant term
            NotInvertibleError: non-unit linear coefficient
        """
        if self.coeffs[0]:
            raise ValueError("cannot revert a series with nonzero constant term")
        n = self.precision
        a = self.coeffs
        if not a[1]:
            raise NotInvertibleError("linear coefficient is zero")
        inv = self.ring.inverse(a[1])
        zero = self.ring.zero()
        g = [zero] * (n + 1)
        # table[k][m] = coefficient of x^m in g^k, filled column by column
        table: Dict[int, List[Any]] = {1: g}
        for k in range(2, n + 1):
            table[k] = [zero] * (n + 1)
        for m in range(1, n + 1):
            acc = zero
            for k in range(2, m + 1):
                prev = table[k - 1]
                col = zero
                for i in range(1, m - k + 2):
                    if g[i] and prev[m - i]:
                        col = col + g[i] * prev[m - i]
                table[k][m] = col
                if a[k] and col:
                    acc = acc + a[k] * col
            target = self.ring.one() if m == 1 else zero
            g[m] = (target - acc) * inv
        logger.debug("reverted series of precision %d over %s", n, getattr(self.ring, "name", self.ring))
        return TruncSeries(self.ring, g, n)


class MultiSeries:
    """Truncated series in nvars variables, truncated by total degree"""

    __slots__ = ("ring", "nvars", "precision", "terms")

    def __init__(self, ring, nvars: int, precision: int, terms: Optional[Dict[Tuple[int, ...], Any]] = None):
        self.ring = ring
        self.nvars = nvars
        self.precision = precision
        clean = {}
        for e, c in (terms or {}).items():
            if c and sum(e) <= precision:
                clean[e] = c
        self.terms = clean

    @classmethod
    def variable(cls, ring, nvars: int, index: int, precision: int) -> "MultiSeries":
        e = tuple(int(i == index) for i in range(nvars))
        return cls(ring, nvars, precision, {e: ring.one()})

    @classmethod
    def from_univariate(cls, series: TruncSeries, nvars: int, index: int,
                        precision: Optional[int] = None) -> "MultiSeries":
        precision = series.precision if precision is None else precision
        terms = {}
        for k, c in enumerate(series.coeffs):
            if c and k <= precision:
                terms[tuple(k if i == index else 0 for i in range(nvars))] = c
        return cls(series.ring, nvars, precision, terms)

    def constant(self, c) -> "MultiSeries":
        return MultiSeries(self.ring, self.nvars, self.precision, {(0,) * self.nvars: c})

    def coefficient(self, exponents: Tuple[int, ...]):
        return self.terms.get(tuple(exponents), self.ring.zero())

    def __add__(self, other: "MultiSeries") -> "MultiSeries":
        n = min(self.precision, other.precision)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return MultiSeries(self.ring, self.nvars, n, out)

    def __neg__(self) -> "MultiSeries":
        return MultiSeries(self.ring, self.nvars, self.precision, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiSeries") -> "MultiSeries":
        return self + (-other)

    def scale(self, c) -> "MultiSeries":
        return MultiSeries(self.ring, self.nvars, self.precision, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other: "MultiSeries") -> "MultiSeries":
        n = min(self.precision, other.precision)
        out: Dict[Tuple[int, ...], Any] = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > n:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return MultiSeries(self.ring, self.nvars, n, out)

    def powers(self, count: int) -> List["MultiSeries"]:
        out = [self]
        for _ in range(count - 1):
            out.append(out[-1] * self)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiSeries):
            return NotImplemented
        n = min(self.precision, other.precision)
        keys = {e for e in self.terms if sum(e) <= n} | {e for e in other.terms if sum(e) <= n}
        return all(self.coefficient(e) == other.coefficient(e) for e in keys)

    def permute(self, order: Sequence[int]) -> "MultiSeries":
        """Rename variable order[i] to variable i."""
        terms = {tuple(e[j] for j in order): c for e, c in self.terms.items()}
        return MultiSeries(self.ring, self.nvars, self.precision, terms)

    def apply_univariate(self, outer: TruncSeries) -> "MultiSeries":
        """outer(self); self must have zero constant term."""
        if self.coefficient((0,) * self.nvars):
            raise ValueError("inner series must have zero constant term")
        n = min(self.precision, outer.precision)
        result = MultiSeries(self.ring, self.nvars, n, {(0,) * self.nvars: outer.coeffs[0]})
        power = None
        for k in range(1, n + 1):
            power = self if power is None else power * self
            if outer.coeffs[k]:
                result = result + power.scale(outer.coeffs[k])
        return result

    def evaluate(self, args: Sequence[TruncSeries]) -> TruncSeries:
        """Substitute one-variable series (zero constant term) for the variables."""
        if len(args) != self.nvars:
            raise ValueError(f"expected {self.nvars} series, got {len(args)}")
        n = min([self.precision] + [a.precision for a in args])
        one = TruncSeries(self.ring, [self.ring.one()], n)
        max_exp = [max((e[i] for e in self.terms), default=0) for i in range(self.nvars)]
        power_tables = []
        for a, top in zip(args, max_exp):
            table = [one]
            for _ in range(top):
                table.append(table[-1] * a.truncate(n))
            power_tables.append(table)
        out = TruncSeries(self.ring, [self.ring.zero()], n)
        for e, c in self.terms.items():
            term = one
            for i, k in enumerate(e):
                if k:
                    term = term * power_tables[i][k]
            out = out + term.scale(c)
        return out

    def substitute(self, args: Sequence["MultiSeries"]) -> "MultiSeries":
        """Substitute several-variable series for the variables."""
        if len(args) != self.nvars:
            raise ValueError(f"expected {self.nvars} series, got {len(args)}")
        target = args[0]
        n = min([self.precision] + [a.precision for a in args])
        one = target.constant(self.ring.one())
        one = MultiSeries(self.ring, target.nvars, n, one.terms)
        max_exp = [max((e[i] for e in self.terms), default=0) for i in range(self.nvars)]
        power_tables = []
        for a, top in zip(args, max_exp):
            table = [one]
            for _ in range(top):
                table.append(table[-1] * a)
            power_tables.append(table)
        out = MultiSeries(self.ring, target.nvars, n)
        for e, c in self.terms.items():
            term = one
            for i, k in enumerate(e):
                if k:
                    term = term * power_tables[i][k]
            out = out + term.scale(c)
        return out
