"""
Slice Workbench - Cyclotomic Arithmetic
Exact arithmetic in A = Z[zeta_8] with the pi-adic valuation, pi = zeta - 1
"""

import math
from dataclasses import dataclass
from functools import reduce
from typing import Dict, List, Tuple, Union

from errors import NonIntegralError


class CyclotomicInt:
    """
    Element of Z[zeta_8] stored on the power basis {1, zeta, zeta^2, zeta^3}.

    Multiplication applies zeta^4 = -1. Values are immutable and hashable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=(0, 0, 0, 0)):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != 4:
            raise ValueError(f"CyclotomicInt needs 4 coordinates, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicInt is immutable")

    # ---- constructors -------------------------------------------------

    @classmethod
    def from_int(cls, n: int) -> "CyclotomicInt":
        return cls((n, 0, 0, 0))

    @classmethod
    def zeta(cls, k: int = 1) -> "CyclotomicInt":
        """zeta^k for any integer k (negative exponents allowed)"""
        k %= 8
        coeffs = [0, 0, 0, 0]
        if k < 4:
            coeffs[k] = 1
        else:
            coeffs[k - 4] = -1
        return cls(coeffs)

    @classmethod
    def pi(cls) -> "CyclotomicInt":
        return cls((-1, 1, 0, 0))

    @classmethod
    def from_pi_coords(cls, p) -> "CyclotomicInt":
        """Build p0 + p1*pi + p2*pi^2 + p3*pi^3 (pi = zeta - 1)."""
        p = [int(c) for c in p]
        if len(p) != 4:
            raise ValueError(f"pi-coordinates need 4 entries, got {len(p)}")
        coeffs = [0, 0, 0, 0]
        for j, pj in enumerate(p):
            # pi^j = (zeta - 1)^j
            for k in range(j + 1):
                coeffs[k] += pj * math.comb(j, k) * (-1) ** (j - k)
        return cls(coeffs)

    # ---- ring operations ---------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CyclotomicInt(a + b for a, b in zip(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInt(-a for a in self.coeffs)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CyclotomicInt(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        out = [0] * 4
        for i in range(4):
            if not a[i]:
                continue
            for j in range(4):
                if not b[j]:
                    continue
                k = i + j
                if k < 4:
                    out[k] += a[i] * b[j]
                else:
                    out[k - 4] -= a[i] * b[j]
        return CyclotomicInt(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative powers need CyclotomicFrac")
        result = CyclotomicInt.from_int(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("CyclotomicInt", self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"CyclotomicInt({list(self.coeffs)})"

    # ---- number theory -----------------------------------------------

    def galois(self, a: int) -> "CyclotomicInt":
        """Apply the automorphism zeta -> zeta^a (a odd)."""
        if a % 2 == 0:
            raise ValueError(f"Galois exponent must be odd, got {a}")
        out = CyclotomicInt()
        for k, c in enumerate(self.coeffs):
            if c:
                out = out + CyclotomicInt.zeta(a * k) * c
        return out

    def conjugate_product(self) -> "CyclotomicInt":
        """Product of the three non-identity Galois conjugates."""
        return self.galois(3) * self.galois(5) * self.galois(7)

    def norm(self) -> int:
        """Field norm to Q, always a nonnegative integer."""
        n = self * self.conjugate_product()
        if any(n.coeffs[1:]):
            raise ArithmeticError(f"norm of {self} is not rational: {n}")
        return n.coeffs[0]

    def pi_valuation(self) -> Union[int, float]:
        """v_pi(x) = v_2(Norm(x)); math.inf for zero."""
        if not self:
            return math.inf
        n = abs(self.norm())
        return (n & -n).bit_length() - 1

    def to_pi_coords(self) -> Tuple[int, int, int, int]:
        """Coordinates on {1, pi, pi^2, pi^3}, using zeta^k = (1 + pi)^k."""
        p = [0, 0, 0, 0]
        for k, c in enumerate(self.coeffs):
            for j in range(k + 1):
                p[j] += c * math.comb(k, j)
        return tuple(p)

    def content(self) -> int:
        return reduce(math.gcd, self.coeffs, 0)

    def to_json(self) -> List[str]:
        return [str(c) for c in self.coeffs]

    def pretty_pi(self, variable: str = "π") -> str:
        """Human form in the pi-basis, highest power first."""
        terms = []
        for j in (3, 2, 1, 0):
            c = self.to_pi_coords()[j]
            if not c:
                continue
            mono = "" if j == 0 else (variable if j == 1 else f"{variable}^{j}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        head_sign, head = terms[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def _coerce(value):
    if isinstance(value, CyclotomicInt):
        return value
    if isinstance(value, int):
        return CyclotomicInt.from_int(value)
    return NotImplemented


ZERO = CyclotomicInt()
ONE = CyclotomicInt.from_int(1)
ZETA = CyclotomicInt.zeta(1)
PI = CyclotomicInt.pi()


class CyclotomicFrac:
    """
    num/den with num in Z[zeta_8] and den a positive integer, kept reduced.

    Used for the intermediate logarithm arithmetic where powers of pi
    appear in denominators.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den: int = 1):
        if isinstance(num, CyclotomicFrac):
            num, den = num.num * 1, num.den * den
        num = num if isinstance(num, CyclotomicInt) else CyclotomicInt.from_int(int(num))
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("CyclotomicFrac with zero denominator")
        if den < 0:
            num, den = -num, -den
        g = math.gcd(num.content(), den)
        if g > 1:
            num = CyclotomicInt(c // g for c in num.coeffs)
            den //= g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicFrac is immutable")

    @classmethod
    def pi_power(cls, k: int) -> "CyclotomicFrac":
        """pi^k for any integer k."""
        if k >= 0:
            return cls(PI ** k)
        return cls(1) / cls(PI ** (-k))

    def __add__(self, other):
        other = _coerce_frac(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return CyclotomicFrac(self.num + other.num, self.den)
        return CyclotomicFrac(self.num * other.den + other.num * self.den,
                              self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicFrac(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce_frac(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_frac(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce_frac(other)
        if other is NotImplemented:
            return NotImplemented
        return CyclotomicFrac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_frac(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by zero in Q(zeta_8)")
        conj = other.num.conjugate_product()
        norm = other.num.norm()
        # 1/(n/d) = d * conj(n) / N(n)
        return CyclotomicFrac(self.num * conj * other.den, self.den * norm)

    def __rtruediv__(self, other):
        other = _coerce_frac(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int):
        if exponent < 0:
            return CyclotomicFrac(1) / (self ** (-exponent))
        result = CyclotomicFrac(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        other = _coerce_frac(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(("CyclotomicFrac", self.num.coeffs, self.den))

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        return f"CyclotomicFrac({list(self.num.coeffs)}/{self.den})"

    def is_integral(self) -> bool:
        return self.den == 1

    def to_int(self) -> CyclotomicInt:
        """Return the numerator, raising NonIntegralError if den != 1."""
        if self.den != 1:
            raise NonIntegralError(f"{self!r} is not in Z[zeta_8]")
        return self.num

    def pi_valuation(self) -> Union[int, float]:
        if not self.num:
            return math.inf
        return self.num.pi_valuation() - 4 * _v2(self.den)


def _v2(n: int) -> int:
    n = abs(n)
    return (n & -n).bit_length() - 1


def _coerce_frac(value):
    if isinstance(value, CyclotomicFrac):
        return value
    if isinstance(value, (int, CyclotomicInt)):
        return CyclotomicFrac(value)
    return NotImplemented


@dataclass(frozen=True)
class GradedElem:
    """Homogeneous element coeff * w^w_exp of R_* = A[w^{+-1}]."""

    coeff: CyclotomicInt
    w_exp: int

    @classmethod
    def from_frac(cls, value: CyclotomicFrac, w_exp: int) -> "GradedElem":
        return cls(value.to_int(), w_exp)

    def pi_valuation(self):
        return self.coeff.pi_valuation()

    def to_json(self) -> Dict[str, object]:
        return {"pi_poly": list(self.coeff.to_pi_coords()), "w_exp": self.w_exp}

    def pretty(self) -> str:
        body = self.coeff.pretty_pi()
        if self.w_exp == 0:
            return body
        w = "w" if self.w_exp == 1 else f"w^{self.w_exp}"
        if " " in body:
            return f"({body}){w}"
        if body == "1":
            return w
        if body == "-1":
            return f"-{w}"
        return f"{body}{w}"
