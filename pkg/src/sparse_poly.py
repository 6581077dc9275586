"""
Slice Workbench - Sparse Graded Polynomials
Polynomials over Z or F2 in countable variable families (m_k, gamma m_k,
alpha_k, ...) with degree bookkeeping
"""

from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple

from errors import NotInvertibleError

VarId = Tuple[str, int]

# Exponents are packed into one int, FIELD_BITS per variable slot, so a
# monomial product is an integer addition; a field may not exceed FIELD_MASK.
FIELD_BITS = 16
FIELD_MASK = (1 << FIELD_BITS) - 1

FAMILY_LABELS = {
    "m": "m",
    "gm": "γm",
    "alpha": "α",
    "h": "h",
    "f": "f",
    "r": "r",
}


def _max_field(key: int) -> int:
    top = 0
    while key:
        top = max(top, key & FIELD_MASK)
        key >>= FIELD_BITS
    return top


def _fields_overflow(k1: int, k2: int) -> bool:
    while k1 and k2:
        if (k1 & FIELD_MASK) + (k2 & FIELD_MASK) > FIELD_MASK:
            return True
        k1 >>= FIELD_BITS
        k2 >>= FIELD_BITS
    return False


def default_degree(var: VarId) -> int:
    """Series-coefficient grading: the k-th variable of every family has degree k."""
    return var[1]


def var_label(var: VarId) -> str:
    family, index = var
    return f"{FAMILY_LABELS.get(family, family)}{index}"


@dataclass(frozen=True)
class SparseMono:
    """A monomial as a sorted table of (variable, exponent), exponents > 0"""

    exponents: Tuple[Tuple[VarId, int], ...] = ()

    @classmethod
    def from_dict(cls, table: Mapping[VarId, int]) -> "SparseMono":
        return cls(tuple(sorted((v, e) for v, e in table.items() if e)))

    def as_dict(self) -> Dict[VarId, int]:
        return dict(self.exponents)

    def __mul__(self, other: "SparseMono") -> "SparseMono":
        table = self.as_dict()
        for v, e in other.exponents:
            table[v] = table.get(v, 0) + e
        return SparseMono.from_dict(table)

    def degree(self, degree_of: Callable[[VarId], int] = default_degree) -> int:
        return sum(degree_of(v) * e for v, e in self.exponents)

    def bidegree(self, bidegree_of: Callable[[VarId], Tuple[int, int]]) -> Tuple[int, int]:
        s = stem = 0
        for v, e in self.exponents:
            ds, dt = bidegree_of(v)
            s += ds * e
            stem += dt * e
        return s, stem

    @property
    def length(self) -> int:
        """Number of variable factors counted with multiplicity"""
        return sum(e for _, e in self.exponents)

    def __str__(self):
        if not self.exponents:
            return "1"
        parts = []
        for v, e in self.exponents:
            parts.append(var_label(v) if e == 1 else f"{var_label(v)}^{e}")
        return "*".join(parts)


class SparsePolyRing:
    """
    Z (modulus 0) or F2 (modulus 2) polynomial ring with variables
    registered on first use.
    """

    def __init__(self, modulus: int = 0, degree_of: Callable[[VarId], int] = default_degree,
                 name: str = ""):
        if modulus not in (0, 2):
            raise ValueError(f"modulus must be 0 or 2, got {modulus}")
        self.modulus = modulus
        self.degree_of = degree_of
        self.name = name or ("F2[...]" if modulus == 2 else "Z[...]")
        self._slots: Dict[VarId, int] = {}
        self._vars: List[VarId] = []

    def __repr__(self):
        return f"SparsePolyRing({self.name}, {len(self._vars)} vars)"

    # -- packing ---------------------------------------------------------

    def slot(self, var: VarId) -> int:
        if var not in self._slots:
            self._slots[var] = len(self._vars)
            self._vars.append(var)
        return self._slots[var]

    def pack(self, table: Mapping[VarId, int]) -> int:
        key = 0
        for var, e in table.items():
            if e < 0 or e > FIELD_MASK:
                raise ValueError(f"exponent {e} out of range for {var}")
            key += e << (FIELD_BITS * self.slot(var))
        return key

    def unpack(self, key: int) -> SparseMono:
        table = {}
        slot = 0
        while key:
            e = key & FIELD_MASK
            if e:
                table[self._vars[slot]] = e
            key >>= FIELD_BITS
            slot += 1
        return SparseMono.from_dict(table)

    # -- constructors ----------------------------------------------------

    def _normalize(self, c: int) -> int:
        return c % 2 if self.modulus == 2 else c

    def from_terms(self, terms: Mapping[int, int]) -> "SparsePoly":
        clean = {}
        for k, c in terms.items():
            c = self._normalize(c)
            if c:
                clean[k] = c
        return SparsePoly(self, clean)

    def const(self, c: int) -> "SparsePoly":
        c = self._normalize(c)
        return SparsePoly(self, {0: c} if c else {})

    def zero(self) -> "SparsePoly":
        return SparsePoly(self, {})

    def one(self) -> "SparsePoly":
        return self.const(1)

    def var(self, family: str, index: int) -> "SparsePoly":
        return SparsePoly(self, {self.pack({(family, index): 1}): 1})

    def monomial(self, table: Mapping[VarId, int], coeff: int = 1) -> "SparsePoly":
        return self.from_terms({self.pack(table): coeff})

    def from_int(self, n: int) -> "SparsePoly":
        return self.const(n)

    def inverse(self, p: "SparsePoly") -> "SparsePoly":
        """Only the constants +-1 are units."""
        if len(p.terms) == 1 and 0 in p.terms and p.terms[0] in (1, -1):
            return p
        raise NotInvertibleError(f"{p} is not a unit in {self.name}")


class SparsePoly:
    """Immutable sparse polynomial; terms maps packed monomial keys to coefficients"""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: SparsePolyRing, terms: Dict[int, int]):
        self.ring = ring
        self.terms = terms

    def _lift(self, other):
        if isinstance(other, SparsePoly):
            if other.ring is not self.ring:
                raise ValueError("polynomials from different rings")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.terms:
            return self
        out = dict(self.terms)
        mod = self.ring.modulus
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if mod:
                v %= mod
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return SparsePoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        if self.ring.modulus == 2:
            return self
        return SparsePoly(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms or not other.terms:
            return self.ring.zero()
        if max(map(_max_field, self.terms)) + max(map(_max_field, other.terms)) > FIELD_MASK:
            for k1 in self.terms:
                for k2 in other.terms:
                    if _fields_overflow(k1, k2):
                        raise OverflowError(
                            f"{self.ring.unpack(k1)} * {self.ring.unpack(k2)} has an exponent above {FIELD_MASK}")
        out: Dict[int, int] = {}
        get = out.get
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = k1 + k2
                out[k] = get(k, 0) + c1 * c2
        return self.ring.from_terms(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative polynomial power")
        result = self.ring.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._lift(other) if isinstance(other, (int, SparsePoly)) else NotImplemented
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"SparsePoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in sorted(self.items(), key=lambda item: (item[0].length, str(item[0]))):
            body = str(mono)
            if body == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- inspection ------------------------------------------------------

    def items(self) -> Iterable[Tuple[SparseMono, int]]:
        for k, c in self.terms.items():
            yield self.ring.unpack(k), c

    def monomials(self) -> List[SparseMono]:
        return [m for m, _ in self.items()]

    def coefficient(self, table: Mapping[VarId, int]) -> int:
        return self.terms.get(self.ring.pack(table), 0)

    def degrees(self) -> set:
        return {m.degree(self.ring.degree_of) for m in self.monomials()}

    def degree(self) -> int:
        """Largest total degree; -1 for the zero polynomial."""
        return max(self.degrees(), default=-1)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def linear_part(self) -> "SparsePoly":
        terms = {k: c for k, c in self.terms.items() if self.ring.unpack(k).length == 1}
        return SparsePoly(self.ring, terms)

    def is_decomposable(self) -> bool:
        """True when every monomial is a product of at least two variables"""
        return all(self.ring.unpack(k).length >= 2 for k in self.terms)

    # -- ring maps -------------------------------------------------------

    def substitute(self, images: Mapping[VarId, "SparsePoly"], target: SparsePolyRing) -> "SparsePoly":
        """
        Ring homomorphism determined by variable images in `target`;
        unlisted variables map to themselves.
        """
        out = target.zero()
        power_cache: Dict[Tuple[VarId, int], SparsePoly] = {}
        for mono, c in self.items():
            term = target.const(c)
            for var, e in mono.exponents:
                key = (var, e)
                if key not in power_cache:
                    base = images[var] if var in images else target.var(*var)
                    power_cache[key] = base ** e
                term = term * power_cache[key]
            out = out + term
        return out

    def reduce_mod2(self, target: Optional[SparsePolyRing] = None) -> "SparsePoly":
        target = target or SparsePolyRing(2, self.ring.degree_of)
        out = {}
        for mono, c in self.items():
            if c % 2:
                k = target.pack(mono.as_dict())
                out[k] = out.get(k, 0) + 1
        return target.from_terms(out)
