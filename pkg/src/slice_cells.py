"""
Slice Workbench - Slice Cells
Slice cell dimensions, restriction and induction, vanishing ranges, and
the mod 2 orbit refinement of the underlying homotopy of the norm of MU
"""

import logging
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Tuple

logger = logging.getLogger(__name__)

# a generator gamma^j r_i is the pair (i, j), 0 <= j < g/2
Generator = Tuple[int, int]
Monomial = Tuple[Generator, ...]


def _check_power_of_two(value: int, name: str = "group order"):
    if value < 1 or value & (value - 1):
        raise ValueError(f"{name} must be a power of 2, got {value}")


@dataclass(frozen=True)
class SliceCell:
    """
    G_+ smash_H S^{m rho_H} for G = C_g and |H| = h, or its
    desuspension.
    """

    g: int
    h: int
    m: int
    desuspended: bool = False

    def __post_init__(self):
        _check_power_of_two(self.g)
        _check_power_of_two(self.h, "subgroup order")
        if self.g % self.h:
            raise ValueError(f"C_{self.h} is not a subgroup of C_{self.g}")

    @property
    def dim(self) -> int:
        return self.m * self.h - (1 if self.desuspended else 0)

    @property
    def is_regular(self) -> bool:
        return not self.desuspended

    @property
    def is_isotropic(self) -> bool:
        return self.h >= 2

    @property
    def index(self) -> int:
        """[G:H], the number of underlying spheres"""
        return self.g // self.h

    def restrict(self, subgroup_order: int) -> List[Tuple["SliceCell", int]]:
        """
        Restriction to the subgroup L of the given order.

        For cyclic groups there are g / max(l, h) double cosets, each
        contributing L_+ smash_{L cap H} S^{m [H : L cap H] rho}.
        """
        _check_power_of_two(subgroup_order, "subgroup order")
        if self.g % subgroup_order:
            raise ValueError(f"C_{subgroup_order} is not a subgroup of C_{self.g}")
        meet = min(subgroup_order, self.h)
        count = self.g // max(subgroup_order, self.h)
        cell = SliceCell(subgroup_order, meet, self.m * (self.h // meet), self.desuspended)
        return [(cell, count)]

    def induce(self, big_order: int) -> "SliceCell":
        _check_power_of_two(big_order)
        if big_order % self.g:
            raise ValueError(f"C_{self.g} is not a subgroup of C_{big_order}")
        return SliceCell(big_order, self.h, self.m, self.desuspended)

    def label(self) -> str:
        sphere = "S^{rho_%d}" % self.h if self.m == 1 else "S^{%drho_%d}" % (self.m, self.h)
        if self.h == self.g:
            body = sphere
        else:
            body = f"G+ ^ C{self.h} {sphere}"
        return f"Sigma^-1 {body}" if self.desuspended else body

    def to_json(self) -> Dict[str, object]:
        return {"subgroup": f"C{self.h}", "m": self.m, "dim": self.dim, "desuspended": self.desuspended}


def cell_dim(cell: SliceCell) -> int:
    return cell.dim


def vanishing_range(n: int, g: int) -> Tuple[int, int]:
    """
    Closed interval of k where pi_k of an n-slice can be nonzero:
    [floor(n/g), n] for n >= 0, [n, floor((n+1)/g) - 1] for n < 0.
    """
    _check_power_of_two(g)
    if n >= 0:
        return n // g, n
    return n, (n + 1) // g - 1


# ---- orbit refinement -----------------------------------------------------

@dataclass(frozen=True)
class RefinedOrbit:
    representative: Monomial
    size: int
    cell: SliceCell
    sign_twisted: bool

    def label(self) -> str:
        return _monomial_label(self.representative)


@dataclass(frozen=True)
class OrbitRefinement:
    g: int
    d: int
    orbits: Tuple[RefinedOrbit, ...]

    @property
    def rank(self) -> int:
        return sum(o.size for o in self.orbits)

    def cell_multiplicities(self) -> List[Tuple[SliceCell, int]]:
        counts = Counter(o.cell for o in self.orbits)
        return sorted(counts.items(), key=lambda item: (item[0].h, item[0].m))

    def to_json(self) -> Dict[str, object]:
        return {
            "g": self.g,
            "degree": 2 * self.d,
            "rank": self.rank,
            "cells": [
                {"subgroup": f"C{cell.h}", "m": cell.m, "multiplicity": mult, "orbit_size": cell.index}
                for cell, mult in self.cell_multiplicities()
            ],
        }


def act_on_generator(gen: Generator, g: int) -> Tuple[Generator, int]:
    """gamma * gamma^j r_i, with gamma^{g/2} r_i = (-1)^i r_i."""
    i, j = gen
    if j + 1 < g // 2:
        return (i, j + 1), 1
    return (i, 0), (-1 if i % 2 else 1)


def act_on_monomial(mono: Monomial, g: int) -> Tuple[Monomial, int]:
    sign = 1
    out = []
    for gen in mono:
        image, s = act_on_generator(gen, g)
        out.append(image)
        sign *= s
    return tuple(sorted(out)), sign


def monomials_of_degree(g: int, d: int) -> List[Monomial]:
    """Monomials of degree 2d in gamma^j r_i (deg r_i = 2i), as sorted generator tuples."""
    gens = [(i, j) for i in range(1, d + 1) for j in range(g // 2)]
    out: List[Monomial] = []

    def extend(start: int, remaining: int, prefix: List[Generator]):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for idx in range(start, len(gens)):
            i = gens[idx][0]
            if i > remaining:
                break
            prefix.append(gens[idx])
            extend(idx, remaining - i, prefix)
            prefix.pop()

    extend(0, d, [])
    return out


def refine_orbits(g: int, d: int) -> OrbitRefinement:
    """
    Group the degree-2d monomials into mod 2 orbits. Each orbit gives
    the regular cell induced from its stabilizer-up-to-sign H, with
    m * |H| = 2d.
    """
    _check_power_of_two(g)
    if g < 2:
        raise ValueError("refinement needs a nontrivial group")
    if d < 0:
        raise ValueError(f"degree must be nonnegative, got {d}")
    seen = set()
    orbits = []
    for mono in monomials_of_degree(g, d):
        if mono in seen:
            continue
        members = [mono]
        current = mono
        for _ in range(g - 1):
            current, _ = act_on_monomial(current, g)
            if current == mono:
                break
            members.append(current)
        seen.update(members)
        size = len(members)
        h = g // size
        # the stabilizer is generated by gamma^size; record whether it flips the sign
        image, twist = mono, 1
        for _ in range(size):
            image, s = act_on_monomial(image, g)
            twist *= s
        m = (2 * d) // h if h else 0
        if d and (2 * d) % h:
            raise ValueError(f"orbit of {mono} has stabilizer order {h} not dividing {2 * d}")
        cell = SliceCell(g, h, m) if d else SliceCell(g, g, 0)
        orbits.append(RefinedOrbit(mono, size, cell, twist == -1))
    refinement = OrbitRefinement(g, d, tuple(orbits))
    logger.debug("refined degree %d for C_%d into %d orbits", 2 * d, g, len(orbits))
    return refinement


@lru_cache(maxsize=None)
def rank_pi_u(g: int, d: int) -> int:
    """Number of degree-2d monomials with g/2 generators in each positive even degree."""
    _check_power_of_two(g)
    if d < 0:
        return 0
    colors = g // 2
    counts = [1] + [0] * d
    for part in range(1, d + 1):
        for _ in range(colors):
            for total in range(part, d + 1):
                counts[total] += counts[total - part]
    return counts[d]


def _monomial_label(mono: Monomial) -> str:
    if not mono:
        return "1"
    factors = Counter(mono)
    parts = []
    for (i, j), e in sorted(factors.items()):
        base = f"r{i}" if j == 0 else (f"γr{i}" if j == 1 else f"γ^{j}r{i}")
        parts.append(base if e == 1 else f"({base})^{e}")
    return "·".join(parts)
