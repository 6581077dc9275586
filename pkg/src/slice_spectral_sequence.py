"""
Slice Workbench - Slice Spectral Sequence
E2 region bases in a, u, f_i and the a-inverted spectral sequence runner
with its u-power differentials
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from errors import ConsistencyError
from integer_matrix import f2_kernel, f2_matmul, f2_rank
from sparse_poly import SparseMono

logger = logging.getLogger(__name__)


def _check_group_order(g: int):
    if g < 2 or g & (g - 1):
        raise ValueError(f"group order must be a power of 2 and at least 2, got {g}")


def is_two_power_minus_one(i: int) -> bool:
    return i >= 1 and (i + 1) & i == 0


def _bidegree_of(g: int):
    def bidegree(var):
        family, index = var
        if family == "a":
            return 1, 0
        if family == "u":
            return 0, 2
        if family == "f":
            return index * (g - 1), index
        raise ValueError(f"unknown slice chart variable {var}")
    return bidegree


@dataclass(frozen=True)
class BidegMono:
    """a^p u^q prod f_i^{e_i} placed at (s, t - s) for C_g"""

    g: int
    mono: SparseMono

    @classmethod
    def make(cls, g: int, a: int = 0, u: int = 0, f: Optional[Dict[int, int]] = None) -> "BidegMono":
        table = {("a", 0): a, ("u", 0): u}
        for i, e in (f or {}).items():
            table[("f", i)] = e
        return cls(g, SparseMono.from_dict(table))

    def exponent(self, family: str, index: int = 0) -> int:
        return self.mono.as_dict().get((family, index), 0)

    @property
    def f_exponents(self) -> Dict[int, int]:
        return {i: e for (family, i), e in self.mono.exponents if family == "f"}

    @property
    def bidegree(self) -> Tuple[int, int]:
        return self.mono.bidegree(_bidegree_of(self.g))

    @property
    def s(self) -> int:
        return self.bidegree[0]

    @property
    def stem(self) -> int:
        return self.bidegree[1]

    @property
    def sigma_weight(self) -> int:
        """k in a_sigma^p u_{2sigma}^q living over -k*sigma"""
        return self.exponent("a") + 2 * self.exponent("u")

    @property
    def coefficients(self) -> str:
        """Z on the s = 0 line away from a and f, F2 otherwise"""
        return "Z" if self.s == 0 else "F2"

    def __mul__(self, other: "BidegMono") -> "BidegMono":
        return BidegMono(self.g, self.mono * other.mono)

    def label(self) -> str:
        parts = []
        a = self.exponent("a")
        if a:
            parts.append("a" if a == 1 else f"a^{a}")
        u = self.exponent("u")
        if u:
            parts.append("u" if u == 1 else f"u^{u}")
        for i, e in sorted(self.f_exponents.items()):
            parts.append(f"f{i}" if e == 1 else f"f{i}^{e}")
        return "·".join(parts) or "1"


def _partitions(total: int, parts: Sequence[int]) -> Iterator[Dict[int, int]]:
    """Multisets from `parts` (ascending) summing to total."""
    def walk(remaining: int, start: int, chosen: Dict[int, int]):
        if remaining == 0:
            yield dict(chosen)
            return
        for idx in range(start, len(parts)):
            p = parts[idx]
            if p > remaining:
                break
            chosen[p] = chosen.get(p, 0) + 1
            yield from walk(remaining - p, idx, chosen)
            chosen[p] -= 1
            if not chosen[p]:
                del chosen[p]
    yield from walk(total, 0, {})


@dataclass(frozen=True)
class RegionBasis:
    g: int
    k: int
    s: int
    stem: int
    inside: bool
    basis: Tuple[BidegMono, ...] = ()

    def labels(self) -> List[str]:
        return [m.label() for m in self.basis]


def in_region(g: int, k: int, s: int, stem: int) -> bool:
    return s >= (g - 1) * (stem - k)


def e2_region_basis(g: int, k: int, s: int, d: int) -> RegionBasis:
    """
    Monomial basis of Z[a, f_i, u]/(2a, 2f_i) at (s, t - s) = (s, d)
    when s >= (g - 1)(d - k); otherwise a RegionBasis with inside=False.
    """
    _check_group_order(g)
    if k < 0:
        raise ValueError(f"suspension parameter must be nonnegative, got {k}")
    if not in_region(g, k, s, d):
        return RegionBasis(g, k, s, d, inside=False)
    basis = []
    if s >= 0 and d >= 0:
        for q in range(d // 2 + 1):
            for f in _partitions(d - 2 * q, list(range(1, d - 2 * q + 1))):
                p = s - sum(i * e for i, e in f.items()) * (g - 1)
                if p >= 0:
                    basis.append(BidegMono.make(g, a=p, u=q, f=f))
    basis.sort(key=lambda m: (m.exponent("u"), m.label()))
    return RegionBasis(g, k, s, d, inside=True, basis=tuple(basis))


def e2_region_chart(g: int, k: int, s_max: int, d_max: int) -> List[RegionBasis]:
    """Every in-region bidegree with a nonempty basis, ordered by (stem, s)."""
    rows = []
    for d in range(0, d_max + 1):
        for s in range(0, s_max + 1):
            cell = e2_region_basis(g, k, s, d)
            if cell.inside and cell.basis:
                rows.append(cell)
    return rows


# ---- a-inverted spectral sequence --------------------------------------------

# page monomial: (power q of U_k = u^{2^{k-1}}, sorted ((i, e), ...) of f's)
PageMono = Tuple[int, Tuple[Tuple[int, int], ...]]


def _page_basis(stem: int, u_stem: int, f_indices: Sequence[int]) -> List[PageMono]:
    out = []
    for q in range(stem // u_stem + 1):
        rest = stem - q * u_stem
        for f in _partitions(rest, [i for i in f_indices if i <= rest]):
            out.append((q, tuple(sorted(f.items()))))
    return out


def _multiply_f(f: Tuple[Tuple[int, int], ...], index: int) -> Tuple[Tuple[int, int], ...]:
    table = dict(f)
    table[index] = table.get(index, 0) + 1
    return tuple(sorted(table.items()))


def mo_poincare(bound: int) -> List[int]:
    """Ranks of F2[f_i : i != 2^j - 1] in stems 0..bound."""
    parts = [i for i in range(1, bound + 1) if not is_two_power_minus_one(i)]
    counts = [1] + [0] * bound
    for p in parts:
        for t in range(p, bound + 1):
            counts[t] += counts[t - p]
    return counts


@dataclass
class PageDifferential:
    """
    d_r on page k through stem `top`: bases[t] lists the page monomials in
    stem t and images[t] sends a column of stem t to its row in stem t - 1.
    """

    k: int
    r: int
    u_stem: int
    bases: Dict[int, List[PageMono]]
    images: Dict[int, Dict[int, int]]
    next_indices: List[int]

    @property
    def top(self) -> int:
        return max(self.bases)

    def matrix(self, t: int) -> np.ndarray:
        """F2 matrix of d_r from stem t to stem t - 1."""
        rows = len(self.bases[t - 1]) if t >= 1 else 0
        out = np.zeros((rows, len(self.bases[t])), dtype=np.uint8)
        for col, row in self.images.get(t, {}).items():
            out[row, col] = 1
        return out

    def predicted_classes(self, stem: int) -> List[PageMono]:
        """The next page's basis at `stem`, written in this page's U power."""
        return [(2 * q, f) for q, f in _page_basis(stem, 2 * self.u_stem, self.next_indices)]


def page_differential(g: int, k: int, top: int, f_indices: Sequence[int]) -> PageDifferential:
    """
    d_r on page k, r = 1 + (2^k - 1) g, as the derivation
    U_k -> a^{2^k} f_{2^k - 1}; bidegrees and d o d = 0 are checked.
    """
    u_stem = 2 ** k
    c = 2 ** k - 1
    r = 1 + c * g
    bases = {t: _page_basis(t, u_stem, f_indices) for t in range(top + 1)}
    positions = {t: {m: i for i, m in enumerate(b)} for t, b in bases.items()}
    images: Dict[int, Dict[int, int]] = {}
    for t in range(1, top + 1):
        column_image = {}
        for col, (q, f) in enumerate(bases[t]):
            if q % 2 == 0:
                continue
            target = (q - 1, _multiply_f(f, c))
            source_mono = BidegMono.make(g, u=q * u_stem // 2, f=dict(f))
            target_mono = BidegMono.make(g, a=2 ** k, u=(q - 1) * u_stem // 2, f=dict(target[1]))
            if target_mono.s != source_mono.s + r or target_mono.stem != source_mono.stem - 1:
                raise ConsistencyError(
                    f"d_{r} of {source_mono.label()} lands at {target_mono.bidegree}, "
                    f"expected ({source_mono.s + r}, {source_mono.stem - 1})"
                )
            column_image[col] = positions[t - 1][target]
        images[t] = column_image
    for t in range(2, top + 1):
        for col, row in images[t].items():
            if row in images[t - 1]:
                raise ConsistencyError(f"d_{r} squared is nonzero at stem {t}")
    next_indices = [i for i in f_indices if i != c]
    return PageDifferential(k, r, u_stem, bases, images, next_indices)


def page_homology(page: PageDifferential, stem: int, classes: Sequence[PageMono]) -> int:
    """
    Check that `classes` represent a basis of ker d_r / im d_r at `stem`
    and return their number.

    Cycles come from the F2 null space of the outgoing matrix and
    boundaries from the columns of the incoming one.

    Raises:
        ConsistencyError: a class is not a cycle, the classes are dependent
            modulo boundaries, or together with the boundaries they miss
            part of the cycles
    """
    if stem + 1 > page.top:
        raise ValueError(f"stem {stem} needs the page through stem {stem + 1}")
    positions = {m: i for i, m in enumerate(page.bases[stem])}
    outgoing = page.matrix(stem)
    incoming = page.matrix(stem + 1)
    chosen = np.zeros((len(positions), len(classes)), dtype=np.uint8)
    for j, m in enumerate(classes):
        if m not in positions:
            raise ConsistencyError(f"{m} is not a basis monomial at stem {stem} of the page of d_{page.r}")
        chosen[positions[m], j] = 1
    if f2_matmul(outgoing, chosen).any():
        raise ConsistencyError(f"a surviving class at stem {stem} is not a d_{page.r}-cycle")
    cycles = f2_kernel(outgoing)
    boundary_rank = f2_rank(incoming)
    spanned = f2_rank(np.hstack([incoming, chosen]))
    if spanned != boundary_rank + len(classes):
        raise ConsistencyError(f"surviving classes at stem {stem} are dependent modulo d_{page.r}-boundaries")
    cycle_rank = f2_rank(cycles)
    if spanned != cycle_rank or f2_rank(np.hstack([cycles, incoming, chosen])) != cycle_rank:
        raise ConsistencyError(
            f"surviving classes and boundaries at stem {stem} span rank {spanned}, "
            f"the d_{page.r}-cycles rank {cycle_rank}"
        )
    return len(classes)


@dataclass
class PageReport:
    k: int
    r: int
    source_stem: int
    dims: Dict[int, int]
    ranks: Dict[int, int]
    next_dims: Dict[int, int]


@dataclass
class SSRun:
    g: int
    bound: int
    pages: List[PageReport] = field(default_factory=list)
    e_infinity: Dict[int, List[BidegMono]] = field(default_factory=dict)

    def ranks(self) -> List[int]:
        return [len(self.e_infinity.get(t, [])) for t in range(self.bound + 1)]


def inverted_ss_run(g: int, degree_bound: int) -> SSRun:
    """
    Run the a-inverted slice spectral sequence through stem degree_bound.

    Page k carries F2[f_i : i not 2^j - 1 for j < k][U_k], U_k = u^{2^{k-1}},
    and d_r with r = 1 + (2^k - 1) g is the derivation U_k -> a^{2^k} f_{2^k - 1}.
    On every page the predicted next basis is checked against the cycles and
    boundaries of d_r; E-infinity is what survives the last page and must be
    F2[f_i : i != 2^j - 1].
    """
    _check_group_order(g)
    if degree_bound < 0:
        raise ValueError(f"degree bound must be nonnegative, got {degree_bound}")
    top = degree_bound + 1
    run = SSRun(g, degree_bound)
    f_indices = list(range(1, top + 1))
    survivors = {t: _page_basis(t, 2, f_indices) for t in range(degree_bound + 1)}
    k = 1
    while 2 ** k <= top:
        page = page_differential(g, k, top, f_indices)
        for t in range(degree_bound + 1):
            if sorted(page.bases[t]) != sorted(survivors[t]):
                raise ConsistencyError(f"page of d_{page.r} at stem {t} is not what survived the previous page")
        ranks = {t: f2_rank(page.matrix(t)) for t in range(1, top + 1)}
        homology = {}
        for t in range(degree_bound + 1):
            homology[t] = page_homology(page, t, page.predicted_classes(t))
            survivors[t] = [(q // 2, f) for q, f in page.predicted_classes(t)]
        run.pages.append(PageReport(k, page.r, page.u_stem,
                                    {t: len(page.bases[t]) for t in range(degree_bound + 1)},
                                    ranks, homology))
        logger.debug("page k=%d (d_%d): ranks %s", k, page.r, homology)
        f_indices = page.next_indices
        k += 1

    expected = mo_poincare(degree_bound)
    for t in range(degree_bound + 1):
        if any(q for q, _ in survivors[t]):
            raise ConsistencyError(f"u powers survive at stem {t}")
        run.e_infinity[t] = sorted((BidegMono.make(g, f=dict(f)) for _, f in survivors[t]),
                                   key=BidegMono.label)
        if any(is_two_power_minus_one(i) for _, f in survivors[t] for i, _ in f):
            raise ConsistencyError(f"a class f_(2^j - 1) survives at stem {t}")
        if len(survivors[t]) != expected[t]:
            raise ConsistencyError(f"E-infinity rank {len(survivors[t])} at stem {t}, expected {expected[t]}")
    logger.info("a-inverted spectral sequence for C_%d through stem %d: %s", g, degree_bound, run.ranks())
    return run
