"""
Slice Workbench - Representation Spheres
Equivariant cellular chains of S^V for G = C_{2^n} and their Bredon
homology and cohomology with constant Z and Z/2 coefficients
"""

import logging
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple


from errors import ConsistencyError
from integer_matrix import IntMatrix, f2_rank, snf

logger = logging.getLogger(__name__)

COEFFICIENTS = ("Z", "Z/2")


# ---- representations -----------------------------------------------------

@dataclass(frozen=True)
class RepDescriptor:
    """
    V = triv * 1 + sign * sigma + sum_k rot[k-1] * lambda(k) for G = C_{2^n}.

    lambda(k) is the plane on which the generator rotates by 2*pi*k/2^n,
    1 <= k < 2^{n-1}.
    """

    n: int
    triv: int = 0
    sign: int = 0
    rot: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"group exponent must be at least 1, got {self.n}")
        slots = 2 ** (self.n - 1) - 1
        rot = tuple(self.rot) + (0,) * (slots - len(self.rot))
        if len(rot) != slots:
            raise ValueError(f"C_{2 ** self.n} has {slots} rotation representations, got {len(self.rot)}")
        if self.triv < 0 or self.sign < 0 or any(r < 0 for r in rot):
            raise ValueError("representation multiplicities must be nonnegative")
        object.__setattr__(self, "rot", rot)

    @property
    def group_order(self) -> int:
        return 2 ** self.n

    @property
    def dim(self) -> int:
        return self.triv + self.sign + 2 * sum(self.rot)

    @property
    def is_oriented(self) -> bool:
        return self.sign % 2 == 0

    @classmethod
    def regular(cls, n: int, multiple: int = 1, quotient_order: Optional[int] = None) -> "RepDescriptor":
        """multiple * rho, optionally of the quotient C_{2^n} -> C_q pulled back."""
        g = 2 ** n
        q = g if quotient_order is None else quotient_order
        if q < 1 or g % q or q & (q - 1):
            raise ValueError(f"C_{q} is not a quotient of C_{g}")
        if q == 1:
            return cls(n, triv=multiple)
        rot = [0] * (g // 2 - 1)
        for j in range(1, q // 2):
            rot[j * (g // q) - 1] += multiple
        return cls(n, triv=multiple, sign=multiple, rot=tuple(rot))

    def __add__(self, other: "RepDescriptor") -> "RepDescriptor":
        if other.n != self.n:
            raise ValueError("cannot add representations of different groups")
        return RepDescriptor(self.n, self.triv + other.triv, self.sign + other.sign,
                             tuple(a + b for a, b in zip(self.rot, other.rot)))

    def scaled(self, multiple: int) -> "RepDescriptor":
        return RepDescriptor(self.n, self.triv * multiple, self.sign * multiple,
                             tuple(r * multiple for r in self.rot))

    def pieces(self) -> List[Tuple[str, int]]:
        """Irreducible summands in the fixed tensor order."""
        out = [("triv", 0)] * self.triv + [("sign", 0)] * self.sign
        for k, mult in enumerate(self.rot, start=1):
            out += [("rot", k)] * mult
        return out

    def fixed_dim(self, subgroup_order: int) -> int:
        """dim V^H for the subgroup H of the given order."""
        g = self.group_order
        if subgroup_order < 1 or g % subgroup_order:
            raise ValueError(f"C_{g} has no subgroup of order {subgroup_order}")
        d = self.triv
        if subgroup_order == 1:
            return self.dim
        # H = <gamma^{g/h}>; sigma is fixed iff g/h is even
        step = g // subgroup_order
        if step % 2 == 0:
            d += self.sign
        for k, mult in enumerate(self.rot, start=1):
            if (k * step) % g == 0:
                d += 2 * mult
        return d

    def fixed_dims(self) -> Tuple[int, ...]:
        """(d_0, ..., d_n): d_i = dim of the vectors fixed by the subgroup of index 2^i."""
        g = self.group_order
        return tuple(self.fixed_dim(g // 2 ** i) for i in range(self.n + 1))

    def label(self) -> str:
        parts = []
        if self.triv:
            parts.append("1" if self.triv == 1 else f"{self.triv}*1")
        if self.sign:
            parts.append("sigma" if self.sign == 1 else f"{self.sign}*sigma")
        for k, mult in enumerate(self.rot, start=1):
            if mult:
                parts.append(f"lambda({k})" if mult == 1 else f"{mult}*lambda({k})")
        return " + ".join(parts) or "0"


_TERM = re.compile(r"^(?:(\d+)\*)?(rho\((\d+)\)|sigma|lambda\((\d+)\)|1|0)$")


def parse_rep(text: str, n: int) -> RepDescriptor:
    """
    Parse sums like "2*rho(8) + sigma + lambda(1)" for G = C_{2^n}.

    rho(q) with q dividing 2^n is the regular representation of the
    quotient C_q.
    """
    g = 2 ** n
    total = RepDescriptor(n)
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise ValueError("empty representation string")
    for term in compact.split("+"):
        match = _TERM.match(term)
        if not match:
            raise ValueError(f"cannot parse representation term {term!r}")
        mult = int(match.group(1) or 1)
        atom = match.group(2)
        if atom.startswith("rho"):
            piece = RepDescriptor.regular(n, 1, int(match.group(3)))
        elif atom == "sigma":
            piece = RepDescriptor(n, sign=1)
        elif atom.startswith("lambda"):
            k = int(match.group(4))
            if not 1 <= k < g // 2:
                raise ValueError(f"lambda({k}) must have 1 <= k < {g // 2} for C_{g}")
            rot = [0] * (g // 2 - 1)
            rot[k - 1] = 1
            piece = RepDescriptor(n, rot=tuple(rot))
        elif atom == "1":
            piece = RepDescriptor(n, triv=1)
        else:
            piece = RepDescriptor(n)
        total = total + piece.scaled(mult)
    return total


def parse_group(text: str) -> int:
    """'C8' -> 3"""
    match = re.fullmatch(r"\s*C_?(\d+)\s*", text)
    if not match:
        raise ValueError(f"group must look like C8, got {text!r}")
    g = int(match.group(1))
    if g < 2 or g & (g - 1):
        raise ValueError(f"only cyclic 2-groups C_(2^n), n >= 1, are supported; got C{g}")
    return g.bit_length() - 1


# ---- chain complexes -------------------------------------------------------

@dataclass(frozen=True)
class PermChainComplex:
    """
    Bounded chain complex of permutation modules for C_g.

    cells[d] is the number of basis cells in degree d, action[d] the
    permutation by the generator, boundary[d][x] the faces of cell x as
    {face: coefficient} in degree d - 1.
    """

    g: int
    cells: Dict[int, int] = field(default_factory=dict)
    action: Dict[int, Tuple[int, ...]] = field(default_factory=dict)
    boundary: Dict[int, Tuple[Dict[int, int], ...]] = field(default_factory=dict)

    @classmethod
    def unit(cls, g: int) -> "PermChainComplex":
        """Z in degree 0 (the reduced chains of S^0)."""
        return cls(g, {0: 1}, {0: (0,)}, {0: ({},)})

    @property
    def degrees(self) -> List[int]:
        return sorted(d for d, count in self.cells.items() if count)

    @property
    def total_cells(self) -> int:
        return sum(self.cells.values())

    def faces(self, d: int, x: int) -> Dict[int, int]:
        return self.boundary[d][x] if d in self.boundary else {}

    def act(self, d: int, x: int, times: int = 1) -> int:
        perm = self.action[d]
        for _ in range(times % self.g):
            x = perm[x]
        return x

    # -- checks ----------------------------------------------------------

    def check_d_squared(self):
        for d in self.degrees:
            if d - 1 not in self.cells:
                continue
            for x in range(self.cells[d]):
                total: Dict[int, int] = {}
                for y, c in self.faces(d, x).items():
                    for z, e in self.faces(d - 1, y).items():
                        total[z] = total.get(z, 0) + c * e
                if any(total.values()):
                    raise ConsistencyError(f"boundary squared is nonzero on cell {x} in degree {d}")

    def check_equivariance(self):
        for d in self.degrees:
            perm_down = self.action.get(d - 1)
            for x in range(self.cells[d]):
                moved = {perm_down[y]: c for y, c in self.faces(d, x).items()} if perm_down else {}
                if self.faces(d, self.action[d][x]) != moved:
                    raise ConsistencyError(f"boundary is not equivariant at cell {x} in degree {d}")

    # -- orbits ----------------------------------------------------------

    def orbits(self, d: int, level: Optional[int] = None) -> List[List[int]]:
        """Orbits of the subgroup of order `level` (default the whole group) on degree-d cells."""
        level = self.g if level is None else level
        if level < 1 or self.g % level:
            raise ValueError(f"C_{self.g} has no subgroup of order {level}")
        step = self.g // level
        seen = set()
        out = []
        for x in range(self.cells.get(d, 0)):
            if x in seen:
                continue
            orbit = [x]
            seen.add(x)
            y = self.act(d, x, step)
            while y != x:
                orbit.append(y)
                seen.add(y)
                y = self.act(d, y, step)
            out.append(orbit)
        return out

    def orbit_type_ranks(self) -> Dict[int, Dict[int, int]]:
        """degree -> {orbit size: number of orbits} for the whole group"""
        return {d: dict(sorted(Counter(len(o) for o in self.orbits(d)).items())) for d in self.degrees}

    # -- matrices --------------------------------------------------------

    def boundary_matrix(self, d: int) -> IntMatrix:
        rows, cols = self.cells.get(d - 1, 0), self.cells.get(d, 0)
        entries = [[0] * cols for _ in range(rows)]
        for x in range(cols):
            for y, c in self.faces(d, x).items():
                entries[y][x] = c
        return IntMatrix.from_rows(entries, cols)

    def invariant_boundary(self, d: int, level: Optional[int] = None) -> IntMatrix:
        """Boundary on orbit-sum bases: entry [O', O] = sum over x in O of coeff of rep(O') in dx."""
        source = self.orbits(d, level)
        target = self.orbits(d - 1, level)
        index = {orbit[0]: i for i, orbit in enumerate(target)}
        entries = [[0] * len(source) for _ in range(len(target))]
        for j, orbit in enumerate(source):
            for x in orbit:
                for y, c in self.faces(d, x).items():
                    if y in index:
                        entries[index[y]][j] += c
        return IntMatrix.from_rows(entries, len(source))

    def invariant_coboundary(self, d: int, level: Optional[int] = None) -> IntMatrix:
        """
        Coboundary from degree d to d + 1 on orbit indicator cochains:
        entry [O, O'] = sum over y in O' of coeff of y in d(rep O).
        """
        source = self.orbits(d, level)
        target = self.orbits(d + 1, level)
        member = {}
        for j, orbit in enumerate(source):
            for y in orbit:
                member[y] = j
        entries = [[0] * len(source) for _ in range(len(target))]
        for i, orbit in enumerate(target):
            for y, c in self.faces(d + 1, orbit[0]).items():
                entries[i][member[y]] += c
        return IntMatrix.from_rows(entries, len(source))

    def check_cochain_duality(self, level: Optional[int] = None):
        """
        Orbit-sum chains and orbit-indicator cochains see the same cell
        incidences: for orbits O in degree d and O' in degree d - 1 the
        entries satisfy boundary[O', O] * |O'| = coboundary[O, O'] * |O|.
        """
        for d in self.degrees:
            if d - 1 not in self.cells:
                continue
            source, target = self.orbits(d, level), self.orbits(d - 1, level)
            chain = self.invariant_boundary(d, level)
            cochain = self.invariant_coboundary(d - 1, level)
            for j, orbit in enumerate(source):
                for i, face_orbit in enumerate(target):
                    if chain[i, j] * len(face_orbit) != cochain[j, i] * len(orbit):
                        raise ConsistencyError(
                            f"cochain coefficient {cochain[j, i]} in degree {d} is not the chain "
                            f"coefficient {chain[i, j]} divided by the index {len(orbit)}/{len(face_orbit)}")

    # -- tensor product and reduction ---------------------------------------

    def tensor(self, other: "PermChainComplex") -> "PermChainComplex":
        """Koszul tensor product with the diagonal action."""
        if other.g != self.g:
            raise ValueError("tensor of complexes over different groups")
        index: Dict[Tuple[int, int, int, int], Tuple[int, int]] = {}
        cells: Dict[int, int] = {}
        for p in self.degrees:
            for q in other.degrees:
                d = p + q
                for i in range(self.cells[p]):
                    for j in range(other.cells[q]):
                        index[(p, i, q, j)] = (d, cells.get(d, 0))
                        cells[d] = cells.get(d, 0) + 1
        action: Dict[int, List[int]] = {d: [0] * count for d, count in cells.items()}
        boundary: Dict[int, List[Dict[int, int]]] = {d: [None] * count for d, count in cells.items()}
        for (p, i, q, j), (d, x) in index.items():
            q = d - p
            action[d][x] = index[(p, self.action[p][i], q, other.action[q][j])][1]
            faces: Dict[int, int] = {}
            for fi, c in self.faces(p, i).items():
                y = index[(p - 1, fi, q, j)][1]
                faces[y] = faces.get(y, 0) + c
            sign = -1 if p % 2 else 1
            for fj, c in other.faces(q, j).items():
                y = index[(p, i, q - 1, fj)][1]
                faces[y] = faces.get(y, 0) + sign * c
            boundary[d][x] = {y: c for y, c in faces.items() if c}
        return PermChainComplex(
            self.g,
            cells,
            {d: tuple(v) for d, v in action.items()},
            {d: tuple(v) for d, v in boundary.items()},
        )

    def reduce(self) -> "PermChainComplex":
        """
        Equivariant Gaussian elimination: remove an orbit pair (O_a, O_b)
        whenever |O_a| = |O_b| and the block of d between them is +-identity.
        Bredon (co)homology at every level is unchanged.
        """
        before = self.total_cells
        alive = {d: set(range(count)) for d, count in self.cells.items()}
        bd = {d: {x: dict(self.faces(d, x)) for x in range(count)} for d, count in self.cells.items()}
        cobd: Dict[int, Dict[int, set]] = {d: {x: set() for x in range(count)} for d, count in self.cells.items()}
        for d, table in bd.items():
            for x, faces in table.items():
                for y in faces:
                    cobd[d - 1][y].add(x)

        def orbit(d, x):
            out = [x]
            y = self.action[d][x]
            while y != x:
                out.append(y)
                y = self.action[d][y]
            return out

        def eliminate(d, a, b, c):
            orbit_a, orbit_b = orbit(d + 1, a), orbit(d, b)
            for a_t, b_t in zip(orbit_a, orbit_b):
                pivot_faces = bd[d + 1][a_t]
                for x in list(cobd[d][b_t]):
                    if x == a_t or x in orbit_a:
                        continue
                    factor = bd[d + 1][x][b_t] * c
                    faces = bd[d + 1][x]
                    for y, e in pivot_faces.items():
                        v = faces.get(y, 0) - factor * e
                        if v:
                            if y not in faces:
                                cobd[d][y].add(x)
                            faces[y] = v
                        elif y in faces:
                            del faces[y]
                            cobd[d][y].discard(x)
            for a_t in orbit_a:
                for y in bd[d + 1][a_t]:
                    cobd[d][y].discard(a_t)
                del bd[d + 1][a_t]
                for z in cobd.get(d + 1, {}).get(a_t, ()):
                    bd[d + 2][z].pop(a_t, None)
                cobd[d + 1].pop(a_t, None)
                alive[d + 1].discard(a_t)
            for b_t in orbit_b:
                for y in bd[d][b_t]:
                    cobd[d - 1][y].discard(b_t)
                del bd[d][b_t]
                if cobd[d][b_t]:
                    raise ConsistencyError("orbit elimination left a stale face")
                del cobd[d][b_t]
                alive[d].discard(b_t)

        changed = True
        while changed:
            changed = False
            for d in sorted(self.cells, reverse=True):
                if d + 1 not in self.cells:
                    continue
                for a in sorted(alive[d + 1]):
                    if a not in alive[d + 1]:
                        continue
                    for b, c in sorted(bd[d + 1][a].items()):
                        if c not in (1, -1):
                            continue
                        orbit_a, orbit_b = orbit(d + 1, a), orbit(d, b)
                        if len(orbit_a) != len(orbit_b):
                            continue
                        if any(bd[d + 1][a].get(y, 0) for y in orbit_b[1:]):
                            continue
                        eliminate(d, a, b, c)
                        changed = True
                        break

        # compact labels
        relabel = {d: {x: i for i, x in enumerate(sorted(alive[d]))} for d in alive}
        cells = {d: len(m) for d, m in relabel.items() if m}
        action = {d: tuple(relabel[d][self.action[d][x]] for x in sorted(alive[d])) for d in cells}
        boundary = {
            d: tuple({relabel[d - 1][y]: c for y, c in bd[d][x].items()} for x in sorted(alive[d]))
            for d in cells
        }
        reduced = PermChainComplex(self.g, cells, action, boundary)
        logger.debug("reduced complex from %d to %d cells", before, reduced.total_cells)
        return reduced


def standard_piece(g: int, kind: str, k: int = 0) -> PermChainComplex:
    """Reduced chains of S^1, S^sigma or S^lambda(k) for C_g."""
    if kind == "triv":
        return PermChainComplex(g, {1: 1}, {1: (0,)}, {1: ({},)})
    if kind == "sign":
        # two rays swapped by the generator, both ending at the origin
        return PermChainComplex(g, {0: 1, 1: 2}, {0: (0,), 1: (1, 0)},
                                {0: ({},), 1: ({0: 1}, {0: 1})})
    if kind == "rot":
        q = g // math.gcd(k, g)
        shift = k // math.gcd(k, g)
        rays = tuple((j + shift) % q for j in range(q))
        # sector j lies between rays j and j + 1
        sectors = tuple({(j + 1) % q: 1, j: -1} for j in range(q))
        return PermChainComplex(
            g,
            {0: 1, 1: q, 2: q},
            {0: (0,), 1: rays, 2: rays},
            {0: ({},), 1: tuple({0: 1} for _ in range(q)), 2: sectors},
        )
    raise ValueError(f"unknown representation piece {kind!r}")


@lru_cache(maxsize=64)
def build_complex(V: RepDescriptor, reduce: bool = True,
                  factor_order: Optional[Tuple[int, ...]] = None) -> PermChainComplex:
    """
    Reduced cellular chains of S^V as the tensor product of the standard
    pieces, reduced after every factor unless reduce=False.
    """
    g = V.group_order
    pieces = V.pieces()
    if factor_order is not None:
        if sorted(factor_order) != list(range(len(pieces))):
            raise ValueError("factor_order must be a permutation of the summands")
        pieces = [pieces[i] for i in factor_order]
    complex_ = PermChainComplex.unit(g)
    for kind, k in pieces:
        complex_ = complex_.tensor(standard_piece(g, kind, k))
        if reduce:
            complex_ = complex_.reduce()
    complex_.check_d_squared()
    logger.info("built S^(%s) for C_%d with %d cells", V.label(), g, complex_.total_cells)
    return complex_


# ---- homology ---------------------------------------------------------------

@dataclass(frozen=True)
class AbGroup:
    free: int = 0
    torsion: Tuple[int, ...] = ()

    @property
    def is_zero(self) -> bool:
        return self.free == 0 and not self.torsion

    @property
    def order(self) -> float:
        return math.inf if self.free else math.prod(self.torsion)

    def __str__(self):
        parts = ["Z"] * self.free + [f"Z/{t}" for t in sorted(self.torsion)]
        return " ⊕ ".join(parts) if parts else "0"

    def to_json(self) -> Dict[str, object]:
        return {"free": self.free, "torsion": sorted(self.torsion)}


@dataclass(frozen=True)
class GradedAbGroups:
    """degree -> abelian group, for one (V, level, coefficient, variance)"""

    groups: Tuple[Tuple[int, AbGroup], ...]
    cohomological: bool = False

    def __getitem__(self, d: int) -> AbGroup:
        return dict(self.groups).get(d, AbGroup())

    def nonzero(self) -> Dict[int, AbGroup]:
        return {d: grp for d, grp in self.groups if not grp.is_zero}

    def to_json(self) -> Dict[str, Dict[str, object]]:
        return {str(d): grp.to_json() for d, grp in self.groups}


def _graded(dims: Dict[int, int], out_maps: Dict[int, IntMatrix], in_maps: Dict[int, IntMatrix],
            coeff: str, degrees: Iterable[int]) -> List[Tuple[int, AbGroup]]:
    if coeff not in COEFFICIENTS:
        raise ValueError(f"coefficients must be one of {COEFFICIENTS}, got {coeff!r}")
    rank_cache: Dict[int, Tuple[int, Tuple[int, ...]]] = {}

    def info(matrix: Optional[IntMatrix]):
        if matrix is None or not matrix.rows or not matrix.cols:
            return 0, ()
        key = id(matrix)
        if key not in rank_cache:
            if coeff == "Z":
                result = snf(matrix)
                rank_cache[key] = (result.rank, result.cokernel_torsion)
            else:
                rank_cache[key] = (f2_rank(matrix.to_f2()), ())
        return rank_cache[key]

    out = []
    for d in degrees:
        dim = dims.get(d, 0)
        out_rank, _ = info(out_maps.get(d))
        in_rank, torsion = info(in_maps.get(d))
        rank = dim - out_rank - in_rank
        if coeff == "Z":
            out.append((d, AbGroup(rank, tuple(sorted(torsion)))))
        else:
            out.append((d, AbGroup(0, (2,) * rank)))
    return out


def _check_level(V: RepDescriptor, level: Optional[int]) -> int:
    g = V.group_order
    level = g if level is None else level
    if level < 1 or g % level:
        raise ValueError(f"C_{g} has no subgroup of order {level}")
    return level


def bredon_homology(V: RepDescriptor, level: Optional[int] = None, coeff: str = "Z",
                    factor_order: Optional[Tuple[int, ...]] = None) -> GradedAbGroups:
    """
    Homology of the H-invariant chains of S^V, H the subgroup of order
    `level` (default G). factor_order permutes the tensor factors.
    """
    level = _check_level(V, level)
    complex_ = build_complex(V, factor_order=factor_order)
    degrees = range(0, V.dim + 1)
    dims = {d: len(complex_.orbits(d, level)) for d in degrees}
    maps = {d: complex_.invariant_boundary(d, level) for d in range(1, V.dim + 1)}
    groups = _graded(dims, maps, {d - 1: m for d, m in maps.items()}, coeff, degrees)
    return GradedAbGroups(tuple(groups))


def bredon_cohomology(V: RepDescriptor, level: Optional[int] = None, coeff: str = "Z",
                      factor_order: Optional[Tuple[int, ...]] = None) -> GradedAbGroups:
    """Cohomology of the orbit-constant cochains Hom_H(C_*(S^V), Z)."""
    level = _check_level(V, level)
    complex_ = build_complex(V, factor_order=factor_order)
    complex_.check_cochain_duality(level)
    degrees = range(0, V.dim + 1)
    dims = {d: len(complex_.orbits(d, level)) for d in degrees}
    maps = {d: complex_.invariant_coboundary(d, level) for d in range(0, V.dim)}
    groups = _graded(dims, maps, {d + 1: m for d, m in maps.items()}, coeff, degrees)
    return GradedAbGroups(tuple(groups), cohomological=True)


def underlying_homology_check(V: RepDescriptor) -> bool:
    """Reduced homology with the group forgotten is Z in degree dim V only."""
    groups = bredon_homology(V, level=1).nonzero()
    return groups == {V.dim: AbGroup(1, ())}


def uct_check(V: RepDescriptor, level: Optional[int] = None) -> bool:
    """Z/2 (co)homology ranks agree with the universal coefficient counts."""
    for cohomological in (False, True):
        compute = bredon_cohomology if cohomological else bredon_homology
        integral = compute(V, level, "Z")
        mod2 = compute(V, level, "Z/2")
        for d in range(0, V.dim + 1):
            neighbour = d + 1 if cohomological else d - 1
            expected = (integral[d].free + len(integral[d].torsion)
                        + len(integral[neighbour].torsion))
            if len(mod2[d].torsion) != expected:
                logger.warning("UCT mismatch for %s in degree %d: %d vs %d",
                               V.label(), d, len(mod2[d].torsion), expected)
                return False
    return True


def gap_check(n: int, m_max: int) -> List[Dict[str, object]]:
    """H^i_G(S^{m rho_G}; Z) for 0 < i < 4 and 1 <= m <= m_max, one row per (m, i)."""
    if n < 1:
        raise ValueError(f"group exponent must be at least 1, got {n}")
    if m_max < 1:
        raise ValueError(f"m_max must be positive, got {m_max}")
    rows = []
    for m in range(1, m_max + 1):
        V = RepDescriptor.regular(n, m)
        cohomology = bredon_cohomology(V)
        for i in (1, 2, 3):
            group = cohomology[i]
            rows.append({"m": m, "i": i, "group": str(group), "passed": group.is_zero})
            if not group.is_zero:
                logger.warning("gap failure: H^%d of S^(%d rho) for C_%d is %s", i, m, 2 ** n, group)
    return rows


def phi_hz(n: int, k_max: int) -> Dict[int, AbGroup]:
    """
    pi_k of the geometric fixed points of HZ, read off the G-invariant
    chains of S^{N sigma} for N = k_max + 2 and checked stable at N + 1.
    """
    if n < 1:
        raise ValueError(f"group exponent must be at least 1, got {n}")
    if k_max < 0:
        raise ValueError(f"k_max must be nonnegative, got {k_max}")
    N = k_max + 2
    first = bredon_homology(RepDescriptor(n, sign=N))
    second = bredon_homology(RepDescriptor(n, sign=N + 1))
    table = {}
    for k in range(k_max + 1):
        if first[k] != second[k]:
            raise ConsistencyError(f"degree {k} not yet stable at N = {N}")
        table[k] = first[k]
    return table
