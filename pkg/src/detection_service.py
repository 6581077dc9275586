"""
Slice Workbench - Detection Computations
Group cohomology of C_8 with coefficients in R_{2m} = A w^m, Bockstein
images of t_1 powers, valuation bounds for the beta and alpha families,
and the s_{H,i} series solver
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Tuple

import numpy as np

from cyclotomic import CyclotomicFrac, CyclotomicInt, GradedElem
from errors import ConsistencyError, NonIntegralError
from formal_a_module import logarithm
from integer_matrix import IntMatrix, f2_rank, order_modulo_image, subquotient
from rep_sphere import AbGroup

logger = logging.getLogger(__name__)

GROUP_ORDER = 8


def multiplication_matrix(a: CyclotomicInt) -> IntMatrix:
    """Matrix of x -> a x on A with basis 1, zeta, zeta^2, zeta^3 (columns are images)."""
    columns = [(a * CyclotomicInt.zeta(i)).coeffs for i in range(4)]
    return IntMatrix.from_rows([[columns[j][i] for j in range(4)] for i in range(4)], 4)


def _matrix_sum(matrices: List[IntMatrix]) -> IntMatrix:
    entries = [sum(vals) for vals in zip(*(m.entries for m in matrices))]
    return IntMatrix(matrices[0].rows, matrices[0].cols, tuple(entries))


@dataclass
class RModule:
    """
    R_{2m} = A w^m with gamma acting by zeta^m, optionally reduced mod 2.
    """

    m: int
    mod2: bool = False
    gamma: IntMatrix = field(init=False)
    trace: IntMatrix = field(init=False)

    def __post_init__(self):
        self.gamma = multiplication_matrix(CyclotomicInt.zeta(self.m))
        powers = [IntMatrix.identity(4)]
        for _ in range(GROUP_ORDER - 1):
            powers.append(powers[-1] @ self.gamma)
        if powers[-1] @ self.gamma != IntMatrix.identity(4):
            raise ConsistencyError(f"gamma^8 != 1 on R_{2 * self.m}")
        self.trace = _matrix_sum(powers)

    @property
    def gamma_minus_one(self) -> IntMatrix:
        identity = IntMatrix.identity(4)
        return IntMatrix(4, 4, tuple(a - b for a, b in zip(self.gamma.entries, identity.entries)))

    def differential(self, s: int) -> IntMatrix:
        """C^s -> C^{s+1} of the periodic complex: gamma - 1 for even s, the trace for odd s."""
        return self.gamma_minus_one if s % 2 == 0 else self.trace


def pi_exponent(m: int) -> float:
    """v_pi(zeta^m - 1), infinite when zeta^m = 1."""
    return (CyclotomicInt.zeta(m) - 1).pi_valuation()


def a_module_label(e: int) -> str:
    if e == 1:
        return "A/(π)"
    if e == 4:
        return "A/(2)"
    if e == 12:
        return "A/(8)"
    return f"A/(π^{e})"


@dataclass(frozen=True)
class CohomologyGroup:
    """H^s(C_8; R_{2m}) or its mod 2 analogue"""

    s: int
    m: int
    mod2: bool
    group: AbGroup
    a_label: str
    generator: str

    @property
    def f2_dim(self) -> int:
        return len(self.group.torsion) if self.mod2 else 0

    def to_json(self) -> Dict[str, object]:
        return {
            "s": self.s,
            "m": self.m,
            "mod2": self.mod2,
            "group": str(self.group),
            "structure": self.group.to_json(),
            "a_module": self.a_label,
            "generator": self.generator,
        }


def cohomology_R(s: int, m: int, mod2: bool = False) -> CohomologyGroup:
    """
    H^s(C_8; R_{2m}) from the 2-periodic complex
    R --(gamma - 1)--> R --trace--> R --(gamma - 1)--> ...

    Args:
        s: Cohomological degree, s >= 0
        m: Weight of the coefficient module
        mod2: Use R_{2m}/2 instead

    Returns:
        CohomologyGroup with invariant factors (or F2 dimension) and the A-module label
    """
    if s < 0:
        raise ValueError(f"cohomological degree must be nonnegative, got {s}")
    module = RModule(m, mod2)
    outgoing = module.differential(s)
    incoming = module.differential(s - 1) if s > 0 else None
    if mod2:
        rank_out = f2_rank(outgoing.to_f2())
        rank_in = f2_rank(incoming.to_f2()) if incoming is not None else 0
        dim = 4 - rank_out - rank_in
        group = AbGroup(0, (2,) * dim)
        label = a_module_label(dim) if dim else "0"
    else:
        free, torsion = subquotient(4, outgoing, incoming)
        group = AbGroup(free, torsion)
        if free:
            label = "A"
        elif not torsion:
            label = "0"
        else:
            label = a_module_label(int(math.log2(group.order)))
    generator = "0" if group.is_zero else ("w" if m == 1 else f"w^{m}")
    return CohomologyGroup(s, m, mod2, group, label, generator)


def cohomology_table(m_max: int = 15, degrees: Tuple[int, ...] = (0, 1, 2),
                     mod2: bool = False) -> List[CohomologyGroup]:
    return [cohomology_R(s, m, mod2) for m in range(m_max + 1) for s in degrees]


def check_periodicity(m: int, mod2: bool = False) -> bool:
    """H^s and H^{s+2} agree for s = 1, 2."""
    for s in (1, 2):
        if cohomology_R(s, m, mod2).group != cohomology_R(s + 2, m, mod2).group:
            raise ConsistencyError(f"H^{s} and H^{s + 2} differ for m={m}, mod2={mod2}")
    return True


def predicted_cohomology(s: int, m: int) -> AbGroup:
    """The closed-form case table for integral coefficients."""
    invariant = m % 8 == 0
    if s == 0:
        return AbGroup(4) if invariant else AbGroup()
    if s % 2 == 1:
        if invariant:
            return AbGroup()
        e = int(pi_exponent(m))
        return {1: AbGroup(0, (2,)), 2: AbGroup(0, (2, 2)), 4: AbGroup(0, (2, 2, 2, 2))}[e]
    return AbGroup(0, (8, 8, 8, 8)) if invariant else AbGroup()


# ---- crossed homomorphisms ------------------------------------------------------

def _f2_vectors() -> List[Tuple[int, ...]]:
    return [tuple(v) for v in product((0, 1), repeat=4)]


def h1_from_crossed_homomorphisms(m: int) -> Dict[str, int]:
    """
    H^1(C_8; R_{2m}/2) from function cocycles C_8 -> A/2.

    A crossed homomorphism is determined by c(gamma); every candidate value
    is extended by c(gamma^{k+1}) = c(gamma^k) + gamma^k c(gamma) and kept
    when the cocycle identity holds on all 64 pairs. Coboundaries are
    g -> g y - y. Their values at gamma must lie in the image of gamma - 1.
    """
    gamma = np.array(RModule(m).gamma.to_rows(), dtype=np.int64) % 2
    powers = [np.eye(4, dtype=np.int64)]
    for _ in range(GROUP_ORDER - 1):
        powers.append((powers[-1] @ gamma) % 2)

    def act(k: int, v: np.ndarray) -> np.ndarray:
        return (powers[k % GROUP_ORDER] @ v) % 2

    def extend(x: np.ndarray) -> List[np.ndarray]:
        values = [np.zeros(4, dtype=np.int64)]
        for k in range(GROUP_ORDER):
            values.append((values[-1] + act(k, x)) % 2)
        return values

    def is_cocycle(values: List[np.ndarray]) -> bool:
        if values[GROUP_ORDER].any():
            return False
        for g in range(GROUP_ORDER):
            for h in range(GROUP_ORDER):
                lhs = values[(g + h) % GROUP_ORDER]
                if not np.array_equal(lhs, (values[g] + act(g, values[h])) % 2):
                    return False
        return True

    cocycles = [x for x in _f2_vectors() if is_cocycle(extend(np.array(x, dtype=np.int64)))]
    image = {tuple(((gamma - np.eye(4, dtype=np.int64)) @ np.array(y)) % 2) for y in _f2_vectors()}
    boundaries = set()
    for y in _f2_vectors():
        y = np.array(y, dtype=np.int64)
        values = [(act(k, y) - y) % 2 for k in range(GROUP_ORDER)] + [np.zeros(4, dtype=np.int64)]
        if not is_cocycle(values):
            raise ConsistencyError(f"coboundary of {y.tolist()} is not a cocycle")
        if tuple(values[1]) not in image:
            raise ConsistencyError("coboundary value at gamma is outside im(gamma - 1)")
        boundaries.add(tuple(values[1]))
    classes = len(cocycles) // len(boundaries)
    expected = 2 ** cohomology_R(1, m, mod2=True).f2_dim
    if classes != expected:
        raise ConsistencyError(f"{classes} cocycle classes for m={m}, periodic complex gives {expected}")
    return {"m": m, "cocycles": len(cocycles), "coboundaries": len(boundaries), "classes": classes}


# ---- Bockstein ------------------------------------------------------------------

@dataclass(frozen=True)
class CohClass:
    """A class in H^s(C_8; R_{2m}) with its representative and order"""

    s: int
    m: int
    representative: GradedElem
    ambient: AbGroup
    order: float
    source: Optional[GradedElem] = None

    @property
    def is_zero(self) -> bool:
        return self.order == 1

    def to_json(self) -> Dict[str, object]:
        return {
            "s": self.s,
            "m": self.m,
            "representative": self.representative.to_json(),
            "pretty": self.representative.pretty(),
            "group": str(self.ambient),
            "order": None if self.order == math.inf else int(self.order),
            "source": self.source.to_json() if self.source else None,
        }


def t1_power(e: int) -> GradedElem:
    """t_1(zeta_8)^e = zeta^{3e} w^e."""
    return GradedElem(CyclotomicInt.zeta(3 * e), e)


def bockstein_image(j: int, weight: Optional[int] = None) -> CohClass:
    """
    Image of the mod 2 class of t_1^m under H^1(C_8; R_{2m}/2) -> H^2(C_8; R_{2m})
    for the weight m = 2^j, or the requested weight.

    The representative is lifted to A, pushed through the trace and halved;
    the result is read in ker(gamma - 1)/im(trace).

    Args:
        j: Exponent, j >= 2
        weight: Weight m of the coefficient module; 2^j unless the
            alternative reading 2^{j-1} is requested

    Raises:
        ConsistencyError: the traced lift is not divisible by 2
    """
    if j < 2:
        raise ValueError(f"the Bockstein is defined here for j >= 2, got {j}")
    m = 2 ** j if weight is None else weight
    if m < 1:
        raise ValueError(f"weight must be positive, got {m}")
    x = t1_power(m)
    module = RModule(m)
    traced = module.trace.apply(list(x.coeff.coeffs))
    if any(c % 2 for c in traced):
        raise ConsistencyError(f"trace of the lift of t_1^{m} is not divisible by 2")
    delta = [c // 2 for c in traced]
    if any(module.gamma_minus_one.apply(delta)):
        raise ConsistencyError("Bockstein image is not gamma-invariant")
    order = order_modulo_image(delta, module.trace)
    ambient = cohomology_R(2, m).group
    result = CohClass(2, m, GradedElem(CyclotomicInt(delta), m), ambient, order, source=x)
    logger.debug("Bockstein of t_1^%d has order %s", m, order)
    return result


# ---- valuations -----------------------------------------------------------------

@dataclass(frozen=True)
class ValuationTerm:
    """||.|| on R_*, with ||pi|| = 1/4, recorded with the expression it measures"""

    value: Fraction
    provenance: str

    @classmethod
    def two(cls) -> "ValuationTerm":
        return cls(Fraction(1), "2")

    @classmethod
    def pi(cls) -> "ValuationTerm":
        return cls(Fraction(1, 4), "π")

    @classmethod
    def t(cls, n: int) -> "ValuationTerm":
        return cls(Fraction(0), f"t{n}")

    @classmethod
    def v(cls, n: int) -> "ValuationTerm":
        if n < 1:
            raise ValueError(f"v_n needs n >= 1, got {n}")
        return cls(max(Fraction(0), Fraction(4 - n, 4)), f"v{n}")

    def __mul__(self, other: "ValuationTerm") -> "ValuationTerm":
        return ValuationTerm(self.value + other.value, f"{self.provenance}·{other.provenance}")

    def __truediv__(self, other: "ValuationTerm") -> "ValuationTerm":
        return ValuationTerm(self.value - other.value, f"{self.provenance}/({other.provenance})")

    def __pow__(self, exponent: int) -> "ValuationTerm":
        return ValuationTerm(self.value * exponent, f"{self.provenance}^{exponent}")


def c_exponent(j: int, k: int) -> int:
    """c(j, k) = 2^{j-1-2k} (1 + 2^{2k+1}) / 3."""
    return 2 ** (j - 1 - 2 * k) * (1 + 2 ** (2 * k + 1)) // 3


def beta_term(j: int, k: int) -> ValuationTerm:
    """||v_2^{c(j,k)} / (2 v_1^{2^{j-1-2k}})||"""
    if j < 1 or k < 0 or 2 * k >= j:
        raise ValueError(f"beta bound needs 0 <= k < j/2, got j={j}, k={k}")
    return ValuationTerm.v(2) ** c_exponent(j, k) / (ValuationTerm.two() * ValuationTerm.v(1) ** (2 ** (j - 1 - 2 * k)))


def beta_valuation(j: int, k: int) -> Fraction:
    """
    Lower bound for ||beta_{c(j,k)/2^{j-1-2k}}||, checked against
    (2^{j-1} - 7 * 2^{j-3-2k})/3 - 1 and, for j >= 6 and k >= 1, against 5.
    """
    value = beta_term(j, k).value
    closed = (Fraction(2) ** (j - 1) - 7 * Fraction(2) ** (j - 3 - 2 * k)) / 3 - 1
    if value != closed:
        raise ConsistencyError(f"beta bound {value} disagrees with the closed form {closed} at j={j}, k={k}")
    if j >= 6 and k >= 1 and value < 5:
        raise ConsistencyError(f"beta bound {value} < 5 at j={j}, k={k}")
    return value


def alpha_valuation(j: int) -> Fraction:
    """||alpha_{2^j - 1}|| >= ||v_1^{2^j - 1} / 2|| = 3(2^j - 1)/4 - 1."""
    if j < 1:
        raise ValueError(f"alpha bound needs j >= 1, got {j}")
    value = (ValuationTerm.v(1) ** (2 ** j - 1) / ValuationTerm.two()).value
    if j >= 3 and value <= 4:
        raise ConsistencyError(f"alpha bound {value} <= 4 at j={j}")
    return value


# ---- s_{H,i} ----------------------------------------------------------------------

SUBGROUP_ORDERS = (2, 4, 8)

# pi-coordinates [c0, c1, c2, c3] of the reference s_{H,i}
REFERENCE_S_VALUES: Dict[Tuple[int, int], Tuple[int, int, int, int]] = {
    (2, 1): (-4, -6, -4, -1),
    (2, 3): (26, 14, -5, -4),
    (2, 7): (-1052, -22171, -21426, -6182),
    (2, 15): (-16204677587, -15158766469, -3700320563, 306347134),
    (4, 1): (-2, -1, 0, 0),
    (4, 3): (-1, 25, 26, 8),
    (8, 1): (-1, 0, 0, 0),
}

UNIT_S_VALUES = ((2, 15), (4, 3), (8, 1))


@dataclass
class SSolution:
    h: int
    values: Dict[int, GradedElem]

    def valuations(self) -> Dict[int, float]:
        return {i: v.pi_valuation() for i, v in self.values.items()}


def s_solver(h: int, N: int) -> SSolution:
    """
    Solve sum_k x^{2^k}/pi^k = (x + sum_j zeta^{8/h} x^{2^j}/pi^j) o f_H(x)
    for f_H = x + sum s_{H,i} x^{i+1}, with w = 1.

    Raises:
        NonIntegralError: some s_{H,i} is not in A
        ConsistencyError: the round trip or the degree-1 closed form fails
    """
    if h not in SUBGROUP_ORDERS:
        raise ValueError(f"subgroup order must be one of {SUBGROUP_ORDERS}, got {h}")
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    precision = N + 1
    twist = CyclotomicInt.zeta(GROUP_ORDER // h)
    log = logarithm(precision)
    left = logarithm(precision, twist)
    f = left.revert().compose(log)
    if left.compose(f) != log:
        raise ConsistencyError(f"round trip of the s-series for C_{h} fails")
    closed = (CyclotomicFrac(1) - CyclotomicFrac(twist)) * CyclotomicFrac.pi_power(-1)
    if f[2] != closed:
        raise ConsistencyError(f"s_(C{h},1) = {f[2]!r}, closed form gives {closed!r}")
    values = {}
    for i in range(1, N + 1):
        c = f[i + 1]
        if not c.is_integral():
            raise NonIntegralError(f"s_(C{h},{i}) is not integral: {c!r}")
        values[i] = GradedElem.from_frac(c, i)
    logger.debug("solved s_(C%d, 1..%d)", h, N)
    return SSolution(h, values)


# ---- report -------------------------------------------------------------------------

def _item(name: str, passed: bool, witness: object) -> Dict[str, object]:
    return {"name": name, "passed": bool(passed), "witness": witness}


def detection_report(jmax: int = 10) -> Dict[str, object]:
    """
    Aggregate verdict: unit and non-unit certification of the reference
    s-values, Bockstein nonvanishing for 3 <= j <= jmax, and the beta and
    alpha bounds.
    """
    if jmax < 3:
        raise ValueError(f"jmax must be at least 3, got {jmax}")
    solutions = {h: s_solver(h, max(i for hh, i in REFERENCE_S_VALUES if hh == h)) for h in SUBGROUP_ORDERS}
    s_table = []
    for (h, i), coords in REFERENCE_S_VALUES.items():
        elem = solutions[h].values[i]
        matches = tuple(elem.coeff.to_pi_coords()) == coords
        expect_unit = (h, i) in UNIT_S_VALUES
        is_unit = elem.pi_valuation() == 0
        s_table.append({
            "subgroup": f"C{h}",
            "i": i,
            "value": elem.to_json(),
            "pretty": elem.pretty(),
            "pi_valuation": elem.pi_valuation(),
            "unit": is_unit,
            "passed": matches and is_unit == expect_unit,
        })

    bockstein = []
    for j in range(2, jmax + 1):
        cls = bockstein_image(j)
        alternative = bockstein_image(j, weight=2 ** (j - 1))
        bockstein.append({
            "j": j,
            "nonzero": not cls.is_zero,
            "order": None if cls.order == math.inf else int(cls.order),
            "witness": cls.to_json(),
            "alternative_nonzero": not alternative.is_zero,
            # j = 2 lands in H^2(C_8; R_8) = 0 and is reported without a verdict
            "passed": None if j == 2 else (cls.order == 2),
        })

    beta_bounds = []
    for j in range(6, jmax + 1):
        for k in range(1, (j + 1) // 2):
            value = beta_valuation(j, k)
            beta_bounds.append({"j": j, "k": k, "c": c_exponent(j, k), "value": str(value), "passed": value >= 5})
    alpha_bounds = []
    for j in range(3, jmax + 1):
        value = alpha_valuation(j)
        alpha_bounds.append({"j": j, "value": str(value), "passed": value > 4})

    items = [
        _item("s-values match and units are certified", all(r["passed"] for r in s_table),
              [f"{r['subgroup']},{r['i']}: v_pi={r['pi_valuation']}" for r in s_table]),
        _item("Bockstein nonzero of order 2 for 3 <= j <= jmax",
              all(b["passed"] for b in bockstein if b["passed"] is not None),
              [b["j"] for b in bockstein if b["nonzero"]]),
        _item("beta bounds >= 5", all(b["passed"] for b in beta_bounds), len(beta_bounds)),
        _item("alpha bounds > 4", all(a["passed"] for a in alpha_bounds), len(alpha_bounds)),
    ]
    verdict = "pass" if all(item["passed"] for item in items) else "fail"
    logger.info("detection report through j=%d: %s", jmax, verdict)
    return {
        "jmax": jmax,
        "s_table": s_table,
        "bockstein": bockstein,
        "beta_bounds": beta_bounds,
        "alpha_bounds": alpha_bounds,
        "items": items,
        "verdict": verdict,
    }
