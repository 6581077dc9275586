"""
Slice Workbench - Acceptance Checks
The fifteen verification criteria behind `verify-all`, each a picklable
module-level function returning (passed, detail)
"""

import logging
import math
import random
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from cyclotomic import CyclotomicInt
from detection_service import (REFERENCE_S_VALUES, UNIT_S_VALUES, alpha_valuation, beta_valuation,
                               bockstein_image, check_periodicity, cohomology_R,
                               predicted_cohomology, s_solver)
from formal_a_module import FormalAModule, hazewinkel_images, t1_closed_form, t_functions
from formal_groups import mo_generators, rbar_generators
from integer_matrix import IntMatrix, snf
from power_series import RATIONALS, TruncSeries
from rep_sphere import (AbGroup, RepDescriptor, bredon_cohomology, bredon_homology, gap_check,
                        parse_rep, phi_hz, underlying_homology_check)
from slice_cells import SliceCell, refine_orbits
from slice_spectral_sequence import inverted_ss_run, mo_poincare
from sparse_poly import SparsePoly, SparsePolyRing

logger = logging.getLogger(__name__)

Outcome = Tuple[bool, str]

REFERENCE_HAZEWINKEL = {
    1: (-4, -6, -4, -1),
    2: (-6, 6, 11, 4),
    3: (100, 237, 166, 40),
    4: (-9707, -63495, -56631, -15754),
}


def _z(*torsion: int) -> AbGroup:
    return AbGroup(0, tuple(torsion))


def check_rho8_homology() -> Outcome:
    groups = bredon_homology(parse_rep("rho(8)", 3)).nonzero()
    expected = {d: _z(2) for d in (1, 3, 5, 7)}
    return groups == expected, ", ".join(f"H{d}={g}" for d, g in sorted(groups.items()))


def check_two_rho8() -> Outcome:
    V = parse_rep("2*rho(8)", 3)
    homology = bredon_homology(V).nonzero()
    expected = {16: AbGroup(1), 14: _z(8), 12: _z(8), 10: _z(8), 8: _z(8), 6: _z(4), 4: _z(4), 2: _z(2)}
    cohomology = bredon_cohomology(V).nonzero()
    expected_co = {5: _z(2), 7: _z(4), 9: _z(4), 11: _z(8), 13: _z(8), 15: _z(8), 16: AbGroup(1)}
    passed = homology == expected and cohomology == expected_co
    return passed, f"H14={homology.get(14)}, H^5={cohomology.get(5)}, H^16={cohomology.get(16)}"


def check_gap() -> Outcome:
    rows = [row for n in (1, 2, 3) for row in gap_check(n, 2)]
    failures = [row for row in rows if not row["passed"]]
    return not failures, f"{len(rows)} groups checked, {len(failures)} nonzero"


def check_phi_hz() -> Outcome:
    table = phi_hz(3, 10)
    passed = all(table[k] == (_z(2) if k % 2 == 0 else AbGroup()) for k in range(11))
    return passed, " ".join(str(table[k]) for k in range(11))


def check_refinement() -> Outcome:
    first = refine_orbits(8, 1)
    second = refine_orbits(8, 2)
    passed = (
        len(first.orbits) == 1 and first.orbits[0].cell == SliceCell(8, 2, 1)
        and second.rank == 14
        and dict(second.cell_multiplicities()) == {SliceCell(8, 2, 2): 3, SliceCell(8, 4, 1): 1}
    )
    return passed, f"d=2 rank {second.rank}, orbit sizes {sorted(o.size for o in second.orbits)}"


def check_inverted_ss() -> Outcome:
    details = []
    passed = True
    for g in (2, 8):
        run = inverted_ss_run(g, 20)
        passed &= run.ranks() == mo_poincare(20)
        details.append(f"C{g}: {len(run.pages)} pages")
    return passed, ", ".join(details)


def check_mo_generators() -> Outcome:
    vanishing = mo_generators(31).vanishing()
    return vanishing == [1, 3, 7, 15, 31], f"h_j = 0 for j in {vanishing}"


def check_rbar() -> Outcome:
    rbar = rbar_generators(8)
    ring = rbar.ring
    exact_first = rbar.rbar[1] == ring.var("m", 1) - ring.var("gm", 1)
    return exact_first, f"rbar_1 = {rbar.rbar[1]}"


def check_hazewinkel() -> Outcome:
    images = hazewinkel_images(4)
    passed = all(tuple(images[n].coeff.to_pi_coords()) == REFERENCE_HAZEWINKEL[n]
                 and images[n].pi_valuation() == 4 - n for n in range(1, 5))
    return passed, "; ".join(f"v{n} -> {images[n].pretty()}" for n in range(1, 5))


def check_t_functions() -> Outcome:
    table = t_functions(3)
    t1 = table[(1, 1)]
    closed = t1_closed_form(1)
    trivial = all(not table[(0, n)].coeff for n in range(1, 4))
    pairs = FormalAModule(16).verify_zeta_composition()
    passed = t1.coeff == CyclotomicInt.zeta(3) and closed.to_int() == t1.coeff and trivial and pairs == 64
    return passed, f"t1(zeta) = {t1.pretty()}, {pairs} zeta pairs"


def check_group_cohomology() -> Outcome:
    mismatches = []
    for m in range(16):
        check_periodicity(m)
        check_periodicity(m, mod2=True)
        for s in (0, 1, 2):
            if cohomology_R(s, m).group != predicted_cohomology(s, m):
                mismatches.append((s, m))
        expected_dim = 1 if m % 2 else (2 if m % 4 == 2 else 4)
        for s in (1, 2):
            if cohomology_R(s, m, mod2=True).f2_dim != expected_dim:
                mismatches.append((s, m, "mod2"))
    return not mismatches, f"mismatches: {mismatches}" if mismatches else "48 integral and 32 mod 2 entries"


def check_bockstein() -> Outcome:
    orders = {j: bockstein_image(j).order for j in range(2, 11)}
    passed = all(orders[j] == 2 for j in range(3, 11)) and orders[2] == 1
    return passed, f"orders {orders}"


def check_valuation_bounds() -> Outcome:
    betas = [beta_valuation(j, k) for j in range(6, 21) for k in range(1, (j + 1) // 2)]
    alphas = [alpha_valuation(j) for j in range(3, 21)]
    passed = min(betas) >= 5 and min(alphas) > 4 and alphas[0] == Fraction(17, 4)
    return passed, f"min beta {min(betas)}, min alpha {min(alphas)}"


def check_s_values() -> Outcome:
    expected_valuations = {(2, 1): 3, (2, 3): 2, (2, 7): 1, (4, 1): 1}
    solutions = {h: s_solver(h, n) for h, n in ((2, 15), (4, 3), (8, 1))}
    failures = []
    for (h, i), coords in REFERENCE_S_VALUES.items():
        elem = solutions[h].values[i]
        valuation = 0 if (h, i) in UNIT_S_VALUES else expected_valuations[(h, i)]
        if tuple(elem.coeff.to_pi_coords()) != coords or elem.pi_valuation() != valuation:
            failures.append(f"C{h},{i}")
    return not failures, f"failures: {failures}" if failures else "7 reference values reproduced"


def _random_matrix(rng: random.Random) -> IntMatrix:
    rows, cols = rng.randint(1, 8), rng.randint(1, 8)
    return IntMatrix(rows, cols, tuple(rng.randint(-9, 9) for _ in range(rows * cols)))


def _random_poly(rng: random.Random, ring: SparsePolyRing) -> SparsePoly:
    p = ring.zero()
    for _ in range(rng.randint(0, 4)):
        table = {("m", i): rng.randint(0, 3) for i in range(1, 4)}
        p = p + ring.monomial(table, rng.randint(-5, 5))
    return p


def check_cokernel_order(rng: random.Random, trials: int = 100) -> Outcome:
    """|coker A| = |det A| for square nonsingular A."""
    checked = 0
    while checked < trials:
        n = rng.randint(1, 6)
        A = IntMatrix(n, n, tuple(rng.randint(-9, 9) for _ in range(n * n)))
        det = A.determinant()
        if not det:
            continue
        factors = snf(A).invariant_factors
        if len(factors) != n or abs(math.prod(factors)) != abs(det):
            return False, f"cokernel order {math.prod(factors)} != |det| {abs(det)} on {A.to_rows()}"
        checked += 1
    return True, f"cokernel order x{trials}"


def check_ultrametric(rng: random.Random, trials: int = 200) -> Outcome:
    """v_pi(x + y) >= min(v_pi(x), v_pi(y))."""
    for _ in range(trials):
        x = CyclotomicInt([rng.randint(-20, 20) for _ in range(4)])
        y = CyclotomicInt([rng.randint(-20, 20) for _ in range(4)])
        if (x + y).pi_valuation() < min(x.pi_valuation(), y.pi_valuation()):
            return False, f"ultrametric inequality fails on {x!r}, {y!r}"
    return True, f"ultrametric x{trials}"


def check_mod2_reduction(rng: random.Random, trials: int = 100) -> Outcome:
    """Reduction mod 2 of sparse polynomials respects sums and products."""
    ring, target = SparsePolyRing(0), SparsePolyRing(2)
    for _ in range(trials):
        p, q = _random_poly(rng, ring), _random_poly(rng, ring)
        p2, q2 = p.reduce_mod2(target), q.reduce_mod2(target)
        if (p * q).reduce_mod2(target) != p2 * q2 or (p + q).reduce_mod2(target) != p2 + q2:
            return False, f"reduction mod 2 is not a ring map on {p}, {q}"
    return True, f"mod 2 reduction x{trials}"


def check_property_suites(seed: int = 20240601) -> Outcome:
    rng = random.Random(seed)
    for _ in range(200):
        A = _random_matrix(rng)
        result = snf(A)
        factors = result.invariant_factors
        if result.U @ A @ result.V != result.D or not result.D.is_diagonal():
            return False, f"SNF transform identity fails on {A.to_rows()}"
        if any(factors[i + 1] % factors[i] for i in range(len(factors) - 1)):
            return False, f"invariant factors {factors} do not divide"
        if abs(result.U.determinant()) != 1 or abs(result.V.determinant()) != 1:
            return False, "SNF transforms are not unimodular"
    for _ in range(200):
        x = CyclotomicInt([rng.randint(-20, 20) for _ in range(4)])
        y = CyclotomicInt([rng.randint(-20, 20) for _ in range(4)])
        if x and y and (x * y).pi_valuation() != x.pi_valuation() + y.pi_valuation():
            return False, f"valuation not additive on {x!r}, {y!r}"
    for property_check in (check_cokernel_order, check_ultrametric, check_mod2_reduction):
        passed, detail = property_check(rng)
        if not passed:
            return False, detail
    for _ in range(100):
        coeffs = [Fraction(0), Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))]
        coeffs += [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(11)]
        series = TruncSeries(RATIONALS, coeffs, 12)
        identity = TruncSeries.identity(RATIONALS, 12)
        inverse = series.revert()
        if series.compose(inverse) != identity or inverse.compose(series) != identity:
            return False, "revert/compose round trip fails"
    reps = [RepDescriptor(1, sign=2), RepDescriptor(2, rot=(1,)), parse_rep("rho(8)", 3),
            parse_rep("sigma + lambda(3)", 3), parse_rep("rho(4)", 2), parse_rep("1 + sigma + lambda(2)", 3)]
    for V in reps:
        if not underlying_homology_check(V):
            return False, f"underlying homology of S^({V.label()}) is not a single Z"
    return True, ("SNF x200, valuation x200, cokernel order x100, ultrametric x200, "
                  "mod 2 reduction x100, revert x100, underlying homology x6")


CRITERIA: List[Tuple[int, str, Callable[[], Outcome]]] = [
    (1, "Bredon homology of S^rho8", check_rho8_homology),
    (2, "Bredon (co)homology of S^2rho8", check_two_rho8),
    (3, "gap vanishing for C2, C4, C8", check_gap),
    (4, "geometric fixed points of HZ", check_phi_hz),
    (5, "orbit refinement for C8", check_refinement),
    (6, "a-inverted slice spectral sequence", check_inverted_ss),
    (7, "unoriented cobordism generators", check_mo_generators),
    (8, "specific generators rbar_k", check_rbar),
    (9, "Hazewinkel images", check_hazewinkel),
    (10, "t-functions and zeta-series", check_t_functions),
    (11, "cohomology of C8 with coefficients in R", check_group_cohomology),
    (12, "Bockstein images", check_bockstein),
    (13, "beta and alpha valuation bounds", check_valuation_bounds),
    (14, "s-solver values", check_s_values),
    (15, "property suites", check_property_suites),
]


def run_criterion(criterion_id: int) -> Dict[str, object]:
    """Run one criterion; failures and exceptions both come back as passed=False."""
    _, name, check = next(c for c in CRITERIA if c[0] == criterion_id)
    try:
        passed, detail = check()
    except Exception as e:
        logger.error("criterion %d (%s) raised %s", criterion_id, name, e)
        passed, detail = False, f"{type(e).__name__}: {e}"
    return {"id": criterion_id, "name": name, "passed": bool(passed), "detail": detail}
