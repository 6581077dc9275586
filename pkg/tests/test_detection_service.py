"""
Slice Workbench - Detection Computation Tests
Cohomology of C8 with coefficients in R, Bockstein images, valuation
bounds and the s-solver values
"""

import math
import os
import sys
from fractions import Fraction

import pytest

# Add src directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from cyclotomic import CyclotomicInt
from detection_service import (REFERENCE_S_VALUES, UNIT_S_VALUES, RModule, ValuationTerm, a_module_label,
                               alpha_valuation, beta_valuation, bockstein_image, c_exponent,
                               check_periodicity, cohomology_R, detection_report,
                               h1_from_crossed_homomorphisms, multiplication_matrix, pi_exponent,
                               predicted_cohomology, s_solver, t1_power)
from rep_sphere import AbGroup


COHOMOLOGY_SCENARIOS = [
    {"id": "COH-00", "s": 0, "m": 0, "expected": AbGroup(4)},
    {"id": "COH-01", "s": 0, "m": 3, "expected": AbGroup()},
    {"id": "COH-02", "s": 1, "m": 1, "expected": AbGroup(0, (2,))},
    {"id": "COH-03", "s": 1, "m": 2, "expected": AbGroup(0, (2, 2))},
    {"id": "COH-04", "s": 1, "m": 4, "expected": AbGroup(0, (2, 2, 2, 2))},
    {"id": "COH-05", "s": 2, "m": 8, "expected": AbGroup(0, (8, 8, 8, 8))},
    {"id": "COH-06", "s": 2, "m": 4, "expected": AbGroup()},
    {"id": "COH-07", "s": 3, "m": 8, "expected": AbGroup()},
]


@pytest.mark.parametrize("scenario", COHOMOLOGY_SCENARIOS, ids=[s["id"] for s in COHOMOLOGY_SCENARIOS])
def test_cohomology_values(scenario):
    assert cohomology_R(scenario["s"], scenario["m"]).group == scenario["expected"]


def test_cohomology_matches_case_table():
    for m in range(16):
        assert check_periodicity(m)
        assert check_periodicity(m, mod2=True)
        for s in range(5):
            assert cohomology_R(s, m).group == predicted_cohomology(s, m), (s, m)


def test_mod_two_dimensions():
    for m in range(16):
        expected = 1 if m % 2 else (2 if m % 4 == 2 else 4)
        for s in (1, 2):
            assert cohomology_R(s, m, mod2=True).f2_dim == expected


def test_a_module_labels():
    assert cohomology_R(1, 1).a_label == "A/(π)"
    assert cohomology_R(1, 4).a_label == "A/(2)"
    assert cohomology_R(2, 8).a_label == "A/(8)"
    assert cohomology_R(0, 8).a_label == "A"
    assert a_module_label(3) == "A/(π^3)"
    assert cohomology_R(2, 8).generator == "w^8"


def test_pi_exponent():
    assert pi_exponent(1) == 1
    assert pi_exponent(2) == 2
    assert pi_exponent(4) == 4
    assert pi_exponent(8) == math.inf


def test_module_structure():
    assert multiplication_matrix(CyclotomicInt.zeta(1)).apply([0, 0, 0, 1]) == [-1, 0, 0, 0]
    module = RModule(8)
    assert module.trace.to_rows() == [[8 if i == j else 0 for j in range(4)] for i in range(4)]
    with pytest.raises(ValueError):
        cohomology_R(-1, 0)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 6, 8])
def test_crossed_homomorphisms_agree_with_periodic_complex(m):
    result = h1_from_crossed_homomorphisms(m)
    assert result["classes"] == 2 ** cohomology_R(1, m, mod2=True).f2_dim


def test_bockstein_orders():
    for j in range(3, 11):
        image = bockstein_image(j)
        assert image.order == 2
        assert not image.is_zero
    assert bockstein_image(2).is_zero


def test_bockstein_alternative_weight():
    assert bockstein_image(2, weight=2).is_zero
    for j in range(4, 8):
        assert not bockstein_image(j, weight=2 ** (j - 1)).is_zero


@pytest.mark.parametrize("j", [2, 3, 5])
def test_bockstein_lifts_the_class_of_its_weight(j):
    for weight in (2 ** j, 2 ** (j - 1)):
        image = bockstein_image(j, weight=weight)
        assert image.source == t1_power(weight)
        assert image.source.w_exp == image.representative.w_exp == weight
    assert bockstein_image(j).source.w_exp == 2 ** j


def test_t1_powers():
    assert t1_power(1).coeff == CyclotomicInt.zeta(3)
    assert t1_power(4).coeff == -1
    assert t1_power(8).coeff == 1


def test_bockstein_needs_j_at_least_two():
    with pytest.raises(ValueError):
        bockstein_image(1)


def test_valuation_terms():
    assert ValuationTerm.v(1).value == Fraction(3, 4)
    assert ValuationTerm.v(5).value == 0
    assert (ValuationTerm.pi() ** 4).value == ValuationTerm.two().value
    assert (ValuationTerm.v(1) / ValuationTerm.two()).provenance == "v1/(2)"


def test_beta_bounds():
    assert c_exponent(6, 1) == 24
    assert beta_valuation(6, 1) == 5
    for j in range(6, 21):
        for k in range(1, (j + 1) // 2):
            assert beta_valuation(j, k) >= 5
    with pytest.raises(ValueError):
        beta_valuation(4, 2)


def test_alpha_bounds():
    assert alpha_valuation(3) == Fraction(17, 4)
    assert all(alpha_valuation(j) > 4 for j in range(3, 21))


S_VALUATIONS = {(2, 1): 3, (2, 3): 2, (2, 7): 1, (4, 1): 1}


def test_s_solver_reproduces_reference_values():
    solutions = {h: s_solver(h, n) for h, n in ((2, 15), (4, 3), (8, 1))}
    for (h, i), coords in REFERENCE_S_VALUES.items():
        elem = solutions[h].values[i]
        assert elem.coeff.to_pi_coords() == coords, (h, i)
        expected = 0 if (h, i) in UNIT_S_VALUES else S_VALUATIONS[(h, i)]
        assert elem.pi_valuation() == expected, (h, i)


@pytest.mark.parametrize("h,N", [(3, 2), (2, 0)])
def test_s_solver_rejects_bad_input(h, N):
    with pytest.raises(ValueError):
        s_solver(h, N)


def test_detection_report_passes():
    report = detection_report(5)
    assert report["verdict"] == "pass"
    assert [b["j"] for b in report["bockstein"]] == [2, 3, 4, 5]
    assert report["bockstein"][0]["passed"] is None
    assert len(report["s_table"]) == 7
    with pytest.raises(ValueError):
        detection_report(2)
