"""
Slice Workbench - Cyclotomic Arithmetic Tests
Z[zeta_8] ring laws, the pi-adic valuation and graded values
"""

import math
import os
import random
import sys

import pytest

# Add src directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from cyclotomic import ONE, PI, ZETA, CyclotomicFrac, CyclotomicInt, GradedElem
from errors import NonIntegralError


VALUATION_SCENARIOS = [
    {"id": "VAL-01", "name": "unit", "value": ONE, "expected": 0},
    {"id": "VAL-02", "name": "uniformizer", "value": PI, "expected": 1},
    {"id": "VAL-03", "name": "two is pi^4 up to a unit", "value": CyclotomicInt.from_int(2), "expected": 4},
    {"id": "VAL-04", "name": "1 + zeta", "value": ONE + ZETA, "expected": 1},
    {"id": "VAL-05", "name": "1 - zeta^2", "value": ONE - ZETA ** 2, "expected": 2},
    {"id": "VAL-06", "name": "eight", "value": CyclotomicInt.from_int(8), "expected": 12},
    {"id": "VAL-07", "name": "pi cubed", "value": PI ** 3, "expected": 3},
    {"id": "VAL-08", "name": "zeta is a unit", "value": ZETA, "expected": 0},
]


@pytest.mark.parametrize("scenario", VALUATION_SCENARIOS, ids=[s["id"] for s in VALUATION_SCENARIOS])
def test_pi_valuation(scenario):
    assert scenario["value"].pi_valuation() == scenario["expected"], scenario["name"]


def test_zero_has_infinite_valuation():
    assert CyclotomicInt().pi_valuation() == math.inf


def test_zeta_has_order_eight():
    assert ZETA ** 4 == -1
    assert ZETA ** 8 == 1
    assert CyclotomicInt.zeta(-1) == ZETA ** 7


def test_pi_coordinates_round_trip_on_reference_values():
    for coords in [(-4, -6, -4, -1), (-6, 6, 11, 4), (100, 237, 166, 40)]:
        assert CyclotomicInt.from_pi_coords(coords).to_pi_coords() == coords


def test_norm_is_multiplicative():
    rng = random.Random(7)
    for _ in range(50):
        x = CyclotomicInt([rng.randint(-6, 6) for _ in range(4)])
        y = CyclotomicInt([rng.randint(-6, 6) for _ in range(4)])
        assert (x * y).norm() == x.norm() * y.norm()


def test_valuation_is_ultrametric():
    rng = random.Random(13)
    for _ in range(100):
        x = CyclotomicInt([rng.randint(-20, 20) for _ in range(4)])
        y = CyclotomicInt([rng.randint(-20, 20) for _ in range(4)])
        assert (x + y).pi_valuation() >= min(x.pi_valuation(), y.pi_valuation())
    # equality can fail only when the valuations agree
    assert (PI + PI ** 2).pi_valuation() == 1
    assert (ONE + ONE).pi_valuation() == 4


def test_galois_rejects_even_exponent():
    with pytest.raises(ValueError):
        ZETA.galois(2)


def test_galois_fixes_integers_and_moves_zeta():
    assert CyclotomicInt.from_int(5).galois(3) == 5
    assert ZETA.galois(3) == ZETA ** 3


def test_fraction_inverse_of_pi():
    inverse = CyclotomicFrac.pi_power(-1)
    assert inverse * PI == 1
    assert inverse.pi_valuation() == -1
    assert CyclotomicFrac.pi_power(-3).pi_valuation() == -3


def test_fraction_to_int_rejects_denominators():
    assert CyclotomicFrac(PI * 2, 2).to_int() == PI
    with pytest.raises(NonIntegralError):
        CyclotomicFrac(1, 2).to_int()


def test_fraction_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        CyclotomicFrac(1) / CyclotomicFrac(0)


def test_graded_element_rendering():
    elem = GradedElem(ZETA ** 3, 1)
    assert elem.to_json() == {"pi_poly": [1, 3, 3, 1], "w_exp": 1}
    assert elem.pretty() == "(π^3 + 3π^2 + 3π + 1)w"
    assert GradedElem(PI, 3).pretty() == "πw^3"
    assert GradedElem(-ONE, 0).pretty() == "-1"
    assert GradedElem(PI, 3).pi_valuation() == 1
