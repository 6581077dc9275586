"""
Slice Workbench - Formal A-Module Tests
Group law over A[w], zeta-series, Hazewinkel images and t-functions
"""

import os
import sys

import pytest

# Add src directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

import formal_a_module
from cyclotomic import PI, CyclotomicFrac, CyclotomicInt
from errors import ConsistencyError
from formal_a_module import (FormalAModule, coefficient_elem, ell, hazewinkel_images, logarithm,
                             t1_closed_form, t_functions, verify_t_functions)
from power_series import TruncSeries


@pytest.fixture(scope="module")
def module():
    return FormalAModule(8)


def test_logarithm_coefficients():
    log = logarithm(8)
    assert log[1] == 1
    assert log[2] == CyclotomicFrac.pi_power(-1)
    assert log[3] == 0
    assert log[4] == CyclotomicFrac.pi_power(-2)
    assert log[8] == CyclotomicFrac.pi_power(-3)
    assert ell(2).pi_valuation() == -2


def test_exp_log_inverse(module):
    module.check_inverse_pair()


def test_group_law_is_integral_and_a_group(module):
    module.check_integrality(6)
    module.check_group_axioms(5)


def test_unit_endomorphism_is_identity(module):
    assert module.endomorphism(1) == TruncSeries.identity(module.ring, module.precision)
    assert module.zeta_series(8) == module.zeta_series(0)


def test_zeta_series_compose(module):
    assert module.verify_zeta_composition() == 64


def test_n_series_by_addition(module):
    assert module.verify_n_series(3, 6) == 3


def test_zeta_series_leading_coefficient(module):
    for k in range(8):
        assert coefficient_elem(module.zeta_series(k), 1).coeff == CyclotomicInt.zeta(k)


def test_rejects_small_precision():
    with pytest.raises(ValueError):
        FormalAModule(1)


REFERENCE_HAZEWINKEL = {
    1: (-4, -6, -4, -1),
    2: (-6, 6, 11, 4),
    3: (100, 237, 166, 40),
    4: (-9707, -63495, -56631, -15754),
}


def test_hazewinkel_images():
    images = hazewinkel_images(4)
    for n, coords in REFERENCE_HAZEWINKEL.items():
        assert images[n].coeff.to_pi_coords() == coords
        assert images[n].pi_valuation() == 4 - n
        assert images[n].w_exp == 2 ** n - 1


@pytest.mark.parametrize("N", [0, 5])
def test_hazewinkel_range(N):
    with pytest.raises(ValueError):
        hazewinkel_images(N)


def test_t_functions_at_zeta_and_one():
    table = t_functions(3)
    assert table[(1, 1)].coeff == CyclotomicInt.zeta(3)
    assert table[(1, 1)].w_exp == 1
    assert all(not table[(0, n)].coeff for n in range(1, 4))
    assert all(table[(k, 0)].coeff == 1 for k in range(8))


def test_t1_closed_form():
    table = t_functions(1)
    for k in range(8):
        assert t1_closed_form(k).to_int() == table[(k, 1)].coeff
    minus_one = t1_closed_form(4)
    assert minus_one == CyclotomicFrac(-2) / PI
    assert minus_one.pi_valuation() == 3


def test_t1_recursion_is_checked_against_closed_form(monkeypatch):
    monkeypatch.setattr(formal_a_module, "t1_closed_form", lambda k: CyclotomicFrac(0))
    with pytest.raises(ConsistencyError):
        t_functions(1)
    assert t_functions(0)[(3, 0)].coeff == 1


def test_t_functions_rebuild_zeta_series(module):
    assert verify_t_functions(module, t_functions(3), 8) == 8


def test_t_function_table_must_cover_precision(module):
    with pytest.raises(ValueError):
        verify_t_functions(module, t_functions(1), 8)
