"""
Slice Workbench - Slice Spectral Sequence Tests
E2 region bases and the a-inverted runner
"""

import os
import sys

import pytest

# Add src directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from errors import ConsistencyError
from slice_spectral_sequence import (BidegMono, e2_region_basis, e2_region_chart, inverted_ss_run,
                                     is_two_power_minus_one, mo_poincare, page_differential,
                                     page_homology)


def test_bidegrees():
    assert BidegMono.make(8, a=1).bidegree == (1, 0)
    assert BidegMono.make(8, u=1).bidegree == (0, 2)
    assert BidegMono.make(8, f={1: 1}).bidegree == (7, 1)
    product = BidegMono.make(2, a=2) * BidegMono.make(2, f={1: 1})
    assert product.bidegree == (3, 1)
    assert product.label() == "a^2·f1"
    assert BidegMono.make(2, u=3).sigma_weight == 6


REGION_SCENARIOS = [
    {"id": "E2-01", "g": 8, "k": 0, "s": 7, "d": 1, "expected": ["f1"]},
    {"id": "E2-02", "g": 2, "k": 0, "s": 1, "d": 0, "expected": ["a"]},
    {"id": "E2-03", "g": 8, "k": 2, "s": 0, "d": 2, "expected": ["u"]},
]


@pytest.mark.parametrize("scenario", REGION_SCENARIOS, ids=[s["id"] for s in REGION_SCENARIOS])
def test_region_basis_values(scenario):
    cell = e2_region_basis(scenario["g"], scenario["k"], scenario["s"], scenario["d"])
    assert cell.inside
    assert cell.labels() == scenario["expected"]


def test_region_basis_for_c2_mixes_u_and_f():
    cell = e2_region_basis(2, 0, 2, 2)
    assert cell.inside
    assert sorted(cell.labels()) == sorted(["f1^2", "f2", "a^2·u"])
    assert all(m.bidegree == (2, 2) for m in cell.basis)


def test_outside_region_is_marked():
    cell = e2_region_basis(8, 0, 0, 1)
    assert not cell.inside
    assert cell.basis == ()


def test_region_chart_cells_are_inside():
    chart = e2_region_chart(4, 1, 8, 4)
    assert chart
    assert all(c.s >= 3 * (c.stem - 1) for c in chart)
    assert [(c.stem, c.s) for c in chart] == sorted((c.stem, c.s) for c in chart)


def test_two_power_minus_one():
    assert [i for i in range(1, 20) if is_two_power_minus_one(i)] == [1, 3, 7, 15]
    assert not is_two_power_minus_one(0)


def test_mo_poincare_series():
    assert mo_poincare(6) == [1, 0, 1, 0, 2, 1, 3]


@pytest.mark.parametrize("g", [2, 4, 8])
def test_inverted_run_reaches_mo(g):
    run = inverted_ss_run(g, 12)
    assert run.ranks() == mo_poincare(12)
    assert run.pages[0].r == 1 + g
    assert run.e_infinity[2][0].label() == "f2"


def test_first_differential_for_c2():
    run = inverted_ss_run(2, 6)
    first = run.pages[0]
    assert (first.k, first.r) == (1, 3)
    assert [p.r for p in run.pages] == [3, 7]
    assert run.e_infinity[1] == []


def first_page_for_c2():
    return page_differential(2, 1, 7, list(range(1, 8)))


def test_predicted_classes_span_the_page_homology():
    page = first_page_for_c2()
    for t in range(7):
        assert page_homology(page, t, page.predicted_classes(t)) == len(page.predicted_classes(t))
    assert page.predicted_classes(2) == [(0, ((2, 1),))]


def test_dropped_differential_leaves_extra_cycles():
    page = first_page_for_c2()
    source = page.bases[2].index((1, ()))
    assert page.images[2][source] == page.bases[1].index((0, ((1, 1),)))
    del page.images[2][source]
    with pytest.raises(ConsistencyError):
        page_homology(page, 2, page.predicted_classes(2))
    with pytest.raises(ConsistencyError):
        page_homology(page, 1, page.predicted_classes(1))


def test_surviving_class_must_be_a_cycle():
    page = first_page_for_c2()
    page.images[2][page.bases[2].index((0, ((2, 1),)))] = 0
    with pytest.raises(ConsistencyError, match="not a d_3-cycle"):
        page_homology(page, 2, page.predicted_classes(2))


def test_wrong_classes_are_rejected():
    page = first_page_for_c2()
    # f1 is hit by d_3(U_1), so it cannot stand for a class
    with pytest.raises(ConsistencyError):
        page_homology(page, 1, [(0, ((1, 1),))])
    with pytest.raises(ValueError):
        page_homology(page, 7, [])


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        inverted_ss_run(6, 4)
    with pytest.raises(ValueError):
        e2_region_basis(8, -1, 0, 0)
