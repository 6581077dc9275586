"""
Slice Workbench - Slice Cell Tests
Cell dimensions, vanishing ranges and the C8 orbit refinements
"""

import os
import sys

import pytest

# Add src directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from slice_cells import SliceCell, act_on_monomial, cell_dim, rank_pi_u, refine_orbits, vanishing_range


def test_cell_dimensions():
    assert cell_dim(SliceCell(8, 4, 2)) == 8
    assert cell_dim(SliceCell(8, 8, 1, desuspended=True)) == 7
    assert SliceCell(8, 2, 1).index == 4
    assert not SliceCell(8, 8, 1, desuspended=True).is_regular


def test_restriction_and_induction():
    assert SliceCell(8, 8, 1).restrict(4) == [(SliceCell(4, 4, 2), 1)]
    assert SliceCell(8, 2, 1).restrict(4) == [(SliceCell(4, 2, 1), 2)]
    assert SliceCell(4, 2, 3).induce(8) == SliceCell(8, 2, 3)


@pytest.mark.parametrize("g,h", [(8, 3), (4, 8), (6, 2)])
def test_invalid_subgroups(g, h):
    with pytest.raises(ValueError):
        SliceCell(g, h, 1)


VANISHING_SCENARIOS = [
    {"id": "VR-01", "n": 4, "g": 8, "expected": (0, 4)},
    {"id": "VR-02", "n": -3, "g": 8, "expected": (-3, -2)},
    {"id": "VR-03", "n": 0, "g": 4, "expected": (0, 0)},
    {"id": "VR-04", "n": 17, "g": 8, "expected": (2, 17)},
    {"id": "VR-05", "n": -1, "g": 2, "expected": (-1, -1)},
]


@pytest.mark.parametrize("scenario", VANISHING_SCENARIOS, ids=[s["id"] for s in VANISHING_SCENARIOS])
def test_vanishing_range(scenario):
    assert vanishing_range(scenario["n"], scenario["g"]) == scenario["expected"]


def test_vanishing_range_contains_n_and_floor():
    for g in (2, 4, 8):
        for n in range(0, 40):
            lo, hi = vanishing_range(n, g)
            assert lo <= n // g <= n <= hi


def test_refinement_degree_two():
    refinement = refine_orbits(8, 1)
    assert len(refinement.orbits) == 1
    orbit = refinement.orbits[0]
    assert orbit.size == 4
    assert orbit.cell == SliceCell(8, 2, 1)


def test_refinement_degree_four_has_rank_14():
    refinement = refine_orbits(8, 2)
    assert refinement.rank == 14
    assert dict(refinement.cell_multiplicities()) == {SliceCell(8, 2, 2): 3, SliceCell(8, 4, 1): 1}
    assert sorted(o.size for o in refinement.orbits) == [2, 4, 4, 4]


def test_refinement_degree_eight_has_the_regular_cell():
    refinement = refine_orbits(8, 4)
    singletons = [o for o in refinement.orbits if o.size == 1]
    assert [o.cell for o in singletons] == [SliceCell(8, 8, 1)]
    assert singletons[0].label() == "r1·γr1·γ^2r1·γ^3r1"
    assert singletons[0].sign_twisted


@pytest.mark.parametrize("g,d_max", [(2, 12), (4, 10), (8, 7)])
def test_refinement_rank_matches_monomial_count(g, d_max):
    for d in range(d_max + 1):
        refinement = refine_orbits(g, d)
        assert refinement.rank == rank_pi_u(g, d)
        assert all(o.cell.is_regular and o.cell.is_isotropic for o in refinement.orbits)
        assert all(o.cell.dim == 2 * d for o in refinement.orbits)


def test_rank_pi_u_values():
    assert rank_pi_u(8, 2) == 14
    assert rank_pi_u(2, 1) == 1
    assert rank_pi_u(4, 3) == 10


def test_action_wraps_with_sign():
    assert act_on_monomial(((1, 3),), 8) == (((1, 0),), -1)
    assert act_on_monomial(((2, 3),), 8) == (((2, 0),), 1)
    assert act_on_monomial(((1, 0), (2, 1)), 8) == (((1, 1), (2, 2)), 1)
