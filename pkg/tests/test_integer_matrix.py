"""
Slice Workbench - Integer Matrix Tests
Smith normal form against determinantal divisors, F2 rank and the
group-ring unit test
"""

import math
import os
import random
import sys
from functools import reduce
from itertools import combinations

import numpy as np
import pytest
import sympy

# Add src directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from integer_matrix import (IntMatrix, f2_kernel, f2_rank, group_ring_matrix, order_modulo_image,
                            snf, subquotient, unit_test_group_ring)


def determinantal_divisors(rows):
    """gcd of all k x k minors for k = 1 .. min(shape), computed with sympy."""
    m = sympy.Matrix(rows)
    out = []
    for k in range(1, min(m.shape) + 1):
        minors = [m.extract(list(r), list(c)).det()
                  for r in combinations(range(m.rows), k) for c in combinations(range(m.cols), k)]
        out.append(int(reduce(math.gcd, (int(x) for x in minors), 0)))
    return out


SNF_SCENARIOS = [
    {"id": "SNF-01", "rows": [[2, 4, 4], [-6, 6, 12], [10, -4, -16]], "expected": (2, 6, 12)},
    {"id": "SNF-02", "rows": [[2, 0], [0, 3]], "expected": (1, 6)},
    {"id": "SNF-03", "rows": [[0, 0], [0, 0]], "expected": ()},
    {"id": "SNF-04", "rows": [[4, 6, 8]], "expected": (2,)},
    {"id": "SNF-05", "rows": [[1, -1], [1, 1]], "expected": (1, 2)},
]


@pytest.mark.parametrize("scenario", SNF_SCENARIOS, ids=[s["id"] for s in SNF_SCENARIOS])
def test_snf_known_matrices(scenario):
    A = IntMatrix.from_rows(scenario["rows"])
    result = snf(A)
    assert result.invariant_factors == scenario["expected"]
    assert result.U @ A @ result.V == result.D


def test_snf_matches_determinantal_divisors():
    rng = random.Random(1234)
    for _ in range(40):
        rows = [[rng.randint(-6, 6) for _ in range(rng.randint(1, 4))]]
        cols = len(rows[0])
        rows += [[rng.randint(-6, 6) for _ in range(cols)] for _ in range(rng.randint(0, 3))]
        result = snf(IntMatrix.from_rows(rows))
        divisors = determinantal_divisors(rows)
        products = [math.prod(result.invariant_factors[:k]) if k <= result.rank else 0
                    for k in range(1, len(divisors) + 1)]
        assert products == divisors
        assert abs(result.U.determinant()) == 1
        assert abs(result.V.determinant()) == 1


def test_snf_empty_shapes():
    assert snf(IntMatrix(0, 3)).rank == 0
    assert snf(IntMatrix(2, 0)).cokernel_free_rank == 2


def test_subquotient_of_multiplication_by_two():
    two = IntMatrix.from_rows([[2]])
    assert subquotient(1, None, two) == (0, (2,))
    assert subquotient(1, two, None) == (0, ())
    assert subquotient(2, None, None) == (2, ())


def test_order_modulo_image():
    image = IntMatrix.from_rows([[4], [0]])
    assert order_modulo_image([2, 0], image) == 2
    assert order_modulo_image([1, 0], image) == 4
    assert order_modulo_image([0, 0], image) == 1
    assert order_modulo_image([0, 1], image) == math.inf


def test_f2_rank():
    assert f2_rank(np.array([[1, 1], [1, 1]])) == 1
    assert f2_rank(np.array([[1, 0], [0, 1]])) == 2
    assert f2_rank(IntMatrix.from_rows([[2, 4], [6, 8]]).to_f2()) == 0
    assert f2_rank(np.zeros((0, 3))) == 0


GROUP_RING_SCENARIOS = [
    {"id": "GR-01", "a": [1], "k": 0, "g": 8, "unit": True},
    {"id": "GR-02", "a": [1, 1], "k": 0, "g": 4, "unit": False},
    {"id": "GR-03", "a": [1, 1], "k": 1, "g": 4, "unit": False},
    {"id": "GR-04", "a": [1, 2], "k": 1, "g": 4, "unit": True},
    {"id": "GR-05", "a": [1, 0, 0, 2], "k": 1, "g": 8, "unit": True},
    {"id": "GR-06", "a": [1, 1, 1], "k": 0, "g": 8, "unit": True},
]


@pytest.mark.parametrize("scenario", GROUP_RING_SCENARIOS, ids=[s["id"] for s in GROUP_RING_SCENARIOS])
def test_group_ring_unit(scenario):
    assert unit_test_group_ring(scenario["a"], scenario["k"], scenario["g"]) is scenario["unit"]


def test_group_ring_unit_iff_coefficient_sum_is_odd():
    rng = random.Random(11)
    for _ in range(50):
        g = rng.choice([2, 4, 8, 16])
        a = [rng.randint(-3, 3) for _ in range(g // 2)]
        k = rng.randint(0, 1)
        assert unit_test_group_ring(a, k, g) is (sum(a) % 2 == 1)


def test_group_ring_rejects_long_vectors():
    with pytest.raises(ValueError):
        unit_test_group_ring([1, 1], 0, 2)


def test_group_ring_matrix_wraps_with_sign():
    assert group_ring_matrix([0, 1], 1, 4).to_rows() == [[0, -1], [1, 0]]
    assert group_ring_matrix([0, 1], 0, 4).to_rows() == [[0, 1], [1, 0]]


def test_group_ring_rejects_bad_order():
    with pytest.raises(ValueError):
        group_ring_matrix([1], 0, 6)


def test_cokernel_order_is_absolute_determinant():
    rng = random.Random(7)
    checked = 0
    while checked < 60:
        n = rng.randint(1, 5)
        A = IntMatrix(n, n, tuple(rng.randint(-9, 9) for _ in range(n * n)))
        det = A.determinant()
        if not det:
            continue
        factors = snf(A).invariant_factors
        assert len(factors) == n
        assert abs(math.prod(factors)) == abs(det)
        checked += 1


def test_f2_kernel_is_the_null_space():
    rng = np.random.default_rng(3)
    for _ in range(30):
        A = rng.integers(0, 2, size=(rng.integers(1, 7), rng.integers(1, 7))).astype(np.uint8)
        K = f2_kernel(A)
        assert K.shape == (A.shape[1], A.shape[1] - f2_rank(A))
        assert not ((A.astype(np.int64) @ K.astype(np.int64)) % 2).any()
        assert f2_rank(K) == K.shape[1]
    assert f2_kernel(np.zeros((0, 3), dtype=np.uint8)).shape == (3, 3)
