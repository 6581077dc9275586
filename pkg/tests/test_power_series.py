"""
Slice Workbench - Truncated Power Series Tests
Composition, reversion and several-variable substitution
"""

import os
import random
import sys
from fractions import Fraction
from math import factorial

import pytest

# Add src directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from errors import NotInvertibleError
from power_series import INTEGERS, RATIONALS, MultiSeries, TruncSeries


def exp_minus_one(n):
    return TruncSeries(RATIONALS, [Fraction(0)] + [Fraction(1, factorial(k)) for k in range(1, n + 1)], n)


def log_one_plus(n):
    return TruncSeries(RATIONALS, [Fraction(0)] + [Fraction((-1) ** (k + 1), k) for k in range(1, n + 1)], n)


def test_exp_and_log_are_inverse():
    n = 10
    assert exp_minus_one(n).revert() == log_one_plus(n)
    assert log_one_plus(n).compose(exp_minus_one(n)) == TruncSeries.identity(RATIONALS, n)


def test_revert_round_trip_random():
    rng = random.Random(42)
    for _ in range(20):
        coeffs = [Fraction(0), Fraction(rng.choice([-2, -1, 1, 3]))]
        coeffs += [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(7)]
        f = TruncSeries(RATIONALS, coeffs, 8)
        g = f.revert()
        identity = TruncSeries.identity(RATIONALS, 8)
        assert f.compose(g) == identity
        assert g.compose(f) == identity


def test_revert_over_integers_needs_unit_linear_term():
    f = TruncSeries(INTEGERS, [0, 1, 1], 4)
    assert f.revert().coeffs == (0, 1, -1, 2, -5)
    with pytest.raises(NotInvertibleError):
        TruncSeries(INTEGERS, [0, 2, 1], 4).revert()
    with pytest.raises(ValueError):
        TruncSeries(INTEGERS, [1, 1], 4).revert()


def test_compose_requires_zero_constant_term():
    f = TruncSeries(INTEGERS, [0, 1, 1], 4)
    with pytest.raises(ValueError):
        f.compose(TruncSeries(INTEGERS, [1, 1], 4))


def test_truncation_follows_the_smaller_precision():
    a = TruncSeries(INTEGERS, [0, 1, 1], 6)
    b = TruncSeries(INTEGERS, [0, 1], 3)
    assert (a * b).precision == 3
    assert (a * a).coeffs == (0, 0, 1, 2, 1, 0, 0)


def test_multiseries_additive_law():
    n = 6
    x = MultiSeries.variable(RATIONALS, 2, 0, n)
    y = MultiSeries.variable(RATIONALS, 2, 1, n)
    law = exp_minus_one(n)
    logged = MultiSeries.from_univariate(log_one_plus(n), 2, 0) + MultiSeries.from_univariate(log_one_plus(n), 2, 1)
    multiplicative = logged.apply_univariate(law)
    assert multiplicative == x + y + x * y
    assert multiplicative.permute([1, 0]) == multiplicative


def test_multiseries_evaluate_and_substitute():
    n = 5
    x = MultiSeries.variable(INTEGERS, 2, 0, n)
    y = MultiSeries.variable(INTEGERS, 2, 1, n)
    f = x + y + x * y
    t = TruncSeries.identity(INTEGERS, n)
    assert f.evaluate([t, t]).coeffs == (0, 2, 1, 0, 0, 0)
    z = MultiSeries.variable(INTEGERS, 1, 0, n)
    assert f.substitute([z, z]) == z + z + z * z
    with pytest.raises(ValueError):
        f.evaluate([t])
