#!/usr/bin/env python
# encoding: utf-8

# The MIT License (MIT)

# Copyright (c) 2026- evtest contributors

# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:

# The above copyright notice and this permission notice shall be included in
# all copies or substantial portions of the Software.

# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.


import numpy as np
import pytest

from evtest.copula import EmpiricalCopula, MultiplierConfig, multiplier_replicates, multipliers
from evtest.errors import DataError
from evtest.ranks import pseudo_observations


def test_evaluate(three_points):
    C = EmpiricalCopula(three_points)
    assert C([0.5, 0.5]) == pytest.approx(2 / 3)
    assert C([1.0, 1.0]) == 1.0
    assert C([0.0, 0.8]) == 0.0


def test_evaluate_matches_double_loop():
    rng = np.random.default_rng(12)
    for _ in range(100):
        n, d = rng.integers(2, 30), rng.integers(2, 4)
        pobs = pseudo_observations(rng.uniform(size=(n, d)))
        u = rng.uniform(size=d)
        count = 0
        for i in range(n):
            if all(pobs.values[i, j] <= u[j] for j in range(d)):
                count += 1
        assert EmpiricalCopula(pobs)(u) == count / n


def test_evaluate_is_monotone(gumbel_sample):
    C = EmpiricalCopula(pseudo_observations(gumbel_sample))
    rng = np.random.default_rng(7)
    u = rng.uniform(size=(500, 2))
    v = u + (1.0 - u) * rng.uniform(size=(500, 2))
    assert np.all(C.evaluate(u) <= C.evaluate(v))


def test_dimension_mismatch(three_points):
    C = EmpiricalCopula(three_points)
    with pytest.raises(DataError):
        C([0.5, 0.5, 0.5])
    with pytest.raises(DataError):
        C([0.5, 1.5])


def test_partial_derivative_vanishes_where_copula_vanishes(three_points):
    C = EmpiricalCopula(three_points)
    assert C.partial_derivative(0, [0.1, 0.1], h=0.05) == 0.0


def test_partial_derivative_at_upper_corner(gumbel_sample):
    C = EmpiricalCopula(pseudo_observations(gumbel_sample))
    assert 0.0 <= C.partial_derivative(1, [1.0, 1.0]) <= 1.0
    with pytest.raises(DataError):
        C.partial_derivative(2, [0.5, 0.5])


def test_partial_derivative_independence():
    U = np.random.default_rng(3).uniform(size=(10000, 2))
    C = EmpiricalCopula(pseudo_observations(U))
    assert C.partial_derivative(0, [0.4, 0.6], h=0.1) == pytest.approx(0.6, abs=0.05)
    assert C.partial_derivative(1, [0.4, 0.6], h=0.1) == pytest.approx(0.4, abs=0.05)


def test_multiplier_config():
    with pytest.raises(ValueError):
        MultiplierConfig(replicates=0)
    with pytest.raises(ValueError):
        MultiplierConfig(law="uniform")
    with pytest.raises(ValueError):
        MultiplierConfig(bandwidth=0.7)


def test_multipliers():
    Z = multipliers(MultiplierConfig(replicates=5, law="rademacher", seed=3), 40)
    assert Z.shape == (5, 40)
    assert set(np.unique(Z)) <= {-1.0, 1.0}

    # replicate b does not depend on the number of replicates
    more = multipliers(MultiplierConfig(replicates=8, law="rademacher", seed=3), 40)
    np.testing.assert_array_equal(Z, more[:5])


def test_zero_multipliers(gumbel_sample):
    C = EmpiricalCopula(pseudo_observations(gumbel_sample))
    replicates = multiplier_replicates(C, C.pobs.values, Z=np.zeros((4, C.n)))
    assert replicates.shape == (4, C.n)
    assert np.all(replicates == 0.0)


def test_replicates_are_reproducible(gumbel_sample):
    C = EmpiricalCopula(pseudo_observations(gumbel_sample))
    points = np.array([[0.3, 0.3], [0.5, 0.8], [1.0, 0.5]])
    cfg = MultiplierConfig(replicates=20, seed=42)
    first = multiplier_replicates(C, points, cfg)
    second = multiplier_replicates(C, points, cfg)
    assert first.shape == (20, 3)
    np.testing.assert_array_equal(first, second)

    other = multiplier_replicates(C, points, MultiplierConfig(replicates=20, seed=43))
    assert not np.array_equal(first, other)


def test_replicates_vanish_on_the_boundary(gumbel_sample):
    C = EmpiricalCopula(pseudo_observations(gumbel_sample))
    replicates = multiplier_replicates(C, [[1.0, 1.0]], MultiplierConfig(replicates=10))
    np.testing.assert_allclose(replicates, 0.0, atol=1e-12)


def test_multipliers_size_mismatch(gumbel_sample):
    C = EmpiricalCopula(pseudo_observations(gumbel_sample))
    with pytest.raises(DataError):
        multiplier_replicates(C, [[0.5, 0.5]], Z=np.ones((3, C.n + 1)))


@pytest.mark.slow
def test_replicates_mimic_the_copula_process():
    n, u = 200, np.array([[0.5, 0.5]])
    rng = np.random.default_rng(0)

    process = []
    for _ in range(1000):
        C = EmpiricalCopula(pseudo_observations(rng.uniform(size=(n, 2))))
        process.append(np.sqrt(n) * (C.evaluate(u)[0] - 0.25))

    C = EmpiricalCopula(pseudo_observations(rng.uniform(size=(n, 2))))
    replicates = multiplier_replicates(C, u, MultiplierConfig(replicates=1000, seed=1))[:, 0]

    ratio = np.var(replicates) / np.var(process)
    assert 0.5 <= ratio <= 2.0
