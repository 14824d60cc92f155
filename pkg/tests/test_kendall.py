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


from itertools import permutations

import numpy as np
import pytest

from evtest import kendall
from evtest.errors import DataError, NumericError
from evtest.ranks import TiesPolicy


def brute_force_counts(data):
    return np.array([np.sum(np.all(data <= row, axis=1)) for row in data])


def brute_force_s2n(data):
    n = len(data)
    below = np.array([[np.all(data[i] <= data[j]) for j in range(n)] for i in range(n)])
    pairs = sum(below[i, j] for i, j in permutations(range(n), 2))
    triples = sum(below[i, j] and below[k, j] for i, j, k in permutations(range(n), 3))
    return -1.0 + 8.0 * pairs / (n * (n - 1)) - 9.0 * triples / (n * (n - 1) * (n - 2))


def plugin_s3n(data):
    w = brute_force_counts(data) / len(data)
    return -1.0 + 4.0 * np.mean(w) + 9.0 * np.mean(w ** 2) - 16.0 * np.mean(w ** 3)


def jackknife_variance(statistic, data):
    n = len(data)
    values = np.array([statistic(np.delete(data, i, axis=0)) for i in range(n)])
    return (n - 1) / n * np.sum((values - values.mean()) ** 2)


def test_kendall_sample():
    comonotone = np.array([[1.0, 1.0], [2.0, 2.0], [3.0, 3.0]])
    np.testing.assert_allclose(kendall.kendall_sample(comonotone).w, [1 / 3, 2 / 3, 1])

    countermonotone = np.array([[1.0, 3.0], [2.0, 2.0], [3.0, 1.0]])
    np.testing.assert_allclose(kendall.kendall_sample(countermonotone).w, [1 / 3] * 3)

    with pytest.raises(DataError):
        kendall.kendall_sample(np.ones((4, 3)))


def test_kendall_counts_with_ties():
    data = np.random.default_rng(5).integers(0, 4, size=(40, 2)).astype(float)
    np.testing.assert_array_equal(kendall.kendall_counts(data), brute_force_counts(data))


def test_null_kendall_cdf():
    assert kendall.null_kendall_cdf(1.0, 0.3) == 1.0
    assert kendall.null_kendall_cdf(0.5, 0.5) == pytest.approx(0.5 + 0.25 * np.log(2.0))
    assert kendall.null_kendall_cdf(0.5, 0.5) == pytest.approx(0.67329, abs=1e-5)
    np.testing.assert_allclose(kendall.null_kendall_cdf([0.1, 0.7], 1.0), [0.1, 0.7])
    with pytest.raises(ValueError):
        kendall.null_kendall_cdf(0.0, 0.5)


def test_null_moment():
    assert kendall.null_moment(1, 0.0) == 0.25
    assert kendall.null_moment(2, 0.0) == pytest.approx(1 / 9)
    # tau = 4 E(W) - 1
    assert 4.0 * kendall.null_moment(1, 0.6) - 1.0 == pytest.approx(0.6)
    with pytest.raises(ValueError):
        kendall.null_moment(0, 0.5)


def test_s2n_statistic_comonotone():
    assert kendall.s2n_statistic(np.array([[1.0, 1.0], [2.0, 2.0], [3.0, 3.0]])) == 0.0


def test_s2n_matches_triple_loop():
    rng = np.random.default_rng(0)
    for _ in range(100):
        n = int(rng.integers(3, 16))
        data = rng.uniform(size=(n, 2))
        assert kendall.s2n_statistic(data) == pytest.approx(brute_force_s2n(data), abs=1e-12)


def test_s2n_jackknife(gumbel_sample):
    data = gumbel_sample[:25]
    report = kendall.test_s2n(data)
    assert report.method == "s2n"
    assert report.replicates == 0
    assert report.statistic == pytest.approx(brute_force_s2n(data), abs=1e-12)
    expected = jackknife_variance(brute_force_s2n, data)
    assert report.extras["jackknife_variance"] == pytest.approx(expected, rel=1e-9)
    assert 0.0 <= report.p_value <= 1.0


def test_s3n_jackknife(gumbel_sample):
    data = gumbel_sample[:25]
    report = kendall.test_s3n(data)
    assert report.method == "s3n"
    assert report.extras["estimator"] == "plugin"
    assert report.statistic == pytest.approx(plugin_s3n(data), abs=1e-12)
    expected = jackknife_variance(plugin_s3n, data)
    assert report.extras["jackknife_variance"] == pytest.approx(expected, rel=1e-9)


def test_s3n_ustat(gumbel_sample):
    report = kendall.test_s3n(gumbel_sample, estimator="ustat")
    assert report.extras["estimator"] == "ustat"
    with pytest.raises(ValueError):
        kendall.test_s3n(gumbel_sample, estimator="median")


def test_p_value_is_two_sided(gumbel_sample):
    report = kendall.test_s2n(gumbel_sample)
    z = report.statistic / np.sqrt(report.extras["jackknife_variance"])
    assert report.extras["z"] == pytest.approx(z)
    flipped = kendall.test_s2n(gumbel_sample[:, ::-1])
    assert flipped.p_value == pytest.approx(report.p_value)


def test_degenerate_jackknife(comonotone):
    with pytest.raises(NumericError, match=r"s2n statistic is -?0\.0+ but its jackknife variance is zero"):
        kendall.test_s2n(comonotone)


def test_preconditions():
    with pytest.raises(DataError):
        kendall.test_s2n(np.array([[1.0, 2.0], [2.0, 1.0]]))
    with pytest.raises(DataError):
        kendall.test_s2n(np.random.default_rng(0).uniform(size=(10, 3)))


def test_ties_need_a_policy(gumbel_sample):
    data = np.round(gumbel_sample, 1)
    with pytest.raises(DataError, match="ties policy"):
        kendall.test_s2n(data)
    report = kendall.test_s2n(data, ties=TiesPolicy("average"))
    assert 0.0 <= report.p_value <= 1.0


def test_cvm_kendall_distance(comonotone, gumbel_sample):
    assert kendall.cvm_kendall_distance(comonotone) == pytest.approx(0.0, abs=1e-12)
    assert kendall.cvm_kendall_distance(gumbel_sample) >= 0.0


@pytest.mark.slow
def test_kendall_distribution_closed_form():
    from scipy.stats import kstest

    from evtest.simulation import CopulaFamily, sample

    U = sample(CopulaFamily("gumbel", 2.0), 100000, seed=11)
    w = kendall.kendall_sample(U).w
    assert kstest(w, lambda x: kendall.null_kendall_cdf(x, 0.5)).statistic < 0.01


def test_statistics_are_rank_invariant(gumbel_sample):
    s2n = kendall.test_s2n(gumbel_sample)
    s3n = kendall.test_s3n(gumbel_sample)
    transformed = np.column_stack([np.exp(gumbel_sample[:, 0]), gumbel_sample[:, 1] ** 3])
    assert kendall.test_s2n(transformed).statistic == pytest.approx(s2n.statistic, abs=1e-12)
    assert kendall.test_s3n(transformed).statistic == pytest.approx(s3n.statistic, abs=1e-12)

    shuffled = gumbel_sample[np.random.default_rng(3).permutation(len(gumbel_sample))]
    assert kendall.test_s2n(shuffled).statistic == pytest.approx(s2n.statistic, abs=1e-12)
    assert kendall.test_s3n(shuffled).statistic == pytest.approx(s3n.statistic, abs=1e-12)
    assert kendall.test_s2n(shuffled).p_value == pytest.approx(s2n.p_value, abs=1e-10)
