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

from evtest import maxstab
from evtest.copula import EmpiricalCopula, MultiplierConfig
from evtest.errors import DataError, NumericError
from evtest.kendall import test_s2n as s2n
from evtest.ranks import pseudo_observations
from evtest.registry import TestSettings


def test_d_process(three_points):
    C = EmpiricalCopula(three_points)
    assert maxstab.d_process(C, 2.0, [0.5625, 0.5625]) == pytest.approx(np.sqrt(3) / 3)
    assert maxstab.d_process(C, 3.0, [1.0, 1.0]) == 0.0
    np.testing.assert_allclose(maxstab.d_process(C, 2.0, [[0.5625, 0.5625], [1.0, 1.0]]), [np.sqrt(3) / 3, 0.0])
    with pytest.raises(ValueError):
        maxstab.d_process(C, 1.0, [0.5, 0.5])


def test_config():
    with pytest.raises(ValueError):
        maxstab.MaxStabConfig(r_values=())
    with pytest.raises(ValueError):
        maxstab.MaxStabConfig(r_values=(0.5, 3.0))
    with pytest.raises(ValueError):
        maxstab.MaxStabConfig(tail_threshold=(0.5, 1.0))
    assert maxstab.MaxStabConfig(r_values=[2, 3]).r_values == (2.0, 3.0)


def test_statistic(three_points, gumbel_sample):
    cfg = maxstab.MaxStabConfig(r_values=(2.0,))
    C = EmpiricalCopula(three_points)
    D = maxstab.d_process(C, 2.0, three_points)
    assert maxstab.statistic_t(C, cfg) == pytest.approx(np.sum(D ** 2) / 3)

    C = EmpiricalCopula(pseudo_observations(gumbel_sample))
    assert maxstab.statistic_t(C) >= 0.0


def test_bootstrap_p_value():
    assert maxstab.bootstrap_p_value(1.0, np.array([0.0, 2.0, 3.0]), "toy") == 0.75
    assert maxstab.bootstrap_p_value(5.0, np.array([0.0, 2.0, 3.0]), "toy") == 0.25
    with pytest.raises(NumericError):
        maxstab.bootstrap_p_value(1.0, np.array([2.0, 2.0, 2.0]), "toy")
    with pytest.raises(NumericError):
        maxstab.bootstrap_p_value(1.0, np.array([np.nan, 2.0]), "toy")


def test_maxstab(gumbel_sample):
    cfg = maxstab.MaxStabConfig(multiplier=MultiplierConfig(replicates=50, seed=4))
    report = maxstab.test_maxstab(gumbel_sample, cfg)
    assert report.method == "maxstab"
    assert report.replicates == 50
    assert report.seed == 4
    assert not report.heuristic
    assert 1 / 51 <= report.p_value <= 1.0
    # p-values are multiples of 1 / (B + 1)
    assert report.p_value * 51 == pytest.approx(round(report.p_value * 51))

    again = maxstab.test_maxstab(gumbel_sample, cfg)
    assert again.to_dict() == report.to_dict()


def test_zero_multipliers_are_degenerate(gumbel_sample):
    with pytest.raises(NumericError):
        maxstab.test_maxstab(gumbel_sample, Z=np.zeros((10, len(gumbel_sample))))


def test_tail_restricted(gumbel_sample):
    cfg = maxstab.MaxStabConfig(multiplier=MultiplierConfig(replicates=30), tail_threshold=(0.5, 0.5))
    with pytest.warns(UserWarning, match="no asymptotic validation"):
        report = maxstab.test_maxstab(gumbel_sample, cfg)
    assert report.heuristic
    assert report.extras["points"] < len(gumbel_sample)

    cfg = maxstab.MaxStabConfig(tail_threshold=(0.999, 0.999))
    with pytest.warns(UserWarning):
        with pytest.raises(DataError):
            maxstab.test_maxstab(gumbel_sample, cfg)


def test_small_samples_warn():
    data = np.random.default_rng(0).uniform(size=(10, 2))
    with pytest.warns(UserWarning, match="recommended"):
        maxstab.test_maxstab(data, maxstab.MaxStabConfig(multiplier=MultiplierConfig(replicates=20)))


def test_blockmax_identity(gumbel_sample):
    report = maxstab.test_mda_blockmax(gumbel_sample, block_length=1, inner_test="s2n")
    direct = s2n(gumbel_sample)
    assert report.statistic == direct.statistic
    assert report.p_value == direct.p_value
    assert report.heuristic
    assert report.extras["blocks"] == len(gumbel_sample)
    assert report.extras["block_length"] == 1


def test_blockmax_groups(gumbel_sample):
    groups = [f"month-{i // 4}" for i in range(len(gumbel_sample))]
    settings = TestSettings(replicates=20, seed=1)
    report = maxstab.test_mda_blockmax(gumbel_sample, inner_test="maxstab", settings=settings, groups=groups)
    assert report.method == "maxstab"
    assert report.extras["blocks"] == 25
    assert "block_length" not in report.extras


def test_blockmax_errors(gumbel_sample):
    with pytest.raises(ValueError, match="Unknown test"):
        maxstab.test_mda_blockmax(gumbel_sample, block_length=2, inner_test="anderson")
    with pytest.raises(ValueError):
        maxstab.test_mda_blockmax(gumbel_sample, block_length=2, groups=["a"] * len(gumbel_sample))
    with pytest.raises(DataError):
        maxstab.test_mda_blockmax(gumbel_sample, block_length=101)


def test_analytic_max_stability():
    from evtest.simulation import CopulaFamily, analytic_copula

    grid = np.linspace(0.025, 0.975, 21)
    for theta in (1.5, 2.0, 4.0):
        gumbel = CopulaFamily("gumbel", theta)
        for r in (2.0, 3.0, 5.0, 7.5):
            for u1 in grid:
                for u2 in grid:
                    gap = analytic_copula(gumbel, [u1 ** (1 / r), u2 ** (1 / r)]) ** r
                    assert gap == pytest.approx(analytic_copula(gumbel, [u1, u2]), abs=1e-12)

    clayton = CopulaFamily("clayton", 2.0)
    gaps = [
        abs(analytic_copula(clayton, [u1 ** 0.5, u2 ** 0.5]) ** 2 - analytic_copula(clayton, [u1, u2]))
        for u1 in grid
        for u2 in grid
    ]
    assert max(gaps) > 0.01


def test_statistic_is_rank_invariant(gumbel_sample):
    T = maxstab.statistic_t(EmpiricalCopula(pseudo_observations(gumbel_sample)))
    assert T >= 0.0
    for transform in (np.exp, lambda x: x ** 3, lambda x: 3.0 * x - 1.0):
        C = EmpiricalCopula(pseudo_observations(transform(gumbel_sample)))
        assert maxstab.statistic_t(C) == T


@pytest.mark.slow
def test_bootstrap_calibration_under_independence():
    from scipy.stats import kstest

    p_values = []
    for rep in range(200):
        U = np.random.default_rng(rep).uniform(size=(200, 2))
        cfg = maxstab.MaxStabConfig(multiplier=MultiplierConfig(replicates=250, seed=rep))
        p_values.append(maxstab.test_maxstab(U, cfg).p_value)
    assert kstest(p_values, "uniform").pvalue > 0.01
