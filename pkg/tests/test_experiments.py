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


import os

import numpy as np
import pandas as pd
import pytest

from evtest import experiments
from evtest.kendall import test_s2n as s2n
from evtest.loader import load_csv
from evtest.ranks import TiesPolicy
from evtest.registry import TestSettings


def test_summarize():
    frame = pd.DataFrame({"x": [1.0, 2.0, 3.0, 4.0], "label": list("abcd")})
    summary = experiments.summarize(frame)
    assert list(summary.index) == experiments.SUMMARY_INDEX
    assert list(summary.columns) == ["x"]
    np.testing.assert_allclose(summary["x"], [1.0, 1.75, 2.5, 2.5, 3.25, 4.0])


def test_derived_seed():
    assert experiments.derived_seed(0, 1) == experiments.derived_seed(0, 1)
    assert experiments.derived_seed(0, 1) != experiments.derived_seed(0, 2)
    assert experiments.derived_seed(0, 1, 0) != experiments.derived_seed(0, 1, 1)
    assert 0 <= experiments.derived_seed(3, 4) < 2 ** 32


def test_randomize_without_ties(gumbel_sample):
    results = experiments.randomize_experiment(gumbel_sample, ["s2n"], randomizations=3)
    assert list(results.columns) == ["randomization", "ties_seed", "s2n", "theta", "std_err"]
    assert list(results["randomization"]) == [0, 1, 2]
    assert results["ties_seed"].nunique() == 3
    # nothing to randomize
    for column in ("s2n", "theta", "std_err"):
        assert results[column].nunique() == 1


def test_randomize_with_ties(gumbel_sample):
    tied = np.round(gumbel_sample, 1)
    results = experiments.randomize_experiment(tied, ["s2n"], randomizations=4, seed=1)
    assert results["s2n"].nunique() > 1
    again = experiments.randomize_experiment(tied, ["s2n"], randomizations=4, seed=1)
    pd.testing.assert_frame_equal(results, again)

    with pytest.raises(ValueError):
        experiments.randomize_experiment(tied, ["s2n"], randomizations=1)
    with pytest.raises(ValueError, match="Unknown test"):
        experiments.randomize_experiment(tied, ["anderson"], randomizations=2)


def test_ties_experiment_without_ties(gumbel_sample):
    results = experiments.ties_experiment(gumbel_sample[:40], ["s2n"], reps=3, theta=2.0)
    assert list(results.columns) == ["rep", "s2n_continuous", "s2n_average", "s2n_random"]
    np.testing.assert_array_equal(results["s2n_continuous"], results["s2n_average"])
    np.testing.assert_array_equal(results["s2n_continuous"], results["s2n_random"])


def test_ties_experiment(gumbel_sample):
    reference = np.round(gumbel_sample[:50], 1)
    settings = TestSettings(replicates=10)
    results = experiments.ties_experiment(reference, ["s2n", "maxstab"], reps=2, settings=settings)
    assert len(results) == 2
    assert results.shape[1] == 7
    assert results.drop(columns="rep").apply(lambda p: p.between(0.0, 1.0)).all().all()

    with pytest.raises(ValueError):
        experiments.ties_experiment(reference, ["s2n"], reps=0)


def test_ties_experiment_summary():
    results = pd.DataFrame(
        {
            "rep": [0, 1, 2, 3],
            "s2n_continuous": [0.01, 0.2, 0.5, 0.9],
            "s2n_average": [0.02, 0.04, 0.5, 0.9],
            "s2n_random": [0.01, 0.2, 0.6, 0.9],
        }
    )
    rates, differences = experiments.ties_experiment_summary(results, ["s2n"], level=0.05)
    assert list(rates.columns) == list(experiments.VARIANTS)
    assert rates.loc["s2n"].tolist() == [0.25, 0.5, 0.25]

    summary = differences["s2n"]
    assert list(summary.columns) == ["average - continuous", "random - continuous", "average - random"]
    assert summary.loc["Min.", "average - continuous"] == pytest.approx(-0.16)
    assert summary.loc["Max.", "random - continuous"] == pytest.approx(0.1)


LOSSALAE = os.environ.get("EVTEST_LOSSALAE")
needs_lossalae = pytest.mark.skipif(
    LOSSALAE is None, reason="EVTEST_LOSSALAE does not point to the LOSS/ALAE CSV file"
)


@pytest.mark.slow
@needs_lossalae
def test_lossalae_randomizations():
    data, _ = load_csv(LOSSALAE, columns=["loss", "alae"])
    results = experiments.randomize_experiment(data, ["s2n"], randomizations=100, seed=0)
    assert 0.86 <= results["s2n"].median() <= 0.96
    assert results["theta"].between(1.438, 1.446).all()
    assert results["std_err"].between(0.028, 0.038).all()

    average = s2n(data, ties=TiesPolicy("average"))
    assert average.p_value == pytest.approx(0.6, abs=0.1)


@pytest.mark.slow
@needs_lossalae
def test_lossalae_ties_effect():
    data, _ = load_csv(LOSSALAE, columns=["loss", "alae"])
    results = experiments.ties_experiment(data, ["s2n"], reps=1000, seed=0)
    rates, _ = experiments.ties_experiment_summary(results, ["s2n"])
    np.testing.assert_allclose(rates.loc["s2n"], [0.046, 0.107, 0.047], atol=0.02)

    results = experiments.ties_experiment(data, ["maxstab"], reps=100, seed=0, settings=TestSettings(replicates=250))
    rates, _ = experiments.ties_experiment_summary(results, ["maxstab"])
    np.testing.assert_allclose(rates.loc["maxstab"], [0.05, 0.45, 0.05], atol=0.10)
