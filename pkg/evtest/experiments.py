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


"""
###########
Experiments
###########

Sensitivity of tests of extreme-value dependence to ties:

* `randomize_experiment` breaks the ties of a data set at random many times
  and collects the p-values and the Gumbel-Hougaard fit of each randomization;
* `ties_experiment` simulates Gumbel-Hougaard samples, gives them the tie
  pattern of a reference data set, and compares p-values computed on the
  continuous sample with p-values computed under the average and random
  ties policies.
"""

from typing import Dict, Optional, Sequence, Text, Tuple

import numpy as np
import pandas as pd

from .ranks import (
    Data,
    TiesPolicy,
    _as_data_matrix,
    apply_ties_template,
    pseudo_observations,
    ties_template,
)
from .registry import TestSettings, registry
from .simulation import CopulaFamily, fit_gumbel_itau, sample

SUMMARY_INDEX = ["Min.", "1st Qu.", "Median", "Mean", "3rd Qu.", "Max."]

VARIANTS = ("continuous", "average", "random")


def derived_seed(seed: int, *keys: int) -> int:
    """32-bit seed of the stream derived from (seed, *keys)"""
    return int(np.random.SeedSequence(seed, spawn_key=tuple(keys)).generate_state(1)[0])


def summarize(frame: pd.DataFrame) -> pd.DataFrame:
    """Minimum, quartiles, median, mean and maximum of every numeric column"""
    numeric = frame.select_dtypes(include="number")
    summary = pd.concat(
        [
            numeric.min(),
            numeric.quantile(0.25),
            numeric.median(),
            numeric.mean(),
            numeric.quantile(0.75),
            numeric.max(),
        ],
        axis=1,
    ).T
    summary.index = SUMMARY_INDEX
    return summary


def randomize_experiment(
    data: Data,
    tests: Sequence[Text],
    randomizations: int = 100,
    seed: int = 0,
    settings: Optional[TestSettings] = None,
) -> pd.DataFrame:
    """Repeat tests over independent random resolutions of ties

    Parameters
    ----------
    data : DataMatrix or (n, 2) array
        Raw (tied) observations.
    tests : sequence of str
        Test identifiers.
    randomizations : int, optional
        Number of random tie resolutions. Defaults to 100.
    seed : int, optional
        Randomization k uses the ties seed derived from (seed, k).
    settings : TestSettings, optional
        Test settings. The bootstrap seed is shared by all randomizations.

    Returns
    -------
    results : pd.DataFrame
        One row per randomization with columns "randomization", "ties_seed",
        one p-value column per test, "theta" and "std_err" (Gumbel-Hougaard
        fit by inversion of Kendall's tau).
    """

    if randomizations < 2:
        raise ValueError(f"At least two randomizations are needed (got {randomizations}).")
    registry.check_tests(list(tests))
    if settings is None:
        settings = TestSettings()

    data = _as_data_matrix(data)
    rows = []
    for k in range(randomizations):
        ties_seed = derived_seed(seed, k)
        pobs = pseudo_observations(data, TiesPolicy("random", seed=ties_seed))
        row = {"randomization": k, "ties_seed": ties_seed}
        for test in tests:
            row[test] = registry.get_test(test)(pobs, settings).p_value
        row["theta"], row["std_err"] = fit_gumbel_itau(pobs)
        rows.append(row)

    return pd.DataFrame(rows, columns=["randomization", "ties_seed"] + list(tests) + ["theta", "std_err"])


def ties_experiment(
    reference: Data,
    tests: Sequence[Text],
    reps: int = 100,
    theta: Optional[float] = None,
    seed: int = 0,
    settings: Optional[TestSettings] = None,
) -> pd.DataFrame:
    """Effect of ties on the level of tests

    Parameters
    ----------
    reference : DataMatrix or (n, 2) array
        Data set whose tie pattern is replicated.
    tests : sequence of str
        Test identifiers.
    reps : int, optional
        Number of simulated samples. Defaults to 100.
    theta : float, optional
        Gumbel-Hougaard parameter of the simulated samples. Defaults to the
        inversion-of-tau fit of `reference` with average ranks.
    seed : int, optional
    settings : TestSettings, optional
        Test settings. Within a sample, the three variants share the same
        bootstrap seed.

    Returns
    -------
    results : pd.DataFrame
        One row per sample with columns "rep" and "<test>_<variant>" for
        variant in "continuous", "average" and "random".
    """

    registry.check_tests(list(tests))
    if reps < 1:
        raise ValueError(f"Number of repetitions must be positive (got {reps}).")
    if settings is None:
        settings = TestSettings()

    reference = _as_data_matrix(reference)
    if theta is None:
        theta, _ = fit_gumbel_itau(reference, TiesPolicy("average"))
    family = CopulaFamily("gumbel", theta)
    template = ties_template(reference)

    rows = []
    for rep in range(reps):
        U = sample(family, reference.n, seed=derived_seed(seed, rep, 0))
        tied = apply_ties_template(U, template)
        variants = {
            "continuous": pseudo_observations(U),
            "average": pseudo_observations(tied, TiesPolicy("average")),
            "random": pseudo_observations(tied, TiesPolicy("random", seed=derived_seed(seed, rep, 1))),
        }
        rep_settings = settings.with_seed(derived_seed(seed, rep, 2))

        row = {"rep": rep}
        for test in tests:
            runner = registry.get_test(test)
            for variant, pobs in variants.items():
                row[f"{test}_{variant}"] = runner(pobs, rep_settings).p_value
        rows.append(row)

    columns = ["rep"] + [f"{test}_{variant}" for test in tests for variant in VARIANTS]
    return pd.DataFrame(rows, columns=columns)


def ties_experiment_summary(
    results: pd.DataFrame, tests: Sequence[Text], level: float = 0.05
) -> Tuple[pd.DataFrame, Dict[Text, pd.DataFrame]]:
    """Rejection rates and summaries of p-value differences

    Returns
    -------
    rates : pd.DataFrame
        Rejection rate at `level`, one row per test and one column per variant.
    differences : dict
        For each test, `summarize` of the differences between the p-values
        of the tied variants and the continuous one.
    """

    rates = pd.DataFrame(
        [
            [float(np.mean(results[f"{test}_{variant}"] <= level)) for variant in VARIANTS]
            for test in tests
        ],
        index=list(tests),
        columns=list(VARIANTS),
    )

    differences = {}
    for test in tests:
        continuous = results[f"{test}_continuous"]
        frame = pd.DataFrame(
            {
                "average - continuous": results[f"{test}_average"] - continuous,
                "random - continuous": results[f"{test}_random"] - continuous,
                "average - random": results[f"{test}_average"] - results[f"{test}_random"],
            }
        )
        differences[test] = summarize(frame)

    return rates, differences
