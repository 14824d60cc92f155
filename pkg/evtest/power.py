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
Power study
###########

Monte Carlo rejection rates of tests of extreme-value dependence across
copula families and levels of Kendall's tau.

Usage
-----
>>> from evtest import registry
>>> from evtest.power import run_power_study, power_table_text
>>> table = run_power_study(registry.get_study("smoke"))
>>> print(power_table_text(table))
"""

from dataclasses import dataclass
import hashlib
import time
from typing import Dict, List, Optional, Sequence, Text, Tuple, Union
import warnings

import numpy as np
import pandas as pd
from pathos.multiprocessing import ProcessPool as Pool

from .errors import NumericError
from .ranks import pseudo_observations
from .registry import TestSettings, registry
from .simulation import FAMILIES, family_from_tau, sample

COLUMNS = ["family", "tau", "test", "reps", "rate", "mc_se", "runtime", "failed"]


@dataclass(frozen=True)
class PowerSpec:
    """Power study settings

    Parameters
    ----------
    families : sequence of str
        Copula families samples are drawn from.
    taus : sequence of float
        Kendall's tau of each family.
    n : int, optional
        Sample size. Defaults to 200.
    reps : int or dict, optional
        Number of samples per (family, tau), either shared by all tests or
        per test identifier. Defaults to 500.
    level : float, optional
        Significance level. Defaults to 0.05.
    replicates : int, optional
        Bootstrap replicates of resampling tests. Defaults to 250.
    seed : int, optional
    tests : sequence of str, optional
        Test identifiers. Defaults to ("s2n",).
    law : str, optional
        Multiplier law. Defaults to "normal".
    """

    families: Tuple[Text, ...]
    taus: Tuple[float, ...]
    n: int = 200
    reps: Union[int, Dict[Text, int]] = 500
    level: float = 0.05
    replicates: int = 250
    seed: int = 0
    tests: Tuple[Text, ...] = ("s2n",)
    law: Text = "normal"

    def __post_init__(self):
        object.__setattr__(self, "families", tuple(str(f) for f in self.families))
        object.__setattr__(self, "taus", tuple(float(t) for t in self.taus))
        object.__setattr__(self, "tests", tuple(str(t) for t in self.tests))

        for family in self.families:
            if family not in FAMILIES or family == "ev_from_a":
                raise ValueError(f'Power studies cannot sample from "{family}" family.')
        if not 0.0 < self.level < 1.0:
            raise ValueError(f"Significance level must lie in (0, 1) (got {self.level}).")
        if self.n < 3:
            raise ValueError(f"Sample size must be at least 3 (got {self.n}).")
        if self.replicates < 1:
            raise ValueError(f"Bootstrap replicates must be positive (got {self.replicates}).")

        reps = self.reps
        if isinstance(reps, dict):
            reps = dict(reps)
            object.__setattr__(self, "reps", reps)
            values = list(reps.values())
        else:
            values = [reps]
        if any(int(r) < 1 for r in values):
            raise ValueError(f"Number of repetitions must be positive (got {self.reps}).")

    @classmethod
    def from_config(cls, config: Dict) -> "PowerSpec":
        config = dict(config)
        unknown = set(config) - set(cls.__dataclass_fields__)
        if unknown:
            msg = f'Unknown power study field(s): {", ".join(sorted(unknown))}.'
            raise ValueError(msg)
        return cls(**config)

    def reps_for(self, test: Text) -> int:
        """Number of samples test `test` is run on"""
        if isinstance(self.reps, dict):
            try:
                return int(self.reps[test])
            except KeyError:
                msg = f'Number of repetitions of "{test}" test is missing from {self.reps}.'
                raise ValueError(msg)
        return int(self.reps)


def stream_seed(*keys) -> int:
    """64-bit seed derived from a tuple of keys (stable across processes and runs)"""
    digest = hashlib.blake2b(repr(keys).encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def _run_cell(spec: PowerSpec, family: Text, tau: float, rep: int, tests: Sequence[Text]):
    """Run `tests` on sample `rep` of (family, tau)

    Returns a list of (test, rejected, runtime, failed) tuples.
    """

    U = sample(family_from_tau(family, tau), spec.n, seed=stream_seed(spec.seed, family, tau, rep))
    pobs = pseudo_observations(U)

    results = []
    for test in tests:
        settings = TestSettings(
            replicates=spec.replicates,
            law=spec.law,
            seed=stream_seed(spec.seed, family, tau, rep, test) % 2 ** 32,
        )
        start = time.perf_counter()
        try:
            report = registry.get_test(test)(pobs, settings)
        except NumericError as e:
            warnings.warn(f"{test} test failed on {family}(tau={tau}) sample #{rep}: {e}")
            results.append((test, False, time.perf_counter() - start, True))
            continue
        results.append((test, report.p_value <= spec.level, time.perf_counter() - start, False))
    return results


def _run_cell_star(args):
    return _run_cell(*args)


def run_power_study(
    spec: PowerSpec,
    tests: Optional[Sequence[Text]] = None,
    jobs: int = 1,
) -> pd.DataFrame:
    """Estimate rejection rates by Monte Carlo

    Samples only depend on (seed, family, tau, rep): adding a test does not
    change the samples other tests are run on.

    Parameters
    ----------
    spec : PowerSpec
    tests : sequence of str, optional
        Test identifiers. Defaults to `spec.tests`.
    jobs : int, optional
        Number of worker processes. Defaults to 1 (no parallelism).

    Returns
    -------
    table : pd.DataFrame
        One row per (family, tau, test) with columns "family", "tau", "test",
        "reps", "rate", "mc_se", "runtime" (mean seconds per run) and
        "failed" (runs aborted by a numerical failure, not counted in "reps").
    """

    tests = list(spec.tests if tests is None else tests)
    # fail before any simulation
    registry.check_tests(tests)
    max_reps = {test: spec.reps_for(test) for test in tests}

    cells = []
    for family in spec.families:
        for tau in spec.taus:
            for rep in range(max(max_reps.values())):
                todo = [test for test in tests if rep < max_reps[test]]
                cells.append((spec, family, tau, rep, todo))

    if jobs > 1:
        pool = Pool(jobs)
        try:
            pool.restart()
        except AssertionError:
            pass
        try:
            outcomes = pool.map(_run_cell_star, cells)
        finally:
            pool.close()
            pool.join()
    else:
        outcomes = [_run_cell_star(cell) for cell in cells]

    counts: Dict[Tuple, List] = {}
    for (_, family, tau, _, _), results in zip(cells, outcomes):
        for test, rejected, runtime, failed in results:
            entry = counts.setdefault((family, tau, test), [0, 0, [], 0])
            if failed:
                entry[3] += 1
                continue
            entry[0] += 1
            entry[1] += int(rejected)
            entry[2].append(runtime)

    rows = []
    for family in spec.families:
        for tau in spec.taus:
            for test in tests:
                reps, rejections, runtimes, failed = counts.get((family, tau, test), [0, 0, [], 0])
                rate = rejections / reps if reps else np.nan
                rows.append(
                    {
                        "family": family,
                        "tau": tau,
                        "test": test,
                        "reps": reps,
                        "rate": rate,
                        "mc_se": np.sqrt(rate * (1.0 - rate) / reps) if reps else np.nan,
                        "runtime": float(np.mean(runtimes)) if runtimes else np.nan,
                        "failed": failed,
                    }
                )

    return pd.DataFrame(rows, columns=COLUMNS)


def power_table_text(table: pd.DataFrame) -> Text:
    """Aligned text table of rejection rates (in percent), one row per
    (family, tau) and one column per test"""

    wide = table.pivot(index=["family", "tau"], columns="test", values="rate")
    # keep the order of appearance
    wide = wide.reindex(
        index=pd.MultiIndex.from_frame(table[["family", "tau"]].drop_duplicates()),
        columns=list(dict.fromkeys(table["test"])),
    )
    return (100.0 * wide).to_string(float_format=lambda x: f"{x:.1f}", na_rep="-")
