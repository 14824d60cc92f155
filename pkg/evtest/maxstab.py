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
##############
Max-stability
##############

A copula C is an extreme-value copula if and only if it is max-stable:
C(u^{1/r})^r = C(u) for every r > 0. The test below measures departures from
this identity with the empirical process

    D_r(u) = sqrt(n) [C_n(u^{1/r})^r - C_n(u)]

integrated against dC_n and summed over several values of r, and computes
p-values by multiplier bootstrap.
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence, Text, Tuple
import warnings

import numpy as np

from .copula import EmpiricalCopula, MultiplierConfig, multiplier_replicates
from .errors import DataError, NumericError
from .ranks import Data, TiesPolicy, as_pseudo_observations, block_maxima, block_maxima_by_group
from .report import TestReport

# below this sample size, bootstrap approximations are unreliable
RECOMMENDED_SIZE = 20


@dataclass(frozen=True)
class MaxStabConfig:
    """Settings of the max-stability test

    Parameters
    ----------
    r_values : sequence of float, optional
        Powers r > 1 at which max-stability is checked. Defaults to (3, 4, 5).
    multiplier : MultiplierConfig, optional
    tail_threshold : sequence of float, optional
        Only pseudo-observations componentwise above this point enter the
        statistic. Defaults to the whole unit square.
    """

    r_values: Tuple[float, ...] = (3.0, 4.0, 5.0)
    multiplier: MultiplierConfig = field(default_factory=MultiplierConfig)
    tail_threshold: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        r_values = tuple(float(r) for r in self.r_values)
        if not r_values:
            raise ValueError("At least one value of r is needed.")
        if any(r <= 1.0 for r in r_values):
            raise ValueError(f"Every r must be larger than 1 (got {r_values}).")
        object.__setattr__(self, "r_values", r_values)

        if self.tail_threshold is not None:
            threshold = tuple(float(t) for t in self.tail_threshold)
            if any(not 0.0 <= t < 1.0 for t in threshold):
                raise ValueError(f"Tail threshold must lie in [0, 1) (got {threshold}).")
            object.__setattr__(self, "tail_threshold", threshold)


def d_process(C: EmpiricalCopula, r: float, u) -> np.ndarray:
    """sqrt(n) [C_n(u^{1/r})^r - C_n(u)] at each row of u

    Returns a float when u is a single point.
    """

    if r <= 1.0:
        raise ValueError(f"r must be larger than 1 (got {r}).")
    points = C._as_points(u)
    D = np.sqrt(C.n) * (C.evaluate(points ** (1.0 / r)) ** r - C.evaluate(points))
    return float(D[0]) if np.ndim(u) == 1 else D


def tail_mask(points: np.ndarray, threshold: Optional[Sequence[float]]) -> np.ndarray:
    """Rows of `points` lying componentwise in [threshold, 1]"""
    if threshold is None:
        return np.ones(len(points), dtype=bool)
    threshold = np.asarray(threshold, dtype=float)
    if threshold.shape != (points.shape[1],):
        raise DataError(f"Tail threshold must have {points.shape[1]} coordinates.")
    return np.all(points >= threshold, axis=1)


def statistic_t(C: EmpiricalCopula, cfg: MaxStabConfig = MaxStabConfig()) -> float:
    """sum over r of (1/n) sum_i D_r(U_i)^2"""
    points = C.pobs.values[tail_mask(C.pobs.values, cfg.tail_threshold)]
    if len(points) == 0:
        return 0.0
    return float(sum(np.sum(d_process(C, r, points) ** 2) for r in cfg.r_values) / C.n)


def test_maxstab(
    data: Data,
    cfg: MaxStabConfig = MaxStabConfig(),
    ties: Optional[TiesPolicy] = None,
    Z: Optional[np.ndarray] = None,
) -> TestReport:
    """Max-stability test with multiplier bootstrap p-value

    Parameters
    ----------
    data : DataMatrix, PseudoObs or (n, d) array
    cfg : MaxStabConfig, optional
    ties : TiesPolicy, optional
        Required when `data` contains ties.
    Z : (B, n) array, optional
        Multipliers, overriding those drawn from `cfg.multiplier`.

    Returns
    -------
    report : TestReport
        p-value (1 + #{T_b >= T}) / (B + 1).
    """

    pobs = as_pseudo_observations(data, ties)
    if pobs.d < 2:
        raise DataError("Max-stability test needs at least two columns.")
    if pobs.n < RECOMMENDED_SIZE:
        warnings.warn(
            f"Max-stability test on {pobs.n} observations: at least "
            f"{RECOMMENDED_SIZE} are recommended."
        )

    heuristic = cfg.tail_threshold is not None
    if heuristic:
        warnings.warn("Tail-restricted max-stability test has no asymptotic validation.")

    C = EmpiricalCopula(pobs)
    points = pobs.values[tail_mask(pobs.values, cfg.tail_threshold)]
    m = len(points)
    if m == 0:
        msg = f"No pseudo-observation lies above the tail threshold {cfg.tail_threshold}."
        raise DataError(msg)

    statistic = statistic_t(C, cfg)

    powered = [points ** (1.0 / r) for r in cfg.r_values]
    replicates = multiplier_replicates(C, np.vstack([points] + powered), cfg.multiplier, Z=Z)
    base = replicates[:, :m]

    bootstrap = np.zeros(len(replicates))
    for k, (r, u_r) in enumerate(zip(cfg.r_values, powered)):
        at_root = replicates[:, (k + 1) * m : (k + 2) * m]
        slope = r * C.evaluate(u_r) ** (r - 1.0)
        bootstrap += np.sum((slope * at_root - base) ** 2, axis=1) / C.n

    return TestReport(
        statistic=statistic,
        p_value=bootstrap_p_value(statistic, bootstrap, "max-stability"),
        method="maxstab",
        replicates=len(bootstrap),
        seed=cfg.multiplier.seed,
        heuristic=heuristic,
        extras={"points": m, "n": pobs.n},
    )


def bootstrap_p_value(statistic: float, bootstrap: np.ndarray, name: Text) -> float:
    """(1 + #{T_b >= T}) / (B + 1)"""
    bootstrap = np.asarray(bootstrap, dtype=float)
    if not np.all(np.isfinite(bootstrap)):
        raise NumericError(f"Non-finite bootstrap replicates of the {name} statistic.")
    if len(bootstrap) > 1 and np.all(bootstrap == bootstrap[0]):
        msg = (
            f"All {len(bootstrap)} bootstrap replicates of the {name} statistic "
            f"are equal to {bootstrap[0]:g}."
        )
        raise NumericError(msg)
    return (1.0 + np.sum(bootstrap >= statistic)) / (len(bootstrap) + 1.0)


def test_mda_blockmax(
    data: Data,
    block_length: Optional[int] = None,
    inner_test: Text = "s2n",
    settings=None,
    groups: Optional[Sequence] = None,
) -> TestReport:
    """Heuristic test that the copula lies in the domain of attraction of an
    extreme-value copula

    Componentwise block maxima are formed (consecutive blocks of
    `block_length` rows, or one block per distinct label of `groups`) and
    the copula of the maxima is tested for extreme-value dependence.

    Parameters
    ----------
    data : DataMatrix or (n, d) array
        Raw observations.
    block_length : int, optional
    inner_test : str, optional
        Identifier of a registered test. Defaults to "s2n".
    settings : TestSettings, optional
    groups : sequence, optional
        Group label of each row. Exclusive with `block_length`.
    """

    # imported here to avoid circular imports
    from .registry import TestSettings, registry

    runner = registry.get_test(inner_test)
    if settings is None:
        settings = TestSettings()

    if (block_length is None) == (groups is None):
        raise ValueError("Provide exactly one of `block_length` and `groups`.")

    if groups is None:
        maxima = block_maxima(data, block_length)
    else:
        maxima = block_maxima_by_group(data, groups)

    if maxima.n < RECOMMENDED_SIZE:
        warnings.warn(f"Only {maxima.n} block maxima: at least {RECOMMENDED_SIZE} are recommended.")

    report = runner(maxima, settings)
    report.heuristic = True
    report.extras["blocks"] = maxima.n
    if block_length is not None:
        report.extras["block_length"] = block_length
    return report
