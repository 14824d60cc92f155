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
#################
Ranks and maxima
#################

Raw data, pseudo-observations, ties policies, block maxima and Kendall's tau.
"""

from dataclasses import dataclass, field
from typing import List, Literal, Sequence, Text, Tuple, Union
import warnings

import numpy as np
import pandas as pd
from scipy.stats import kendalltau, rankdata

from .errors import DataError, TiesError

TiesKind = Literal["average", "random", "max"]
TIES_KINDS = ("average", "random", "max")

# above this sample size, kendall_tau switches to scipy's O(n log n) algorithm
PAIRWISE_MAX_SIZE = 5000

# number of rows compared at once in O(n²) loops
CHUNK = 512


@dataclass(frozen=True)
class DataMatrix:
    """n x d matrix of real observations with column labels

    Parameters
    ----------
    values : array-like
        (n, d) observations. Non-finite entries are rejected.
    labels : sequence of str, optional
        Column names. Defaults to X1, ..., Xd.
    """

    values: np.ndarray
    labels: Tuple[Text, ...] = field(default=())

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim == 1:
            values = values.reshape(-1, 1)
        if values.ndim != 2 or values.shape[0] < 1 or values.shape[1] < 1:
            msg = f"Expected a non-empty (n, d) matrix, got shape {values.shape}."
            raise DataError(msg)

        n, d = values.shape
        labels = tuple(str(label) for label in self.labels)
        if not labels:
            labels = tuple(f"X{j + 1}" for j in range(d))
        if len(labels) != d:
            msg = f"Got {len(labels)} labels for {d} columns."
            raise DataError(msg)

        bad = ~np.isfinite(values)
        if np.any(bad):
            row, col = np.argwhere(bad)[0]
            msg = (
                f'Non-finite value ({values[row, col]}) at row {row + 1}, '
                f'column "{labels[col]}". Missing values are not imputed.'
            )
            raise DataError(msg)

        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.values, columns=list(self.labels))


@dataclass(frozen=True)
class TiesPolicy:
    """How tied observations are ranked

    Parameters
    ----------
    kind : {"average", "random", "max"}
        "average" gives tied entries the mean of the ranks they span,
        "random" a uniformly random permutation of those ranks (jittering),
        "max" the largest rank of the tied block.
    seed : int, optional
        Seed of the random permutations. Only used when kind is "random".
    """

    kind: TiesKind = "average"
    seed: int = 0

    def __post_init__(self):
        if self.kind not in TIES_KINDS:
            msg = f'Unknown ties policy "{self.kind}". Use one of {", ".join(TIES_KINDS)}.'
            raise ValueError(msg)
        if self.seed < 0:
            raise ValueError("Ties policy seed must be a non-negative integer.")


@dataclass(frozen=True)
class PseudoObs:
    """n x d matrix of scaled ranks in (0, 1)"""

    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 2:
            raise DataError(f"Expected an (n, d) matrix, got shape {values.shape}.")
        if np.any(values <= 0.0) or np.any(values >= 1.0):
            raise DataError("Pseudo-observations must lie in the open unit hypercube.")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]


Data = Union[DataMatrix, PseudoObs, np.ndarray]


def _as_data_matrix(data: Data) -> DataMatrix:
    if isinstance(data, DataMatrix):
        return data
    if isinstance(data, PseudoObs):
        return DataMatrix(data.values)
    return DataMatrix(np.asarray(data, dtype=float))


def pseudo_observations(data: Data, policy: TiesPolicy = TiesPolicy()) -> PseudoObs:
    """Compute pseudo-observations R_ij / (n + 1)

    Parameters
    ----------
    data : DataMatrix or array-like
        Raw observations.
    policy : TiesPolicy, optional
        Ties policy. Defaults to average ranks.

    Returns
    -------
    pobs : PseudoObs
    """

    data = _as_data_matrix(data)
    n, d = data.n, data.d
    if n < 2:
        raise DataError("At least two observations are needed to compute ranks.")

    # one stream per call, shared by all columns in order
    rng = np.random.default_rng(policy.seed) if policy.kind == "random" else None

    ranks = np.empty((n, d))
    for j in range(d):
        x = data.values[:, j]
        if rng is None:
            ranks[:, j] = rankdata(x, method=policy.kind)
        else:
            # ordinal ranks break ties by order of appearance, so ranking a
            # random permutation of the column breaks them uniformly at random
            permutation = rng.permutation(n)
            ranks[permutation, j] = rankdata(x[permutation], method="ordinal")

    return PseudoObs(ranks / (n + 1))


def has_ties(data: Data) -> np.ndarray:
    """Tell which columns contain ties"""
    data = _as_data_matrix(data)
    return np.array([len(np.unique(column)) < data.n for column in data.values.T])


def ties_summary(data: Data) -> pd.Series:
    """Number of distinct values per column"""
    return _as_data_matrix(data).to_frame().nunique()


def as_pseudo_observations(data: Data, ties: Union[TiesPolicy, None] = None) -> PseudoObs:
    """Turn raw data into pseudo-observations, refusing silent tie handling

    Parameters
    ----------
    data : PseudoObs, DataMatrix or array-like
        PseudoObs are returned unchanged.
    ties : TiesPolicy, optional
        Policy used for tied observations. When not provided and `data`
        contains ties, a TiesError is raised.
    """

    if isinstance(data, PseudoObs):
        return data

    data = _as_data_matrix(data)
    if ties is None:
        tied = has_ties(data)
        if np.any(tied):
            columns = ", ".join(f'"{label}"' for label, t in zip(data.labels, tied) if t)
            msg = (
                f"Found ties in column(s) {columns} while the test assumes continuous "
                f"margins. Choose a ties policy explicitly (average, random or max)."
            )
            raise TiesError(msg)
        ties = TiesPolicy("average")

    if ties.kind == "random" and np.any(has_ties(data)):
        warnings.warn(
            f"Ties are broken at random (seed={ties.seed}). Repeat the analysis over "
            f"several seeds and look at the distribution of the results."
        )

    return pseudo_observations(data, ties)


def block_maxima(data: Data, block_length: int) -> DataMatrix:
    """Componentwise maxima over consecutive blocks

    A trailing block shorter than `block_length` is dropped.

    Parameters
    ----------
    data : DataMatrix or array-like
    block_length : int
        Number of consecutive rows per block.

    Returns
    -------
    maxima : DataMatrix
        floor(n / block_length) rows.
    """

    data = _as_data_matrix(data)
    if block_length < 1:
        raise DataError(f"Block length must be a positive integer (got {block_length}).")
    if block_length > data.n:
        msg = f"Block length ({block_length}) is larger than the number of observations ({data.n})."
        raise DataError(msg)

    k = data.n // block_length
    blocks = data.values[: k * block_length].reshape(k, block_length, data.d)
    return DataMatrix(blocks.max(axis=1), labels=data.labels)


def block_maxima_by_group(data: Data, group_labels: Sequence) -> DataMatrix:
    """Componentwise maxima within groups of rows (e.g. calendar months)

    Groups are returned in order of first appearance.
    """

    data = _as_data_matrix(data)
    group_labels = list(group_labels)
    if len(group_labels) == 0:
        raise DataError("Empty set of group labels.")
    if len(group_labels) != data.n:
        msg = f"Got {len(group_labels)} group labels for {data.n} observations."
        raise DataError(msg)

    frame = data.to_frame()
    frame["__group__"] = group_labels
    maxima = frame.groupby("__group__", sort=False).max()
    return DataMatrix(maxima.to_numpy(), labels=data.labels)


def _check_bivariate(data, operation: Text):
    if data.d != 2:
        raise DataError(f"{operation} is only defined for bivariate data (got d={data.d}).")


def _pair_signs(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Row sums of sign(x_i - x_j) sign(y_i - y_j)"""
    n = len(x)
    sums = np.empty(n)
    for start in range(0, n, CHUNK):
        rows = slice(start, min(start + CHUNK, n))
        sx = np.sign(x[rows, None] - x[None, :])
        sy = np.sign(y[rows, None] - y[None, :])
        sums[rows] = np.sum(sx * sy, axis=1)
    return sums


def kendall_tau(pobs: Data, method: Literal["auto", "pairs", "merge"] = "auto") -> float:
    """Kendall's tau, (concordant - discordant) / (n choose 2)

    Parameters
    ----------
    pobs : PseudoObs or array-like
        Bivariate observations.
    method : {"auto", "pairs", "merge"}, optional
        "pairs" enumerates all pairs, "merge" uses scipy's O(n log n)
        algorithm (identical when there are no ties). "auto" switches to
        "merge" for large untied samples.
    """

    data = _as_data_matrix(pobs)
    _check_bivariate(data, "Kendall's tau")
    n = data.n
    if n < 2:
        raise DataError("Kendall's tau needs at least two observations.")

    x, y = data.values.T
    if method == "auto":
        method = "merge" if n > PAIRWISE_MAX_SIZE and not np.any(has_ties(data)) else "pairs"

    if method == "merge":
        return float(kendalltau(x, y)[0])

    # every unordered pair is counted twice
    return float(np.sum(_pair_signs(x, y)) / (n * (n - 1)))


def kendall_tau_jackknife(pobs: Data) -> Tuple[float, float]:
    """Kendall's tau and its delete-one jackknife standard error

    Returns
    -------
    tau : float
    std_err : float
    """

    data = _as_data_matrix(pobs)
    _check_bivariate(data, "Kendall's tau")
    n = data.n
    if n < 3:
        raise DataError("The jackknife of Kendall's tau needs at least three observations.")

    x, y = data.values.T
    row_sums = _pair_signs(x, y)
    pairs = np.sum(row_sums) / 2
    tau = pairs / (n * (n - 1) / 2)

    leave_one_out = (pairs - row_sums) / ((n - 1) * (n - 2) / 2)
    variance = (n - 1) / n * np.sum((leave_one_out - np.mean(leave_one_out)) ** 2)
    return float(tau), float(np.sqrt(variance))


def ties_template(data: Data) -> List[np.ndarray]:
    """Sorted max-ranks of each column

    The k-th entry of column j is the rank, under the "max" ties policy, of
    the k-th smallest value of column j. A column without ties gives 1..n.
    """

    data = _as_data_matrix(data)
    return [np.sort(rankdata(column, method="max")).astype(int) for column in data.values.T]


def apply_ties_template(sample: Data, template: List[np.ndarray]) -> np.ndarray:
    """Give a sample the tie pattern of a reference data set

    In column j, the k-th smallest value is replaced by the value whose rank
    is template[j][k], so that the marginal empirical c.d.f.s evaluated at
    the observations coincide with those of the reference data.
    """

    sample = np.array(_as_data_matrix(sample).values)
    n, d = sample.shape
    if len(template) != d:
        raise DataError(f"Ties template has {len(template)} columns, sample has {d}.")

    tied = np.empty_like(sample)
    for j, max_ranks in enumerate(template):
        if len(max_ranks) != n:
            msg = f"Ties template of size {len(max_ranks)} does not match sample size {n}."
            raise DataError(msg)
        order = np.argsort(sample[:, j], kind="stable")
        ordered = sample[order, j]
        tied[order, j] = ordered[np.asarray(max_ranks) - 1]
    return tied
