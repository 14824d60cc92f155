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
###########################
Kendall's distribution tests
###########################

Under extreme-value dependence, the distribution of W = C(U1, U2) is
K(w) = w - (1 - tau) w log w and its moments mu_k = E(W^k) = (k tau + 1) / (k + 1)^2
satisfy

    -1 + 8 mu_1 - 9 mu_2 = 0
    -1 + 4 mu_1 + 9 mu_2 - 16 mu_3 = 0

Both identities are turned into asymptotically normal test statistics whose
variance is estimated by the delete-one jackknife.
"""

from dataclasses import dataclass
from typing import Dict, Literal, Optional, Text, Union

import numpy as np
from scipy.stats import norm, rankdata

from .errors import DataError, NumericError
from .ranks import CHUNK, Data, TiesPolicy, _as_data_matrix, as_pseudo_observations, kendall_tau
from .report import TestReport

MomentEstimator = Literal["plugin", "ustat"]

# coefficients of the moment identities, keyed by moment order
S2N_IDENTITY = {1: 8.0, 2: -9.0}
S3N_IDENTITY = {1: 4.0, 2: 9.0, 3: -16.0}

# delete-one statistics closer than this are considered identical
DEGENERATE_SPREAD = 1e-12


@dataclass(frozen=True)
class KendallSample:
    """Pseudo-sample of W

    Parameters
    ----------
    counts : (n,) int array
        c_i = #{j : X_j <= X_i componentwise}. Always >= 1.
    """

    counts: np.ndarray

    @property
    def n(self) -> int:
        return len(self.counts)

    @property
    def w(self) -> np.ndarray:
        return self.counts / self.n


def kendall_counts(data: Data) -> np.ndarray:
    """c_i = #{j : X_j1 <= X_i1 and X_j2 <= X_i2}, in O(n log n)"""

    data = _as_data_matrix(data)
    if data.d != 2:
        raise DataError(f"Kendall's distribution is only defined for bivariate data (got d={data.d}).")

    x, y = data.values.T
    n = data.n
    levels = rankdata(y, method="dense").astype(int)
    order = np.lexsort((y, x))
    xs = x[order]

    # Fenwick tree over y levels
    tree = [0] * (int(levels.max()) + 1)
    counts = np.empty(n, dtype=int)

    start = 0
    while start < n:
        stop = start
        while stop < n and xs[stop] == xs[start]:
            stop += 1
        group = order[start:stop]

        # observations sharing the same x are all below each other in x
        for i in group:
            k = levels[i]
            while k < len(tree):
                tree[k] += 1
                k += k & -k
        for i in group:
            k, total = levels[i], 0
            while k > 0:
                total += tree[k]
                k -= k & -k
            counts[i] = total

        start = stop

    return counts


def kendall_sample(data: Data) -> KendallSample:
    """Compute W_i = F_n(X_i1, X_i2), i = 1..n"""
    data = _as_data_matrix(data)
    if data.n < 2:
        raise DataError("Kendall's distribution needs at least two observations.")
    return KendallSample(kendall_counts(data))


def null_kendall_cdf(w, tau: float):
    """K(w) = w - (1 - tau) w log w, Kendall's distribution of extreme-value copulas"""
    w = np.asarray(w, dtype=float)
    if np.any(w <= 0.0) or np.any(w > 1.0):
        raise ValueError("Kendall's distribution is evaluated on (0, 1] only.")
    if tau > 1.0:
        raise ValueError(f"Kendall's tau cannot exceed 1 (got {tau}).")
    K = w - (1.0 - tau) * w * np.log(w)
    return float(K) if K.ndim == 0 else K


def null_moment(k: int, tau: float) -> float:
    """E(W^k) = (k tau + 1) / (k + 1)^2 under extreme-value dependence"""
    if k < 1:
        raise ValueError(f"Moment order must be positive (got {k}).")
    return (k * tau + 1.0) / (k + 1.0) ** 2


def _falling(x, k: int):
    result = np.ones_like(np.asarray(x, dtype=float))
    for i in range(k):
        result = result * (x - i)
    return result


def _moment_terms(counts: np.ndarray, size: int, k: int, estimator: MomentEstimator) -> np.ndarray:
    """Summands of the k-th moment estimate of W for a sample of `size` observations"""

    if estimator == "plugin":
        return (counts / size) ** k

    denominator = _falling(size - 1, k)
    if denominator == 0:
        msg = f"U-statistic moment of order {k} needs more than {k} observations (got {size})."
        raise NumericError(msg)
    return _falling(counts - 1, k) / denominator


def _leave_one_out_sums(data, counts: np.ndarray, terms, deleted_terms) -> np.ndarray:
    """sum_{j != i} g(c_j - 1(X_i <= X_j)) for every i

    `terms` is g(c) and `deleted_terms` is g(c - 1), both (n, K) arrays.
    Deleting observation i decrements c_j exactly when X_i <= X_j.
    """

    x, y = data.values.T
    n = len(counts)
    delta = deleted_terms - terms
    below_delta = np.empty_like(terms)
    for start in range(0, n, CHUNK):
        rows = slice(start, min(start + CHUNK, n))
        below = (x[rows, None] <= x[None, :]) & (y[rows, None] <= y[None, :])
        below_delta[rows] = below.astype(float) @ delta

    # the diagonal term j = i is counted by both sums and cancels
    return (np.sum(terms, axis=0) - terms) + (below_delta - delta)


def _identity_test(
    data: Data,
    identity: Dict[int, float],
    method: Text,
    estimator: MomentEstimator,
    ties: Optional[TiesPolicy],
) -> TestReport:
    pobs = as_pseudo_observations(data, ties)
    if pobs.d != 2:
        raise DataError(f"{method} test is only defined for bivariate data (got d={pobs.d}).")
    n = pobs.n
    if n < 3:
        raise DataError(f"{method} test needs at least three observations (got {n}).")

    counts = kendall_counts(pobs)
    orders = sorted(identity)
    coefficients = np.array([identity[k] for k in orders])

    terms = np.column_stack([_moment_terms(counts, n, k, estimator) for k in orders])
    statistic = -1.0 + coefficients @ terms.mean(axis=0)

    try:
        loo_terms = np.column_stack([_moment_terms(counts, n - 1, k, estimator) for k in orders])
        loo_deleted = np.column_stack([_moment_terms(counts - 1, n - 1, k, estimator) for k in orders])
    except NumericError as e:
        msg = f"Jackknife of {method} statistic is undefined: {e}"
        raise NumericError(msg) from e

    sums = _leave_one_out_sums(pobs, counts, loo_terms, loo_deleted)
    leave_one_out = -1.0 + sums @ coefficients / (n - 1)
    variance = (n - 1) / n * np.sum((leave_one_out - np.mean(leave_one_out)) ** 2)

    if not variance > 0.0 or np.ptp(leave_one_out) < DEGENERATE_SPREAD:
        msg = (
            f"{method} statistic is {statistic:.6f} but its jackknife variance is zero: "
            f"every delete-one statistic equals {leave_one_out[0]:g} (degenerate data "
            f"such as a perfectly monotone sample?)."
        )
        raise NumericError(msg)

    z = statistic / np.sqrt(variance)
    return TestReport(
        statistic=statistic,
        p_value=2.0 * norm.sf(abs(z)),
        method=method,
        extras={
            "jackknife_variance": variance,
            "z": z,
            "tau": kendall_tau(pobs),
            "n": n,
        },
    )


def s2n_statistic(data: Data, ties: Optional[TiesPolicy] = None) -> float:
    """S2n = -1 + 8/(n(n-1)) sum I_ij - 9/(n(n-1)(n-2)) sum I_ij I_kj"""
    pobs = as_pseudo_observations(data, ties)
    n = pobs.n
    if n < 3:
        raise DataError(f"S2n needs at least three observations (got {n}).")
    d = kendall_counts(pobs) - 1.0
    return float(-1.0 + 8.0 * np.sum(d) / (n * (n - 1)) - 9.0 * np.sum(d * (d - 1)) / (n * (n - 1) * (n - 2)))


def test_s2n(data: Data, ties: Optional[TiesPolicy] = None) -> TestReport:
    """Test of extreme-value dependence based on the first two moments of W

    Parameters
    ----------
    data : DataMatrix, PseudoObs or (n, 2) array
    ties : TiesPolicy, optional
        Required when `data` contains ties.

    Returns
    -------
    report : TestReport
        Two-sided normal p-value with jackknife variance. The jackknife
        variance is reported in `extras`.
    """
    return _identity_test(data, S2N_IDENTITY, "s2n", "ustat", ties)


def test_s3n(
    data: Data,
    ties: Optional[TiesPolicy] = None,
    estimator: MomentEstimator = "plugin",
) -> TestReport:
    """Test of extreme-value dependence based on the first three moments of W

    S3n = -1 + 4 m_1 + 9 m_2 - 16 m_3

    Parameters
    ----------
    data : DataMatrix, PseudoObs or (n, 2) array
    ties : TiesPolicy, optional
    estimator : {"plugin", "ustat"}, optional
        "plugin" estimates m_k by the mean of W_i^k, "ustat" by the
        unbiased U-statistic used by S2n. Defaults to "plugin".
    """
    if estimator not in ("plugin", "ustat"):
        raise ValueError(f'Unknown moment estimator "{estimator}".')
    report = _identity_test(data, S3N_IDENTITY, "s3n", estimator, ties)
    report.extras["estimator"] = estimator
    return report


def cvm_kendall_distance(data: Data, ties: Optional[TiesPolicy] = None) -> float:
    """Cramér-von Mises distance between K_n and K(.; tau_n)

    sum_i {K_n(W_i) - K(W_i; tau_n)}^2. Diagnostic only: no p-value.
    """

    pobs = as_pseudo_observations(data, ties)
    sample = kendall_sample(pobs)
    w = sample.w
    empirical = np.searchsorted(np.sort(w), w, side="right") / sample.n
    tau = kendall_tau(pobs)
    return float(np.sum((empirical - null_kendall_cdf(w, tau)) ** 2))
