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
Empirical copula
#################

Evaluation of the empirical copula C_n, finite-difference estimates of its
partial derivatives and multiplier-bootstrap replicates of the empirical
copula process.

Usage
-----
>>> from evtest.copula import EmpiricalCopula, MultiplierConfig, multiplier_replicates
>>> C = EmpiricalCopula(pobs)
>>> C([0.5, 0.5])
>>> replicates = multiplier_replicates(C, pobs.values, MultiplierConfig(replicates=250, seed=42))
"""

from dataclasses import dataclass
from typing import Literal, Optional, Union

import numpy as np

from .errors import DataError
from .ranks import PseudoObs

# number of evaluation points processed at once
CHUNK = 256

MultiplierLaw = Literal["normal", "rademacher"]


@dataclass(frozen=True)
class MultiplierConfig:
    """Multiplier bootstrap settings

    Parameters
    ----------
    replicates : int, optional
        Number of bootstrap replicates B. Defaults to 1000.
    law : {"normal", "rademacher"}, optional
        Law of the multipliers. Defaults to standard normal.
    bandwidth : float, optional
        Bandwidth of the partial-derivative estimates. Defaults to n^{-1/2}.
    seed : int, optional
        Seed of the multipliers. Defaults to 0.
    """

    replicates: int = 1000
    law: MultiplierLaw = "normal"
    bandwidth: Optional[float] = None
    seed: int = 0

    def __post_init__(self):
        if self.replicates < 1:
            msg = f"Number of bootstrap replicates must be positive (got {self.replicates})."
            raise ValueError(msg)
        if self.law not in ("normal", "rademacher"):
            raise ValueError(f'Unknown multiplier law "{self.law}".')
        if self.bandwidth is not None and not 0.0 < self.bandwidth < 0.5:
            raise ValueError(f"Bandwidth must lie in (0, 1/2) (got {self.bandwidth}).")
        if self.seed < 0:
            raise ValueError("Multiplier seed must be a non-negative integer.")


class EmpiricalCopula:
    """Empirical copula of pseudo-observations

    C_n(u) = (1/n) #{i : U_i <= u componentwise}

    Parameters
    ----------
    pobs : PseudoObs or (n, d) array
        Pseudo-observations.
    """

    def __init__(self, pobs: Union[PseudoObs, np.ndarray]):
        if not isinstance(pobs, PseudoObs):
            pobs = PseudoObs(pobs)
        self.pobs = pobs
        self.n, self.d = pobs.values.shape

    def _as_points(self, u) -> np.ndarray:
        points = np.asarray(u, dtype=float)
        if points.ndim == 1:
            points = points.reshape(1, -1)
        if points.ndim != 2 or points.shape[1] != self.d:
            msg = f"Expected points of dimension {self.d}, got array of shape {np.shape(u)}."
            raise DataError(msg)
        if np.any(points < 0.0) or np.any(points > 1.0):
            raise DataError("Empirical copula is evaluated on the unit hypercube only.")
        return points

    def indicators(self, u) -> np.ndarray:
        """(n, m) matrix of 1(U_i <= u_k)"""
        points = self._as_points(u)
        below = np.empty((self.n, len(points)), dtype=bool)
        U = self.pobs.values
        for start in range(0, len(points), CHUNK):
            chunk = points[start : start + CHUNK]
            below[:, start : start + CHUNK] = np.all(
                U[:, None, :] <= chunk[None, :, :], axis=2
            )
        return below

    def counts(self, u) -> np.ndarray:
        """Number of pseudo-observations below each point"""
        points = self._as_points(u)
        counts = np.empty(len(points), dtype=int)
        U = self.pobs.values
        for start in range(0, len(points), CHUNK):
            chunk = points[start : start + CHUNK]
            counts[start : start + CHUNK] = np.sum(
                np.all(U[None, :, :] <= chunk[:, None, :], axis=2), axis=1
            )
        return counts

    def evaluate(self, u) -> np.ndarray:
        """Evaluate C_n at each row of an (m, d) array of points"""
        return self.counts(u) / self.n

    def __call__(self, u) -> float:
        return float(self.evaluate(u)[0])

    def default_bandwidth(self) -> float:
        return 1.0 / np.sqrt(self.n)

    def partial_derivatives(self, u, h: Optional[float] = None) -> np.ndarray:
        """Central finite-difference estimates of all partial derivatives

        The j-th argument is clipped to [0, 1] and the difference is divided
        by the width of the clipped window, so that the estimate at u_j = 1
        is a one-sided difference. Estimates are clipped to [0, 1].

        Parameters
        ----------
        u : (m, d) array
            Evaluation points.
        h : float, optional
            Bandwidth. Defaults to n^{-1/2}.

        Returns
        -------
        derivatives : (m, d) array
        """

        points = self._as_points(u)
        if h is None:
            h = self.default_bandwidth()
        if h <= 0:
            raise ValueError(f"Bandwidth must be positive (got {h}).")

        derivatives = np.empty_like(points)
        for j in range(self.d):
            upper, lower = points.copy(), points.copy()
            upper[:, j] = np.minimum(points[:, j] + h, 1.0)
            lower[:, j] = np.maximum(points[:, j] - h, 0.0)
            width = upper[:, j] - lower[:, j]
            derivatives[:, j] = (self.evaluate(upper) - self.evaluate(lower)) / width
        return np.clip(derivatives, 0.0, 1.0)

    def partial_derivative(self, j: int, u, h: Optional[float] = None) -> float:
        """Finite-difference estimate of the j-th partial derivative (0-based j) at u"""
        if not 0 <= j < self.d:
            raise DataError(f"Coordinate index must lie in [0, {self.d - 1}] (got {j}).")
        return float(self.partial_derivatives(u, h=h)[0, j])


def multipliers(cfg: MultiplierConfig, n: int) -> np.ndarray:
    """(B, n) matrix of i.i.d. multipliers

    Row b is drawn from its own stream derived from (seed, b), so that any
    subset of replicates can be generated independently of the others.
    """

    Z = np.empty((cfg.replicates, n))
    for b in range(cfg.replicates):
        rng = np.random.default_rng(np.random.SeedSequence(cfg.seed, spawn_key=(b,)))
        if cfg.law == "normal":
            Z[b] = rng.standard_normal(n)
        else:
            Z[b] = 2.0 * rng.integers(0, 2, size=n) - 1.0
    return Z


def multiplier_replicates(
    C: EmpiricalCopula,
    eval_points,
    cfg: MultiplierConfig = MultiplierConfig(),
    Z: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Multiplier-bootstrap replicates of the empirical copula process

    Parameters
    ----------
    C : EmpiricalCopula
    eval_points : (m, d) array
        Points at which replicates are evaluated.
    cfg : MultiplierConfig, optional
    Z : (B, n) array, optional
        Multipliers. Generated from `cfg` when not provided.

    Returns
    -------
    replicates : (B, m) array
        Row b holds alpha_b(u) - sum_j dC_n/du_j(u) alpha_b(u^(j)) where
        alpha_b(u) = n^{-1/2} sum_i Z_bi {1(U_i <= u) - C_n(u)} and u^(j)
        equals u with every coordinate but the j-th set to 1.
    """

    points = C._as_points(eval_points)
    if len(points) == 0:
        raise DataError("Empty set of evaluation points.")

    if Z is None:
        Z = multipliers(cfg, C.n)
    Z = np.asarray(Z, dtype=float)
    if Z.ndim != 2 or Z.shape[1] != C.n:
        raise DataError(f"Expected (B, {C.n}) multipliers, got shape {Z.shape}.")

    derivatives = C.partial_derivatives(points, h=cfg.bandwidth)

    replicates = np.empty((len(Z), len(points)))
    for start in range(0, len(points), CHUNK):
        chunk = points[start : start + CHUNK]
        process = _raw_process(C, chunk, Z)
        for j in range(C.d):
            margin = np.ones_like(chunk)
            margin[:, j] = chunk[:, j]
            process -= derivatives[start : start + CHUNK, j] * _raw_process(C, margin, Z)
        replicates[:, start : start + CHUNK] = process
    return replicates


def _raw_process(C: EmpiricalCopula, points: np.ndarray, Z: np.ndarray) -> np.ndarray:
    below = C.indicators(points).astype(float)
    centered = below - below.mean(axis=0)
    return Z @ centered / np.sqrt(C.n)
