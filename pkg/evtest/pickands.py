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
Pickands dependence function
###########################

A bivariate extreme-value copula is characterized by its Pickands dependence
function A, a convex function on [0, 1] with max(t, 1 - t) <= A(t) <= 1:

    C(u1, u2) = exp{ log(u1 u2) A( log(u2) / log(u1 u2) ) }

This module estimates A (rank-based CFG estimator, shape-constrained spline
fit of the A-plot) and tests extreme-value dependence by comparing C_n with
the copula rebuilt from the estimate.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Tuple
import warnings

import numpy as np
import pandas as pd
from scipy.integrate import trapezoid
from scipy.interpolate import BSpline
from scipy.optimize import minimize

from .copula import EmpiricalCopula, MultiplierConfig, multiplier_replicates
from .errors import DataError, NumericError
from .maxstab import RECOMMENDED_SIZE, bootstrap_p_value, tail_mask
from .ranks import Data, TiesPolicy, as_pseudo_observations, pseudo_observations
from .report import TestReport

# finite-difference step of A'
DERIVATIVE_STEP = 1e-6

# CFG multiplier bootstrap: t-grid of the linearized estimator and number of
# points of the log-spaced integration grid
CFG_T_GRID = 51
CFG_S_GRID = 100

SPLINE_DEGREE = 2
SPLINE_CHECK_GRID = 101
SPLINE_TOLERANCE = 1e-8


def envelope(t):
    """max(t, 1 - t), lower bound of every Pickands dependence function"""
    return np.maximum(t, 1.0 - t)


@dataclass
class PickandsEstimate:
    """Pickands dependence function

    Values are clipped into [max(t, 1 - t), 1] and forced to 1 at t = 0 and
    t = 1.

    Parameters
    ----------
    kind : {"cfg", "spline", "parametric"}
    function : callable
        Vectorized t -> A(t) before clipping.
    derivative_function : callable, optional
        Vectorized t -> A'(t). Central differences are used when missing.
    knots, coefficients, degree : optional
        B-spline representation (kind="spline").
    parameters : dict, optional
        Parameters of a parametric family (kind="parametric").
    """

    kind: str
    function: Callable[[np.ndarray], np.ndarray]
    derivative_function: Optional[Callable[[np.ndarray], np.ndarray]] = None
    knots: Optional[np.ndarray] = None
    coefficients: Optional[np.ndarray] = None
    degree: Optional[int] = None
    parameters: dict = field(default_factory=dict)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t < 0.0) or np.any(t > 1.0):
            raise DataError("Pickands dependence functions are defined on [0, 1].")
        A = np.clip(self.function(t), envelope(t), 1.0)
        A = np.where((t == 0.0) | (t == 1.0), 1.0, A)
        return float(A) if A.ndim == 0 else A

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        if self.derivative_function is not None:
            dA = self.derivative_function(t)
        else:
            upper = np.minimum(t + DERIVATIVE_STEP, 1.0)
            lower = np.maximum(t - DERIVATIVE_STEP, 0.0)
            dA = (self(upper) - self(lower)) / (upper - lower)
        dA = np.asarray(dA, dtype=float)
        return float(dA) if dA.ndim == 0 else dA


def gumbel_pickands(theta: float) -> PickandsEstimate:
    """A(t) = (t^theta + (1 - t)^theta)^{1/theta}, theta >= 1"""

    if not theta >= 1.0:
        raise ValueError(f"Gumbel-Hougaard parameter must be >= 1 (got {theta}).")

    def function(t):
        return (t ** theta + (1.0 - t) ** theta) ** (1.0 / theta)

    def derivative_function(t):
        with np.errstate(divide="ignore", invalid="ignore"):
            s = t ** theta + (1.0 - t) ** theta
            return s ** (1.0 / theta - 1.0) * (t ** (theta - 1.0) - (1.0 - t) ** (theta - 1.0))

    return PickandsEstimate(
        kind="parametric",
        function=function,
        derivative_function=derivative_function,
        parameters={"family": "gumbel", "theta": theta},
    )


def _check_bivariate_points(u) -> np.ndarray:
    points = np.asarray(u, dtype=float)
    if points.ndim == 1:
        points = points.reshape(1, -1)
    if points.ndim != 2 or points.shape[1] != 2:
        raise DataError(f"Expected bivariate points, got array of shape {np.shape(u)}.")
    if np.any(points <= 0.0) or np.any(points > 1.0):
        raise DataError("Extreme-value copulas are rebuilt on (0, 1]^2 only.")
    if np.any(np.all(points == 1.0, axis=1)):
        raise DataError("Extreme-value copulas are rebuilt on (0, 1]^2 minus (1, 1) only.")
    return points


def pickands_argument(u) -> Tuple[np.ndarray, np.ndarray]:
    """(log(u1 u2), log(u2) / log(u1 u2)) for each row of u"""
    points = _check_bivariate_points(u)
    log_uv = np.log(points[:, 0]) + np.log(points[:, 1])
    return log_uv, np.log(points[:, 1]) / log_uv


def ev_copula_from_a(A: PickandsEstimate, u):
    """Extreme-value copula with Pickands dependence function A

    Returns a float when u is a single point.
    """
    log_uv, t = pickands_argument(u)
    C = np.exp(log_uv * A(np.clip(t, 0.0, 1.0)))
    return float(C[0]) if np.ndim(u) == 1 else C


def _cfg_log_raw(S: np.ndarray, T: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Uncorrected log CFG estimate at each t"""
    t = np.atleast_1d(t)
    with np.errstate(divide="ignore"):
        xi = np.minimum(S[:, None] / (1.0 - t[None, :]), T[:, None] / t[None, :])
    return -np.euler_gamma - np.mean(np.log(xi), axis=0)


def endpoint_corrected(log_values: np.ndarray, t: np.ndarray, at_zero, at_one) -> np.ndarray:
    return log_values - (1.0 - t) * at_zero - t * at_one


def cfg_estimator(pobs: Data, ties: Optional[TiesPolicy] = None) -> PickandsEstimate:
    """Rank-based CFG estimator of the Pickands dependence function

    Parameters
    ----------
    pobs : PseudoObs, DataMatrix or (n, 2) array
    ties : TiesPolicy, optional

    Returns
    -------
    A : PickandsEstimate
        kind="cfg", endpoint-corrected and clipped into the Pickands envelope.
    """

    pobs = as_pseudo_observations(pobs, ties)
    if pobs.d != 2:
        raise DataError(f"CFG estimator is only defined for bivariate data (got d={pobs.d}).")

    S = -np.log(pobs.values[:, 0])
    T = -np.log(pobs.values[:, 1])
    at_zero, at_one = np.mean(np.log(S)), np.mean(np.log(T))
    at_zero, at_one = -np.euler_gamma - at_zero, -np.euler_gamma - at_one

    def function(t):
        t = np.asarray(t, dtype=float)
        flat = t.reshape(-1)
        values = np.exp(endpoint_corrected(_cfg_log_raw(S, T, flat), flat, at_zero, at_one))
        return values.reshape(t.shape)

    return PickandsEstimate(kind="cfg", function=function, parameters={"n": pobs.n})


def _cfg_grid(n: int) -> Tuple[np.ndarray, np.ndarray]:
    """t-grid and log-spaced s-grid of the linearized CFG estimator"""
    t_grid = np.linspace(0.0, 1.0, CFG_T_GRID)
    s_grid = np.geomspace(0.5 / (n + 1), 2.0 * np.log(n + 1) + 1.0, CFG_S_GRID)
    return t_grid, s_grid


def test_pickands_a(
    data: Data,
    multiplier: MultiplierConfig = MultiplierConfig(),
    ties: Optional[TiesPolicy] = None,
    Z: Optional[np.ndarray] = None,
) -> TestReport:
    """Test of extreme-value dependence comparing C_n with the extreme-value
    copula rebuilt from the CFG estimate of A

    The statistic is (1/n) sum_i E_n(U_i)^2 with
    E_n = sqrt(n) [C_n - exp{log(u1 u2) A_n(log(u2) / log(u1 u2))}].
    Bootstrap replicates linearize both C_n and the CFG estimator with the
    same multipliers.

    Parameters
    ----------
    data : DataMatrix, PseudoObs or (n, 2) array
    multiplier : MultiplierConfig, optional
    ties : TiesPolicy, optional
    Z : (B, n) array, optional
        Multipliers, overriding those drawn from `multiplier`.
    """

    pobs = as_pseudo_observations(data, ties)
    if pobs.d != 2:
        raise DataError(f"Pickands test is only defined for bivariate data (got d={pobs.d}).")
    n = pobs.n
    if n < RECOMMENDED_SIZE:
        warnings.warn(f"Pickands test on {n} observations: at least {RECOMMENDED_SIZE} are recommended.")

    C = EmpiricalCopula(pobs)
    A = cfg_estimator(pobs)
    U = pobs.values

    log_uv, t_obs = pickands_argument(U)
    A_obs = A(t_obs)
    C_A = np.exp(log_uv * A_obs)
    statistic = float(np.mean(n * (C.evaluate(U) - C_A) ** 2))

    # linearization of log A_n(t): minus the integral over s > 0 of
    # C_b(exp(-s(1 - t)), exp(-s t)) ds / s
    t_grid, s_grid = _cfg_grid(n)
    ss, tt = np.meshgrid(s_grid, t_grid, indexing="ij")
    grid_points = np.column_stack([np.exp(-ss * (1.0 - tt)).ravel(), np.exp(-ss * tt).ravel()])

    replicates = multiplier_replicates(C, np.vstack([U, grid_points]), multiplier, Z=Z)
    B = len(replicates)
    at_obs = replicates[:, :n]
    on_grid = replicates[:, n:].reshape(B, len(s_grid), len(t_grid))

    d_log_A = -trapezoid(on_grid, x=np.log(s_grid), axis=1)
    d_log_A = endpoint_corrected(d_log_A, t_grid, d_log_A[:, :1], d_log_A[:, -1:])

    # linear interpolation from the t-grid to t_obs, as a matrix
    interpolation = np.column_stack(
        [np.interp(t_obs, t_grid, np.eye(len(t_grid))[k]) for k in range(len(t_grid))]
    )
    d_log_A_obs = d_log_A @ interpolation.T

    E = at_obs - C_A * log_uv * A_obs * d_log_A_obs
    bootstrap = np.mean(E ** 2, axis=1)

    return TestReport(
        statistic=statistic,
        p_value=bootstrap_p_value(statistic, bootstrap, "Pickands"),
        method="pickands_a",
        replicates=B,
        seed=multiplier.seed,
        extras={"n": n},
    )


@dataclass
class APlot:
    """A-plot of pseudo-observations

    Parameters
    ----------
    t, z : (m,) arrays
        Transformed points log(U2) / log(U1 U2) and log C_n(U) / log(U1 U2).
    retained : (m,) bool array
        Points componentwise above the threshold (all points when untrimmed).
    threshold : tuple, optional
    dropped : int
        Number of points removed because C_n(U_i) = 0.
    """

    t: np.ndarray
    z: np.ndarray
    retained: np.ndarray
    threshold: Optional[Tuple[float, float]] = None
    dropped: int = 0

    @property
    def trimmed(self) -> bool:
        return self.threshold is not None

    @property
    def points(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.t[self.retained], self.z[self.retained]

    def __len__(self) -> int:
        return int(np.sum(self.retained))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"t": self.t, "z": self.z, "trimmed": ~self.retained})


def a_plot(
    pobs: Data,
    threshold: Optional[Sequence[float]] = None,
    ties: Optional[TiesPolicy] = None,
) -> APlot:
    """A-plot: points (T_i, Z_i) lying on the graph of A under extreme-value dependence

    Parameters
    ----------
    pobs : PseudoObs, DataMatrix or (n, 2) array
    threshold : (t1, t2), optional
        Only keep points with U_i componentwise in [threshold, 1].
    ties : TiesPolicy, optional
    """

    pobs = as_pseudo_observations(pobs, ties)
    if pobs.d != 2:
        raise DataError(f"A-plot is only defined for bivariate data (got d={pobs.d}).")

    U = pobs.values
    C_n = EmpiricalCopula(pobs).evaluate(U)
    defined = C_n > 0.0
    dropped = int(np.sum(~defined))
    if dropped:
        warnings.warn(f"{dropped} point(s) with C_n = 0 were dropped from the A-plot.")

    U, C_n = U[defined], C_n[defined]
    log_uv = np.log(U[:, 0]) + np.log(U[:, 1])
    t = np.log(U[:, 1]) / log_uv
    z = np.log(C_n) / log_uv

    if threshold is not None:
        threshold = tuple(float(x) for x in threshold)
    retained = tail_mask(U, threshold)

    return APlot(t=t, z=z, retained=retained, threshold=threshold, dropped=dropped)


def spline_knots(interior_knots: int) -> np.ndarray:
    """Clamped knot vector of a quadratic spline on [0, 1]"""
    inner = np.linspace(0.0, 1.0, interior_knots + 2)
    return np.concatenate([[0.0] * SPLINE_DEGREE, inner, [1.0] * SPLINE_DEGREE])


def spline_size(interior_knots: int) -> int:
    """Number of B-spline coefficients, also the least number of A-plot points to fit them"""
    return interior_knots + SPLINE_DEGREE + 1


def _convexity_matrix(knots: np.ndarray, size: int) -> np.ndarray:
    """G such that G @ c >= 0 iff the quadratic spline with coefficients c is convex

    The derivative is a linear spline with coefficients
    d_i = 2 (c_i - c_{i-1}) / (k_{i+2} - k_i), convex iff d is nondecreasing.
    """

    slopes = np.zeros((size - 1, size))
    for i in range(1, size):
        scale = SPLINE_DEGREE / (knots[i + SPLINE_DEGREE] - knots[i])
        slopes[i - 1, i] = scale
        slopes[i - 1, i - 1] = -scale
    return slopes[1:] - slopes[:-1]


def spline_fit_a(plot: APlot, interior_knots: int = 10) -> PickandsEstimate:
    """Shape-constrained least-squares quadratic spline fit of the A-plot

    Constraints: A(0) = A(1) = 1, convexity and max(t, 1 - t) <= A(t) <= 1
    on a grid containing the knots.

    Parameters
    ----------
    plot : APlot
    interior_knots : int, optional
        Number of equally spaced interior knots. Defaults to 10.

    Returns
    -------
    A : PickandsEstimate
        kind="spline".
    """

    if interior_knots < 0:
        raise ValueError(f"Number of interior knots must be non-negative (got {interior_knots}).")

    t, z = plot.points
    knots = spline_knots(interior_knots)
    size = spline_size(interior_knots)
    if len(t) < size:
        msg = f"A-plot has {len(t)} point(s), spline fit with {interior_knots} interior knots needs {size}."
        raise DataError(msg)

    X = BSpline.design_matrix(t, knots, SPLINE_DEGREE).toarray()

    grid = np.union1d(np.linspace(0.0, 1.0, SPLINE_CHECK_GRID), knots)
    G = BSpline.design_matrix(grid, knots, SPLINE_DEGREE).toarray()
    convexity = _convexity_matrix(knots, size)
    inequalities = np.vstack([convexity, G, -G])
    bounds = np.concatenate([np.zeros(len(convexity)), envelope(grid), -np.ones(len(grid))])

    def f(c):
        residual = X @ c - z
        return residual @ residual

    def jac_f(c):
        return 2.0 * X.T @ (X @ c - z)

    ends = np.zeros((2, size))
    ends[0, 0] = ends[1, -1] = 1.0

    cons = (
        {"type": "eq", "fun": lambda c: ends @ c - 1.0, "jac": lambda c: ends},
        {"type": "ineq", "fun": lambda c: inequalities @ c - bounds, "jac": lambda c: inequalities},
    )

    # A = 1 is feasible
    result = minimize(
        f,
        np.ones(size),
        jac=jac_f,
        constraints=cons,
        method="SLSQP",
        options={"ftol": 1e-12, "maxiter": 500},
    )

    coefficients = np.array(result.x)
    coefficients[0] = coefficients[-1] = 1.0
    violation = max(0.0, float(np.max(bounds - inequalities @ coefficients)))
    if not np.all(np.isfinite(coefficients)) or violation > SPLINE_TOLERANCE:
        msg = (
            f"Constrained spline fit did not converge ({result.message}); "
            f"largest constraint violation is {violation:g}."
        )
        raise NumericError(msg)

    spline = BSpline(knots, coefficients, SPLINE_DEGREE)
    return PickandsEstimate(
        kind="spline",
        function=spline,
        derivative_function=spline.derivative(),
        knots=knots,
        coefficients=coefficients,
        degree=SPLINE_DEGREE,
    )


def residual_statistic(plot: APlot, A: PickandsEstimate) -> float:
    """Squared vertical distance between the A-plot and the graph of A

    The sum runs over retained points and is divided by the sample size n
    (points dropped or trimmed included), so that a trimmed A-plot gives
    (1/n) times the residual sum of squares of its tail points.
    """
    t, z = plot.points
    if len(t) == 0:
        raise DataError("A-plot has no point.")
    n = len(plot.t) + plot.dropped
    return float(np.sum((z - A(t)) ** 2) / n)


def _residual_replicate(A: PickandsEstimate, n: int, threshold, interior_knots: int, seed) -> float:
    """Residual statistic of one parametric bootstrap sample, NaN when its
    trimmed A-plot has too few points for the spline fit"""

    # imported here to avoid circular imports
    from .simulation import sample_ev

    sample = sample_ev(A, n, seed=seed)
    plot = a_plot(pseudo_observations(sample), threshold=threshold)
    if len(plot) < spline_size(interior_knots):
        return np.nan
    return residual_statistic(plot, spline_fit_a(plot, interior_knots))


def test_aplot_residual(
    data: Data,
    replicates: int = 1000,
    seed: int = 0,
    threshold: Optional[Sequence[float]] = None,
    interior_knots: int = 10,
    ties: Optional[TiesPolicy] = None,
) -> TestReport:
    """Residual test of the A-plot with parametric bootstrap p-value

    Bootstrap samples of size n are drawn from the extreme-value copula with
    the fitted spline as Pickands dependence function, and the whole pipeline
    (ranks, A-plot, spline fit, residual statistic) is rerun on each.

    Parameters
    ----------
    data : DataMatrix, PseudoObs or (n, 2) array
    replicates : int, optional
        Number of bootstrap samples B. Defaults to 1000.
    seed : int, optional
        Bootstrap sample b is drawn from the stream derived from (seed, b).
    threshold : (t1, t2), optional
        Trimmed A-plot (heuristic domain-of-attraction variant). Bootstrap
        samples keeping too few points above the threshold are skipped: the
        p-value uses the remaining replicates and extras["skipped_replicates"]
        counts the others.
    interior_knots : int, optional
    ties : TiesPolicy, optional
    """

    if replicates < 1:
        raise ValueError(f"Number of bootstrap replicates must be positive (got {replicates}).")

    pobs = as_pseudo_observations(data, ties)
    plot = a_plot(pobs, threshold=threshold)
    A = spline_fit_a(plot, interior_knots)
    statistic = residual_statistic(plot, A)

    heuristic = threshold is not None
    if heuristic:
        warnings.warn("Trimmed A-plot test has no asymptotic validation.")

    bootstrap = np.array(
        [
            _residual_replicate(
                A,
                pobs.n,
                plot.threshold,
                interior_knots,
                np.random.SeedSequence(seed, spawn_key=(b,)),
            )
            for b in range(replicates)
        ]
    )
    skipped = int(np.sum(np.isnan(bootstrap)))
    bootstrap = bootstrap[~np.isnan(bootstrap)]
    if len(bootstrap) == 0:
        msg = (
            f"None of the {replicates} bootstrap samples kept enough A-plot points "
            f"above threshold {plot.threshold} for a spline fit with {interior_knots} interior knots."
        )
        raise NumericError(msg)

    return TestReport(
        statistic=statistic,
        p_value=bootstrap_p_value(statistic, bootstrap, "A-plot residual"),
        method="aplot_resid",
        replicates=len(bootstrap),
        seed=seed,
        heuristic=heuristic,
        extras={
            "points": len(plot),
            "interior_knots": interior_knots,
            "n": pobs.n,
            "skipped_replicates": skipped,
        },
    )


def threshold_scan(
    pobs: Data,
    thresholds: Sequence[float],
    interior_knots: int = 10,
    ties: Optional[TiesPolicy] = None,
) -> pd.DataFrame:
    """Residual statistic of the trimmed A-plot for a range of thresholds

    Thresholds leaving too few points for the spline fit get a NaN statistic.

    Returns
    -------
    scan : pd.DataFrame
        Columns "threshold", "points" and "statistic".
    """

    pobs = as_pseudo_observations(pobs, ties)
    rows = []
    for threshold in thresholds:
        plot = a_plot(pobs, threshold=(threshold, threshold))
        try:
            statistic = residual_statistic(plot, spline_fit_a(plot, interior_knots))
        except DataError:
            statistic = np.nan
        rows.append({"threshold": float(threshold), "points": len(plot), "statistic": statistic})
    return pd.DataFrame(rows, columns=["threshold", "points", "statistic"])
