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
Simulation
###########

Samplers of bivariate copulas, Kendall's tau <-> parameter maps and
closed-form (or quadrature) copula evaluation.

Usage
-----
>>> from evtest.simulation import CopulaFamily, sample, param_from_tau
>>> gumbel = CopulaFamily("gumbel", param_from_tau("gumbel", 0.5))
>>> U = sample(gumbel, 200, seed=42)
"""

from dataclasses import dataclass
from typing import Optional, Text, Tuple, Union

import numpy as np
from scipy import stats
from scipy.integrate import quad
from scipy.optimize import bisect

from .errors import DataError, NumericError
from .pickands import PickandsEstimate, ev_copula_from_a
from .ranks import Data, TiesPolicy, as_pseudo_observations, kendall_tau_jackknife

FAMILIES = ("gumbel", "clayton", "frank", "gaussian", "student_t4", "independence", "ev_from_a")

# degrees of freedom of the Student t copula
STUDENT_DF = 4

# conditional inversion of extreme-value copulas: log(v) is searched in
# [LOG_V_MIN, 0] until the bracket is narrower than INVERSION_TOLERANCE
LOG_V_MIN = -700.0
INVERSION_TOLERANCE = 1e-10

Seed = Union[None, int, np.random.SeedSequence, np.random.Generator]


@dataclass(frozen=True)
class CopulaFamily:
    """Parametric bivariate copula

    Parameters
    ----------
    family : str
        One of "gumbel", "clayton", "frank", "gaussian", "student_t4",
        "independence" or "ev_from_a".
    parameter : float, optional
        theta (gumbel, clayton, frank) or correlation rho (gaussian, student_t4).
    pickands : PickandsEstimate, optional
        Pickands dependence function (ev_from_a only).
    """

    family: Text
    parameter: float = 0.0
    pickands: Optional[PickandsEstimate] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            msg = f'Unknown copula family "{self.family}". Use one of {", ".join(FAMILIES)}.'
            raise ValueError(msg)

        theta = self.parameter
        if self.family == "gumbel" and not theta >= 1.0:
            raise ValueError(f"Gumbel-Hougaard parameter must be >= 1 (got {theta}).")
        if self.family == "clayton" and not theta > 0.0:
            raise ValueError(f"Clayton parameter must be > 0 (got {theta}).")
        if self.family == "frank" and (theta == 0.0 or not np.isfinite(theta)):
            raise ValueError(f"Frank parameter must be finite and non-zero (got {theta}).")
        if self.family in ("gaussian", "student_t4") and not -1.0 < theta < 1.0:
            raise ValueError(f"Correlation must lie in (-1, 1) (got {theta}).")
        if self.family == "ev_from_a" and self.pickands is None:
            raise ValueError('"ev_from_a" family needs a Pickands dependence function.')

    @property
    def name(self) -> Text:
        if self.family in ("independence", "ev_from_a"):
            return self.family
        return f"{self.family}({self.parameter:g})"


def _positive_stable(alpha: float, size: int, rng: np.random.Generator) -> np.ndarray:
    """Positive stable variates with Laplace transform exp(-s^alpha), 0 < alpha < 1"""
    angle = rng.uniform(0.0, np.pi, size)
    W = rng.exponential(1.0, size)
    return (
        np.sin(alpha * angle)
        / np.sin(angle) ** (1.0 / alpha)
        * (np.sin((1.0 - alpha) * angle) / W) ** ((1.0 - alpha) / alpha)
    )


def conditional_cdf(A: PickandsEstimate, u: np.ndarray, log_v: np.ndarray) -> np.ndarray:
    """dC(u, v)/du of the extreme-value copula with Pickands function A

    C(u, v) / u * [A(z) - z A'(z)] with z = log(v) / log(u v).
    """

    log_uv = np.log(u) + log_v
    z = np.clip(log_v / log_uv, 0.0, 1.0)
    C = np.exp(log_uv * A(z))
    return np.clip(C / u * (A(z) - z * A.derivative(z)), 0.0, 1.0)


def sample_ev(A: PickandsEstimate, n: int, seed: Seed = None) -> np.ndarray:
    """Sample the extreme-value copula with Pickands function A by conditional inversion"""

    rng = np.random.default_rng(seed)
    u = rng.uniform(size=n)
    p = rng.uniform(size=n)

    lower = np.full(n, LOG_V_MIN)
    upper = np.zeros(n)
    while np.max(upper - lower) > INVERSION_TOLERANCE:
        middle = 0.5 * (lower + upper)
        below = conditional_cdf(A, u, middle) < p
        lower = np.where(below, middle, lower)
        upper = np.where(below, upper, middle)

    return np.column_stack([u, np.exp(0.5 * (lower + upper))])


def sample(family: CopulaFamily, n: int, seed: Seed = None) -> np.ndarray:
    """Draw n pairs from a bivariate copula

    Parameters
    ----------
    family : CopulaFamily
    n : int
        Sample size.
    seed : int, SeedSequence or Generator, optional

    Returns
    -------
    U : (n, 2) array
        Pairs with uniform margins.
    """

    if n < 1:
        raise DataError(f"Sample size must be positive (got {n}).")

    if family.family == "ev_from_a":
        return sample_ev(family.pickands, n, seed=seed)

    rng = np.random.default_rng(seed)
    theta = family.parameter

    if family.family == "independence" or (family.family == "gumbel" and theta == 1.0):
        return rng.uniform(size=(n, 2))

    if family.family == "gumbel":
        V = _positive_stable(1.0 / theta, n, rng)
        E = rng.exponential(1.0, (n, 2))
        return np.exp(-((E / V[:, None]) ** (1.0 / theta)))

    if family.family == "clayton":
        V = rng.gamma(1.0 / theta, 1.0, n)
        E = rng.exponential(1.0, (n, 2))
        return (1.0 + E / V[:, None]) ** (-1.0 / theta)

    if family.family == "frank":
        u = rng.uniform(size=n)
        p = rng.uniform(size=n)
        a = np.exp(-theta * u)
        x = p * np.expm1(-theta) / (a - p * (a - 1.0))
        return np.column_stack([u, -np.log1p(x) / theta])

    # elliptical families
    rho = theta
    e = rng.standard_normal((n, 2))
    X = np.column_stack([e[:, 0], rho * e[:, 0] + np.sqrt(1.0 - rho ** 2) * e[:, 1]])
    if family.family == "gaussian":
        return stats.norm.cdf(X)

    W = rng.chisquare(STUDENT_DF, n)
    return stats.t.cdf(X / np.sqrt(W / STUDENT_DF)[:, None], STUDENT_DF)


def _debye1(theta: float) -> float:
    """First Debye function (1/theta) int_0^theta x / (e^x - 1) dx, theta > 0"""

    def integrand(x):
        return 1.0 if x == 0.0 else x / np.expm1(x)

    value, _ = quad(integrand, 0.0, theta)
    return value / theta


def _frank_tau(theta: float) -> float:
    if theta < 0:
        return -_frank_tau(-theta)
    return 1.0 - 4.0 / theta + 4.0 * _debye1(theta) / theta


def tau_from_param(family: Text, parameter: float) -> float:
    """Kendall's tau of a parametric family"""

    if family == "independence":
        return 0.0
    if family == "ev_from_a":
        raise ValueError('Kendall\'s tau of "ev_from_a" family has no closed form.')

    # validates the parameter
    CopulaFamily(family, parameter)
    if family == "gumbel":
        return 1.0 - 1.0 / parameter
    if family == "clayton":
        return parameter / (parameter + 2.0)
    if family == "frank":
        return _frank_tau(parameter)
    return float(2.0 / np.pi * np.arcsin(parameter))


def param_from_tau(family: Text, tau: float) -> float:
    """Parameter of a family with given Kendall's tau

    Parameters
    ----------
    family : str
        "gumbel", "clayton", "frank", "gaussian" or "student_t4".
    tau : float

    Returns
    -------
    parameter : float
        theta or rho.
    """

    if family == "gumbel":
        if not 0.0 <= tau < 1.0:
            raise ValueError(f"Gumbel-Hougaard copulas have tau in [0, 1) (got {tau}).")
        return 1.0 / (1.0 - tau)

    if family == "clayton":
        if not 0.0 < tau < 1.0:
            raise ValueError(f"Clayton copulas have tau in (0, 1) (got {tau}).")
        return 2.0 * tau / (1.0 - tau)

    if family in ("gaussian", "student_t4"):
        if not -1.0 < tau < 1.0:
            raise ValueError(f"Elliptical copulas have tau in (-1, 1) (got {tau}).")
        return float(np.sin(np.pi * tau / 2.0))

    if family == "frank":
        if tau == 0.0 or not -1.0 < tau < 1.0:
            raise ValueError(f"Frank copulas have tau in (-1, 0) or (0, 1) (got {tau}).")
        if abs(tau) > _frank_tau(1e4):
            raise ValueError(f"Kendall's tau {tau} is out of reach of the Frank parameter search.")
        theta = bisect(lambda x: _frank_tau(x) - abs(tau), 1e-6, 1e4, xtol=1e-10)
        return float(np.sign(tau) * theta)

    raise ValueError(f'Cannot map Kendall\'s tau to a parameter of "{family}" family.')


def family_from_tau(family: Text, tau: float) -> CopulaFamily:
    """CopulaFamily with given Kendall's tau"""
    if family == "independence":
        return CopulaFamily("independence")
    return CopulaFamily(family, param_from_tau(family, tau))


def _elliptical_cdf(x1: float, x2: float, rho: float, student: bool) -> float:
    """P(X1 <= x1, X2 <= x2) by integrating the conditional c.d.f. of X2 given X1"""

    if student:
        nu = STUDENT_DF

        def integrand(s):
            scale = np.sqrt((nu + s ** 2) * (1.0 - rho ** 2) / (nu + 1.0))
            return stats.t.pdf(s, nu) * stats.t.cdf((x2 - rho * s) / scale, nu + 1.0)

    else:

        def integrand(s):
            return stats.norm.pdf(s) * stats.norm.cdf((x2 - rho * s) / np.sqrt(1.0 - rho ** 2))

    value, _ = quad(integrand, -np.inf, x1, epsabs=1e-10, epsrel=1e-8)
    return value


def analytic_copula(family: CopulaFamily, u) -> float:
    """Evaluate a parametric copula at u in [0, 1]^2"""

    u1, u2 = (float(x) for x in u)
    if not (0.0 <= u1 <= 1.0 and 0.0 <= u2 <= 1.0):
        raise DataError(f"Copulas are evaluated on [0, 1]^2 only (got {u}).")

    # boundary conditions shared by all copulas
    if u1 == 0.0 or u2 == 0.0:
        return 0.0
    if u1 == 1.0:
        return u2
    if u2 == 1.0:
        return u1

    theta = family.parameter
    if family.family == "independence" or (family.family == "gumbel" and theta == 1.0):
        return u1 * u2
    if family.family == "gumbel":
        return float(np.exp(-(((-np.log(u1)) ** theta + (-np.log(u2)) ** theta) ** (1.0 / theta))))
    if family.family == "clayton":
        return float((u1 ** -theta + u2 ** -theta - 1.0) ** (-1.0 / theta))
    if family.family == "frank":
        ratio = np.expm1(-theta * u1) * np.expm1(-theta * u2) / np.expm1(-theta)
        return float(-np.log1p(ratio) / theta)
    if family.family == "ev_from_a":
        return ev_copula_from_a(family.pickands, [u1, u2])
    if family.family == "gaussian":
        return _elliptical_cdf(stats.norm.ppf(u1), stats.norm.ppf(u2), theta, student=False)
    return _elliptical_cdf(
        stats.t.ppf(u1, STUDENT_DF), stats.t.ppf(u2, STUDENT_DF), theta, student=True
    )


def fit_gumbel_itau(data: Data, ties: Optional[TiesPolicy] = None) -> Tuple[float, float]:
    """Gumbel-Hougaard fit by inversion of Kendall's tau

    Returns
    -------
    theta : float
        1 / (1 - tau_n).
    std_err : float
        se(tau_n) / (1 - tau_n)^2 with the jackknife standard error of tau_n.
    """

    pobs = as_pseudo_observations(data, ties)
    tau, std_err = kendall_tau_jackknife(pobs)
    if tau <= 0.0:
        msg = f"Gumbel-Hougaard copulas cannot represent Kendall's tau {tau:.4f} <= 0."
        raise DataError(msg)
    if tau >= 1.0:
        raise NumericError("Kendall's tau is 1: the Gumbel-Hougaard parameter is infinite.")
    return 1.0 / (1.0 - tau), std_err / (1.0 - tau) ** 2
