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


"""evtest"""

from .errors import DataError, EvtestError, NumericError, TiesError
from .report import TestReport
from .ranks import DataMatrix, PseudoObs, TiesPolicy
from .ranks import pseudo_observations, as_pseudo_observations
from .ranks import block_maxima, block_maxima_by_group
from .ranks import kendall_tau
from .copula import EmpiricalCopula, MultiplierConfig, multiplier_replicates
from .kendall import test_s2n, test_s3n, cvm_kendall_distance
from .maxstab import MaxStabConfig, test_maxstab, test_mda_blockmax
from .pickands import PickandsEstimate, cfg_estimator, test_pickands_a, a_plot
from .pickands import spline_fit_a, test_aplot_residual
from .simulation import CopulaFamily, sample, param_from_tau, fit_gumbel_itau
from .registry import registry, LoadingMode, TestSettings
from .loader import load_csv

__version__ = "0.1.0"

# not test functions
for _function in (test_s2n, test_s3n, test_maxstab, test_mda_blockmax, test_pickands_a, test_aplot_residual):
    _function.__test__ = False
del _function


__all__ = [
    "registry",
    "LoadingMode",
    "TestSettings",
    "TestReport",
    "EvtestError",
    "DataError",
    "TiesError",
    "NumericError",
    "DataMatrix",
    "PseudoObs",
    "TiesPolicy",
    "pseudo_observations",
    "as_pseudo_observations",
    "block_maxima",
    "block_maxima_by_group",
    "kendall_tau",
    "EmpiricalCopula",
    "MultiplierConfig",
    "multiplier_replicates",
    "test_s2n",
    "test_s3n",
    "cvm_kendall_distance",
    "MaxStabConfig",
    "test_maxstab",
    "test_mda_blockmax",
    "PickandsEstimate",
    "cfg_estimator",
    "test_pickands_a",
    "a_plot",
    "spline_fit_a",
    "test_aplot_residual",
    "CopulaFamily",
    "sample",
    "param_from_tau",
    "fit_gumbel_itau",
    "load_csv",
    "__version__",
]
