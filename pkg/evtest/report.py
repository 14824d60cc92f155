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


"""Test reports"""

import json
from dataclasses import asdict, dataclass, field
from typing import Dict, Optional, Text

import numpy as np


@dataclass
class TestReport:
    """Outcome of a test of extreme-value dependence

    Parameters
    ----------
    statistic : float
        Observed value of the test statistic.
    p_value : float
        Approximate p-value, in [0, 1].
    method : str
        Test identifier (e.g. "s2n", "maxstab").
    replicates : int, optional
        Number of bootstrap replicates. 0 for asymptotic tests.
    seed : int, optional
        Seed of the resampling scheme, when there is one.
    heuristic : bool, optional
        True for procedures without asymptotic validation (tail-restricted
        or block-maxima variants).
    extras : dict, optional
        Auxiliary diagnostics (jackknife variance, Kendall's tau, block length...).
    """

    __test__ = False

    statistic: float
    p_value: float
    method: Text
    replicates: int = 0
    seed: Optional[int] = None
    heuristic: bool = False
    extras: Dict[Text, float] = field(default_factory=dict)

    def __post_init__(self):
        self.statistic = float(self.statistic)
        self.p_value = float(min(1.0, max(0.0, self.p_value)))
        self.extras = {key: _to_builtin(value) for key, value in self.extras.items()}

    def to_dict(self) -> Dict:
        return asdict(self)

    def to_json(self) -> Text:
        return json.dumps(self.to_dict(), sort_keys=True)


def _to_builtin(value):
    # json does not know about numpy scalars
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value
