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


"""Data loaders"""

from pathlib import Path
from typing import List, Optional, Sequence, Text, Tuple, Union

import numpy as np
import pandas as pd

from .errors import DataError
from .ranks import DataMatrix


def load_csv(
    file_csv: Union[Text, Path],
    columns: Optional[Sequence[Text]] = None,
    group_column: Optional[Text] = None,
) -> Tuple[DataMatrix, Optional[List[Text]]]:
    """Load observations from CSV file

    CSV files have a header row of column names and one observation per row.

    Parameters
    ----------
    file_csv : `str` or `Path`
        Path to CSV file.
    columns : list of `str`, optional
        Columns to keep, in that order. Defaults to every column but
        `group_column`.
    group_column : `str`, optional
        Name of a column holding group labels (e.g. "2004-01" for monthly
        maxima). It is never used as an observation.

    Returns
    -------
    data : `DataMatrix`
        Observations.
    groups : `list` of `str` or None
        Group label of each observation, when `group_column` is provided.
    """

    try:
        frame = pd.read_csv(file_csv, dtype=str, skipinitialspace=True)
    except (pd.errors.EmptyDataError, pd.errors.ParserError) as e:
        msg = f'Could not parse "{file_csv}": {e}'
        raise DataError(msg) from e

    if group_column is not None and group_column not in frame.columns:
        msg = f'Could not find group column "{group_column}" in "{file_csv}".'
        raise DataError(msg)

    if columns is None:
        columns = [c for c in frame.columns if c != group_column]
    else:
        missing = [c for c in columns if c not in frame.columns]
        if missing:
            msg = f'Could not find column(s) {", ".join(missing)} in "{file_csv}".'
            raise DataError(msg)
    columns = list(columns)

    if not columns:
        raise DataError(f'"{file_csv}" has no data column.')
    if len(frame) == 0:
        raise DataError(f'"{file_csv}" has no observation.')

    values = frame[columns].apply(pd.to_numeric, errors="coerce")
    bad = values.isna().to_numpy() | ~np.isfinite(values.to_numpy(dtype=float))
    if np.any(bad):
        row, col = np.argwhere(bad)[0]
        raw = frame[columns].iat[row, col]
        # +2: header line and 1-based numbering
        msg = (
            f'Invalid value "{raw}" in "{file_csv}" at row {row + 1} '
            f'(line {row + 2}), column "{columns[col]}".'
        )
        raise DataError(msg)

    data = DataMatrix(values.to_numpy(dtype=float), labels=tuple(columns))

    groups = None
    if group_column is not None:
        groups = frame[group_column].fillna("").astype(str).tolist()

    return data, groups


def save_csv(file_csv: Union[Text, Path], frame: pd.DataFrame):
    """Save table to CSV file (floats with 10 significant digits)"""
    Path(file_csv).parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(file_csv, index=False, float_format="%.10g")
