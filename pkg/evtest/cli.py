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


from contextlib import contextmanager
from enum import Enum
from pathlib import Path
import sys
from typing import List, Optional, Text, Tuple

import numpy as np
import pandas as pd
import typer

try:  # typer >= 0.26 vendors click and raises its own exception classes
    from typer import _click as click
except ImportError:
    import click

from .errors import DataError, NumericError
from .experiments import randomize_experiment, summarize, ties_experiment, ties_experiment_summary
from .loader import load_csv, save_csv
from .maxstab import test_mda_blockmax
from .pickands import a_plot, spline_fit_a, threshold_scan
from .power import power_table_text, run_power_study
from .ranks import TiesPolicy, as_pseudo_observations, has_ties, ties_summary
from .registry import TestSettings, registry
from .simulation import CopulaFamily, param_from_tau, sample

app = typer.Typer(help="Rank-based tests of extreme-value dependence.")

# exit codes
USAGE_ERROR = 1
DATA_ERROR = 2
NUMERIC_ERROR = 3

SPLINE_EXPORT_GRID = 201


class Ties(str, Enum):
    average = "average"
    random = "random"
    max = "max"


class Family(str, Enum):
    gumbel = "gumbel"
    clayton = "clayton"
    frank = "frank"
    gaussian = "gaussian"
    student_t4 = "student_t4"
    independence = "independence"


def _split(text: Text) -> List[Text]:
    return [item.strip() for item in text.split(",") if item.strip()]


def _floats(text: Optional[Text], name: Text) -> Optional[Tuple[float, ...]]:
    if text is None:
        return None
    try:
        return tuple(float(x) for x in _split(text))
    except ValueError:
        raise typer.BadParameter(f'expected comma-separated numbers, got "{text}"', param_hint=name)


def _ties_policy(ties: Optional[Ties], seed: int) -> Optional[TiesPolicy]:
    return None if ties is None else TiesPolicy(ties.value, seed=seed)


@contextmanager
def _exit_codes():
    """Turn evtest errors into exit codes"""
    try:
        yield
    except DataError as e:
        typer.secho(f"Data error: {e}", fg=typer.colors.RED, err=True)
        raise typer.Exit(code=DATA_ERROR)
    except NumericError as e:
        typer.secho(f"Numerical failure: {e}", fg=typer.colors.RED, err=True)
        raise typer.Exit(code=NUMERIC_ERROR)
    except ValueError as e:
        typer.secho(f"Error: {e}", fg=typer.colors.RED, err=True)
        raise typer.Exit(code=USAGE_ERROR)


def _header(text: Text):
    typer.secho(text, fg=typer.colors.BRIGHT_GREEN, underline=True, bold=True)


def _out_dir(out: Optional[Path]) -> Optional[Path]:
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
    return out


InputOption = typer.Option(..., "--input", "-i", exists=True, dir_okay=False, help="CSV file with a header row.")
ColumnsOption = typer.Option(None, "--columns", help="Comma-separated data columns. Defaults to all.")
TiesOption = typer.Option(None, "--ties", help="Ties policy. Required when the data contain ties.")
SeedOption = typer.Option(0, "--seed", "-s", help="Seed of every random stream.")
TestsOption = typer.Option("s2n", "--tests", "-t", help="Comma-separated test identifiers.")
BOption = typer.Option(1000, "--B", "-B", help="Number of bootstrap replicates.")
OutOption = typer.Option(None, "--out", "-o", file_okay=False, help="Output directory.")


@app.command("test")
def test(
    input: Path = InputOption,
    columns: Optional[str] = ColumnsOption,
    tests: str = TestsOption,
    ties: Optional[Ties] = TiesOption,
    seed: int = SeedOption,
    B: int = BOption,
    r: str = typer.Option("3,4,5", "--r", help="Powers of the max-stability test."),
    block_length: Optional[int] = typer.Option(None, "--block-length", "-m", help="Test block maxima of M rows."),
    block_group: Optional[str] = typer.Option(None, "--block-group", help="Test block maxima within groups of COLUMN."),
    threshold: Optional[str] = typer.Option(None, "--threshold", help="Tail threshold t1,t2."),
    knots: int = typer.Option(10, "--knots", help="Interior knots of the A-plot spline."),
    estimator: str = typer.Option("plugin", "--estimator", help="Moment estimator of s3n (plugin or ustat)."),
    out: Optional[Path] = OutOption,
):
    """Run tests of extreme-value dependence (one JSON record per test)"""

    test_names = _split(tests)
    with _exit_codes():
        registry.check_tests(test_names)
        if block_length is not None and block_group is not None:
            raise ValueError("--block-length and --block-group are mutually exclusive.")

        data, groups = load_csv(
            input, columns=None if columns is None else _split(columns), group_column=block_group
        )
        settings = TestSettings(
            replicates=B,
            seed=seed,
            r_values=_floats(r, "--r"),
            threshold=_floats(threshold, "--threshold"),
            interior_knots=knots,
            estimator=estimator,
            ties=_ties_policy(ties, seed),
        )

        reports = []
        for name in test_names:
            if block_length is not None or groups is not None:
                report = test_mda_blockmax(
                    data, block_length=block_length, inner_test=name, settings=settings, groups=groups
                )
            else:
                report = registry.get_test(name)(data, settings)
            reports.append(report)

    lines = [report.to_json() for report in reports]
    for line in lines:
        typer.echo(line)

    out = _out_dir(out)
    if out is not None:
        (out / "reports.jsonl").write_text("".join(f"{line}\n" for line in lines))


@app.command("randomize")
def randomize(
    input: Path = InputOption,
    columns: Optional[str] = ColumnsOption,
    tests: str = TestsOption,
    randomizations: int = typer.Option(100, "--randomizations", "-k", help="Number of random tie resolutions."),
    seed: int = SeedOption,
    B: int = BOption,
    out: Optional[Path] = OutOption,
):
    """Repeat tests over random resolutions of ties"""

    with _exit_codes():
        data, _ = load_csv(input, columns=None if columns is None else _split(columns))
        results = randomize_experiment(
            data,
            _split(tests),
            randomizations=randomizations,
            seed=seed,
            settings=TestSettings(replicates=B, seed=seed),
        )
        summary = summarize(results.drop(columns=["randomization", "ties_seed"]))

    _header("Summary")
    typer.echo(summary.to_string(float_format=lambda x: f"{x:.4f}"))

    out = _out_dir(out)
    if out is not None:
        save_csv(out / "randomizations.csv", results)
        summary.index.name = "statistic"
        save_csv(out / "summary.csv", summary.reset_index())


@app.command("ties")
def ties_effect(
    input: Path = InputOption,
    columns: Optional[str] = ColumnsOption,
    tests: str = TestsOption,
    reps: int = typer.Option(100, "--reps", "-n", help="Number of simulated samples."),
    theta: Optional[float] = typer.Option(
        None, "--theta", help="Gumbel-Hougaard parameter. Defaults to the fit of the input data."
    ),
    seed: int = SeedOption,
    B: int = BOption,
    level: float = typer.Option(0.05, "--level", help="Significance level."),
    out: Optional[Path] = OutOption,
):
    """Compare p-values on continuous samples and on samples with the ties of the input data"""

    test_names = _split(tests)
    with _exit_codes():
        data, _ = load_csv(input, columns=None if columns is None else _split(columns))
        results = ties_experiment(
            data, test_names, reps=reps, theta=theta, seed=seed, settings=TestSettings(replicates=B, seed=seed)
        )
        rates, differences = ties_experiment_summary(results, test_names, level=level)

    _header(f"Rejection rates at level {level:g}")
    typer.echo(rates.to_string(float_format=lambda x: f"{x:.3f}"))
    for name, summary in differences.items():
        _header(f"{name}: differences of p-values")
        typer.echo(summary.to_string(float_format=lambda x: f"{x:.4f}"))

    out = _out_dir(out)
    if out is not None:
        save_csv(out / "ties.csv", results)
        rates.index.name = "test"
        save_csv(out / "rates.csv", rates.reset_index())


@app.command("aplot")
def aplot(
    input: Path = InputOption,
    columns: Optional[str] = ColumnsOption,
    ties: Optional[Ties] = TiesOption,
    seed: int = SeedOption,
    threshold: Optional[str] = typer.Option(None, "--threshold", help="Trimming threshold t1,t2."),
    knots: int = typer.Option(10, "--knots", help="Interior knots of the spline."),
    out: Path = typer.Option(Path("."), "--out", "-o", file_okay=False, help="Output directory."),
):
    """Export the A-plot and its spline fit (aplot.csv, spline.csv)"""

    with _exit_codes():
        data, _ = load_csv(input, columns=None if columns is None else _split(columns))
        pobs = as_pseudo_observations(data, _ties_policy(ties, seed))
        plot = a_plot(pobs, threshold=_floats(threshold, "--threshold"))
        A = spline_fit_a(plot, interior_knots=knots)

    grid = np.linspace(0.0, 1.0, SPLINE_EXPORT_GRID)
    out = _out_dir(out)
    save_csv(out / "aplot.csv", plot.to_frame())
    save_csv(out / "spline.csv", pd.DataFrame({"t": grid, "A": A(grid)}))
    typer.echo(f"{len(plot)} points ({plot.dropped} dropped) written to {out}")


@app.command("simulate")
def simulate(
    family: Family = typer.Option(..., "--family", "-f", help="Copula family."),
    tau: Optional[float] = typer.Option(None, "--tau", help="Kendall's tau."),
    parameter: Optional[float] = typer.Option(None, "--parameter", "-p", help="Copula parameter (theta or rho)."),
    n: int = typer.Option(1000, "--n", help="Sample size."),
    seed: int = SeedOption,
    out: Optional[Path] = typer.Option(None, "--out", "-o", dir_okay=False, help="Output CSV file."),
):
    """Draw a sample of uniforms from a copula"""

    with _exit_codes():
        if family == Family.independence:
            copula = CopulaFamily("independence")
        elif (tau is None) == (parameter is None):
            raise ValueError("Provide exactly one of --tau and --parameter.")
        else:
            value = param_from_tau(family.value, tau) if parameter is None else parameter
            copula = CopulaFamily(family.value, value)
        U = sample(copula, n, seed=seed)

    frame = pd.DataFrame(U, columns=["U1", "U2"])
    if out is None:
        typer.echo(frame.to_csv(index=False, float_format="%.10g"), nl=False)
    else:
        save_csv(out, frame)


@app.command("power")
def power(
    study: str = typer.Option("smoke", "--study", help="Study name (see `evtest studies`)."),
    tests: Optional[str] = typer.Option(None, "--tests", "-t", help="Comma-separated test identifiers."),
    reps: Optional[int] = typer.Option(None, "--reps", help="Samples per family and tau."),
    n: Optional[int] = typer.Option(None, "--n", help="Sample size."),
    B: Optional[int] = typer.Option(None, "--B", "-B", help="Number of bootstrap replicates."),
    level: Optional[float] = typer.Option(None, "--level", help="Significance level."),
    seed: Optional[int] = typer.Option(None, "--seed", "-s", help="Master seed."),
    jobs: int = typer.Option(1, "--jobs", "-j", help="Number of worker processes."),
    timings: bool = typer.Option(False, "--timings", help="Include mean runtimes in power.csv."),
    out: Optional[Path] = OutOption,
):
    """Estimate rejection rates by Monte Carlo"""

    with _exit_codes():
        spec = registry.get_study(
            study,
            tests=None if tests is None else _split(tests),
            reps=reps,
            n=n,
            replicates=B,
            level=level,
            seed=seed,
        )
        table = run_power_study(spec, jobs=jobs)

    _header(f"Rejection rates (%) of {study} study, n={spec.n}, level={spec.level:g}")
    typer.echo(power_table_text(table))

    out = _out_dir(out)
    if out is not None:
        # runtimes are not reproducible
        save_csv(out / "power.csv", table if timings else table.drop(columns=["runtime"]))


@app.command("info")
def info(
    input: Path = InputOption,
    columns: Optional[str] = ColumnsOption,
):
    """Print data set summary (size, distinct values, ties)"""

    with _exit_codes():
        data, _ = load_csv(input, columns=None if columns is None else _split(columns))

    _header(f"{input}")
    typer.echo(f"   {data.n} observations of {data.d} variables")
    for (label, distinct), tied in zip(ties_summary(data).items(), has_ties(data)):
        flag = " (ties)" if tied else ""
        typer.echo(f"   {label}: {distinct} distinct values{flag}")


@app.command("studies")
def studies():
    """Print list of power studies"""
    for name in registry:
        typer.echo(f"{name}")


@app.command("threshold-scan")
def scan(
    input: Path = InputOption,
    columns: Optional[str] = ColumnsOption,
    ties: Optional[Ties] = TiesOption,
    seed: int = SeedOption,
    thresholds: str = typer.Option(
        "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9", "--thresholds", help="Comma-separated thresholds."
    ),
    knots: int = typer.Option(10, "--knots", help="Interior knots of the spline."),
    out: Optional[Path] = OutOption,
):
    """Residual statistic of the trimmed A-plot for a range of thresholds"""

    with _exit_codes():
        data, _ = load_csv(input, columns=None if columns is None else _split(columns))
        pobs = as_pseudo_observations(data, _ties_policy(ties, seed))
        table = threshold_scan(pobs, _floats(thresholds, "--thresholds"), interior_knots=knots)

    typer.echo(table.to_string(index=False, float_format=lambda x: f"{x:.6g}"))

    out = _out_dir(out)
    if out is not None:
        save_csv(out / "threshold_scan.csv", table)


def main():
    try:
        code = app(standalone_mode=False)
    except click.exceptions.UsageError as e:
        e.show()
        sys.exit(USAGE_ERROR)
    except click.exceptions.Abort:
        typer.echo("Aborted!", err=True)
        sys.exit(USAGE_ERROR)
    sys.exit(code if isinstance(code, int) else 0)
