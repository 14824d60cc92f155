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


from dataclasses import dataclass, replace
from enum import Enum
import os
from pathlib import Path
from importlib.metadata import entry_points
from typing import Callable, Dict, List, Optional, Set, Text, Tuple, Union
import warnings

import yaml

from . import kendall, pickands
from .copula import MultiplierConfig
from .maxstab import MaxStabConfig, test_maxstab
from .ranks import Data, TiesPolicy
from .report import TestReport


# controls what to do in case of study or test name conflict
class LoadingMode(Enum):
    OVERRIDE = 0  # override existing entry
    KEEP = 1  # keep existing entry
    ERROR = 2  # raise an error


@dataclass(frozen=True)
class TestSettings:
    """Run-time settings shared by every registered test

    Parameters
    ----------
    replicates : int, optional
        Number of bootstrap replicates B. Defaults to 1000.
    law : {"normal", "rademacher"}, optional
        Multiplier law. Defaults to "normal".
    bandwidth : float, optional
        Bandwidth of empirical copula partial derivatives. Defaults to n^{-1/2}.
    seed : int, optional
        Bootstrap seed. Defaults to 0.
    r_values : tuple of float, optional
        Powers of the max-stability test. Defaults to (3, 4, 5).
    threshold : tuple of float, optional
        Tail threshold (maxstab) or A-plot trimming threshold (aplot_resid).
    interior_knots : int, optional
        Interior knots of the A-plot spline. Defaults to 10.
    estimator : {"plugin", "ustat"}, optional
        Moment estimator of s3n. Defaults to "plugin".
    ties : TiesPolicy, optional
        Ties policy applied to raw data.
    """

    __test__ = False

    replicates: int = 1000
    law: Text = "normal"
    bandwidth: Optional[float] = None
    seed: int = 0
    r_values: Tuple[float, ...] = (3.0, 4.0, 5.0)
    threshold: Optional[Tuple[float, ...]] = None
    interior_knots: int = 10
    estimator: Text = "plugin"
    ties: Optional[TiesPolicy] = None

    def multiplier(self) -> MultiplierConfig:
        return MultiplierConfig(
            replicates=self.replicates, law=self.law, bandwidth=self.bandwidth, seed=self.seed
        )

    def with_seed(self, seed: int) -> "TestSettings":
        return replace(self, seed=seed)


Runner = Callable[[Data, TestSettings], TestReport]


def run_s2n(data: Data, settings: TestSettings) -> TestReport:
    return kendall.test_s2n(data, ties=settings.ties)


def run_s3n(data: Data, settings: TestSettings) -> TestReport:
    return kendall.test_s3n(data, ties=settings.ties, estimator=settings.estimator)


def run_maxstab(data: Data, settings: TestSettings) -> TestReport:
    cfg = MaxStabConfig(
        r_values=settings.r_values,
        multiplier=settings.multiplier(),
        tail_threshold=settings.threshold,
    )
    return test_maxstab(data, cfg, ties=settings.ties)


def run_pickands_a(data: Data, settings: TestSettings) -> TestReport:
    return pickands.test_pickands_a(data, settings.multiplier(), ties=settings.ties)


def run_aplot_resid(data: Data, settings: TestSettings) -> TestReport:
    return pickands.test_aplot_residual(
        data,
        replicates=settings.replicates,
        seed=settings.seed,
        threshold=settings.threshold,
        interior_knots=settings.interior_knots,
        ties=settings.ties,
    )


BUILTIN_TESTS: Dict[Text, Runner] = {
    "s2n": run_s2n,
    "s3n": run_s3n,
    "maxstab": run_maxstab,
    "pickands_a": run_pickands_a,
    "aplot_resid": run_aplot_resid,
}

# tests that do not resample
ASYMPTOTIC_TESTS = ("s2n", "s3n")

# third-party tests, declared as "evtest.test" entry points
try:
    # Python >= 3.10 style
    TEST_PLUGINS = {ep.name: ep for ep in entry_points(group="evtest.test")}
except TypeError:
    # Python < 3.10 style
    TEST_PLUGINS = {ep.name: ep for ep in entry_points().get("evtest.test", [])}


# Content of a studies.yml file:
#
# Requirements:
#     - relative/path/to/other/studies.yml
#
# Studies:
#     comparison:
#         families: [gumbel, clayton]
#         taus: [0.25, 0.5]
#         n: 200
#         reps: {s2n: 500, maxstab: 200}
#         replicates: 250
#         tests: [s2n, maxstab]


class Registry:
    """Registry of tests and power studies

    Usage
    -----
    >>> from evtest import registry
    >>> registry.load_studies("/path/to/studies.yml")
    >>> spec = registry.get_study("comparison")
    >>> report = registry.get_test("s2n")(data, TestSettings())
    """

    def __init__(self) -> None:
        # Mapping of studies.yml paths to their (raw) configuration
        self.configs: Dict[Path, Dict] = dict()

        # Mapping of study names to their raw configuration, and to the
        # file that defined them
        self.studies: Dict[Text, Dict] = dict()
        self.sources: Dict[Text, Path] = dict()

        self.tests: Dict[Text, Runner] = dict(BUILTIN_TESTS)

    # -- tests ---------------------------------------------------------------

    def register_test(self, name: Text, runner: Runner, mode: LoadingMode = LoadingMode.OVERRIDE):
        """Register a test under `name`

        Parameters
        ----------
        name : str
            Test identifier.
        runner : callable
            runner(data, settings) -> TestReport
        mode : LoadingMode, optional
            Controls how to handle conflicts in test names.
            Defaults to overriding the existing test.
        """

        if name in self.tests or name in TEST_PLUGINS:
            if mode == LoadingMode.ERROR:
                raise RuntimeError(f"Cannot register {name} test as it already exists.")
            elif mode == LoadingMode.KEEP:
                warnings.warn(f"Skipping {name} test as it already exists.")
                return
            warnings.warn(f"Replacing existing {name} test.")
        self.tests[name] = runner

    @property
    def test_names(self) -> List[Text]:
        return list(self.tests) + [name for name in TEST_PLUGINS if name not in self.tests]

    def get_test(self, name: Text) -> Runner:
        """Get test runner by identifier

        Parameters
        ----------
        name : str
            Test identifier (e.g. "s2n", "maxstab").

        Returns
        -------
        runner : callable
            runner(data, settings) -> TestReport
        """

        if name not in self.tests and name in TEST_PLUGINS:
            self.tests[name] = TEST_PLUGINS[name].load()

        try:
            return self.tests[name]
        except KeyError:
            msg = f'Unknown test "{name}". Available tests are: {", ".join(self.test_names)}.'
            raise ValueError(msg)

    def check_tests(self, names: List[Text]):
        """Make sure every test identifier is known"""
        for name in names:
            self.get_test(name)

    # -- studies -------------------------------------------------------------

    def load_studies(
        self,
        path: Union[Text, Path],
        mode: LoadingMode = LoadingMode.OVERRIDE,
    ):
        """Load YAML configuration file into the registry

        Parameters
        ----------
        path : str or Path
            Path to YAML configuration file.
        mode : LoadingMode, optional
            Controls how to handle conflicts in study names.
            Defaults to overriding the existing study.
        """

        self._load_studies_helper(path, mode=mode, loading=set())

    def _load_studies_helper(
        self,
        studies_yml: Union[Text, Path],
        mode: LoadingMode = LoadingMode.OVERRIDE,
        loading: Optional[Set[Path]] = None,
    ):
        """Helper function for recursive loading"""

        if loading is None:
            loading = set()

        # make path absolute
        studies_yml = Path(studies_yml).expanduser().resolve()

        # stop here if configuration file is already being loaded
        # (possibly because of circular requirements)
        if studies_yml in loading:
            return
        loading.add(studies_yml)

        with open(studies_yml, "r") as f:
            config = yaml.load(f, Loader=yaml.SafeLoader) or dict()

        # load every requirement first
        requirements = config.pop("Requirements", list())
        if not isinstance(requirements, list):
            requirements = [requirements]
        for requirement_yml in requirements:
            requirement_yml = Path(requirement_yml)
            if not requirement_yml.is_absolute():
                requirement_yml = studies_yml.parent / requirement_yml
            self._load_studies_helper(requirement_yml, mode=mode, loading=loading)

        studies = config.get("Studies", dict()) or dict()
        for name, study in studies.items():
            name = str(name)
            if name in self.studies:
                if mode == LoadingMode.ERROR:
                    raise RuntimeError(
                        f"Cannot load {name} study from '{studies_yml}' as it already exists."
                    )
                elif mode == LoadingMode.KEEP:
                    warnings.warn(
                        f"Skipping {name} study defined in '{studies_yml}' as it already exists."
                    )
                    continue
                elif self.sources[name] != studies_yml:
                    warnings.warn(
                        f"Replacing existing {name} study by the one defined in '{studies_yml}'."
                    )

            self.studies[name] = dict(study)
            self.sources[name] = studies_yml

        self.configs[studies_yml] = config

    def get_study(self, name: Text, **overrides):
        """Get power study by name

        Parameters
        ----------
        name : str
            Study name.
        **overrides
            PowerSpec fields replacing those of the configuration file.

        Returns
        -------
        spec : PowerSpec
        """

        # imported here to avoid circular imports
        from .power import PowerSpec

        try:
            config = dict(self.studies[name])
        except KeyError:
            msg = (
                f'Could not find "{name}" study. Known studies are: '
                f'{", ".join(self.studies) or "none"}. Studies are defined in '
                f'the "Studies" section of a studies.yml file.'
            )
            raise ValueError(msg)

        config.update({key: value for key, value in overrides.items() if value is not None})
        spec = PowerSpec.from_config(config)
        self.check_tests(list(spec.tests))
        return spec

    # iterate over all studies by name
    def __iter__(self):
        return iter(self.studies)


def _env_config_paths() -> List[Path]:
    """Parse EVTEST_CONFIG environment variable

    EVTEST_CONFIG may contain multiple paths separated by ";".
    """

    content = os.environ.get("EVTEST_CONFIG", "")

    paths = []
    for path in content.split(";"):
        if not path:
            continue
        path = Path(path).expanduser()
        if path.is_file():
            paths.append(path)
    return paths


def _find_default_ymls() -> List[Path]:
    """Get paths to default YAML configuration files

    * bundled evtest/studies.yml
    * $HOME/.evtest/studies.yml
    * $CWD/studies.yml
    * EVTEST_CONFIG environment variable
    """

    paths: List[Path] = [Path(__file__).parent / "studies.yml"]

    home_yml = Path("~/.evtest/studies.yml").expanduser()
    if home_yml.is_file():
        paths.append(home_yml)

    cwd_yml = Path.cwd() / "studies.yml"
    if cwd_yml.is_file() and cwd_yml.resolve() not in [p.resolve() for p in paths]:
        paths.append(cwd_yml)

    paths += _env_config_paths()

    return paths


# initialize the registry singleton
registry = Registry()

# load all studies yaml files found at startup
for yml in _find_default_ymls():
    if yml.is_file():
        registry.load_studies(yml)
