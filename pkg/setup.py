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


from setuptools import setup, find_packages

setup(
    # package
    packages=find_packages(exclude=["tests"]),
    package_data={"evtest": ["studies.yml"]},
    install_requires=[
        "numpy >= 1.22",
        "scipy >= 1.8",
        "pyYAML >= 3.12",
        "pandas >= 1.3",
        "typer >= 0.12.1",
        "pathos >= 0.3",
    ],
    entry_points={
        "console_scripts": [
            "evtest=evtest.cli:main",
        ],
    },
    version="0.1.0",
    python_requires=">=3.9",
    # PyPI
    name="evtest",
    description=("Rank-based tests of extreme-value dependence for multivariate data"),
    author="evtest contributors",
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Natural Language :: English",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    extras_require={
        "testing": ["pytest", "flake8==3.7.9"],
        "doc": [
            "Sphinx == 2.2.2",
            "sphinx_rtd_theme == 0.4.3",
        ],
    },
)
