# -*- coding: utf-8 -*-
#
# evtest documentation build configuration file.

# allow evtest import
import os
import sys
sys.path.insert(0, os.path.abspath('../..'))

import evtest
import sphinx_rtd_theme


# -- General configuration ------------------------------------------------

extensions = ['sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode']

# docstrings follow the numpy convention
napoleon_google_docstring = False
napoleon_numpy_docstring = True
napoleon_use_param = True
napoleon_use_rtype = True

source_suffix = '.rst'
master_doc = 'index'

project = u'evtest'
copyright = u'2026, evtest contributors'
author = u'evtest contributors'

# short X.Y version and full release
version = evtest.__version__.split('+')[0]
release = evtest.__version__

exclude_patterns = []
pygments_style = 'sphinx'


# -- Options for HTML output ----------------------------------------------

html_theme = "sphinx_rtd_theme"
html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]
htmlhelp_basename = 'evtestdoc'


intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'pandas': ('https://pandas.pydata.org/docs/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
}
