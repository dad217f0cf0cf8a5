# -*- coding: utf-8 -*-
#
# ransomgame documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing
# dir.

import datetime
import os
import sys

# Document the package from the source tree.
sys.path.insert(0, os.path.abspath(os.path.join('..', 'src')))

import ransomgame  # noqa

# -- General configuration ----------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.autosummary',
    'sphinx.ext.doctest',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'contents'

authors = ['The ransomgame developers']
project = 'ransomgame'
copyright = u'%s, %s' % (datetime.datetime.now().year, ', '.join(authors))

# The short X.Y version.
version = '.'.join(ransomgame.__version__.split('.')[0:2])
# The full version, including alpha/beta/rc tags.
release = ransomgame.__version__

exclude_patterns = ['_build']
pygments_style = 'friendly'

# -- Options for HTML output --------------------------------------------------

try:
    import sphinx_rtd_theme
    html_theme = 'sphinx_rtd_theme'
    html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]
except ImportError:
    html_theme = 'default'

html_additional_pages = {}
htmlhelp_basename = 'ransomgamedoc'

# -- Options for LaTeX output -------------------------------------------------

latex_elements = {
    'classoptions': ',openany,oneside',
    'babel': '\\usepackage[english]{babel}'
}
latex_documents = [
    ('contents', 'ransomgame.tex', 'ransomgame Documentation',
     ', '.join(authors), 'manual'),
]

# -- Options for manual page output -------------------------------------------

man_pages = [
    ('index', 'ransomgame', 'ransomgame Documentation',
     [', '.join(authors)], 1),
]

intersphinx_mapping = {
    'python': ('https://docs.python.org/3/', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
    'simpy': ('https://simpy.readthedocs.io/en/latest/', None),
}

autodoc_member_order = 'bysource'
