# -*- coding: utf-8 -*-
#
# egcore documentation build configuration file
#

import sys
import os

sys.path.insert(0, os.path.abspath('../src'))

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.mathjax',
              'sphinx.ext.doctest',
              'sphinx.ext.viewcode',
              'sphinx.ext.autosummary',
]

source_suffix = '.rst'

project = u'egcore'
copyright = u'The egcore developers'

from egcore.version import version
release = version

html_show_sphinx = False
html_domain_indices = False
htmlhelp_basename = 'egcoredoc'
