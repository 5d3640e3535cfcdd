#!/usr/bin/env python
# -*- coding: utf-8 -*-
# naive documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing
# dir.
import sys
import os

sys.path.insert(0, os.path.abspath('../..'))
from naive import __version__


extensions = ['sphinx.ext.autodoc', 'sphinx.ext.doctest',
              'sphinx.ext.intersphinx', 'sphinx.ext.todo',
              'sphinx.ext.coverage', 'sphinx.ext.viewcode']

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'naive'
copyright = u'2016, the naive developers'

version = __version__
release = __version__

exclude_patterns = []
pygments_style = 'default'

html_theme = 'pyramid'
html_static_path = ['_static']
htmlhelp_basename = 'naive_doc'

latex_documents = [
    ('index', 'naive.tex', u'naive Documentation',
     u'the naive developers', 'manual'),
]

man_pages = [
    ('index', 'naive', u'naive Documentation',
     [u'the naive developers'], 1)
]

intersphinx_mapping = {'http://docs.python.org/': None,
                       'http://docs.scipy.org/doc/numpy/': None}

autodoc_member_order = 'groupwise'
