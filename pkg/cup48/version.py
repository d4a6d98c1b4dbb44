# BSD 3-Clause License; see LICENSE

"""
Defines the version number string and tuple for this version of cup48.

The project's ``setup.py`` inspects this file for a version number.
"""

from __future__ import absolute_import

import re

__version__ = "0.3.0"
version = __version__
version_info = tuple(re.split(r"[-\.]", __version__))

del re
