# BSD 3-Clause License; see LICENSE

from __future__ import absolute_import

import sys

import cup48.cli

sys.exit(cup48.cli.main())
