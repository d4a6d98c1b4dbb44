# BSD 3-Clause License; see LICENSE

"""
Defines functions that import external libraries used by cup48, but not
required by a cup48 installation. (cup48 only requires NumPy).

If a library cannot be imported, these functions raise ``ImportError`` with
error messages containing instructions on how to install the library.
"""

from __future__ import absolute_import


def scipy_stats():
    """
    Imports and returns ``scipy.stats``.
    """
    try:
        import scipy.stats
    except ImportError:
        raise ImportError(
            """install the 'scipy' package with:

    pip install scipy

or

    conda install scipy"""
        )
    else:
        return scipy.stats
