# BSD 3-Clause License; see LICENSE

"""
Utilities for internal use. This is not a public interface and may be changed
without notice.
"""

from __future__ import absolute_import

import numbers
import os

import numpy


def isint(x):
    """
    Returns True if and only if `x` is an integer (including NumPy, not
    including bool).
    """
    return isinstance(x, (int, numbers.Integral, numpy.integer)) and not isinstance(
        x, (bool, numpy.bool_)
    )


def isnum(x):
    """
    Returns True if and only if `x` is a number (including NumPy, not
    including bool).
    """
    return isinstance(x, (int, float, numbers.Real, numpy.number)) and not isinstance(
        x, (bool, numpy.bool_)
    )


def regularize_path(path):
    """
    Accepts str or any ``os.PathLike`` (such as pytest's ``tmpdir`` paths).
    """
    return os.fspath(path)


def ensure_dir(path):
    """
    Creates directory ``path`` (and parents) if it does not exist and returns
    the regularized path.
    """
    path = regularize_path(path)
    if not os.path.isdir(path):
        os.makedirs(path)
    return path


def open_for_writing(where):
    """
    Returns a ``(file, should_close)`` pair: ``where`` may be a path or an
    already-open text file object.
    """
    if hasattr(where, "write"):
        return where, False
    return open(regularize_path(where), "w", newline=""), True


def fixture_label(number):
    """
    Fixture ids are ``M`` followed by a two-digit (or longer) match number.
    """
    return "M{0:02d}".format(number)
