# BSD 3-Clause License; see LICENSE

"""
Defines :doc:`cup48.rng.RngStream`, the only source of randomness in cup48.

A stream is identified by a 64-bit ``seed`` and a ``spawn_key`` (a tuple of
non-negative integers). Streams with the same identity produce bit-identical
sequences; streams with different spawn keys are statistically independent,
because they are built from ``numpy.random.SeedSequence`` entropy pools.

Monte Carlo batches derive one substream per tournament index, so a batch
that runs on many threads reproduces the serial batch exactly.
"""

from __future__ import absolute_import

import numpy

import cup48._util

_max_seed = 2 ** 64


class RngStream(object):
    """
    Args:
        seed (int): Non-negative integer below ``2**64``.
        spawn_key (tuple of int): Position of this stream in the tree of
            substreams derived from ``seed``.

    Deterministic random stream wrapping a ``numpy.random.Generator`` with
    the ``PCG64`` bit generator.

    A single stream must not be used from two threads at the same time;
    use :doc:`cup48.rng.RngStream.substream` to hand out independent streams.
    """

    def __init__(self, seed, spawn_key=()):
        if not cup48._util.isint(seed) or not 0 <= seed < _max_seed:
            raise ValueError(
                "seed must be an integer in [0, 2**64), not {0}".format(repr(seed))
            )
        self._seed = int(seed)
        self._spawn_key = tuple(int(x) for x in spawn_key)
        sequence = numpy.random.SeedSequence(self._seed, spawn_key=self._spawn_key)
        self._generator = numpy.random.Generator(numpy.random.PCG64(sequence))

    def __repr__(self):
        return "<RngStream seed={0} spawn_key={1} at 0x{2:012x}>".format(
            self._seed, self._spawn_key, id(self)
        )

    @property
    def seed(self):
        """
        The root seed of this stream.
        """
        return self._seed

    @property
    def spawn_key(self):
        """
        Path from the root seed to this stream.
        """
        return self._spawn_key

    @property
    def generator(self):
        """
        The underlying ``numpy.random.Generator``.
        """
        return self._generator

    def substream(self, index):
        """
        Returns the independent stream with spawn key ``spawn_key + (index,)``.

        The result depends only on ``(seed, spawn_key, index)``, not on how
        much of this stream has already been consumed.
        """
        if not cup48._util.isint(index) or index < 0:
            raise ValueError(
                "substream index must be a non-negative integer, not {0}".format(
                    repr(index)
                )
            )
        return RngStream(self._seed, self._spawn_key + (int(index),))

    def uniform(self):
        """
        One draw from the uniform distribution on ``[0, 1)``.
        """
        return float(self._generator.random())

    def poisson(self, lam):
        """
        One draw from a Poisson distribution with mean ``lam``.
        """
        return int(self._generator.poisson(lam))

    def coin(self):
        """
        True or False with probability 1/2 each.
        """
        return bool(self._generator.integers(0, 2))

    def integers(self, low, high, size=None):
        """
        Uniform integers in ``[low, high)``.
        """
        return self._generator.integers(low, high, size=size)

    def permutation(self, n):
        """
        A uniformly random permutation of ``range(n)`` as a list.
        """
        return [int(x) for x in self._generator.permutation(n)]

    def lot(self, n):
        """
        ``n`` random tie-break keys: a random permutation, so no two keys are
        equal.
        """
        return self.permutation(n)
