# BSD 3-Clause License; see LICENSE

from __future__ import absolute_import

import numpy
import pytest

import cup48
import cup48.rng


def test_same_seed_same_sequence():
    one = cup48.rng.RngStream(12345)
    two = cup48.rng.RngStream(12345)
    assert [one.poisson(1.7) for i in range(50)] == [two.poisson(1.7) for i in range(50)]
    assert one.permutation(48) == two.permutation(48)
    assert one.uniform() == two.uniform()


def test_different_seeds_differ():
    one = cup48.rng.RngStream(1)
    two = cup48.rng.RngStream(2)
    assert one.permutation(48) != two.permutation(48)


def test_substream_ignores_consumption():
    fresh = cup48.rng.RngStream(99)
    used = cup48.rng.RngStream(99)
    for i in range(100):
        used.uniform()
    assert fresh.substream(7).permutation(48) == used.substream(7).permutation(48)
    assert fresh.substream(7).spawn_key == (7,)
    assert fresh.substream(7).substream(3).spawn_key == (7, 3)


def test_substreams_are_distinct():
    root = cup48.rng.RngStream(5)
    draws = [tuple(root.substream(i).permutation(20)) for i in range(10)]
    assert len(set(draws)) == 10
    assert root.substream(0).permutation(20) != root.permutation(20)


def test_permutation_and_lot():
    stream = cup48.rng.RngStream(3)
    perm = stream.permutation(48)
    assert sorted(perm) == list(range(48))
    lot = stream.lot(5)
    assert sorted(lot) == [0, 1, 2, 3, 4]


def test_coin_and_integers():
    stream = cup48.rng.RngStream(11)
    coins = [stream.coin() for i in range(200)]
    assert set(coins) == set([True, False])
    values = stream.integers(0, 3, size=300)
    assert isinstance(values, numpy.ndarray)
    assert set(values.tolist()) == set([0, 1, 2])


def test_bad_seeds():
    with pytest.raises(ValueError):
        cup48.rng.RngStream(-1)
    with pytest.raises(ValueError):
        cup48.rng.RngStream(2 ** 64)
    with pytest.raises(ValueError):
        cup48.rng.RngStream(1.5)
    with pytest.raises(ValueError):
        cup48.rng.RngStream(1).substream(-2)
    assert cup48.rng.RngStream(2 ** 64 - 1).seed == 2 ** 64 - 1


def test_top_level_name():
    assert cup48.RngStream is cup48.rng.RngStream
