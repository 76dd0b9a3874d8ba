import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from masa import group_tower as gt
from masa.errors import DomainError, ResourceLimitError


def test_twist_golden():
    assert gt.twist(0).tolist() == [[1]]
    assert gt.twist(1).tolist() == [[0, 1], [1, 0]]
    # one expansion step: identity of size 2 top right, twist(1) bottom left
    assert gt.twist(2).tolist() == [[0, 0, 1, 0], [0, 0, 0, 1], [0, 1, 0, 0], [1, 0, 0, 0]]


@pytest.mark.parametrize("i", range(1, 9))
def test_twist_block_structure(i):
    t = gt.twist(i).entries
    h = 2 ** (i - 1)
    assert (t[:h, h:] == np.eye(h)).all()
    assert (t[h:, :h] == gt.twist(i - 1).entries).all()
    assert not t[:h, :h].any() and not t[h:, h:].any()


def test_group_table_golden():
    assert gt.group_table(0).tolist() == [[0]]
    assert gt.group_table(1).tolist() == [[0, 1], [1, 0]]
    assert gt.group_table(2).tolist() == [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 1, 0], [3, 2, 0, 1]]
    assert gt.group_table(3).tolist()[4] == [4, 5, 6, 7, 2, 3, 1, 0]


@pytest.mark.parametrize("i", range(1, 9))
def test_bottom_right_is_twisted_rows(i):
    t = gt.group_table(i).entries
    h = 2 ** (i - 1)
    prev = gt.group_table(i - 1).entries
    twisted = gt.twist(i - 1).entries.astype(np.int64) @ prev.astype(np.int64)
    assert (t[h:, h:] == twisted).all()
    assert (t[:h, h:] == prev + h).all() and (t[h:, :h] == prev + h).all()


def test_generator_golden():
    assert gt.generator(1) == (1, 0)
    assert gt.generator(2) == (2, 3, 1, 0)
    assert gt.generator(3) == (4, 5, 6, 7, 2, 3, 1, 0)


def test_generator_zero_is_degenerate():
    with pytest.raises(DomainError):
        gt.generator(0)


@pytest.mark.parametrize("i", range(1, 9))
def test_generator_matches_table_row(i):
    row = gt.group_table(i).entries[2 ** (i - 1)]
    assert gt.generator(i) == tuple(int(v) for v in row)


def test_multiply_examples():
    assert gt.multiply(2, 0, 3) == 3
    assert gt.multiply(2, 2, 1) == 3
    assert gt.multiply(3, 4, 4) == 2


@pytest.mark.parametrize("args", [(2, 4, 0), (2, 0, -1), (3, 8, 8)])
def test_multiply_out_of_range(args):
    with pytest.raises(DomainError):
        gt.multiply(*args)


def test_orbit_examples():
    assert gt.orbit(3, 1).elements == (1, 5, 3, 7, 0, 4, 2, 6)
    assert gt.orbit(3, 0).elements == (0, 4, 2, 6, 1, 5, 3, 7)
    assert gt.orbit(1, 0).elements == (0, 1)
    with pytest.raises(DomainError):
        gt.orbit(3, 8)


def test_level_limit(monkeypatch):
    with pytest.raises(ResourceLimitError):
        gt.twist(13)
    monkeypatch.setenv("MASA_MAX_LEVEL", "2")
    with pytest.raises(ResourceLimitError):
        gt.group_table(3)
    assert gt.group_table(2).order == 4


def test_tables_are_read_only():
    with pytest.raises(ValueError):
        gt.group_table(3).entries[0, 0] = 7


@pytest.mark.parametrize("i", range(0, 9))
def test_latin_symmetric_identity(i):
    t = gt.group_table(i).entries
    n = 2**i
    for row in t:
        assert sorted(row.tolist()) == list(range(n))
    for col in t.T:
        assert sorted(col.tolist()) == list(range(n))
    assert (t == t.T).all()
    assert t[0].tolist() == list(range(n))


@pytest.mark.parametrize("i", range(0, 5))
def test_associativity_exhaustive_small(i):
    n = 2**i
    for a, b, c in itertools.product(range(n), repeat=3):
        assert gt.multiply(i, a, gt.multiply(i, b, c)) == gt.multiply(i, gt.multiply(i, a, b), c)


@given(st.integers(6, 8).flatmap(lambda i: st.tuples(st.just(i), *[st.integers(0, 2**i - 1)] * 3)))
def test_associativity_sampled(args):
    i, a, b, c = args
    assert gt.multiply(i, a, gt.multiply(i, b, c)) == gt.multiply(i, gt.multiply(i, a, b), c)


@pytest.mark.parametrize("i", range(0, 8))
def test_nesting(i):
    h = 2**i
    assert (gt.group_table(i + 1).entries[:h, :h] == gt.group_table(i).entries).all()


@pytest.mark.parametrize("i", range(1, 9))
def test_orbit_position_arithmetic_agrees_with_table(i):
    o = gt.orbit(i, 0).elements
    assert [gt.orbit_element(i, p) for p in range(2**i)] == list(o)
    assert all(gt.orbit_position(i, x) == p for p, x in enumerate(o))


@given(st.integers(1, 8).flatmap(lambda i: st.tuples(st.just(i), st.integers(0, 2**i - 1), st.integers(0, 600))))
def test_generator_shift_matches_repeated_products(args):
    i, x, k = args
    mu = gt.generator_element(i)
    y = x
    for _ in range(k % 2**i):
        y = gt.multiply(i, mu, y)
    assert gt.generator_shift(i, x, k) == y


def test_generator_shift_beyond_table_limit():
    # level 20 has no table; the orbit of 0 still has full length
    i = 20
    x = 12345
    assert gt.generator_shift(i, x, 2**i) == x
    assert gt.generator_shift(i, 0, 1) == 2 ** (i - 1)
