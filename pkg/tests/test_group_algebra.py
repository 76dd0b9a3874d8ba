import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from masa import group_tower as gt
from masa.errors import DomainError
from masa.group_algebra import (
    GroupVector,
    convolve,
    delta,
    generator_power,
    inner,
    inverse,
    left_translate,
    norm,
    support,
    trace,
)


def vectors(level):
    amp = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)
    return st.dictionaries(st.integers(0, 2**level - 1), amp, max_size=8).map(
        lambda d: GroupVector.from_amplitudes(level, d)
    )


def leveled_vectors(max_level=5):
    return st.integers(1, max_level).flatmap(lambda i: st.tuples(st.just(i), vectors(i)))


def test_normal_form_drops_zeros_and_checks_range():
    v = GroupVector.from_amplitudes(2, {0: 1.0, 1: 0.0, 3: 1e-17})
    assert support(v) == {0}
    with pytest.raises(DomainError):
        GroupVector.from_amplitudes(2, {4: 1.0})


def test_left_translate_examples():
    assert left_translate(2, 2, delta(2, 1)) == delta(2, 3)
    assert left_translate(3, 4, delta(3, 4)) == delta(3, 2)
    v = GroupVector.from_amplitudes(3, {1: 1j, 6: 0.5})
    assert left_translate(3, 0, v) == v
    with pytest.raises(DomainError):
        left_translate(2, 1, delta(3, 1))


def test_convolve_examples():
    assert convolve(1, delta(1, 1), delta(1, 1)) == delta(1, 0)
    v = GroupVector.from_amplitudes(3, {2: 1 + 1j, 5: -2.0})
    assert convolve(3, delta(3, 0), v) == v
    for a in range(8):
        for b in range(8):
            assert convolve(3, delta(3, a), delta(3, b)) == delta(3, gt.multiply(3, a, b))


@settings(max_examples=60)
@given(st.integers(1, 4).flatmap(lambda i: st.tuples(st.just(i), vectors(i), vectors(i))))
def test_convolve_matches_inverse_formula(args):
    # independent route: (a*b)(g) = sum_h a(h) b(h^-1 g) over the whole group
    i, a, b = args
    c = convolve(i, a, b)
    for g in range(2**i):
        expected = sum(a[h] * b[gt.multiply(i, inverse(i, h), g)] for h in range(2**i))
        assert abs(c[g] - expected) <= 1e-9


def test_inner_norm_trace_support():
    assert inner(delta(3, 2), delta(3, 2)) == 1
    assert inner(delta(3, 2), delta(3, 5)) == 0
    v = GroupVector.from_amplitudes(2, {0: 1 / math.sqrt(2), 1: 1 / math.sqrt(2)})
    assert norm(v) == pytest.approx(1, abs=1e-15)
    assert norm(GroupVector.zero(3)) == 0
    assert norm(delta(4, 9)) == 1
    assert trace(delta(3, 0)) == 1 and trace(delta(3, 4)) == 0
    assert support(GroupVector.zero(2)) == frozenset()
    assert support(delta(2, 3)) == {3}
    assert support(delta(2, 0) + 0.5 * delta(2, 2)) == {0, 2}


def test_inner_is_conjugate_linear_in_second_argument():
    a = GroupVector.from_amplitudes(1, {0: 1j})
    assert inner(a, a) == pytest.approx(1)
    assert inner(a, delta(1, 0)) == 1j


@pytest.mark.parametrize("i", range(1, 6))
def test_trace_of_product_detects_inverse(i):
    # inverse read off by brute-force search, not the cached table scan
    for g in range(2**i):
        for h in range(2**i):
            is_inverse = gt.multiply(i, g, h) == 0
            assert trace(convolve(i, delta(i, g), delta(i, h))) == (1 if is_inverse else 0)
        assert gt.multiply(i, g, inverse(i, g)) == 0


def test_generator_power_examples():
    v = GroupVector.from_amplitudes(3, {1: 2.0, 6: 1j})
    assert generator_power(3, 0, v) == v
    assert generator_power(3, 1, delta(3, 1)) == delta(3, 5)
    assert generator_power(3, 8, delta(3, 1)) == delta(3, 1)


@pytest.mark.parametrize("i", range(1, 6))
def test_generator_power_agrees_with_repeated_translation(i):
    rng = np.random.default_rng(i)
    amps = dict(zip(rng.choice(2**i, size=min(4, 2**i), replace=False).tolist(), rng.normal(size=4).tolist()))
    v = GroupVector.from_amplitudes(i, amps)
    w = v
    mu = gt.generator_element(i)
    for k in range(2**i + 1):
        assert generator_power(i, k, v).isclose(w, 1e-12)
        w = left_translate(i, mu, w)


@given(leveled_vectors(), st.data())
def test_unitarity(args, data):
    i, v = args
    w = data.draw(vectors(i))
    g = data.draw(st.integers(0, 2**i - 1))
    tv, tw = left_translate(i, g, v), left_translate(i, g, w)
    assert abs(norm(tv) - norm(v)) <= 1e-12 * max(1, norm(v))
    assert cmath.isclose(inner(tv, tw), inner(v, w), rel_tol=1e-12, abs_tol=1e-12)


@given(leveled_vectors(), st.data())
def test_homomorphism(args, data):
    i, v = args
    g, h = data.draw(st.tuples(st.integers(0, 2**i - 1), st.integers(0, 2**i - 1)))
    lhs = left_translate(i, g, left_translate(i, h, v))
    rhs = left_translate(i, gt.multiply(i, g, h), v)
    assert support(lhs) == support(rhs)
    assert lhs.isclose(rhs, 1e-12)


@given(st.integers(1, 5).flatmap(lambda i: st.tuples(st.just(i), vectors(i), vectors(i))))
def test_convolution_cauchy_schwarz(args):
    i, a, b = args
    c = convolve(i, a, b)
    bound = norm(a) * norm(b)
    assert all(abs(x) <= bound + 1e-12 * max(1, bound) for x in c.amplitudes.values())


def test_triples_serialization():
    v = GroupVector.from_amplitudes(2, {3: 1 - 2j, 0: 0.5})
    assert v.triples() == [(0, 0.5, 0.0), (3, 1.0, -2.0)]
