import pytest
from hypothesis import given, strategies as st

from atlapprox.stateset import StateSet, bits_from, iter_bits

SIZE = 12
subsets = st.frozensets(st.integers(0, SIZE - 1))


def S(xs):
    return StateSet.of(SIZE, xs)


@given(subsets, subsets)
def test_set_algebra_matches_python_sets(a, b):
    assert set(S(a) | S(b)) == a | b
    assert set(S(a) & S(b)) == a & b
    assert set(S(a) - S(b)) == a - b
    assert set(~S(a)) == set(range(SIZE)) - a
    assert (S(a) <= S(b)) == (a <= b)
    assert (S(a) < S(b)) == (a < b)
    assert len(S(a)) == len(a)


@given(subsets)
def test_iteration_is_ascending(a):
    assert list(S(a)) == sorted(a)
    assert list(iter_bits(bits_from(a))) == sorted(a)


def test_constructors_and_membership():
    assert not StateSet.empty(3)
    assert list(StateSet.full(3)) == [0, 1, 2]
    s = StateSet.of(5, [1, 3])
    assert 3 in s and 2 not in s
    assert s == StateSet(5, 0b1010)
    assert hash(s) == hash(StateSet(5, 0b1010))


def test_sizes_must_agree():
    with pytest.raises(ValueError):
        StateSet(3) | StateSet(4)


def test_immutable():
    s = StateSet(3, 1)
    with pytest.raises(AttributeError):
        s.bits = 2
