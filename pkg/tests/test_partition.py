import pytest
from hypothesis import given, strategies as st

from xhermite.errors import NonIncreasingViolation, NonPositivePart
from xhermite.partition import Partition, degree_set, is_admissible, make_partition

partitions = st.lists(st.integers(1, 6), max_size=5).map(lambda p: make_partition(sorted(p, reverse=True)))


def test_size_length_and_str():
    lam = make_partition([3, 3, 1])
    assert (lam.size, lam.length) == (7, 3)
    assert str(lam) == "(3,3,1)"


def test_even_flag():
    assert make_partition([1, 1]).is_even
    assert make_partition([2, 2, 1, 1]).is_even
    assert make_partition([]).is_even
    assert not make_partition([2, 1]).is_even
    assert not make_partition([1]).is_even


def test_invalid_partitions():
    with pytest.raises(NonIncreasingViolation):
        make_partition([1, 2])
    with pytest.raises(NonPositivePart):
        make_partition([2, 0])


def test_degree_set_examples():
    assert degree_set(make_partition([1, 1]), 5) == [0, 3, 4, 5]
    assert degree_set(make_partition([]), 3) == [0, 1, 2, 3]
    assert degree_set(make_partition([2, 2]), 8) == [2, 3, 6, 7, 8]
    assert make_partition([2, 2]).excluded_degrees() == [5, 4]


def test_json_roundtrip():
    lam = make_partition([2, 2])
    assert Partition.from_json(lam.to_json()) == lam


@given(partitions, st.integers(0, 30))
def test_degree_set_excludes_exactly_the_excluded_degrees(lam, n_max):
    ds = set(degree_set(lam, n_max))
    lo = max(lam.size - lam.length, 0)
    for n in range(n_max + 1):
        expected = n >= lo and n not in lam.excluded_degrees()
        assert (n in ds) == expected
        assert is_admissible(lam, n) == expected


@given(partitions)
def test_degree_set_misses_exactly_length_many_degrees_above_the_minimum(lam):
    # the excluded degrees are distinct and all lie at or above |λ| - r
    n_max = lam.size + 10
    lo = max(lam.size - lam.length, 0)
    assert len(degree_set(lam, n_max)) == n_max + 1 - lo - lam.length
