import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from arcroute import CyclicOrder, RingInterval, interval_contains, join, ring_sequence, successor
from arcroute.errors import UnknownElementError
from arcroute.ring_order import interval_members, intervals_disjoint, interval_size

orders = st.integers(min_value=1, max_value=9).flatmap(
    lambda n: st.permutations(list(range(n)))
).map(CyclicOrder)


def test_successor_single_element_is_fixed_point():
    order = CyclicOrder([0])
    assert successor(order, 0) == 0


def test_successor_wraps_around():
    order = CyclicOrder([0, 1, 2, 3])
    assert successor(order, 3) == 0


def test_successor_four_times_returns_to_start():
    order = CyclicOrder([0, 1, 2, 3])
    x = 1
    for _ in range(4):
        x = successor(order, x)
    assert x == 1


def test_successor_unknown_element():
    order = CyclicOrder([0, 1, 2])
    with pytest.raises(UnknownElementError):
        successor(order, 7)


def test_ring_sequence_base_case():
    order = CyclicOrder([0, 1, 2, 3])
    assert ring_sequence(order, 0, 0) == [0]


def test_ring_sequence_wraps():
    order = CyclicOrder([0, 1, 2, 3])
    assert ring_sequence(order, 3, 1) == [3, 0, 1]


def test_ring_sequence_almost_full_circle():
    # expanding one step at a time from 1 back around to 0 walks the
    # entire order exactly once
    order = CyclicOrder([0, 1, 2, 3])
    assert ring_sequence(order, 1, 0) == [1, 2, 3, 0]


def test_interval_contains_singleton():
    order = CyclicOrder([0, 1, 2, 3])
    ivl = RingInterval(0, 0)
    assert interval_contains(order, ivl, 0)
    assert not interval_contains(order, ivl, 1)


def test_interval_contains_wrapping():
    order = CyclicOrder([0, 1, 2, 3])
    assert interval_contains(order, RingInterval(3, 1), 0)


def test_contains_matches_sequence_exhaustively():
    # every (from, to, x) triple for orders up to 8 elements
    for n in range(1, 9):
        order = CyclicOrder(range(n))
        for a, b, x in itertools.product(range(n), repeat=3):
            expected = x in ring_sequence(order, a, b)
            assert interval_contains(order, RingInterval(a, b), x) == expected


def test_join_adjacent_singletons():
    order = CyclicOrder([0, 1, 2, 3])
    assert join(order, RingInterval(1, 1), RingInterval(2, 2)) == RingInterval(1, 2)


def test_join_rejects_overlap():
    order = CyclicOrder([0, 1, 2, 3])
    assert join(order, RingInterval(0, 1), RingInterval(1, 2)) is None


def test_join_member_sets_exhaustively():
    # all disjoint adjacent pairs on orders up to 6 elements
    for n in range(2, 7):
        order = CyclicOrder(range(n))
        for a, b, c, d in itertools.product(range(n), repeat=4):
            left, right = RingInterval(a, b), RingInterval(c, d)
            ms_left = set(interval_members(order, left))
            ms_right = set(interval_members(order, right))
            result = join(order, left, right)
            if ms_left & ms_right or successor(order, b) != c:
                assert result is None
            else:
                assert result is not None
                assert set(interval_members(order, result)) == ms_left | ms_right


@given(orders, st.data())
def test_sequence_length_formula(order, data):
    a = data.draw(st.sampled_from(order.items))
    b = data.draw(st.sampled_from(order.items))
    seq = ring_sequence(order, a, b)
    assert len(seq) == order.distance(a, b) + 1
    assert len(seq) == interval_size(order, RingInterval(a, b))
    assert seq[0] == a and seq[-1] == b


@given(orders, st.data())
def test_disjointness_matches_member_sets(order, data):
    a = data.draw(st.sampled_from(order.items))
    b = data.draw(st.sampled_from(order.items))
    c = data.draw(st.sampled_from(order.items))
    d = data.draw(st.sampled_from(order.items))
    left, right = RingInterval(a, b), RingInterval(c, d)
    expected = not (
        set(interval_members(order, left)) & set(interval_members(order, right))
    )
    assert intervals_disjoint(order, left, right) == expected


@given(st.integers(min_value=3, max_value=9), st.data())
def test_join_chain_is_associative_on_member_sets(n, data):
    # a chain of adjacent disjoint intervals joins to the same member set
    # regardless of association order
    order = CyclicOrder(range(n))
    cuts = data.draw(
        st.lists(st.integers(min_value=0, max_value=n - 1), min_size=3,
                 max_size=3, unique=True)
    )
    cuts.sort()
    pieces = [
        RingInterval(cuts[i], (cuts[(i + 1) % 3] - 1) % n) for i in range(3)
    ]
    left_first = join(order, join(order, pieces[0], pieces[1]), pieces[2])
    right_first = join(order, pieces[0], join(order, pieces[1], pieces[2]))
    # three pieces tile the whole order, so both joins give the full circle
    assert left_first is not None and right_first is not None
    assert set(interval_members(order, left_first)) == set(range(n))
    assert set(interval_members(order, right_first)) == set(range(n))


def test_bijection_invariant():
    order = CyclicOrder([2, 0, 3, 1])
    for i, x in enumerate(order.items):
        assert order.position(x) == i


def test_rejects_non_permutation():
    with pytest.raises(ValueError):
        CyclicOrder([0, 0, 1])
    with pytest.raises(ValueError):
        CyclicOrder([1, 2, 3])
