"""Cyclic orders and ring-intervals.

A cyclic order arranges ``n`` distinct element ids on a clock face; a
ring-interval ``[a, b]`` is the run of elements met when walking clockwise
from ``a`` to ``b``, both included.  Every other module does its arithmetic
on these two types, so all operations here are O(1) or output-sensitive.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import UnknownElementError


class CyclicOrder:
    """Immutable cyclic arrangement of the dense ids ``0 .. n-1``.

    ``items`` fixes a clockwise reading of the circle; ``items[0]`` is only
    an anchor for serialization, not a distinguished first element.
    """

    __slots__ = ("items", "_pos")

    def __init__(self, items: Sequence[int]):
        items = tuple(int(x) for x in items)
        n = len(items)
        if n == 0:
            raise ValueError("cyclic order needs at least one element")
        pos = [-1] * n
        for i, x in enumerate(items):
            if not 0 <= x < n or pos[x] != -1:
                raise ValueError(f"items must be a permutation of 0..{n - 1}")
            pos[x] = i
        self.items = items
        self._pos = pos

    @property
    def n(self) -> int:
        return len(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def __contains__(self, x: object) -> bool:
        return isinstance(x, int) and 0 <= x < len(self.items)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CyclicOrder) and self.items == other.items

    def __hash__(self) -> int:
        return hash(self.items)

    def __repr__(self) -> str:
        return f"CyclicOrder({list(self.items)})"

    def position(self, x: int) -> int:
        try:
            return self._pos[x]
        except (IndexError, TypeError):
            raise UnknownElementError(f"element {x!r} not in order of size {self.n}") from None

    def at(self, position: int) -> int:
        return self.items[position % len(self.items)]

    def successor(self, x: int) -> int:
        return self.items[(self.position(x) + 1) % len(self.items)]

    def predecessor(self, x: int) -> int:
        return self.items[(self.position(x) - 1) % len(self.items)]

    def distance(self, a: int, b: int) -> int:
        """Clockwise steps from ``a`` to ``b`` (0 when equal)."""
        return (self.position(b) - self.position(a)) % len(self.items)


@dataclass(frozen=True)
class RingInterval:
    """Directed ring-interval ``[a, b]``: a to b clockwise, both included.

    ``[a, b]`` and ``[b, a]`` differ unless ``a == b``; a singleton is
    ``[a, a]`` and the empty set is not representable (callers use ``None``).
    """

    a: int
    b: int

    def __iter__(self) -> Iterator[int]:  # allows tuple(ivl) in serializers
        yield self.a
        yield self.b


def successor(order: CyclicOrder, a: int) -> int:
    """Next element after ``a`` in clockwise direction."""
    return order.successor(a)


def ring_sequence(order: CyclicOrder, a: int, b: int) -> list[int]:
    """Elements from ``a`` to ``b`` clockwise, as a list starting at ``a``."""
    i = order.position(a)
    j = order.position(b)
    n = len(order.items)
    steps = (j - i) % n
    return [order.items[(i + k) % n] for k in range(steps + 1)]


def interval_size(order: CyclicOrder, ivl: RingInterval) -> int:
    return order.distance(ivl.a, ivl.b) + 1


def interval_contains(order: CyclicOrder, ivl: RingInterval, x: int) -> bool:
    """O(1) membership test, equivalent to scanning ``ring_sequence``."""
    return order.distance(ivl.a, x) <= order.distance(ivl.a, ivl.b)


def interval_members(order: CyclicOrder, ivl: RingInterval) -> list[int]:
    return ring_sequence(order, ivl.a, ivl.b)


def intervals_disjoint(order: CyclicOrder, left: RingInterval, right: RingInterval) -> bool:
    return not (
        interval_contains(order, left, right.a)
        or interval_contains(order, right, left.a)
    )


def join(order: CyclicOrder, left: RingInterval, right: RingInterval) -> RingInterval | None:
    """Concatenate two intervals into one when they abut.

    Returns ``[left.a, right.b]`` when the intervals are disjoint and
    ``right`` starts immediately after ``left`` ends; ``None`` (no join)
    otherwise.  The member set of the result is the union of the inputs.
    """
    if not intervals_disjoint(order, left, right):
        return None
    if order.successor(left.b) != right.a:
        return None
    return RingInterval(left.a, right.b)
