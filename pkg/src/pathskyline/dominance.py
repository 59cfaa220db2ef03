"""Dominance relation and skyline containers.

A cost vector ``a`` dominates ``b`` iff a is <= b in every component and
strictly smaller in at least one.  Comparisons are exact; the text format
fixes the parsed precision, and an epsilon would break transitivity.

The containers maintain mutually nondominated (cost, item) sets and are
the label-correcting search's inner loop, so they are built for scan
speed: costs are kept sorted by their first component (only entries at or
below a query's first component can dominate it, only those at or above
can be dominated), stored in parallel lists, with the component-wise
minimum cached.  ``SortedSkyline2D`` exploits that a two-criteria skyline
sorted ascending by the first criterion is strictly descending by the
second, so its checks are binary searches and a dominated run is
contiguous; ``Skyline3`` unrolls the three-criteria comparisons; plain
``Skyline`` covers any d.

All containers deduplicate: a vector equal to a stored one is rejected,
keeping one witness path per pareto point.
"""

from bisect import bisect_left, bisect_right
from typing import Any, Iterator


def dominates(a: tuple[float, ...], b: tuple[float, ...]) -> bool:
    """True iff a_i < b_i for some i and a_j <= b_j for all j."""
    if len(a) != len(b):
        raise ValueError(f"cost vectors of length {len(a)} and {len(b)} are not comparable")
    for x, y in zip(a, b):
        if x > y:
            return False
    return a != b


def vec_max(a: tuple[float, ...], b: tuple[float, ...]) -> tuple[float, ...]:
    """Component-wise maximum."""
    if len(a) != len(b):
        raise ValueError(f"cost vectors of length {len(a)} and {len(b)} are not comparable")
    return tuple(x if x >= y else y for x, y in zip(a, b))


def vec_add(a: tuple[float, ...], b: tuple[float, ...]) -> tuple[float, ...]:
    return tuple(x + y for x, y in zip(a, b))


class Skyline:
    """Mutually nondominated (cost, item) pairs for arbitrary d."""

    __slots__ = ("_keys", "_costs", "_items", "_min")

    def __init__(self):
        self._keys: list[float] = []  # first cost components, ascending
        self._costs: list[tuple[float, ...]] = []
        self._items: list[Any] = []
        self._min: tuple[float, ...] | None = None

    def rejects(self, cost: tuple[float, ...]) -> bool:
        """True iff insert(cost, ...) would be refused (dominated or duplicate)."""
        hi = bisect_right(self._keys, cost[0])
        for c in self._costs[:hi]:  # c[0] <= cost[0] throughout
            for x, y in zip(c, cost):
                if x > y:
                    break
            else:
                return True
        return False

    def insert(self, cost: tuple[float, ...], item: Any = None) -> bool:
        """Insert unless dominated or duplicated; evict entries the new cost dominates."""
        if self.rejects(cost):
            return False
        keys, costs, items = self._keys, self._costs, self._items
        doomed = None
        for idx in range(bisect_left(keys, cost[0]), len(costs)):
            c = costs[idx]  # c[0] >= cost[0]: eviction candidate
            for x, y in zip(c, cost):
                if x < y:
                    break
            else:
                if doomed is None:
                    doomed = [idx]
                else:
                    doomed.append(idx)
        if doomed is not None:
            for idx in reversed(doomed):
                del keys[idx]
                del costs[idx]
                del items[idx]
            self._min = None  # an evicted entry may have held a component minimum
        pos = bisect_right(keys, cost[0])
        keys.insert(pos, cost[0])
        costs.insert(pos, cost)
        items.insert(pos, item)
        if doomed is None and self._min is not None:
            self._min = tuple(x if x <= y else y for x, y in zip(self._min, cost))
        return True

    def dominates(self, vec: tuple[float, ...]) -> bool:
        """True iff some stored cost dominates vec."""
        hi = bisect_right(self._keys, vec[0])
        for c in self._costs[:hi]:
            for x, y in zip(c, vec):
                if x > y:
                    break
            else:
                if c != vec:
                    return True
        return False

    def costs(self) -> list[tuple[float, ...]]:
        return list(self._costs)

    def min_vector(self) -> tuple[float, ...]:
        """Component-wise minimum over stored costs (container must be nonempty)."""
        if self._min is None:
            it = iter(self._costs)
            acc = list(next(it))
            for c in it:
                for i, x in enumerate(c):
                    if x < acc[i]:
                        acc[i] = x
            self._min = tuple(acc)
        return self._min

    def min_sum(self) -> float:
        return sum(self.min_vector())

    def __iter__(self) -> Iterator[tuple[tuple[float, ...], Any]]:
        return iter(zip(self._costs, self._items))

    def __len__(self) -> int:
        return len(self._costs)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self._costs})"


class Skyline3(Skyline):
    """Three-criteria skyline with the comparison loops unrolled.

    Same contract as ``Skyline``; exists because the label-correcting
    search spends most of its time in these scans when d == 3.
    """

    __slots__ = ()

    def rejects(self, cost: tuple[float, ...]) -> bool:
        y1, y2 = cost[1], cost[2]
        hi = bisect_right(self._keys, cost[0])
        for c in self._costs[:hi]:
            if c[1] <= y1 and c[2] <= y2:
                return True
        return False

    def insert(self, cost: tuple[float, ...], item: Any = None) -> bool:
        if self.rejects(cost):
            return False
        keys, costs, items = self._keys, self._costs, self._items
        y0, y1, y2 = cost
        doomed = None
        for idx in range(bisect_left(keys, y0), len(costs)):
            c = costs[idx]
            if c[1] >= y1 and c[2] >= y2:
                if doomed is None:
                    doomed = [idx]
                else:
                    doomed.append(idx)
        if doomed is not None:
            for idx in reversed(doomed):
                del keys[idx]
                del costs[idx]
                del items[idx]
            self._min = None
        pos = bisect_right(keys, y0)
        keys.insert(pos, y0)
        costs.insert(pos, cost)
        items.insert(pos, item)
        if doomed is None and self._min is not None:
            m0, m1, m2 = self._min
            self._min = (m0 if m0 <= y0 else y0, m1 if m1 <= y1 else y1,
                         m2 if m2 <= y2 else y2)
        return True

    def dominates(self, vec: tuple[float, ...]) -> bool:
        v1, v2 = vec[1], vec[2]
        hi = bisect_right(self._keys, vec[0])
        for c in self._costs[:hi]:
            if c[1] <= v1 and c[2] <= v2 and c != vec:
                return True
        return False


class SortedSkyline2D:
    """Two-criteria skyline in a sorted list (ascending c1, descending c2)."""

    __slots__ = ("_keys", "_costs", "_items")

    def __init__(self):
        self._keys: list[float] = []
        self._costs: list[tuple[float, float]] = []
        self._items: list[Any] = []

    def rejects(self, cost: tuple[float, ...]) -> bool:
        """True iff insert(cost, ...) would be refused (dominated or duplicate)."""
        keys, costs = self._keys, self._costs
        x, y = cost
        pos = bisect_left(keys, x)
        if pos > 0 and costs[pos - 1][1] <= y:
            return True  # left neighbor has smaller c1 and no larger c2
        if pos < len(costs):
            cx, cy = costs[pos]
            if cx == x and cy <= y:
                return True
        return False

    def insert(self, cost: tuple[float, float], item: Any = None) -> bool:
        if len(cost) != 2:
            raise ValueError(f"SortedSkyline2D holds 2-component costs, got {len(cost)}")
        if self.rejects(cost):
            return False
        keys, costs, items = self._keys, self._costs, self._items
        x, y = cost
        pos = bisect_left(keys, x)
        # everything from pos with c2 >= y is dominated (their c1 >= x)
        cut = pos
        while cut < len(costs) and costs[cut][1] >= y:
            cut += 1
        keys[pos:cut] = [x]
        costs[pos:cut] = [cost]
        items[pos:cut] = [item]
        return True

    def dominates(self, vec: tuple[float, ...]) -> bool:
        # only the rightmost entry with c1 <= vec[0] can dominate
        pos = bisect_right(self._keys, vec[0])
        if pos == 0:
            return False
        c = self._costs[pos - 1]
        return c[1] <= vec[1] and (c[0] < vec[0] or c[1] < vec[1])

    def costs(self) -> list[tuple[float, ...]]:
        return list(self._costs)

    def min_vector(self) -> tuple[float, ...]:
        return (self._costs[0][0], self._costs[-1][1])

    def min_sum(self) -> float:
        return self._costs[0][0] + self._costs[-1][1]

    def __iter__(self) -> Iterator[tuple[tuple[float, ...], Any]]:
        return iter(zip(self._costs, self._items))

    def __len__(self) -> int:
        return len(self._costs)

    def __repr__(self) -> str:
        return f"SortedSkyline2D({self._costs})"


def make_skyline(d: int) -> Skyline | SortedSkyline2D:
    """Container factory: specialized variants for two and three criteria,
    the generic sorted flat list otherwise."""
    if d == 2:
        return SortedSkyline2D()
    if d == 3:
        return Skyline3()
    return Skyline()


def is_globally_dominated(sky: Skyline | SortedSkyline2D,
                          lb_s_n: tuple[float, ...],
                          cost_p: tuple[float, ...],
                          lb_m_t: tuple[float, ...],
                          lb_s_t: tuple[float, ...]) -> bool:
    """Check whether a partial path can still extend to a nondominated s->t path.

    ``lb_s_n + cost_p + lb_m_t`` lower-bounds every s->t path through the
    n->m path p; no s->t path can beat the per-criterion optima lb_s_t, so
    the projection is lifted to the component-wise max of the two before
    testing domination against the s->t skyline found so far.
    """
    projected = tuple(
        max(a + b + c, f) for a, b, c, f in zip(lb_s_n, cost_p, lb_m_t, lb_s_t)
    )
    return sky.dominates(projected)
