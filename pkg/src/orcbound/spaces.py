"""Discrete metric spaces with integer distances and distance-1 neighborhoods.

The curvature bound only ever consumes two primitives from a space: the
integer distance between two points and the set of points at distance exactly
one. Three concrete spaces are provided: graph distance on an adjacency
index, the l1 integer lattice, and fixed-length bit strings under Hamming
distance. The lattice and Hamming universes are bounded so tests can
enumerate them; the bound computation itself never enumerates a universe.
"""

from __future__ import annotations

import itertools
from typing import Hashable, Iterable, Iterator, Sequence

from .hypergraph import AdjacencyIndex, bfs_distances

Point = Hashable


class IntegerMetricSpace:
    """Base interface: integer metric plus unit neighborhoods."""

    def distance(self, p: Point, q: Point) -> int | None:
        raise NotImplementedError

    def unit_neighbors(self, p: Point) -> Iterable[Point]:
        raise NotImplementedError

    def is_unit_pair(self, p: Point, q: Point) -> bool:
        return self.distance(p, q) == 1

    def distances_from(self, p: Point, targets: Sequence[Point]) -> list[int | None]:
        return [self.distance(p, q) for q in targets]


class GraphSpace(IntegerMetricSpace):
    """Shortest-path metric of an adjacency index.

    Cross-component queries return ``None``; callers decide policy.
    """

    def __init__(self, adj: AdjacencyIndex) -> None:
        self.adj = adj

    def distance(self, p: int, q: int) -> int | None:
        if p == q:
            return 0
        return bfs_distances(self.adj, p, targets=(q,)).get(q)

    def unit_neighbors(self, p: int) -> tuple[int, ...]:
        return self.adj.neighbors[p]

    def is_unit_pair(self, p: int, q: int) -> bool:
        return q in self.adj.neighbor_sets[p]

    def distances_from(self, p: int, targets: Sequence[int]) -> list[int | None]:
        # One BFS resolves every target; avoids all-pairs precomputation.
        dist = bfs_distances(self.adj, p, targets=targets)
        return [dist.get(t) for t in targets]


class L1LatticeSpace(IntegerMetricSpace):
    """Integer lattice under the l1 norm, restricted to a finite box.

    Points are integer tuples of length ``dimension``. ``bounds`` gives the
    inclusive (lo, hi) range per axis; unit neighbors are clipped to the box.
    """

    def __init__(self, dimension: int, bounds: Sequence[tuple[int, int]]) -> None:
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        if len(bounds) != dimension:
            raise ValueError("one (lo, hi) bound per axis required")
        for lo, hi in bounds:
            if lo > hi:
                raise ValueError(f"empty axis range ({lo}, {hi})")
        self.dimension = dimension
        self.bounds = tuple((int(lo), int(hi)) for lo, hi in bounds)

    def _check(self, p: Sequence[int]) -> tuple[int, ...]:
        if len(p) != self.dimension:
            raise ValueError(f"point {p!r} has wrong dimension")
        return tuple(p)

    def distance(self, p: Sequence[int], q: Sequence[int]) -> int:
        p, q = self._check(p), self._check(q)
        return sum(abs(a - b) for a, b in zip(p, q))

    def unit_neighbors(self, p: Sequence[int]) -> list[tuple[int, ...]]:
        p = self._check(p)
        out = []
        for axis, (lo, hi) in enumerate(self.bounds):
            for step in (-1, 1):
                c = p[axis] + step
                if lo <= c <= hi:
                    out.append(p[:axis] + (c,) + p[axis + 1 :])
        return out

    def is_unit_pair(self, p: Sequence[int], q: Sequence[int]) -> bool:
        return self.distance(p, q) == 1

    def points(self) -> Iterator[tuple[int, ...]]:
        axes = [range(lo, hi + 1) for lo, hi in self.bounds]
        return itertools.product(*axes)


class HammingSpace(IntegerMetricSpace):
    """Binary strings of a fixed length under Hamming distance."""

    def __init__(self, length: int) -> None:
        if length < 1:
            raise ValueError("length must be >= 1")
        self.length = length

    def _check(self, s: str) -> str:
        if len(s) != self.length:
            raise ValueError(f"string {s!r} has length {len(s)}, expected {self.length}")
        if any(c not in "01" for c in s):
            raise ValueError(f"string {s!r} is not binary")
        return s

    def distance(self, p: str, q: str) -> int:
        p, q = self._check(p), self._check(q)
        return sum(a != b for a, b in zip(p, q))

    def unit_neighbors(self, p: str) -> list[str]:
        p = self._check(p)
        flip = {"0": "1", "1": "0"}
        return [p[:i] + flip[p[i]] + p[i + 1 :] for i in range(self.length)]

    def is_unit_pair(self, p: str, q: str) -> bool:
        return self.distance(p, q) == 1

    def points(self) -> Iterator[str]:
        return ("".join(bits) for bits in itertools.product("01", repeat=self.length))


def graph_space(adj: AdjacencyIndex) -> GraphSpace:
    return GraphSpace(adj)


def l1_lattice_space(dimension: int, bounds: Sequence[tuple[int, int]]) -> L1LatticeSpace:
    return L1LatticeSpace(dimension, bounds)


def hamming_space(length: int) -> HammingSpace:
    return HammingSpace(length)
