"""Hypergraph containers, derived adjacency, BFS distances, and hyperedge-list I/O.

Vertices are dense integer ids ``0..n-1``. Hyperedges are stored as sets of
distinct vertex ids; identical hyperedges may repeat (multihypergraph).
Graphs are the special case where every hyperedge has cardinality 2.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import IO, Iterable, Sequence


class HypergraphError(ValueError):
    """Invalid hypergraph structure."""


class ParseError(ValueError):
    """Malformed hyperedge-list input. Carries the offending line number."""

    def __init__(self, message: str, line_number: int) -> None:
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


@dataclass(frozen=True)
class Hypergraph:
    """Immutable multihypergraph on vertices ``0..n-1``.

    ``edges`` keeps input order; each entry is a frozenset of distinct vertex
    ids with cardinality >= 1. ``weights`` holds one positive weight per
    hyperedge (all 1.0 unless given). ``labels`` optionally maps dense ids
    back to the original labels of a remapped input file.
    """

    n: int
    edges: tuple[frozenset[int], ...]
    weights: tuple[float, ...]
    labels: tuple[int, ...] | None = None

    @staticmethod
    def from_edges(
        edges: Iterable[Iterable[int]],
        n: int | None = None,
        weights: Sequence[float] | None = None,
        labels: Sequence[int] | None = None,
    ) -> "Hypergraph":
        """Build and validate a hypergraph from vertex-id collections.

        ``n`` defaults to ``1 + max id``. Empty hyperedges are rejected;
        duplicate ids inside one hyperedge are rejected here (use the parser
        for collapse-with-count semantics).
        """
        edge_sets: list[frozenset[int]] = []
        for k, members in enumerate(edges):
            members = list(members)
            if not members:
                raise HypergraphError(f"hyperedge {k} is empty")
            fs = frozenset(int(v) for v in members)
            if len(fs) != len(members):
                raise HypergraphError(f"hyperedge {k} repeats a vertex id")
            if min(fs) < 0:
                raise HypergraphError(f"hyperedge {k} has a negative vertex id")
            edge_sets.append(fs)
        max_id = max((max(e) for e in edge_sets), default=-1)
        if n is None:
            n = max_id + 1
        elif max_id >= n:
            raise HypergraphError(f"vertex id {max_id} out of range for n={n}")
        if weights is None:
            w = (1.0,) * len(edge_sets)
        else:
            if len(weights) != len(edge_sets):
                raise HypergraphError("one weight per hyperedge required")
            if any(x <= 0 for x in weights):
                raise HypergraphError("hyperedge weights must be positive")
            w = tuple(float(x) for x in weights)
        lab = None if labels is None else tuple(int(x) for x in labels)
        if lab is not None and len(lab) != n:
            raise HypergraphError("label table must have one entry per vertex")
        return Hypergraph(n=int(n), edges=tuple(edge_sets), weights=w, labels=lab)

    @property
    def m(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class AdjacencyIndex:
    """Per-vertex neighborhoods and hyperedge incidences, sorted and immutable.

    ``degrees[v]`` counts incident hyperedges (multiedges counted separately),
    so for simple graphs ``degrees[v] == len(neighbors[v])`` while for
    multihypergraphs ``degrees[v] >= len(neighbors[v])``.
    """

    n: int
    neighbors: tuple[tuple[int, ...], ...]
    neighbor_sets: tuple[frozenset[int], ...]
    degrees: tuple[int, ...]
    incident: tuple[tuple[int, ...], ...]


def build_adjacency(h: Hypergraph) -> AdjacencyIndex:
    """Derive the adjacency index of a hypergraph.

    Two vertices are adjacent iff they co-occur in some hyperedge. Singleton
    hyperedges contribute to degree but not to any neighborhood.
    """
    nbr: list[set[int]] = [set() for _ in range(h.n)]
    inc: list[list[int]] = [[] for _ in range(h.n)]
    for eid, e in enumerate(h.edges):
        for v in e:
            inc[v].append(eid)
        if len(e) > 1:
            for v in e:
                nbr[v].update(e)
    for v in range(h.n):
        nbr[v].discard(v)
    return AdjacencyIndex(
        n=h.n,
        neighbors=tuple(tuple(sorted(s)) for s in nbr),
        neighbor_sets=tuple(frozenset(s) for s in nbr),
        degrees=tuple(len(ids) for ids in inc),
        incident=tuple(tuple(ids) for ids in inc),
    )


def bfs_distances(
    adj: AdjacencyIndex, source: int, targets: Iterable[int] | None = None
) -> dict[int, int]:
    """Breadth-first distances from ``source``.

    With ``targets`` given, stops as soon as all of them are resolved and
    returns distances only for the reachable ones; otherwise covers the whole
    connected component of ``source``.
    """
    if not 0 <= source < adj.n:
        raise IndexError(f"vertex {source} out of range")
    want: set[int] | None = None
    if targets is not None:
        want = set(targets)
        for t in want:
            if not 0 <= t < adj.n:
                raise IndexError(f"vertex {t} out of range")
    dist = {source: 0}
    if want is not None:
        want.discard(source)
        if not want:
            return dist
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        for v in adj.neighbors[u]:
            if v not in dist:
                dist[v] = du + 1
                if want is not None:
                    want.discard(v)
                    if not want:
                        return dist
                queue.append(v)
    return dist


def graph_distance(adj: AdjacencyIndex, s: int, t: int) -> int | None:
    """Shortest-path distance between ``s`` and ``t``; ``None`` if unreachable.

    The explicit ``None`` sentinel keeps disconnected pairs from silently
    entering transport costs as large finite numbers.
    """
    if not 0 <= t < adj.n:
        raise IndexError(f"vertex {t} out of range")
    return bfs_distances(adj, s, targets=(t,)).get(t)


def connected_components(adj: AdjacencyIndex) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by smallest member."""
    seen = [False] * adj.n
    comps: list[list[int]] = []
    for start in range(adj.n):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in adj.neighbors[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        comps.append(sorted(comp))
    return comps


@dataclass(frozen=True)
class ParseResult:
    """Hypergraph plus ingestion statistics."""

    hypergraph: Hypergraph
    duplicates_collapsed: int
    lines_parsed: int


def parse_hyperedge_list(stream: IO[str] | str, remap_ids: bool = False) -> ParseResult:
    """Parse the hyperedge-list text format.

    One hyperedge per line: whitespace-separated nonnegative integer vertex
    ids. Lines starting with ``#`` and blank lines are skipped. Duplicate ids
    within a line are collapsed and counted. With ``remap_ids`` the (possibly
    sparse) input ids are renumbered densely in first-appearance order and the
    original ids are kept as the label table.
    """
    if isinstance(stream, str):
        lines = stream.splitlines()
    else:
        lines = stream.read().splitlines()
    edges: list[list[int]] = []
    duplicates = 0
    relabel: dict[int, int] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        members: list[int] = []
        seen: set[int] = set()
        for tok in line.split():
            try:
                vid = int(tok)
            except ValueError:
                raise ParseError(f"malformed vertex id {tok!r}", lineno) from None
            if vid < 0:
                raise ParseError(f"negative vertex id {vid}", lineno)
            if remap_ids:
                vid = relabel.setdefault(vid, len(relabel))
            if vid in seen:
                duplicates += 1
            else:
                seen.add(vid)
                members.append(vid)
        if not members:
            raise ParseError("hyperedge with no vertices", lineno)
        edges.append(members)
    labels = None
    if remap_ids:
        labels = [0] * len(relabel)
        for orig, dense in relabel.items():
            labels[dense] = orig
    h = Hypergraph.from_edges(edges, labels=labels)
    return ParseResult(hypergraph=h, duplicates_collapsed=duplicates, lines_parsed=len(edges))


def serialize_hyperedge_list(h: Hypergraph, header: Sequence[str] = ()) -> str:
    """Canonical hyperedge-list text: sorted ids per line, edges in input order.

    ``header`` lines are emitted as ``#`` comments (the parser skips them), so
    metadata never perturbs round-tripping.
    """
    out = [f"# {line}" for line in header]
    for e in h.edges:
        out.append(" ".join(str(v) for v in sorted(e)))
    return "\n".join(out) + "\n"
