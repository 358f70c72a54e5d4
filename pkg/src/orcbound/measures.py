"""Local probability measures: random-walk distributions attached to a point.

Four constructors are provided. ``graph_measure`` is the classical
(optionally edge-weighted) one-step walk on a graph. The three hypergraph
walks differ in how a step is sampled:

* equal-nodes: land uniformly on the neighborhood;
* equal-edges: pick an incident hyperedge uniformly, then a co-member
  uniformly (singleton hyperedges are excluded from the pick);
* weighted-edges: pick an incident hyperedge proportionally to ``|e| - 1``,
  then a co-member uniformly.

On simple graphs all four coincide. ``lazify``/``delazify`` convert between
a measure and its lazy version that keeps mass ``alpha`` at the base point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .hypergraph import AdjacencyIndex, Hypergraph
from .spaces import IntegerMetricSpace, Point

MASS_TOL = 1e-12

MEASURE_KINDS = ("en", "ee", "we", "graph")


class MeasureError(ValueError):
    """No valid measure can be built (isolated vertex, bad laziness, ...)."""


@dataclass(frozen=True)
class LocalMeasure:
    """Sparse probability distribution anchored at ``base``.

    Only strictly positive masses are stored. The base point itself may carry
    mass (laziness); every other support point must sit at distance 1 from
    the base.
    """

    base: Point
    masses: Mapping[Point, float]

    def mass(self, p: Point) -> float:
        return self.masses.get(p, 0.0)

    @property
    def base_mass(self) -> float:
        return self.masses.get(self.base, 0.0)

    @property
    def support(self):
        return self.masses.keys()

    def total(self) -> float:
        return sum(self.masses.values())

    def validate(self, space: IntegerMetricSpace | None = None, tol: float = MASS_TOL) -> None:
        """Check measure invariants; raises ``MeasureError`` on violation."""
        for p, m in self.masses.items():
            if m <= 0:
                raise MeasureError(f"non-positive mass {m} at {p!r}")
        if abs(self.total() - 1.0) > tol:
            raise MeasureError(f"masses sum to {self.total()!r}, not 1")
        if space is not None:
            for p in self.masses:
                if p != self.base and not space.is_unit_pair(self.base, p):
                    raise MeasureError(
                        f"support point {p!r} is not at distance 1 from base {self.base!r}"
                    )


def graph_measure(
    adj: AdjacencyIndex, x: int, weights: Mapping[frozenset[int], float] | None = None
) -> LocalMeasure:
    """One-step random-walk measure on a graph: mass ``w_xy / d_x`` at each neighbor.

    ``weights`` maps unordered vertex pairs to positive edge weights and
    ``d_x`` is their sum over the neighborhood; without weights the measure
    is uniform over the neighbors.
    """
    nbrs = adj.neighbors[x]
    if not nbrs:
        raise MeasureError(f"vertex {x} is isolated: no measure definable")
    if weights is None:
        u = 1.0 / len(nbrs)
        return LocalMeasure(base=x, masses={y: u for y in nbrs})
    w = {}
    for y in nbrs:
        wxy = weights.get(frozenset((x, y)))
        if wxy is None:
            raise MeasureError(f"missing weight for edge ({x}, {y})")
        if wxy <= 0:
            raise MeasureError(f"non-positive weight for edge ({x}, {y})")
        w[y] = float(wxy)
    d_x = sum(w.values())
    return LocalMeasure(base=x, masses={y: wy / d_x for y, wy in w.items()})


def measure_equal_nodes(h: Hypergraph, adj: AdjacencyIndex, x: int) -> LocalMeasure:
    """Equal-nodes walk: uniform mass over the neighborhood of ``x``."""
    nbrs = adj.neighbors[x]
    if not nbrs:
        raise MeasureError(f"vertex {x} is isolated: no measure definable")
    u = 1.0 / len(nbrs)
    return LocalMeasure(base=x, masses={y: u for y in nbrs})


def measure_equal_edges(h: Hypergraph, adj: AdjacencyIndex, x: int) -> LocalMeasure:
    """Equal-edges walk: uniform hyperedge pick among non-singleton incidences,
    then a uniform co-member of the picked hyperedge.

    Mass at a neighbor y: ``(1 / (deg(x) - s_x)) * sum over hyperedges e
    containing both of 1 / (|e| - 1)``, where ``s_x`` counts incident
    singleton hyperedges.
    """
    incident = adj.incident[x]
    singletons = sum(1 for eid in incident if len(h.edges[eid]) == 1)
    effective = len(incident) - singletons
    if effective == 0:
        raise MeasureError(f"vertex {x} has no hyperedge of cardinality >= 2")
    masses: dict[Point, float] = {}
    for eid in incident:
        e = h.edges[eid]
        if len(e) == 1:
            continue
        share = 1.0 / (len(e) - 1)
        for y in e:
            if y != x:
                masses[y] = masses.get(y, 0.0) + share
    scale = 1.0 / effective
    return LocalMeasure(base=x, masses={y: m * scale for y, m in masses.items()})


def measure_weighted_edges(h: Hypergraph, adj: AdjacencyIndex, x: int) -> LocalMeasure:
    """Weighted-edges walk: pick an incident hyperedge with probability
    proportional to ``|e| - 1``, then a uniform co-member.

    The per-edge terms telescope, leaving mass ``m_xy / sum_f (|f| - 1)`` at
    neighbor y, where ``m_xy`` counts hyperedges containing both x and y and
    the sum runs over hyperedges containing x.
    """
    incident = adj.incident[x]
    denom = sum(len(h.edges[eid]) - 1 for eid in incident)
    if denom == 0:
        raise MeasureError(f"vertex {x} has no hyperedge of cardinality >= 2")
    masses: dict[Point, float] = {}
    for eid in incident:
        e = h.edges[eid]
        if len(e) == 1:
            continue
        for y in e:
            if y != x:
                masses[y] = masses.get(y, 0.0) + 1.0
    return LocalMeasure(base=x, masses={y: c / denom for y, c in masses.items()})


def lazify(mu: LocalMeasure, alpha: float) -> LocalMeasure:
    """Lazy version ``alpha * delta_base + (1 - alpha) * mu``."""
    if not 0.0 < alpha < 1.0:
        raise MeasureError(f"laziness {alpha} outside (0, 1)")
    masses = {p: (1.0 - alpha) * m for p, m in mu.masses.items()}
    masses[mu.base] = masses.get(mu.base, 0.0) + alpha
    return LocalMeasure(base=mu.base, masses=masses)


def delazify(mu: LocalMeasure, alpha: float) -> LocalMeasure:
    """Remove laziness ``alpha`` from the base point and renormalize:
    ``(mu - alpha * delta_base) / (1 - alpha)``. Inverse of ``lazify``.
    """
    if not 0.0 <= alpha < 1.0:
        raise MeasureError(f"laziness {alpha} outside [0, 1)")
    if alpha == 0.0:
        return mu
    base_mass = mu.base_mass
    if base_mass < alpha - MASS_TOL:
        raise MeasureError(
            f"cannot remove laziness {alpha}: base mass is only {base_mass}"
        )
    scale = 1.0 / (1.0 - alpha)
    masses = {}
    for p, m in mu.masses.items():
        if p == mu.base:
            residual = (m - alpha) * scale
            if residual > MASS_TOL:
                masses[p] = residual
        else:
            masses[p] = m * scale
    return LocalMeasure(base=mu.base, masses=masses)


def measure_for(
    kind: str,
    h: Hypergraph,
    adj: AdjacencyIndex,
    x: int,
    weights: Mapping[frozenset[int], float] | None = None,
) -> LocalMeasure:
    """Dispatch on the measure kind enum used by the CLI: en | ee | we | graph."""
    if kind == "en":
        return measure_equal_nodes(h, adj, x)
    if kind == "ee":
        return measure_equal_edges(h, adj, x)
    if kind == "we":
        return measure_weighted_edges(h, adj, x)
    if kind == "graph":
        return graph_measure(adj, x, weights=weights)
    raise MeasureError(f"unknown measure kind {kind!r}; expected one of {MEASURE_KINDS}")
