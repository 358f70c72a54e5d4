"""Shared randomized-instance helpers for the test suite."""

from __future__ import annotations

import numpy as np

from orcbound.hypergraph import Hypergraph
from orcbound.measures import LocalMeasure


def random_hypergraph(
    rng: np.random.Generator,
    n_max: int = 25,
    m_max: int = 10,
    card_range: tuple[int, int] = (2, 6),
    singleton_prob: float = 0.0,
) -> Hypergraph:
    """Random multihypergraph with at least one non-singleton hyperedge."""
    n = int(rng.integers(4, n_max + 1))
    m = int(rng.integers(2, m_max + 1))
    edges = []
    lo, hi = card_range
    for _ in range(m):
        if singleton_prob and rng.random() < singleton_prob:
            card = 1
        else:
            card = int(rng.integers(lo, min(hi, n) + 1))
        members = rng.choice(n, size=card, replace=False)
        edges.append([int(v) for v in members])
    if all(len(e) < 2 for e in edges):
        edges.append([0, 1])
    return Hypergraph.from_edges(edges, n=n)


def random_simple_graph(rng: np.random.Generator, n_max: int = 15) -> Hypergraph:
    """Erdos-Renyi simple graph as a cardinality-2 hypergraph, no duplicate edges."""
    n = int(rng.integers(3, n_max + 1))
    p = 0.2 + 0.6 * rng.random()
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append([u, v])
    if not edges:
        edges.append([0, 1])
    return Hypergraph.from_edges(edges, n=n)


def random_unit_measure(
    rng: np.random.Generator,
    space,
    base,
    base_mass_prob: float = 0.4,
    max_base_mass: float = 0.6,
) -> LocalMeasure:
    """Random measure supported on a subset of the unit neighbors, maybe lazy."""
    nbrs = list(space.unit_neighbors(base))
    assert nbrs, "base point must have unit neighbors"
    k = int(rng.integers(1, len(nbrs) + 1))
    chosen = rng.choice(len(nbrs), size=k, replace=False)
    weights = rng.random(k) + 1e-3
    base_mass = 0.0
    if rng.random() < base_mass_prob:
        base_mass = float(rng.random() * max_base_mass)
    scale = (1.0 - base_mass) / weights.sum()
    masses = {nbrs[int(i)]: float(w * scale) for i, w in zip(chosen, weights)}
    if base_mass > 0.0:
        masses[base] = base_mass
    return LocalMeasure(base=base, masses=masses)
