"""Synthetic hypergraph generators: configuration model and bipartite SBM.

Both generators draw from a counter-based Philox stream so identical seeds
reproduce identical hypergraphs across platforms; the algorithm name is
recorded in the result metadata.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .hypergraph import Hypergraph

RNG_ALGORITHM = "philox4x64"


class GeneratorError(ValueError):
    """Invalid generator specification."""


@dataclass(frozen=True)
class HcmSpec:
    """Configuration model: node degree sequence plus edge cardinality sequence.

    Stub counts must balance: ``sum(degrees) == sum(cardinalities)``.
    """

    degrees: tuple[int, ...]
    cardinalities: tuple[int, ...]
    seed: int = 0

    def __post_init__(self) -> None:
        if any(d < 0 for d in self.degrees):
            raise GeneratorError("degrees must be nonnegative")
        if any(c < 1 for c in self.cardinalities):
            raise GeneratorError("cardinalities must be positive")
        if sum(self.degrees) != sum(self.cardinalities):
            raise GeneratorError(
                f"stub mismatch: sum(degrees)={sum(self.degrees)} != "
                f"sum(cardinalities)={sum(self.cardinalities)}"
            )


@dataclass(frozen=True)
class HsbmSpec:
    """Bipartite stochastic block model between node and edge communities.

    ``affinity[a][b]`` is the probability that a node of community ``a``
    joins an edge of community ``b``.
    """

    node_community_sizes: tuple[int, ...]
    edge_community_sizes: tuple[int, ...]
    affinity: tuple[tuple[float, ...], ...]
    seed: int = 0

    def __post_init__(self) -> None:
        if any(s <= 0 for s in self.node_community_sizes):
            raise GeneratorError("node community sizes must be positive")
        if any(s <= 0 for s in self.edge_community_sizes):
            raise GeneratorError("edge community sizes must be positive")
        if len(self.affinity) != len(self.node_community_sizes):
            raise GeneratorError("affinity needs one row per node community")
        for row in self.affinity:
            if len(row) != len(self.edge_community_sizes):
                raise GeneratorError("affinity needs one column per edge community")
            if any(not 0.0 <= p <= 1.0 for p in row):
                raise GeneratorError("affinities must lie in [0, 1]")


@dataclass(frozen=True)
class GeneratorResult:
    """Generated hypergraph plus bookkeeping needed for density audits.

    ``raw_groups`` holds the pre-collapse stub groups of the configuration
    model (with duplicates still present) so degree and cardinality targets
    can be audited; it is empty for the block model.
    """

    hypergraph: Hypergraph
    collapsed_duplicates: int
    dropped_empty_edges: int
    raw_groups: tuple[tuple[int, ...], ...] = ()
    rng_algorithm: str = RNG_ALGORITHM


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def generate_hcm(spec: HcmSpec) -> GeneratorResult:
    """Stub matching: shuffle node stubs, cut into groups of the given sizes.

    A node drawn twice into the same group is kept once; the collapse count
    is reported so cardinality shrinkage can be audited.
    """
    rng = _rng(spec.seed)
    n = len(spec.degrees)
    stubs = np.repeat(np.arange(n, dtype=np.int64), spec.degrees)
    stubs = rng.permutation(stubs)
    edges: list[list[int]] = []
    groups: list[tuple[int, ...]] = []
    collapsed = 0
    pos = 0
    for card in spec.cardinalities:
        group = tuple(int(v) for v in stubs[pos : pos + card])
        pos += card
        members = sorted(set(group))
        collapsed += card - len(members)
        groups.append(group)
        edges.append(members)
    h = Hypergraph.from_edges(edges, n=n)
    return GeneratorResult(
        hypergraph=h, collapsed_duplicates=collapsed, dropped_empty_edges=0,
        raw_groups=tuple(groups),
    )


def generate_hsbm(spec: HsbmSpec) -> GeneratorResult:
    """Independent Bernoulli memberships per (node, edge) with block affinities.

    Edges that end up empty are dropped and counted. The Bernoulli stream is
    consumed edge-by-edge, node-community-by-node-community, so the output is
    a pure function of the spec.
    """
    rng = _rng(spec.seed)
    node_comm_sizes = spec.node_community_sizes
    starts = np.concatenate([[0], np.cumsum(node_comm_sizes)])
    n = int(starts[-1])
    edges: list[list[int]] = []
    dropped = 0
    for b, m_b in enumerate(spec.edge_community_sizes):
        for _ in range(m_b):
            members: list[int] = []
            for a, n_a in enumerate(node_comm_sizes):
                p = spec.affinity[a][b]
                draws = rng.random(n_a)
                hits = np.nonzero(draws < p)[0]
                base = int(starts[a])
                members.extend(base + int(i) for i in hits)
            if members:
                edges.append(members)
            else:
                dropped += 1
    h = Hypergraph.from_edges(edges, n=n)
    return GeneratorResult(hypergraph=h, collapsed_duplicates=0, dropped_empty_edges=dropped)


def parse_generator_spec(text: str, model: str | None = None) -> HcmSpec | HsbmSpec:
    """Parse the key-value generator spec format.

    Lines are ``key = value``; ``#`` comments and blank lines are skipped.
    Lists are whitespace-separated; the affinity matrix separates rows with
    ``;``. Keys: ``model`` (hcm | hsbm), ``seed``, and either
    ``degrees``/``cardinalities`` or ``node_community_sizes``/
    ``edge_community_sizes``/``affinity``.
    """
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise GeneratorError(f"line {lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        entries[key.strip()] = value.strip()
    declared = entries.pop("model", None)
    if model is None:
        model = declared
    elif declared is not None and declared != model:
        raise GeneratorError(f"spec declares model {declared!r}, expected {model!r}")
    if model not in ("hcm", "hsbm"):
        raise GeneratorError(f"unknown generator model {model!r}")
    seed = int(entries.pop("seed", "0"))

    def int_list(key: str) -> tuple[int, ...]:
        if key not in entries:
            raise GeneratorError(f"missing key {key!r}")
        return tuple(int(tok) for tok in entries.pop(key).split())

    if model == "hcm":
        spec: HcmSpec | HsbmSpec = HcmSpec(
            degrees=int_list("degrees"),
            cardinalities=int_list("cardinalities"),
            seed=seed,
        )
    else:
        node_sizes = int_list("node_community_sizes")
        edge_sizes = int_list("edge_community_sizes")
        if "affinity" not in entries:
            raise GeneratorError("missing key 'affinity'")
        rows = tuple(
            tuple(float(tok) for tok in row.split())
            for row in entries.pop("affinity").split(";")
        )
        spec = HsbmSpec(
            node_community_sizes=node_sizes,
            edge_community_sizes=edge_sizes,
            affinity=rows,
            seed=seed,
        )
    if entries:
        raise GeneratorError(f"unknown keys in spec: {sorted(entries)}")
    return spec
