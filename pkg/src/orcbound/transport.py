"""Wasserstein-1 ground truth and baselines on small discrete supports.

``exact_w1`` solves the transport linear program by successive shortest
paths over the bipartite support graph. Distances are integers, so every
Dijkstra comparison is exact integer arithmetic; only flow amounts are
floats. ``exact_w1_rational`` runs the same algorithm on ``Fraction``
masses for golden-value fixtures. ``sinkhorn_w1`` is the entropic matrix
scaling baseline. ``optimal_witness`` recovers an integer-valued
1-Lipschitz potential from any optimal plan, and
``dual_witness_lower_bound`` certifies a lower bound from any candidate
potential via Kantorovich duality.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np

from .measures import LocalMeasure
from .spaces import IntegerMetricSpace, Point

MASS_TOL = 1e-12
FLOW_ZERO = 1e-15
DEFAULT_SUPPORT_CAP = 512

DEFAULT_SINKHORN_REG = 0.02
DEFAULT_SINKHORN_ITERS = 500
DEFAULT_SINKHORN_THRESHOLD = 1e-2


class TransportError(ValueError):
    """Invalid transport problem or solver failure."""


class SupportCapError(TransportError):
    """Support too large for the exact solver; use the Sinkhorn baseline."""


class SinkhornUnderflowError(TransportError):
    """Gibbs kernel underflowed to an all-zero row; increase the regularization."""


class LipschitzViolationError(TransportError):
    """Candidate dual potential is not 1-Lipschitz on the support."""

    def __init__(self, u: Point, v: Point, gap: float, bound: int) -> None:
        super().__init__(
            f"|f({u!r}) - f({v!r})| = {gap} exceeds distance {bound}"
        )
        self.pair = (u, v)


@dataclass(frozen=True)
class TransportProblem:
    """Masses on two finite supports plus their integer cost matrix."""

    sources: tuple[tuple[Point, float], ...]
    sinks: tuple[tuple[Point, float], ...]
    costs: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.sources or not self.sinks:
            raise TransportError("empty support")
        for masses in (self.sources, self.sinks):
            total = sum(m for _, m in masses)
            if abs(total - 1.0) > MASS_TOL:
                raise TransportError(f"masses sum to {total!r}, not 1")
            if any(m <= 0 for _, m in masses):
                raise TransportError("all masses must be positive")
        if len(self.costs) != len(self.sources):
            raise TransportError("cost matrix row count mismatch")
        for row in self.costs:
            if len(row) != len(self.sinks):
                raise TransportError("cost matrix column count mismatch")
            for c in row:
                if c is None:
                    raise TransportError(
                        "infinite cost entry: supports span disconnected components"
                    )
                if c < 0:
                    raise TransportError(f"negative cost {c}")


@dataclass(frozen=True)
class TransportPlan:
    """Optimal flows keyed by (source index, sink index), plus total cost."""

    flows: Mapping[tuple[int, int], float]
    objective: float


def build_problem(
    mu_x: LocalMeasure, mu_y: LocalMeasure, space: IntegerMetricSpace
) -> TransportProblem:
    """Assemble the transport problem between two local measures.

    Costs come from the space metric, resolved per source support point (for
    graph spaces this is one early-stopping BFS per source point).
    """
    sources = tuple(sorted(mu_x.masses.items(), key=lambda kv: repr(kv[0])))
    sinks = tuple(sorted(mu_y.masses.items(), key=lambda kv: repr(kv[0])))
    sink_points = [p for p, _ in sinks]
    costs = []
    for p, _ in sources:
        row = space.distances_from(p, sink_points)
        if any(d is None for d in row):
            raise TransportError(
                f"no finite distance from {p!r} to some sink point (disconnected)"
            )
        costs.append(tuple(int(d) for d in row))
    return TransportProblem(sources=sources, sinks=sinks, costs=tuple(costs))


def _ssp_min_cost_flow(supply, demand, costs, zero):
    """Successive shortest paths on the bipartite transport graph.

    ``supply``/``demand`` may be floats or Fractions; ``zero`` is the dust
    threshold (0 for Fractions). Costs must be nonnegative integers, which
    keeps potentials and Dijkstra labels exact. Demands are rescaled once so
    both sides balance exactly; leftover mass below the dust threshold is
    dropped rather than routed.
    """
    ns, nt = len(supply), len(demand)
    total_supply = sum(supply)
    total_demand = sum(demand)
    if total_demand != total_supply:
        factor = total_supply / total_demand
        demand = [d * factor for d in demand]
    INF = float("inf")
    pot_s = [0] * ns
    pot_t = [0] * nt
    inflow: list[dict] = [dict() for _ in range(nt)]
    stop = zero * max(ns, nt) * 8 if zero else zero
    guard = 20 * (ns + nt) + 64
    rounds = 0
    while min(sum(supply), sum(demand)) > stop:
        rounds += 1
        if rounds > guard:
            raise TransportError("min-cost flow failed to terminate")
        dist_s = [INF] * ns
        dist_t = [INF] * nt
        par_t = [-1] * nt
        par_s = [-1] * ns
        done_s = [False] * ns
        done_t = [False] * nt
        heap = [(0, 0, i) for i in range(ns) if supply[i] > zero]
        for _, _, i in heap:
            dist_s[i] = 0
        heapq.heapify(heap)
        while heap:
            d, side, u = heapq.heappop(heap)
            if side == 0:
                if done_s[u]:
                    continue
                done_s[u] = True
                pu = pot_s[u]
                row = costs[u]
                for j in range(nt):
                    if done_t[j]:
                        continue
                    nd = d + row[j] + pu - pot_t[j]
                    if nd < dist_t[j]:
                        dist_t[j] = nd
                        par_t[j] = u
                        heapq.heappush(heap, (nd, 1, j))
            else:
                if done_t[u]:
                    continue
                done_t[u] = True
                pu = pot_t[u]
                for i, f in inflow[u].items():
                    if done_s[i] or f <= zero:
                        continue
                    nd = d - costs[i][u] + pu - pot_s[i]
                    if nd < dist_s[i]:
                        dist_s[i] = nd
                        par_s[i] = u
                        heapq.heappush(heap, (nd, 0, i))
        dstar, jstar = None, -1
        for j in range(nt):
            if demand[j] > zero and dist_t[j] < INF:
                if dstar is None or dist_t[j] < dstar:
                    dstar, jstar = dist_t[j], j
        if jstar < 0:
            raise TransportError("no augmenting path: unbalanced problem")
        for i in range(ns):
            pot_s[i] += dist_s[i] if dist_s[i] < dstar else dstar
        for j in range(nt):
            pot_t[j] += dist_t[j] if dist_t[j] < dstar else dstar
        # Walk parent pointers back to a supply root, collecting the bottleneck.
        j = jstar
        amount = demand[j]
        while True:
            i = par_t[j]
            if par_s[i] == -1:
                root = i
                break
            jp = par_s[i]
            amount = min(amount, inflow[jp][i])
            j = jp
        amount = min(amount, supply[root])
        j = jstar
        while True:
            i = par_t[j]
            inflow[j][i] = inflow[j].get(i, 0 * amount) + amount
            if par_s[i] == -1:
                break
            jp = par_s[i]
            inflow[jp][i] -= amount
            if inflow[jp][i] <= zero:
                del inflow[jp][i]
            j = jp
        supply[root] -= amount
        demand[jstar] -= amount
        if supply[root] <= zero:
            supply[root] = 0 * amount
        if demand[jstar] <= zero:
            demand[jstar] = 0 * amount
    flows = {}
    objective = None
    for j in range(nt):
        for i, f in inflow[j].items():
            if f > zero:
                flows[(i, j)] = f
                term = f * costs[i][j]
                objective = term if objective is None else objective + term
    if objective is None:
        objective = 0 * total_supply
    return flows, objective


def exact_w1(p: TransportProblem, support_cap: int = DEFAULT_SUPPORT_CAP) -> TransportPlan:
    """Exact optimal transport plan and W1 objective.

    Deterministic objective; the plan itself may be one of several degenerate
    optima. Raises ``SupportCapError`` above ``support_cap`` points per side.
    """
    if len(p.sources) > support_cap or len(p.sinks) > support_cap:
        raise SupportCapError(
            f"support sizes {len(p.sources)}x{len(p.sinks)} exceed cap {support_cap}; "
            "use sinkhorn_w1 for large problems"
        )
    supply = [m for _, m in p.sources]
    demand = [m for _, m in p.sinks]
    flows, objective = _ssp_min_cost_flow(supply, demand, p.costs, FLOW_ZERO)
    return TransportPlan(flows=flows, objective=float(objective))


def exact_w1_rational(
    p: TransportProblem, max_denominator: int = 10**9
) -> tuple[TransportPlan, Fraction]:
    """Exact rational W1 for fixtures whose masses are rationals stored as floats.

    Masses are snapped to fractions with bounded denominator, rescaled to a
    common denominator, and the flow is solved in exact arithmetic. Returns
    the plan (flows as floats) plus the objective as a ``Fraction``.
    """
    if len(p.sources) > 32 or len(p.sinks) > 32:
        raise SupportCapError("rational path is reserved for supports <= 32")
    supply = [Fraction(m).limit_denominator(max_denominator) for _, m in p.sources]
    demand = [Fraction(m).limit_denominator(max_denominator) for _, m in p.sinks]
    if sum(supply) != sum(demand):
        # Snap the largest sink mass so totals match exactly.
        k = max(range(len(demand)), key=lambda j: demand[j])
        demand[k] += sum(supply) - sum(demand)
    flows, objective = _ssp_min_cost_flow(supply, demand, p.costs, Fraction(0))
    plan = TransportPlan(
        flows={k: float(v) for k, v in flows.items()}, objective=float(objective)
    )
    return plan, objective


def sinkhorn_w1(
    p: TransportProblem,
    reg: float = DEFAULT_SINKHORN_REG,
    max_iters: int = DEFAULT_SINKHORN_ITERS,
    threshold: float = DEFAULT_SINKHORN_THRESHOLD,
) -> float:
    """Entropic-regularized transport cost via Sinkhorn matrix scaling.

    ``reg`` applies to costs normalized by their maximum entry, so its scale
    is problem-independent. Iteration stops when the relative change of both
    scaling vectors falls below ``threshold``, or at ``max_iters`` (hitting
    the cap is not an error; it mirrors the baseline configuration). Returns
    the transport cost of the resulting plan under the original costs.
    """
    if reg <= 0:
        raise TransportError(f"regularization must be positive, got {reg}")
    a = np.array([m for _, m in p.sources], dtype=float)
    b = np.array([m for _, m in p.sinks], dtype=float)
    C = np.array(p.costs, dtype=float)
    cmax = C.max()
    K = np.exp(-(C / cmax if cmax > 0 else C) / reg)
    if np.any(K.sum(axis=1) == 0.0) or np.any(K.sum(axis=0) == 0.0):
        raise SinkhornUnderflowError(
            f"Gibbs kernel underflowed at reg={reg}; increase reg"
        )
    u = np.ones_like(a)
    v = np.ones_like(b)
    for it in range(max_iters):
        u_prev, v_prev = u, v
        Kv = K @ v
        if np.any(Kv == 0.0):
            raise SinkhornUnderflowError(f"zero scaling denominator at reg={reg}; increase reg")
        u = a / Kv
        Ku = K.T @ u
        if np.any(Ku == 0.0):
            raise SinkhornUnderflowError(f"zero scaling denominator at reg={reg}; increase reg")
        v = b / Ku
        if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
            raise SinkhornUnderflowError(f"scaling vectors diverged at reg={reg}; increase reg")
        if it > 0:
            # Relative change keeps the stop rule meaningful regardless of the
            # scaling vectors' magnitude, which grows as reg shrinks.
            err = max(
                np.max(np.abs(u - u_prev) / np.maximum(np.abs(u), 1e-300)),
                np.max(np.abs(v - v_prev) / np.maximum(np.abs(v), 1e-300)),
            )
            if err < threshold:
                break
    plan = u[:, None] * K * v[None, :]
    return float(np.sum(plan * C))


def optimal_witness(p: TransportProblem, plan: TransportPlan) -> dict[Point, float]:
    """Integer-valued 1-Lipschitz potential certifying the plan's objective.

    Builds the residual graph of the plan over the union of support points
    (metric arcs both ways, refund arcs on carried flow) and takes
    Bellman-Ford potentials. Optimality of the plan under a metric cost
    guarantees no negative cycle; the returned f satisfies
    ``sum f dmu - sum f dnu = objective``.
    """
    points: list[Point] = []
    index: dict[Point, int] = {}
    for q, _ in p.sources + p.sinks:
        if q not in index:
            index[q] = len(points)
            points.append(q)
    n = len(points)
    arcs: list[tuple[int, int, float]] = []
    for i, (u, _) in enumerate(p.sources):
        for j, (v, _) in enumerate(p.sinks):
            ui, vi = index[u], index[v]
            if ui == vi:
                continue
            c = p.costs[i][j]
            arcs.append((ui, vi, c))
            arcs.append((vi, ui, c))
            if plan.flows.get((i, j), 0.0) > FLOW_ZERO:
                arcs.append((vi, ui, -c))
    dist = [0.0] * n  # virtual root at distance 0 to every node
    for _ in range(n):
        changed = False
        for u, v, c in arcs:
            nd = dist[u] + c
            if nd < dist[v] - 1e-12:
                dist[v] = nd
                changed = True
        if not changed:
            break
    else:
        raise TransportError("negative cycle: plan is not optimal for these costs")
    return {q: -dist[index[q]] for q in points}


def dual_witness_lower_bound(
    p: TransportProblem, f: Callable[[Point], float]
) -> float:
    """Certified W1 lower bound from a 1-Lipschitz potential.

    Verifies the Lipschitz condition on every source/sink support pair, then
    evaluates the dual objective. Any feasible potential yields a valid lower
    bound; optimal potentials make it tight.
    """
    fs = [f(q) for q, _ in p.sources]
    ft = [f(q) for q, _ in p.sinks]
    for i, (u, _) in enumerate(p.sources):
        for j, (v, _) in enumerate(p.sinks):
            gap = abs(fs[i] - ft[j])
            if gap > p.costs[i][j] + 1e-9:
                raise LipschitzViolationError(u, v, gap, p.costs[i][j])
    lhs = sum(val * m for val, (_, m) in zip(fs, p.sources))
    rhs = sum(val * m for val, (_, m) in zip(ft, p.sinks))
    return lhs - rhs
