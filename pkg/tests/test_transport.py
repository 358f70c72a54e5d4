from fractions import Fraction

import numpy as np
import pytest
from scipy import sparse
from scipy.optimize import linprog

from orcbound.hypergraph import Hypergraph, build_adjacency
from orcbound.measures import LocalMeasure, measure_equal_nodes
from orcbound.spaces import GraphSpace
from orcbound.transport import (
    LipschitzViolationError,
    SinkhornUnderflowError,
    SupportCapError,
    TransportError,
    TransportPlan,
    TransportProblem,
    build_problem,
    dual_witness_lower_bound,
    exact_w1,
    exact_w1_rational,
    optimal_witness,
    sinkhorn_w1,
)
from conftest import random_hypergraph, random_unit_measure


def linprog_w1(problem: TransportProblem) -> float:
    """Independent LP route for cross-checking the flow solver."""
    a = np.array([m for _, m in problem.sources])
    b = np.array([m for _, m in problem.sinks])
    C = np.array(problem.costs, dtype=float)
    ns, nt = len(a), len(b)
    rows, cols, data = [], [], []
    for i in range(ns):
        for j in range(nt):
            rows += [i, ns + j]
            cols += [i * nt + j] * 2
            data += [1.0, 1.0]
    A = sparse.csr_matrix((data, (rows, cols)), shape=(ns + nt, ns * nt))
    res = linprog(C.ravel(), A_eq=A, b_eq=np.concatenate([a, b]),
                  bounds=(0, None), method="highs")
    assert res.status == 0
    return float(res.fun)


def dirac_problem(d: int = 1) -> TransportProblem:
    return TransportProblem(sources=(("a", 1.0),), sinks=(("b", 1.0),), costs=((d,),))


def k3_edge_problem() -> TransportProblem:
    h = Hypergraph.from_edges([[0, 1], [1, 2], [0, 2]])
    adj = build_adjacency(h)
    space = GraphSpace(adj)
    return build_problem(
        measure_equal_nodes(h, adj, 0), measure_equal_nodes(h, adj, 1), space
    )


def random_measure_problem(rng) -> TransportProblem:
    while True:
        h = random_hypergraph(rng, n_max=15, m_max=6)
        adj = build_adjacency(h)
        space = GraphSpace(adj)
        pool = [v for v in range(h.n) if adj.neighbors[v]]
        if len(pool) < 2:
            continue
        x = int(rng.choice(pool))
        y = int(rng.choice(adj.neighbors[x]))
        mu_x = random_unit_measure(rng, space, x)
        mu_y = random_unit_measure(rng, space, y)
        return build_problem(mu_x, mu_y, space)


class TestProblemConstruction:
    def test_mass_sums_validated(self):
        with pytest.raises(TransportError):
            TransportProblem(sources=(("a", 0.7),), sinks=(("b", 1.0),), costs=((1,),))

    def test_negative_cost_rejected(self):
        with pytest.raises(TransportError):
            TransportProblem(sources=(("a", 1.0),), sinks=(("b", 1.0),), costs=((-1,),))

    def test_disconnected_supports_rejected(self):
        h = Hypergraph.from_edges([[0, 1], [2, 3]])
        adj = build_adjacency(h)
        space = GraphSpace(adj)
        mu_x = LocalMeasure(base=0, masses={1: 1.0})
        mu_y = LocalMeasure(base=2, masses={3: 1.0})
        with pytest.raises(TransportError):
            build_problem(mu_x, mu_y, space)

    def test_costs_come_from_bfs(self):
        h = Hypergraph.from_edges([[0, 1], [1, 2], [2, 3]])
        adj = build_adjacency(h)
        space = GraphSpace(adj)
        mu_x = LocalMeasure(base=1, masses={0: 0.5, 2: 0.5})
        mu_y = LocalMeasure(base=2, masses={1: 0.5, 3: 0.5})
        p = build_problem(mu_x, mu_y, space)
        lookup = {(src, snk): p.costs[i][j]
                  for i, (src, _) in enumerate(p.sources)
                  for j, (snk, _) in enumerate(p.sinks)}
        assert lookup[(0, 1)] == 1 and lookup[(0, 3)] == 3 and lookup[(2, 1)] == 1


class TestExact:
    def test_dirac_to_dirac(self):
        plan = exact_w1(dirac_problem())
        assert plan.objective == pytest.approx(1.0, abs=1e-12)
        assert plan.flows == {(0, 0): 1.0}

    def test_identical_measures_cost_zero(self):
        p = TransportProblem(
            sources=(("a", 0.5), ("b", 0.5)),
            sinks=(("a", 0.5), ("b", 0.5)),
            costs=((0, 1), (1, 0)),
        )
        plan = exact_w1(p)
        assert plan.objective == pytest.approx(0.0, abs=1e-12)

    def test_k3_edge_value(self):
        assert exact_w1(k3_edge_problem()).objective == pytest.approx(0.5, abs=1e-12)

    def test_support_cap(self):
        with pytest.raises(SupportCapError):
            exact_w1(k3_edge_problem(), support_cap=1)

    def test_plan_marginals(self):
        rng = np.random.default_rng(31)
        for _ in range(40):
            p = random_measure_problem(rng)
            plan = exact_w1(p)
            ra = [0.0] * len(p.sources)
            rb = [0.0] * len(p.sinks)
            for (i, j), f in plan.flows.items():
                assert f >= 0
                ra[i] += f
                rb[j] += f
            assert ra == pytest.approx([m for _, m in p.sources], abs=1e-9)
            assert rb == pytest.approx([m for _, m in p.sinks], abs=1e-9)

    def test_matches_linprog(self):
        rng = np.random.default_rng(13)
        for _ in range(60):
            p = random_measure_problem(rng)
            assert exact_w1(p).objective == pytest.approx(linprog_w1(p), abs=1e-9)

    def test_symmetry(self):
        rng = np.random.default_rng(41)
        for _ in range(25):
            p = random_measure_problem(rng)
            swapped = TransportProblem(
                sources=p.sinks, sinks=p.sources,
                costs=tuple(zip(*p.costs)),
            )
            assert exact_w1(p).objective == pytest.approx(
                exact_w1(swapped).objective, abs=1e-9
            )

    def test_w1_triangle_inequality(self):
        rng = np.random.default_rng(53)
        for _ in range(15):
            h = random_hypergraph(rng, n_max=12, m_max=5)
            adj = build_adjacency(h)
            space = GraphSpace(adj)
            pool = [v for v in range(h.n) if adj.neighbors[v]]
            comp = [v for v in pool if space.distance(pool[0], v) is not None]
            if len(comp) < 3:
                continue
            picks = rng.choice(comp, size=3, replace=False)
            mus = [random_unit_measure(rng, space, int(v)) for v in picks]
            dab = exact_w1(build_problem(mus[0], mus[1], space)).objective
            dbc = exact_w1(build_problem(mus[1], mus[2], space)).objective
            dac = exact_w1(build_problem(mus[0], mus[2], space)).objective
            assert dac <= dab + dbc + 1e-9


class TestRational:
    def test_k3_is_exactly_one_half(self):
        _, obj = exact_w1_rational(k3_edge_problem())
        assert obj == Fraction(1, 2)

    def test_matches_float_path(self):
        rng = np.random.default_rng(19)
        for _ in range(30):
            h = random_hypergraph(rng, n_max=10, m_max=5)
            adj = build_adjacency(h)
            space = GraphSpace(adj)
            pool = [v for v in range(h.n) if adj.neighbors[v]]
            x = int(rng.choice(pool))
            y = int(rng.choice(adj.neighbors[x]))
            p = build_problem(
                measure_equal_nodes(h, adj, x), measure_equal_nodes(h, adj, y), space
            )
            plan = exact_w1(p)
            _, obj = exact_w1_rational(p)
            assert plan.objective == pytest.approx(float(obj), abs=1e-9)

    def test_cap(self):
        masses = tuple((f"s{i}", 1.0 / 40) for i in range(40))
        costs = tuple(tuple(1 for _ in range(40)) for _ in range(40))
        p = TransportProblem(sources=masses, sinks=masses, costs=costs)
        with pytest.raises(SupportCapError):
            exact_w1_rational(p)


class TestSinkhorn:
    def test_identical_measures_near_zero(self):
        p = TransportProblem(
            sources=(("a", 0.5), ("b", 0.5)),
            sinks=(("a", 0.5), ("b", 0.5)),
            costs=((0, 1), (1, 0)),
        )
        assert abs(sinkhorn_w1(p)) <= 0.05

    def test_dirac_pair(self):
        assert sinkhorn_w1(dirac_problem()) == pytest.approx(1.0, abs=0.05)

    def test_k3_edge_close_to_exact(self):
        assert abs(sinkhorn_w1(k3_edge_problem()) - 0.5) <= 0.1

    def test_iteration_cap_is_not_an_error(self):
        p = k3_edge_problem()
        assert sinkhorn_w1(p, max_iters=2) >= 0.0

    def test_underflow_raises(self):
        with pytest.raises(SinkhornUnderflowError):
            sinkhorn_w1(dirac_problem(d=3), reg=1e-4)

    def test_bad_reg_rejected(self):
        with pytest.raises(TransportError):
            sinkhorn_w1(dirac_problem(), reg=0.0)


class TestDuality:
    def test_zero_witness(self):
        p = k3_edge_problem()
        assert dual_witness_lower_bound(p, lambda q: 0.0) == pytest.approx(0.0)

    def test_distance_witness_is_tight_for_diracs(self):
        p = dirac_problem()
        f = {"a": 1.0, "b": 0.0}
        assert dual_witness_lower_bound(p, f.__getitem__) == pytest.approx(1.0)

    def test_extracted_witness_is_tight(self):
        rng = np.random.default_rng(71)
        for _ in range(40):
            p = random_measure_problem(rng)
            plan = exact_w1(p)
            f = optimal_witness(p, plan)
            value = dual_witness_lower_bound(p, lambda q: f[q])
            assert value == pytest.approx(plan.objective, abs=1e-9)
            assert all(val == int(val) for val in f.values())

    def test_lipschitz_violation_names_pair(self):
        p = dirac_problem()
        f = {"a": 10.0, "b": 0.0}
        with pytest.raises(LipschitzViolationError) as exc:
            dual_witness_lower_bound(p, f.__getitem__)
        assert exc.value.pair == ("a", "b")

    def test_nonoptimal_plan_rejected_by_witness_extraction(self):
        p = TransportProblem(
            sources=(("a", 0.5), ("b", 0.5)),
            sinks=(("a", 0.5), ("b", 0.5)),
            costs=((0, 1), (1, 0)),
        )
        bad = TransportPlan(flows={(0, 1): 0.5, (1, 0): 0.5}, objective=1.0)
        with pytest.raises(TransportError):
            optimal_witness(p, bad)
