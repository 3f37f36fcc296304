import itertools
import json
import math

import pytest

import rankassign as ra

INF = math.inf


def small():
    return ra.CostMatrix([[1.0], [2.0]], [4.0, 3.0])


def brute_force(cost, k):
    full = cost.full()
    found = []
    for cols in itertools.product(range(cost.num_columns), repeat=cost.num_tracks):
        if len(set(cols)) != len(cols):
            continue
        values = [full[i][c] for i, c in enumerate(cols)]
        if any(math.isinf(v) for v in values):
            continue
        found.append((sum(values), list(cols)))
    found.sort()
    return found[:k]


def test_cost_matrix_layout():
    c = small()
    assert c.full() == [[1.0, 4.0, INF], [2.0, INF, 3.0]]
    assert c.num_columns == 3
    assert ra.assignment_cost(c, [0, 2]) == 4.0
    assert not ra.is_valid_assignment(c, [0, 0])


def test_errors_carry_a_code():
    with pytest.raises(ra.RankAssignError) as info:
        ra.CostMatrix([[1.0]], [INF])
    assert info.value.code == "NonFiniteMisdetect"
    with pytest.raises(ValueError):
        ra.assignment_cost(small(), [0, 1, 2])


def test_murty_matches_brute_force():
    for seed in range(30):
        cost, _ = ra.generate_instance(1 + seed % 4, 0.3, seed)
        k = 10
        ranked = ra.murty_k_best(cost, k)
        expected = brute_force(cost, k)
        assert ranked.costs() == pytest.approx([c for c, _ in expected], abs=1e-9)
        assert ranked.columns() == [cols for _, cols in expected]


def test_solve_linear_and_gibbs():
    c = small()
    best = ra.solve_linear(c)
    assert best.columns == [0, 2] and best.cost == 4.0
    assert ra.solve_linear(c, excluded=[(0, 0)]).cost == 6.0
    sampled = ra.gibbs_sample(c, 3, iterations=1000, seed=7)
    assert sampled.costs() == [4.0, 6.0, 7.0]


def test_graph_and_post_processing():
    c = small()
    g = ra.to_bipartite(c)
    assert g.edges == [(0, 0), (0, 1), (1, 0), (1, 2)]
    assert g.edge_attrs == [1.0, 4.0, 2.0, 3.0]
    pred = ra.PredictionMatrix([[0.9, 0.9], [0.6, 0.6], [0.2, 0.2], [0.8, 0.8]], g)
    out = ra.greedy_post_process(pred, c)
    assert out.columns() == [[0, 2], [1, 2]]
    assert out.costs() == [4.0, 7.0]

    ref = ra.murty_k_best(c, 3)
    one_hot = ra.PredictionMatrix.one_hot(g, ref, 3)
    assert ra.greedy_post_process(one_hot, c).columns() == ref.columns()


def test_metrics():
    c = small()
    ref = ra.murty_k_best(c, 3)
    report = ra.evaluate(ref, ref, 3)
    assert report.wp == pytest.approx(3.0, abs=1e-12)
    assert report.per_rank_accuracy == [1.0, 1.0, 1.0]
    assert sum(ra.rank_weight(i, 5) for i in range(1, 6)) == pytest.approx(1.0)


def test_json_round_trip():
    cost, _ = ra.generate_instance(3, 0.5, 11)
    labels = ra.murty_k_best(cost, 2).columns()
    text = ra.instance_to_json(cost, labels)
    back, back_labels = ra.instance_from_json(text)
    assert back == cost
    assert back_labels == labels
    graph = json.loads(ra.graph_to_json(ra.normalize_graph(ra.to_bipartite(cost)), "x", labels, 2))
    assert graph["num_edges"] == cost.finite_count()
    assert len(graph["targets"]) == graph["num_edges"]
