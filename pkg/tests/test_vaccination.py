"""Vaccination plans, eigenvalue drops, and the herd-equivalence search."""

import numpy as np
import pytest

from vaxnet import (Metric, VaccinationPlan, eigen_drop, from_edge_list,
                    gen_barabasi_albert, gen_erdos_renyi, herd_equivalent,
                    lambda_max, plan_random, plan_topk, seeding)
from vaxnet.centrality import degree_centrality

import oracles


def complete_graph(n):
    return from_edge_list([(i, j) for i in range(n) for j in range(i + 1, n)])


# -- plan construction ---------------------------------------------------------


def test_topk_degree_picks_hub(star5):
    plan = plan_topk(star5, Metric.DEGREE, 1)
    assert plan.victims == (0,)
    assert plan.strategy == "topk:degree"
    assert plan.k == 1


def test_topk_betweenness_picks_interior(path4):
    plan = plan_topk(path4, Metric.BETWEENNESS, 2)
    assert sorted(plan.victims) == [1, 2]


def test_topk_zero_and_full(k4):
    assert plan_topk(k4, Metric.DEGREE, 0).victims == ()
    assert sorted(plan_topk(k4, Metric.DEGREE, 4).victims) == [0, 1, 2, 3]


def test_topk_accepts_precomputed_scores(star5):
    scores = degree_centrality(star5)
    plan = plan_topk(star5, Metric.DEGREE, 2, scores=scores)
    assert plan.victims[0] == 0


def test_topk_rejects_foreign_scores(star5, k4):
    scores = degree_centrality(k4)
    with pytest.raises(ValueError):
        plan_topk(star5, Metric.DEGREE, 1, scores=scores)


def test_plan_k_validation(k4):
    with pytest.raises(ValueError):
        plan_topk(k4, Metric.DEGREE, 5)
    with pytest.raises(ValueError):
        plan_random(k4, -1)


def test_plan_victims_distinct():
    with pytest.raises(ValueError):
        VaccinationPlan((1, 1), "random")


def test_random_plan_deterministic(k4):
    a = plan_random(k4, 2, seed=3)
    b = plan_random(k4, 2, seed=3)
    assert a.victims == b.victims
    assert a.strategy == "random"


def test_random_plan_uniform_coverage():
    g = complete_graph(10)
    counts = np.zeros(10)
    trials = 1500
    for s in range(trials):
        for v in plan_random(g, 3, seed=s).victims:
            counts[v] += 1
    freq = counts / trials
    # each node expected in 30% of draws; 1500 trials pin it within ~5 sigma
    assert np.all(np.abs(freq - 0.3) < 0.06)


def test_random_plan_full_set(k4):
    assert sorted(plan_random(k4, 4, seed=1).victims) == [0, 1, 2, 3]


# -- eigen drop -------------------------------------------------------------------


def test_eigen_drop_empty_plan(k4):
    rep = eigen_drop(k4, VaccinationPlan((), "random"))
    assert rep.lambda_before == pytest.approx(rep.lambda_after)
    assert rep.drop == pytest.approx(0.0, abs=1e-9)


def test_eigen_drop_star_hub(star5):
    rep = eigen_drop(star5, plan_topk(star5, Metric.DEGREE, 1))
    assert rep.lambda_before == pytest.approx(2.0, abs=1e-8)
    assert rep.lambda_after == pytest.approx(0.0, abs=1e-10)
    assert rep.drop_pct == pytest.approx(100.0, abs=1e-6)
    assert rep.converged


def test_eigen_drop_never_negative():
    rng = np.random.default_rng(50)
    for _ in range(30):
        n = int(rng.integers(4, 20))
        g = from_edge_list(oracles.random_edges(rng, n, 0.4), n=n)
        k = int(rng.integers(1, n))
        rep = eigen_drop(g, plan_random(g, k, seed=int(rng.integers(1 << 30))))
        assert rep.drop >= -1e-9
        assert 0.0 <= rep.drop_pct <= 100.0 + 1e-9


def test_eigen_drop_targeted_beats_random_on_hubs():
    g = gen_barabasi_albert(300, 4, seed=7)
    k = 30
    topk = eigen_drop(g, plan_topk(g, Metric.DEGREE, k))
    rand_after = np.mean([
        eigen_drop(g, plan_random(g, k, seed=s)).lambda_after for s in range(10)])
    assert topk.lambda_after < rand_after


# -- herd equivalence ----------------------------------------------------------------


def test_herd_complete_graph_exact():
    # on K_n every node is equivalent, so targeted removal needs exactly
    # the baseline count: lambda(K_{n-k}) = n-k-1 is monotone in k
    g = complete_graph(20)
    report = herd_equivalent([g], Metric.DEGREE, n_h_fraction=0.7, seed=1)
    assert report.n_h == 14
    assert report.lambda_target == pytest.approx(5.0, abs=1e-8)
    assert report.n_hs == 14
    assert report.n_hs_fraction == pytest.approx(0.7)


def test_herd_hub_graph_needs_far_fewer():
    # star-like topology: removing the hub kills the spectrum at once
    graphs = [gen_barabasi_albert(200, 3, seed=s) for s in range(3)]
    report = herd_equivalent(graphs, Metric.DEGREE, n_h_fraction=0.7, seed=2)
    assert report.n_hs < report.n_h


def test_herd_never_exceeds_graph_size():
    graphs = [gen_erdos_renyi(60, 0.2, seed=s) for s in range(3)]
    for metric in (Metric.DEGREE, Metric.BETWEENNESS, Metric.EIGENVECTOR):
        report = herd_equivalent(graphs, metric, n_h_fraction=0.7, seed=3)
        assert 0 <= report.n_hs <= 60
        assert report.lambda_target >= 0


def test_herd_bisection_matches_linear_scan():
    # the bisection must return the smallest k whose ensemble mean reaches
    # the target; verify against an exhaustive scan on small graphs
    from vaxnet.centrality import compute, ranking
    from vaxnet.graph import delete_nodes
    graphs = [gen_erdos_renyi(25, 0.3, seed=s) for s in range(4)]
    metric = Metric.DEGREE
    report = herd_equivalent(graphs, metric, n_h_fraction=0.6, seed=9)
    orders = [ranking(compute(g, metric)) for g in graphs]
    means = []
    for k in range(26):
        vals = [lambda_max(delete_nodes(g, order[:k])).lambda_max
                for g, order in zip(graphs, orders)]
        means.append(float(np.mean(vals)))
    # per-graph eigenvalues fall monotonically as prefixes grow
    assert all(b <= a + 1e-9 for a, b in zip(means, means[1:]))
    want = min(k for k in range(26) if means[k] <= report.lambda_target)
    assert report.n_hs == want


def test_herd_fraction_one_target_zero():
    # the target is lambda = 0; eleven removals already leave an edgeless
    # K_1, so the smallest matching k is n - 1
    g = complete_graph(12)
    report = herd_equivalent([g], Metric.DEGREE, n_h_fraction=1.0, seed=4)
    assert report.n_h == 12
    assert report.lambda_target == 0.0
    assert report.n_hs == 11


def test_herd_validation():
    g = complete_graph(5)
    with pytest.raises(ValueError):
        herd_equivalent([], Metric.DEGREE)
    with pytest.raises(ValueError):
        herd_equivalent([g], Metric.DEGREE, n_h_fraction=1.5)
    with pytest.raises(ValueError):
        herd_equivalent([g, complete_graph(6)], Metric.DEGREE)


def test_herd_deterministic():
    graphs = [gen_erdos_renyi(40, 0.25, seed=s) for s in range(3)]
    a = herd_equivalent(graphs, Metric.DEGREE, seed=11)
    b = herd_equivalent(graphs, Metric.DEGREE, seed=11)
    assert a == b
