import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from socialrec import (BipartiteGraph, CoupledDataset, ProtocolError, ScoreVector, SplitPair,
                       coupled_from_indices, cumulative_rs_curve, evaluate, md_scores, ranking_score,
                       split, sweep)

from conftest import random_coupled, random_graph


def sv_from(scores, collected=()):
    scores = np.asarray(scores, dtype=float)
    mask = np.zeros(scores.size, dtype=bool)
    mask[list(collected)] = True
    return ScoreVector(0, scores, mask)


def test_ranking_score_paper_example():
    scores = np.arange(1000, 0, -1, dtype=float)  # object 29 is 30th from the top
    assert ranking_score(sv_from(scores), 29).value == 0.03


def test_ranking_score_full_tie():
    for n in (1, 4, 7):
        assert ranking_score(sv_from(np.ones(n)), 0).value == (n + 1) / (2 * n)


def test_ranking_score_unique_max():
    assert ranking_score(sv_from([0.1, 0.9, 0.3, 0.2, 5.0], collected=[4]), 1).value == 0.25


def test_ranking_score_protocol_error():
    with pytest.raises(ProtocolError):
        ranking_score(sv_from([1.0, 2.0], collected=[1]), 1)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(0, 10, allow_nan=False), min_size=1, max_size=30), st.data())
def test_ranking_score_bounds_and_monotone(scores, data):
    probe = data.draw(st.integers(0, len(scores) - 1))
    bump = data.draw(st.floats(0, 5, allow_nan=False))
    v = ranking_score(sv_from(scores), probe).value
    assert 0 < v <= 1
    raised = list(scores)
    raised[probe] += bump
    assert ranking_score(sv_from(raised), probe).value <= v


def test_split_sizes():
    rng = np.random.default_rng(0)
    g = BipartiteGraph(100, 100, *np.nonzero(rng.random((100, 100)) < 0.1))
    assert g.n_edges > 0
    ds = CoupledDataset(g, BipartiteGraph.empty(100, 1))
    e1000 = coupled_from_indices(1000, 1, 1, [(i, 0) for i in range(1000)], [])
    sp_ = split(e1000, 0.8, 3)
    assert sp_.train.user_object.n_edges == 800 and len(sp_.probe) == 200
    toy5 = coupled_from_indices(5, 1, 1, [(i, 0) for i in range(5)], [])
    sp5 = split(toy5, 0.8, 1)
    assert sp5.train.user_object.n_edges == 4 and len(sp5.probe) == 1
    a, b = split(ds, 0.8, 9), split(ds, 0.8, 9)
    assert a.train == b.train and np.array_equal(a.probe, b.probe)


def test_split_errors(toy):
    for frac in (0.0, 1.0, -0.1, 1.5):
        with pytest.raises(ValueError):
            split(toy, frac, 0)
    with pytest.raises(ValueError):
        split(coupled_from_indices(2, 2, 1, [], [(0, 0)]), 0.8, 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0.05, 0.95))
def test_split_partition(seed, fraction):
    rng = np.random.default_rng(seed)
    ds = random_coupled(rng, 20, 20, 5)
    if ds.user_object.n_edges == 0:
        return
    sp_ = split(ds, fraction, seed)
    orig = {tuple(e) for e in ds.user_object.edges().tolist()}
    train = {tuple(e) for e in sp_.train.user_object.edges().tolist()}
    probe = {tuple(e) for e in sp_.probe.tolist()}
    assert not train & probe
    assert train | probe == orig
    assert len(probe) == len(sp_.probe)
    assert abs(len(train) - fraction * len(orig)) <= 1
    assert sp_.train.user_group == ds.user_group
    assert np.array_equal(sp_.unscorable, sp_.train.user_object.right_degrees[sp_.probe[:, 1]] == 0)


def test_evaluate_md_toy(toy):
    train = toy.with_user_object(BipartiteGraph(3, 4, [0, 0, 1, 1, 2, 2, 2], [0, 1, 0, 2, 1, 2, 3]))
    sp_ = SplitPair(train, np.array([[0, 2]]), 0.8, 0, np.array([False]))
    res = evaluate("md", sp_)
    assert res.values.tolist() == [0.5]


def test_evaluate_oracle_scorer():
    rng = np.random.default_rng(1)
    ds = random_coupled(rng, 30, 30, 5)
    sp_ = split(ds, 0.8, 1)
    probe_sets = {}
    for u, o in sp_.probe.tolist():
        probe_sets.setdefault(u, set()).add(o)

    def oracle(train, target):
        sv = md_scores(train, target)
        boost = np.zeros(train.n_objects)
        boost[list(probe_sets[target])] = 1e6 + np.arange(len(probe_sets[target]))
        return ScoreVector(target, boost, sv.collected_mask)

    res = evaluate(oracle, sp_)
    for u, v in zip(res.users.tolist(), res.values.tolist()):
        n_unc = sp_.train.n_objects - sp_.train.user_object.left_degrees[u]
        assert v <= len(probe_sets[u]) / n_unc + 1e-15
    single = [u for u in probe_sets if len(probe_sets[u]) == 1]
    for u in single:
        n_unc = sp_.train.n_objects - sp_.train.user_object.left_degrees[u]
        assert res.values[res.users == u][0] == 1 / n_unc


def test_evaluate_skips_unscorable():
    # object 1 only has a probe link
    ds = coupled_from_indices(2, 2, 1, [(0, 0), (1, 0), (1, 1)], [(0, 0)])
    train = ds.with_user_object(BipartiteGraph(2, 2, [0, 1], [0, 0]))
    sp_ = SplitPair(train, np.array([[1, 1]]), 0.8, 0, np.array([True]))
    res = evaluate("md", sp_)
    assert len(res) == 0 and res.n_unscorable == 1
    with pytest.raises(ValueError):
        evaluate("nonsense", sp_)


def test_evaluate_deterministic_and_constant_null():
    rng = np.random.default_rng(2)
    ds = random_coupled(rng, 30, 30, 5)
    sp_ = split(ds, 0.8, 5)
    a, b = evaluate("sd", sp_), evaluate("sd", sp_)
    assert np.array_equal(a.values, b.values) and np.array_equal(a.users, b.users)

    def constant(train, target):
        return ScoreVector(target, np.ones(train.n_objects), md_scores(train, target).collected_mask)

    res = evaluate(constant, sp_)
    n_unc = sp_.train.n_objects - sp_.train.user_object.left_degrees[res.users]
    expected = (n_unc + 1) / (2 * n_unc)
    assert np.array_equal(res.values, expected)
    assert res.mean() == math.fsum(expected.tolist()) / expected.size


def test_cumulative_curve():
    rng = np.random.default_rng(3)
    ds = random_coupled(rng, 30, 30, 5)
    sp_ = split(ds, 0.8, 3)
    res = evaluate("md", sp_)
    curve = cumulative_rs_curve(res, sp_.train)
    assert curve[-1].mean_rs == res.mean()
    assert curve[-1].n == len(res)
    degs = [p.degree for p in curve]
    assert degs == sorted(set(degs))
    assert all(p.n >= 1 for p in curve)
    k = sp_.train.user_object.left_degrees[res.users]
    for p in curve:
        assert p.mean_rs == pytest.approx(res.values[k <= p.degree].mean(), abs=1e-14)
    ucurve = cumulative_rs_curve(res, sp_.train, "user")
    assert ucurve[-1].mean_rs == res.mean("user")


def test_cumulative_curve_single_user():
    train = coupled_from_indices(1, 5, 1, [(0, 0)], [(0, 0)])
    res = evaluate("md", SplitPair(train, np.array([[0, 1], [0, 2]]), 0.8, 0, np.array([False, False])))
    curve = cumulative_rs_curve(res, train)
    assert len(curve) == 1 and curve[0].mean_rs == res.values.mean()


def test_sweep_machinery():
    rng = np.random.default_rng(4)
    ds = random_coupled(rng, 30, 30, 5)
    res = sweep("blend", ds, "beta", [0.0, 1.0], n_splits=3, base_seed=10, fixed={"lam": 0.3})
    base = [evaluate("hdh", split(ds, 0.8, s), {"lam": 0.3}).mean() for s in (10, 11, 12)]
    assert res.rows[0].mean_rs == math.fsum(base) / 3
    assert res.rows[0].stddev_rs == float(np.std(base))
    assert res.argmin in (0.0, 1.0)
    one = sweep("hdh", ds, "lam", [0.5], n_splits=1)
    assert one.rows[0].stddev_rs == 0.0 and one.rows[0].n_splits == 1
    with pytest.raises(ValueError):
        sweep("hdh", ds, "lam", [], n_splits=1)
    with pytest.raises(ValueError):
        sweep("hdh", ds, "lam", [0.5], n_splits=0)
    assert sweep("hdh", ds, "lam", [0.2, 0.8], 2, 7).rows == sweep("hdh", ds, "lam", [0.2, 0.8], 2, 7).rows
