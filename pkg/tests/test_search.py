import numpy as np
import pytest

from guessgap.dist import Shape, dirichlet_sample, validate_tripartite
from guessgap.errors import NoFeasiblePoint, OutOfRange, ShapeMismatch, TooLarge
from guessgap.family import build_counterexample
from guessgap.metrics import analyze_tripartite
from guessgap.search import (
    SearchConfig,
    SearchResult,
    brute_force_grid,
    objective,
    objective_gradient,
    projected_ascent,
    run_search,
)

from oracles import (
    BRUTE_RES8_GAP,
    BRUTE_RES8_POINTS,
    BRUTE_RES10_GAP,
    BRUTE_RES10_POINTS,
    GAP_001,
    brute_gap,
    fd_gradient,
)

S224 = Shape(2, 2, 4)
S222 = Shape(2, 2, 2)


def test_config_rejects_bad_fields():
    bad = [
        dict(delta=-0.1),
        dict(delta=1.0),
        dict(penalty_weight=0.5),
        dict(restarts=0),
        dict(max_iters=-1),
        dict(init_step=0.0),
        dict(converge_tol=0.0),
    ]
    for kwargs in bad:
        with pytest.raises(OutOfRange):
            SearchConfig(shape=S224, **kwargs)


def test_objective_family_point():
    cfg = SearchConfig(S224, delta=0.0)
    val = objective(build_counterexample(0.01), cfg)
    assert abs(val - GAP_001) <= 1e-12


def test_objective_penalizes_eve_copy():
    # Eve holds a perfect copy of Alice while Bob sees noise: gap = 1 but
    # the slack is -0.5, so the hinge at delta = 0.1 costs 10 * 0.6.
    probs = np.zeros((2, 2, 2))
    probs[:, 0, 0] = 0.25
    probs[:, 1, 1] = 0.25
    d = validate_tripartite(probs, S222)
    cfg = SearchConfig(S222, delta=0.1, penalty_weight=10.0)
    assert abs(objective(d, cfg) - (-5.0)) <= 1e-12


def test_objective_zero_for_uniform_product():
    cfg = SearchConfig(S222, delta=0.0)
    u = validate_tripartite(np.full((2, 2, 2), 0.125), S222)
    assert abs(objective(u, cfg)) <= 1e-15


def test_objective_shape_mismatch():
    cfg = SearchConfig(S222)
    d = build_counterexample(0.01)
    with pytest.raises(ShapeMismatch):
        objective(d, cfg)
    with pytest.raises(ShapeMismatch):
        objective_gradient(d, cfg)


def _argmax_margins(t):
    ab = t.sum(axis=2)
    ae = t.sum(axis=0)
    mb = np.sort(ab, axis=1)
    me = np.sort(ae, axis=0)
    return (
        float((mb[:, -1] - mb[:, -2]).min()),
        float((me[-1, :] - me[-2, :]).min()),
        float(ab.max(axis=1).sum() - ae.max(axis=0).sum()),
    )


def test_gradient_matches_central_differences():
    cfg = SearchConfig(S224, delta=0.02, penalty_weight=10.0)
    checked = 0
    seed = 0
    while checked < 20:
        seed += 1
        assert seed < 400, "could not find enough clean interior points"
        d = dirichlet_sample(S224, 5.0, (777, seed))
        t = d.probs
        mb, me, slack = _argmax_margins(t)
        # stay away from argmax ties and the hinge kink, where only
        # one-sided derivatives exist and central differences lie
        if t.min() < 1e-3 or mb < 1e-3 or me < 1e-3 or abs(slack - cfg.delta) < 1e-4:
            continue
        g = objective_gradient(d, cfg)
        fd = fd_gradient(d.flat, 2, 2, 4, cfg.delta, cfg.penalty_weight)
        rel = np.abs(g - fd) / np.maximum(np.abs(fd), 1e-8)
        assert rel.max() <= 1e-4
        checked += 1


def test_gradient_tangent_zero_at_uniform():
    # every cell of the uniform table is equivalent by symmetry, so the
    # gradient must be constant and the simplex-tangent part vanishes
    cfg = SearchConfig(S222, delta=0.0)
    u = validate_tripartite(np.full((2, 2, 2), 0.125), S222)
    g = objective_gradient(u, cfg)
    assert np.abs(g - g.mean()).max() <= 1e-9


def test_ascent_never_loses_the_family_gap():
    cfg = SearchConfig(S224, delta=0.02, max_iters=200)
    res = projected_ascent(build_counterexample(0.01), cfg)
    assert res.objective >= GAP_001 - 1e-9
    assert res.feasible


def test_ascent_survives_point_mass_start():
    probs = np.zeros((2, 2, 2))
    probs[0, 0, 0] = 1.0
    cfg = SearchConfig(S222, delta=0.0, max_iters=50)
    res = projected_ascent(validate_tripartite(probs, S222), cfg)
    assert isinstance(res, SearchResult)
    assert res.objective >= -1e-12


def test_ascent_zero_iters_is_identity():
    cfg = SearchConfig(S224, delta=0.02, max_iters=0)
    start = build_counterexample(0.01)
    res = projected_ascent(start, cfg)
    assert res.iterations_used == 0
    assert len(res.trace) == 1
    assert np.array_equal(res.best_dist.probs, start.probs)


def test_ascent_trace_monotone_and_report_consistent():
    cfg = SearchConfig(S222, delta=0.0, max_iters=400)
    start = dirichlet_sample(S222, 1.0, 99)
    res = projected_ascent(start, cfg)
    vals = [f for _, f in res.trace]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    assert abs(vals[-1] - res.objective) <= 1e-12
    assert res.report == analyze_tripartite(res.best_dist)


def test_run_search_is_deterministic():
    cfg = SearchConfig(S222, delta=0.0, restarts=8, max_iters=300, seed=123)
    r1 = run_search(cfg)
    r2 = run_search(cfg)
    assert r1.objective == r2.objective
    assert r1.restart_index == r2.restart_index
    assert np.array_equal(r1.best_dist.probs, r2.best_dist.probs)


def test_run_search_trivial_eve_caps_at_zero():
    # a one-valued Eve forces i_ae = 0 and p_b >= p_e, so the best
    # feasible gap is 0, reached when Alice and Bob decouple
    cfg = SearchConfig(Shape(2, 2, 1), delta=0.0, restarts=10, max_iters=300, seed=3)
    res = run_search(cfg)
    assert res.feasible
    assert abs(res.objective) <= 1e-9


def test_run_search_no_feasible_point():
    # p_e >= 1/2 on two Alice symbols, so slack never reaches 0.9
    cfg = SearchConfig(S222, delta=0.9, restarts=5, max_iters=50, seed=1)
    with pytest.raises(NoFeasiblePoint):
        run_search(cfg)


def test_family_warm_start_rides_along():
    # seed 0, restart 0: slack 0.0132, infeasible at delta = 0.02; with
    # zero iterations only the warm start can win, at its own index
    cfg = SearchConfig(S224, delta=0.02, restarts=1, max_iters=0, seed=0)
    res = run_search(cfg)
    assert res.restart_index == cfg.restarts
    assert abs(res.objective - GAP_001) <= 1e-12


def test_family_warm_start_can_be_disabled():
    cfg = SearchConfig(
        S224,
        delta=0.02,
        restarts=1,
        max_iters=0,
        seed=0,
        include_family_warm_start=False,
    )
    with pytest.raises(NoFeasiblePoint):
        run_search(cfg)


def test_brute_force_frozen_values():
    res8 = brute_force_grid(S222, 8, 0.0)
    assert abs(res8.objective - BRUTE_RES8_GAP) <= 1e-12
    assert res8.iterations_used == BRUTE_RES8_POINTS
    assert res8.feasible
    assert res8.restart_index == -1
    res10 = brute_force_grid(S222, 10, 0.0)
    assert abs(res10.objective - BRUTE_RES10_GAP) <= 1e-12
    assert res10.iterations_used == BRUTE_RES10_POINTS


def test_brute_force_matches_reference_enumeration():
    for resolution, delta in ((4, 0.0), (5, 0.1)):
        got = brute_force_grid(S222, resolution, delta)
        want_gap, want_count = brute_gap(2, 2, 2, resolution, delta)
        assert abs(got.objective - want_gap) <= 1e-12
        assert got.iterations_used == want_count


def test_brute_force_limits():
    with pytest.raises(TooLarge):
        brute_force_grid(Shape(3, 3, 1), 4, 0.0)
    with pytest.raises(TooLarge):
        brute_force_grid(S222, 13, 0.0)
    with pytest.raises(OutOfRange):
        brute_force_grid(S222, 0, 0.0)


def test_brute_force_degenerate_alice():
    res = brute_force_grid(Shape(2, 1, 1), 6, 0.0)
    assert res.objective == 0.0


def test_brute_force_infeasible_delta():
    with pytest.raises(NoFeasiblePoint):
        brute_force_grid(S222, 4, 0.6)


def test_binary_eve_search_beats_its_grid():
    # four Eve symbols are not needed for a violation: with only two,
    # ascent still lands on the constraint wall with a positive gap
    grid = brute_force_grid(S222, 8, 0.02)
    cfg = SearchConfig(S222, delta=0.02, restarts=30, max_iters=600, seed=0)
    res = run_search(cfg)
    assert res.feasible
    assert res.objective >= grid.objective - 1e-3
    assert res.objective > 0.2
    assert res.report.implication_violated
