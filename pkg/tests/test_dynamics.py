import numpy as np
import pytest

from cohesion_lab.dynamics import (
    CROSS_MATCHINGS,
    RoundSchedule,
    Susceptibility,
    convergence_time,
    diffuse_spectral,
    diffuse_stepped,
    four_cluster_graph,
    memory_experiment,
    memory_schedules,
    rep_rng,
    run_rounds,
    within_cluster_rounds,
)
from cohesion_lab.errors import DomainError, ValidationError
from cohesion_lab.generators import clique, cycle
from cohesion_lab.graphs import Graph
from cohesion_lab.spectra import LaplacianKind, algebraic_connectivity, laplacian
from conftest import random_connected_graph

BIN = LaplacianKind.BINARY
ROW = LaplacianKind.ROW_NORMALIZED


class TestSpectralDiffusion:
    def test_two_node_closed_form(self):
        g = clique(2)
        times = np.linspace(0.0, 3.0, 13)
        traj = diffuse_spectral(g, BIN, np.array([0.0, 1.0]), times)
        expected0 = 0.5 - 0.5 * np.exp(-2 * times)
        expected1 = 0.5 + 0.5 * np.exp(-2 * times)
        assert np.abs(traj.states[:, 0] - expected0).max() < 1e-10
        assert np.abs(traj.states[:, 1] - expected1).max() < 1e-10

    def test_t_zero_returns_y0(self, rng):
        g = random_connected_graph(rng, 9, 14)
        y0 = rng.standard_normal(9)
        traj = diffuse_spectral(g, ROW, y0, np.array([0.0, 1.0]))
        assert np.abs(traj.states[0] - y0).max() < 1e-10

    def test_constant_vector_is_fixed_point(self, rng):
        g = random_connected_graph(rng, 8, 12)
        y0 = np.full(8, 3.7)
        for kind in (BIN, ROW):
            traj = diffuse_spectral(g, kind, y0, np.linspace(0, 5, 7))
            assert np.abs(traj.states - 3.7).max() < 1e-10

    def test_binary_conserves_mean(self, rng):
        g = random_connected_graph(rng, 10, 17)
        y0 = rng.standard_normal(10)
        traj = diffuse_spectral(g, BIN, y0, np.linspace(0, 8, 9))
        assert np.abs(traj.states.mean(axis=1) - y0.mean()).max() < 1e-10

    def test_rownorm_conserves_degree_weighted_mean(self, rng):
        g = random_connected_graph(rng, 10, 17)
        deg = np.array([g.degree(u) for u in range(10)], dtype=float)
        y0 = rng.standard_normal(10)
        traj = diffuse_spectral(g, ROW, y0, np.linspace(0, 8, 9))
        weighted = traj.states @ deg
        assert np.abs(weighted - deg @ y0).max() < 1e-10

    def test_spread_non_increasing(self, rng):
        for kind in (BIN, ROW):
            g = random_connected_graph(rng, 9, 13)
            y0 = rng.standard_normal(9)
            traj = diffuse_spectral(g, kind, y0, np.linspace(0, 6, 40))
            assert np.all(np.diff(traj.spread) <= 1e-10)

    def test_disconnected_flagged_with_component_equilibria(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        y0 = np.array([0.0, 1.0, 4.0, 8.0])
        traj = diffuse_spectral(g, BIN, y0, np.array([0.0, 50.0]))
        assert not traj.connected
        assert traj.states[1, 0] == pytest.approx(0.5, abs=1e-8)
        assert traj.states[1, 2] == pytest.approx(6.0, abs=1e-8)

    def test_negative_times_rejected(self, rng):
        g = random_connected_graph(rng, 5, 6)
        with pytest.raises(DomainError):
            diffuse_spectral(g, BIN, np.zeros(5), np.array([-1.0]))


class TestSteppedDiffusion:
    def test_matches_spectral_with_unit_susceptibility(self, rng):
        for kind in (BIN, ROW):
            g = random_connected_graph(rng, 9, 14)
            y0 = rng.standard_normal(9)
            s = Susceptibility.uniform(9)
            stepped = diffuse_stepped(g, kind, s, y0, t_end=5.0, dt=0.01)
            exact = diffuse_spectral(g, kind, y0, stepped.times)
            assert np.abs(stepped.states - exact.states).max() < 1e-6

    def test_stability_bound_enforced(self, rng):
        g = random_connected_graph(rng, 8, 12)
        s = Susceptibility.uniform(8)
        with pytest.raises(DomainError, match="stability"):
            diffuse_stepped(g, BIN, s, np.zeros(8), t_end=1.0, dt=10.0)

    def test_stubborn_node_barely_moves(self, rng):
        g = random_connected_graph(rng, 8, 14)
        y0 = rng.standard_normal(8)
        y0[0] = 2.0
        vals = np.ones(8)
        vals[0] = 1e-6
        traj = diffuse_stepped(g, ROW, Susceptibility(vals), y0, t_end=40.0, dt=0.05)
        final = traj.states[-1]
        assert abs(final[0] - y0[0]) < 1e-3
        # everyone else has been pulled toward the stubborn value
        others0 = np.abs(y0[1:] - y0[0]).mean()
        others1 = np.abs(final[1:] - final[0]).mean()
        assert others1 < 0.1 * others0

    def test_constant_y0_constant_trajectory(self, rng):
        g = random_connected_graph(rng, 6, 9)
        vals = rng.uniform(0.5, 2.0, size=6)
        traj = diffuse_stepped(g, ROW, Susceptibility(vals), np.full(6, 1.5), t_end=3.0, dt=0.05)
        assert np.abs(traj.states - 1.5).max() < 1e-12

    def test_positive_susceptibility_required(self):
        with pytest.raises(ValidationError):
            Susceptibility(np.array([1.0, 0.0]))


class TestConvergenceTime:
    def test_epsilon_above_spread_rejected(self, rng):
        g = random_connected_graph(rng, 6, 9)
        with pytest.raises(DomainError):
            convergence_time(g, BIN, np.zeros(6), epsilon=1.0)

    def test_disconnected_rejected(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        with pytest.raises(DomainError):
            convergence_time(g, BIN, np.array([0.0, 1.0, 0.0, 1.0]), epsilon=0.1)

    def test_higher_lambda2_converges_faster(self, rng):
        # the claim is asymptotic: compare pairs whose lambda2 differ materially
        wins = 0
        for _ in range(40):
            a = random_connected_graph(rng, 10, 16)
            b = random_connected_graph(rng, 10, 16)
            la = algebraic_connectivity(a, ROW)
            lb = algebraic_connectivity(b, ROW)
            if la < lb:
                a, b, la, lb = b, a, lb, la
            if lb <= 0 or la / lb < 1.3:
                continue
            y0 = rng.standard_normal(10)
            ta = convergence_time(a, ROW, y0, epsilon=1e-8)
            tb = convergence_time(b, ROW, y0, epsilon=1e-8)
            wins += 1
            assert ta < tb
        assert wins >= 10

    def test_tail_decay_rate_matches_lambda2(self, rng):
        g = random_connected_graph(rng, 9, 13)
        lam2 = algebraic_connectivity(g, BIN)
        y0 = rng.standard_normal(9)
        t0 = convergence_time(g, BIN, y0, epsilon=1e-5)
        ts = np.linspace(t0, t0 + 4.0 / lam2, 30)
        traj = diffuse_spectral(g, BIN, y0, ts)
        slope = np.polyfit(ts, np.log(traj.spread), 1)[0]
        assert -slope == pytest.approx(lam2, rel=0.05)

    def test_bisection_hits_threshold(self, rng):
        g = random_connected_graph(rng, 8, 13)
        y0 = rng.standard_normal(8)
        eps = 1e-3
        t = convergence_time(g, BIN, y0, epsilon=eps, tol=1e-8)
        before = diffuse_spectral(g, BIN, y0, np.array([t - 1e-6])).spread[0]
        after = diffuse_spectral(g, BIN, y0, np.array([t + 1e-6])).spread[0]
        assert after < eps <= before + 1e-9


class TestRounds:
    def test_single_pair_average(self):
        sched = RoundSchedule(n=2, rounds=(((0, 1),),))
        traj = run_rounds(sched, np.array([0.0, 1.0]))
        assert np.allclose(traj.states[-1], [0.5, 0.5])

    def test_round_robin_reaches_global_mean(self):
        sched = RoundSchedule(n=4, rounds=(((0, 1), (2, 3)), ((0, 2), (1, 3))))
        y0 = np.array([1.0, 5.0, -3.0, 9.0])
        traj = run_rounds(sched, y0)
        assert np.allclose(traj.states[-1], y0.mean())

    def test_unmatched_nodes_keep_values(self):
        sched = RoundSchedule(n=4, rounds=(((0, 1),),))
        y0 = np.array([0.0, 1.0, 7.0, -2.0])
        traj = run_rounds(sched, y0)
        assert traj.states[-1, 2] == 7.0 and traj.states[-1, 3] == -2.0
        traj_exp = run_rounds(sched, y0, rule="exponential", t_round=2.0)
        assert traj_exp.states[-1, 2] == 7.0 and traj_exp.states[-1, 3] == -2.0

    def test_overlapping_pairs_rejected_for_averaging(self):
        sched = RoundSchedule(n=3, rounds=(((0, 1), (1, 2)),))
        with pytest.raises(ValidationError, match="matching"):
            run_rounds(sched, np.zeros(3))
        # the exponential rule accepts arbitrary subgraphs
        run_rounds(sched, np.array([1.0, 2.0, 3.0]), rule="exponential")

    def test_pair_average_is_long_time_exponential_limit(self, rng):
        sched = RoundSchedule(n=6, rounds=(((0, 3), (1, 4)), ((2, 5),)))
        y0 = rng.standard_normal(6)
        avg = run_rounds(sched, y0)
        exp = run_rounds(sched, y0, rule="exponential", t_round=50.0)
        assert np.abs(avg.states - exp.states).max() < 1e-8

    def test_schedule_json_round_trip(self):
        sched = RoundSchedule(n=4, rounds=(((0, 1), (2, 3)), ((0, 2),)))
        again = RoundSchedule.from_json_obj(sched.to_json_obj())
        assert again == sched

    def test_duplicate_pair_rejected(self):
        with pytest.raises(ValidationError):
            RoundSchedule(n=4, rounds=(((0, 1), (1, 0)),))


class TestMemoryExperiment:
    def test_schedules_are_perfect_matchings(self):
        t1, t2 = memory_schedules()
        for sched in (t1, t2):
            for r, pairs in enumerate(sched.rounds):
                nodes = sorted(x for p in pairs for x in p)
                assert nodes == list(range(16))
        # treatment 2 is treatment 1 with the cross round moved to the end
        assert t1.rounds[0] == t2.rounds[-1]
        assert t1.rounds[1:] == t2.rounds[:-1]

    def test_cross_matchings_span_clusters(self):
        for style, pairs in CROSS_MATCHINGS.items():
            assert len(pairs) == 8
            for u, v in pairs:
                assert u // 4 != v // 4, style

    def test_within_rounds_cover_each_clique(self):
        rounds = within_cluster_rounds()
        assert len(rounds) == 3
        partners = {u: set() for u in range(16)}
        for pairs in rounds:
            for u, v in pairs:
                assert u // 4 == v // 4
                partners[u].add(v)
                partners[v].add(u)
        for u in range(16):
            assert partners[u] == {4 * (u // 4) + k for k in range(4)} - {u}

    def test_union_graph_is_four_cliques_plus_cross_ties(self):
        g = four_cluster_graph()
        assert g.n == 16
        within = {(u, v) for u, v, _ in g.edges if u // 4 == v // 4}
        assert len(within) == 4 * 6

    def test_constant_memory_vector_contributes_zero(self):
        t1, t2 = memory_schedules()
        y0 = np.ones(16)
        s1 = run_rounds(t1, y0).states[1:].std(axis=1).mean()
        s2 = run_rounds(t2, y0).states[1:].std(axis=1).mean()
        assert s1 == 0.0 and s2 == 0.0

    def test_deterministic_given_seed(self):
        a = memory_experiment(reps=200, seed=77)
        b = memory_experiment(reps=200, seed=77)
        assert a.mean_sd_difference == b.mean_sd_difference
        assert a.mc_standard_error == b.mc_standard_error

    def test_rep_streams_do_not_depend_on_order(self):
        y_first = rep_rng(5, 0).integers(0, 2, size=16)
        _ = rep_rng(5, 1).integers(0, 2, size=16)
        y_again = rep_rng(5, 0).integers(0, 2, size=16)
        assert np.array_equal(y_first, y_again)

    def test_difference_positive_at_moderate_reps(self):
        res = memory_experiment(reps=2000, seed=11)
        assert res.mean_sd_difference > 5 * res.mc_standard_error
        assert res.mean_sd_difference > 0.015

    def test_reps_validated(self):
        with pytest.raises(DomainError):
            memory_experiment(reps=0, seed=1)

    def test_protocol_recorded(self):
        res = memory_experiment(reps=10, seed=1, cross_style="balanced")
        assert res.protocol["cross_style"] == "balanced"
        assert res.protocol["sd_convention"].startswith("population")
