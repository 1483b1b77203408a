from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import P, naive_incidences, naive_unit_pairs
from polypart import (
    FeasibilityGuardExceeded,
    IncidenceCounter,
    NondegeneracyParams,
    PipelineConfig,
    Surface,
    canham_bounds,
    check_nondegeneracy,
    choose_D,
    choose_E,
    configgen,
    count_incidences,
    incidence_lists,
    incidences_bruteforce,
    kst_threshold,
    run_pipeline,
    share_common_circle,
    theoretical_bound,
    unit_distance_pairs,
)

small = st.integers(-2, 2).map(Fraction)
pts_st = st.lists(st.tuples(small, small, small), min_size=1, max_size=25, unique=True)


class TestCounting:
    def test_grid(self):
        pts = configgen.grid(3)
        S = configgen.unit_spheres_at(pts)
        count, pairs = incidences_bruteforce(pts, S)
        assert count == 108 == len(pairs) == naive_incidences(pts, S)

    def test_empty(self):
        assert count_incidences([], [Surface.sphere((0, 0, 0), 1)]) == 0
        assert count_incidences([(0, 0, 0)], []) == 0

    def test_general_surface(self):
        S = Surface.general(P("x1 x2 - x3"))
        pts = [(1, 2, 2), (0, 5, 0), (1, 1, 2)]
        assert incidence_lists(pts, [S]) == [[0, 1]]

    def test_rational_coordinates(self):
        pts = [(Fraction(3, 5), Fraction(4, 5), 0), (Fraction(1, 3), 0, 0)]
        assert count_incidences(pts, [Surface.sphere((0, 0, 0), 1)]) == 1

    @given(pts_st, st.lists(st.tuples(st.tuples(small, small, small), st.integers(1, 6)), min_size=1, max_size=15))
    @settings(max_examples=60, deadline=None)
    def test_matches_naive(self, pts, sph):
        S = [Surface.sphere(c, r) for c, r in sph]
        assert count_incidences(pts, S) == naive_incidences(pts, S)

    @pytest.mark.parametrize("seed", range(50))
    def test_unit_distance_is_half_the_unit_sphere_incidences(self, seed):
        pts = configgen.random_box(40, seed, half_width=2, denominator=1)
        inc = count_incidences(pts, configgen.unit_spheres_at(pts))
        assert inc % 2 == 0
        assert unit_distance_pairs(pts) == inc // 2 == naive_unit_pairs(pts)

    def test_unit_distance_grids(self):
        assert unit_distance_pairs([(0, 0, 0)]) == 0
        for n in (2, 3, 4):
            assert unit_distance_pairs(configgen.grid(n)) == 3 * n * n * (n - 1)

    def test_monotone_in_surfaces(self):
        pts = configgen.grid(3)
        S = configgen.unit_spheres_at(pts)
        counts = [count_incidences(pts, S[:j]) for j in range(len(S) + 1)]
        assert counts == sorted(counts)


class TestBounds:
    def test_canham(self):
        b1, _ = canham_bounds(10, 8, 3)
        assert b1 == pytest.approx(48)
        assert canham_bounds(0, 8, 3)[0] == 8
        assert canham_bounds(27, 27, 3)[1] == pytest.approx(270)

    def test_choose(self):
        assert choose_D(256, 256, 3) == pytest.approx(4)
        assert choose_E(64, 16, 2, 3) == pytest.approx(2048 ** 0.2)
        assert round(choose_E(64, 16, 2, 3), 3) == 4.595

    def test_theoretical(self):
        assert theoretical_bound(256, 256, 3) == pytest.approx(4608)
        assert theoretical_bound(0, 7, 3) == 7
        assert theoretical_bound(10**4, 10**4, 4) == pytest.approx(10 ** (32 / 11) * 10 ** (36 / 11) + 2 * 10**4)

    def test_kst(self):
        assert kst_threshold(8, 10, 3, 3) == pytest.approx(min(10 * 8 ** (2 / 3) + 8, 8 * 10 ** (2 / 3) + 10))

    def test_errors(self):
        with pytest.raises(ValueError):
            canham_bounds(1, 1, 2)
        with pytest.raises(ValueError):
            choose_D(0, 1, 3)


class TestNondegeneracy:
    def test_pencil(self):
        a, b, c = configgen.degenerate_circle_pencil()
        assert share_common_circle(a, b, c)
        rep = check_nondegeneracy([a, b, c], [], NondegeneracyParams())
        assert rep.common_circle_triples == [(0, 1, 2)] and not rep.ok

    def test_concentric_not_a_circle(self):
        S = [Surface.sphere((0, 0, 0), r) for r in (1, 2, 3)]
        assert not share_common_circle(*S)

    def test_collinear_disjoint(self):
        # collinear centers, common radical plane, but the spheres do not meet
        S = [Surface.sphere((0, 0, 0), 1), Surface.sphere((0, 0, 10), 1), Surface.sphere((0, 0, 20), 1)]
        assert not share_common_circle(*S)

    def test_generic_pass(self):
        S = [Surface.sphere((0, 0, 0), 1), Surface.sphere((1, 0, 0), 1), Surface.sphere((0, 1, 0), 1)]
        assert check_nondegeneracy(S, [], NondegeneracyParams()).ok

    def test_duplicates_and_k_points(self):
        pts = [(1, 0, 0), (-1, 0, 0), (0, 1, 0)]
        S = [Surface.sphere((0, 0, 0), 1)] * 3
        rep = check_nondegeneracy(S, pts, NondegeneracyParams(k=3, C=2))
        assert rep.duplicate_pairs and rep.k_point_violations

    def test_guard(self):
        pts = configgen.grid(4)
        with pytest.raises(FeasibilityGuardExceeded):
            check_nondegeneracy(configgen.unit_spheres_at(pts), pts, NondegeneracyParams(), guard=10)

    def test_params(self):
        with pytest.raises(ValueError):
            NondegeneracyParams(k=2)


class TestPipeline:
    def test_grid(self):
        pts = configgen.grid(3)
        rep = run_pipeline(pts, configgen.unit_spheres_at(pts))
        assert rep.total_incidences == rep.brute_force_total == 108
        assert "smoothness_unchecked" in rep.flags
        assert rep.bound_terms["total"]["measured"] == 108

    def test_a2_bucket_with_large_constant(self):
        pts = configgen.grid(3)
        rep = run_pipeline(pts, configgen.unit_spheres_at(pts), partition_config=PipelineConfig(c=Fraction(100)))
        assert rep.buckets["A2"] and rep.total_incidences == 108

    def test_a3_bucket(self):
        pts = configgen.random_box(200, 1, half_width=2, denominator=2)
        S = configgen.random_spheres(200, 1, points=pts)
        rep = run_pipeline(pts, S, partition_config=PipelineConfig(seed=1, waive_nondegeneracy=True))
        assert rep.buckets["A3"]
        assert rep.total_incidences == rep.brute_force_total == naive_incidences(pts, S)

    def test_degenerate_input_rejected_unless_waived(self):
        S = configgen.degenerate_circle_pencil()
        pts = [(1, 0, 1), (0, 1, 1), (-1, 0, 1)]
        with pytest.raises(ValueError):
            run_pipeline(pts, S)
        rep = run_pipeline(pts, S, partition_config=PipelineConfig(waive_nondegeneracy=True))
        assert rep.total_incidences == 9 and any("nondegeneracy" in f for f in rep.flags)

    def test_trivial_inputs(self):
        assert run_pipeline([], []).total_incidences == 0
        assert run_pipeline([(0, 0, 0)], [Surface.sphere((1, 0, 0), 1)]).total_incidences == 1

    @pytest.mark.parametrize("seed", range(4))
    def test_random_small(self, seed):
        pts = configgen.random_box(60, seed, half_width=2, denominator=2)
        S = configgen.random_spheres(40, seed, points=pts)
        rep = run_pipeline(pts, S, partition_config=PipelineConfig(seed=seed, waive_nondegeneracy=True))
        assert rep.total_incidences == naive_incidences(pts, S)
        d = rep.to_dict()
        assert set(d["bound_terms"]) >= {"total"}

    def test_estimator(self):
        pts = configgen.grid(3)
        est = IncidenceCounter(seed=3).fit(pts, surfaces=configgen.unit_spheres_at(pts))
        assert est.total_incidences_ == 108
        assert est.get_params()["seed"] == 3
