
import numpy as np
import pytest

from conftest import P
from polypart import SurfacePartitioner, build_surface_partition, configgen, realizations_on_surface
from polypart.polynomial import evaluate, graded_slice
from polypart.surface_partition import not_in_ideal, round_count, round_degree, sample_surface_points

SPHERE = "x1^2+x2^2+x3^2-1"


class TestSchedule:
    def test_round_count(self):
        assert round_count(1, 2, 3) == 2
        assert round_count(2, 4, 3) == 5
        assert round_count(1, 1, 3) == 0

    def test_round_degree_grows(self):
        degs = [round_degree(i, 2, 3) for i in range(1, 8)]
        assert degs == sorted(degs) and degs[0] >= 1


class TestNotInIdeal:
    def test_multiples(self):
        p = P(SPHERE)
        assert not not_in_ideal(p * P("x1 + 3"), p)
        assert not_in_ideal(P("x1"), p)
        assert not not_in_ideal(P("0"), p)

    def test_complement_elements(self):
        p = P(SPHERE)
        for b in graded_slice(p, 3).affine_complement():
            assert not_in_ideal(b, p)


class TestRealizations:
    def test_plane(self):
        cells, boundary = realizations_on_surface(configgen.plane_8(), P("x1"), [P("x2"), P("x3")])
        assert sorted(len(v) for v in cells.values()) == [2, 2, 2, 2] and boundary == []

    def test_off_surface(self):
        with pytest.raises(ValueError):
            realizations_on_surface([(1, 0, 0)], P("x1"), [P("x2")])


class TestBuild:
    def test_plane_example(self):
        res = build_surface_partition(P("x1"), configgen.plane_8(), 2)
        assert res.certified and res.bounds_hold()
        assert res.t <= 4 and res.total_degree <= 16 and res.max_bucket <= 2
        assert all(res.nonvanishing)
        d = res.to_dict()
        assert d["certified"] and d["t_formula"] == 2

    @pytest.mark.parametrize("E", [2, 4])
    def test_sphere(self, E):
        pts = configgen.sphere_rational_points(32, seed=3)
        assert all(evaluate(P(SPHERE), p) == 0 for p in pts)
        res = build_surface_partition(P(SPHERE), pts, E, seed=1)
        assert res.certified and all(res.nonvanishing)
        assert res.t == round_count(2, E, 3)
        assert res.max_bucket <= res.bucket_cap
        assert sum(len(v) for v in res.realizations.values()) + len(res.boundary_residual) == 32
        for q, e in zip(res.polys, res.round_degrees):
            assert q.degree() <= e

    def test_rejects_non_real_base(self):
        with pytest.raises(ValueError, match="real"):
            build_surface_partition(P("x1^2+x2^2"), [(0, 0, 1)], 2)

    def test_rejects_reducible_base(self):
        with pytest.raises(ValueError, match="reducible"):
            build_surface_partition(P("x1 x2"), [(0, 1, 1)], 2)

    def test_assume_needs_justification(self):
        with pytest.raises(ValueError):
            build_surface_partition(P("x1"), [(0, 1, 1)], 2, assume_real_irreducible=True)
        res = build_surface_partition(P("x1"), [(0, 1, 1)], 2, assume_real_irreducible=True, justification="linear")
        assert any("linear" in n for n in res.notes)

    def test_E_below_rho_D(self):
        with pytest.raises(ValueError):
            build_surface_partition(P("x1^8 + x2 - x3"), [(0, 1, 1)], 1)

    def test_points_off_surface(self):
        with pytest.raises(ValueError):
            build_surface_partition(P("x1"), [(1, 0, 0)], 2)

    def test_deterministic(self):
        pts = configgen.sphere_rational_points(20, seed=4)
        a = build_surface_partition(P(SPHERE), pts, 3, seed=2).to_dict()
        b = build_surface_partition(P(SPHERE), pts, 3, seed=2).to_dict()
        assert a == b


def test_sample_surface_points_near_zero_set():
    S = sample_surface_points(P(SPHERE), 50, seed=0)
    assert S.shape == (50, 3)
    assert np.allclose((S**2).sum(axis=1), 1, atol=1e-8)


def test_estimator():
    pts = configgen.plane_8()
    est = SurfacePartitioner(base_poly="x1", E=2).fit(pts)
    labels = est.predict(pts)
    assert sorted(np.bincount(labels).tolist()) == [2, 2, 2, 2]
    assert est.transform(pts).shape == (8, est.result_.t)
    assert est.get_params()["E"] == 2
