import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import P
from polypart import (
    BisectionFailure,
    SignCondition,
    Surface,
    SurfaceInZeroSet,
    assign_cells,
    bisect_families,
    build_partition,
    configgen,
    count_cells_met_by_surface,
)
from polypart.partition import degree_budget, family_counts, slack_of
from polypart.polynomial import sign_at

coords = st.fractions(-4, 4, max_denominator=5)
point_sets = st.lists(st.tuples(coords, coords, coords), min_size=1, max_size=40, unique=True)


class TestSignCondition:
    def test_str_and_validation(self):
        assert str(SignCondition((1, -1, 1))) == "+-+"
        with pytest.raises(ValueError):
            SignCondition((1, 0))

    def test_ordering(self):
        assert sorted([SignCondition((1,)), SignCondition((-1,))])[0] == SignCondition((-1,))


class TestAssignCells:
    def test_octants(self):
        pts = configgen.octants_24()
        cells, residual = assign_cells(pts, [P("x1"), P("x2"), P("x3")])
        assert len(cells) == 8 and {len(v) for v in cells.values()} == {2}
        assert sorted(residual) == [i for i, p in enumerate(pts) if p[0] == 0]

    def test_single_hyperplane(self):
        cells, residual = assign_cells(configgen.octants_24(), [P("x1")])
        assert sorted(len(v) for v in cells.values()) == [8, 8] and len(residual) == 8

    def test_no_polys(self):
        cells, residual = assign_cells([(0, 0, 0), (1, 1, 1)], [])
        assert list(cells.values()) == [[0, 1]] and residual == []

    @given(point_sets, st.lists(st.sampled_from(["x1", "x2 - x3", "x1^2 + x2^2 - 1", "x1 x2 x3 - 1/2"]), max_size=3))
    def test_conservation_and_signs(self, pts, texts):
        polys = [P(t) for t in texts]
        cells, residual = assign_cells(pts, polys)
        got = sorted([i for v in cells.values() for i in v] + list(residual))
        assert got == list(range(len(pts)))
        for sc, idx in cells.items():
            for i in idx:
                assert tuple(sign_at(q, pts[i]) for q in polys) == sc.signs
        for i in residual:
            assert any(sign_at(q, pts[i]) == 0 for q in polys)


class TestBisect:
    def test_one_family_linear(self):
        pts = configgen.random_box(64, seed=3)
        q, cert = bisect_families([list(range(64))], pts, 1)
        pos, neg, zero = cert.per_family_counts[0]
        assert pos + neg + zero == 64 and max(pos, neg) <= math.ceil(0.6 * 64)
        assert cert.certified

    @given(point_sets, st.integers(0, 2**16))
    @settings(max_examples=30, deadline=None)
    def test_certificate_is_an_exact_recount(self, pts, seed):
        half = len(pts) // 2
        fams = [list(range(half)), list(range(half, len(pts)))]
        try:
            q, cert = bisect_families(fams, pts, 2, seed=seed)
        except BisectionFailure:
            return
        counts, _ = family_counts(q, pts, [F for F in fams if F])
        assert tuple(map(tuple, counts)) == tuple(map(tuple, cert.per_family_counts))
        assert cert.slack_used == slack_of(counts)
        assert q.degree() <= 2
        for (pos, neg, _), F, cap in zip(cert.per_family_counts, [F for F in fams if F], cert.caps):
            assert max(pos, neg) <= cap <= math.ceil(Fraction(6, 10) * len(F))

    def test_too_many_families_for_degree(self):
        pts = configgen.random_box(20, seed=1)
        fams = [[i] for i in range(5)]
        with pytest.raises(ValueError):
            bisect_families(fams, pts, 1)

    def test_failure_carries_best_cut(self):
        # a degree-0 basis cannot split anything nontrivially
        pts = [(0, 0, 0), (1, 0, 0), (2, 0, 0)]
        with pytest.raises(ValueError):
            bisect_families([[0, 1, 2]], pts, 0)

    def test_bad_slack(self):
        with pytest.raises(ValueError):
            bisect_families([[0]], [(0, 0, 0)], 1, slack=Fraction(1, 2))


class TestBuildPartition:
    def test_degree_budget(self):
        assert [degree_budget(i, 3) for i in range(1, 8)] == [3, 4, 4, 6, 7, 8, 11]

    def test_octant_three_rounds(self):
        res = build_partition(configgen.octants_24(), 3, seed=0)
        assert res.certified
        assert sum(len(v) for v in res.pieces.values()) + len(res.residual) == 24
        assert res.max_piece <= res.piece_cap

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_random_guarantee(self, seed):
        pts = configgen.random_box(200, seed=seed)
        res = build_partition(pts, 5, seed=seed)
        assert res.certified
        assert res.max_piece <= math.ceil(200 * Fraction(6, 10) ** 5)
        assert sum(len(v) for v in res.pieces.values()) + len(res.residual) == 200
        assert res.total_degree_D == sum(q.degree() for q in res.round_polys)
        for q, b in zip(res.round_polys, res.degree_budgets):
            assert q.degree() <= b

    def test_determinism(self):
        pts = configgen.random_box(100, seed=5)
        a = build_partition(pts, 4, seed=11).to_dict()
        b = build_partition(pts, 4, seed=11).to_dict()
        assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)

    def test_zero_rounds(self):
        res = build_partition(configgen.random_box(10, seed=0), 0)
        assert res.t == 0 and list(res.pieces.values()) == [list(range(10))]

    def test_empty_points(self):
        res = build_partition([], 2)
        assert res.m == 0 and res.max_piece == 0

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            build_partition([(0, 0)], 1, slack=-1)
        with pytest.raises(ValueError):
            build_partition([(0, 0, 0), (1, 1)], 1)


class TestCellsMet:
    planes = [P("x1"), P("x2"), P("x3")]

    def test_unit_sphere_meets_all_octants(self):
        assert count_cells_met_by_surface(Surface.sphere((0, 0, 0), 1), self.planes, seed=0) == 8

    def test_single_plane(self):
        assert count_cells_met_by_surface(Surface.sphere((0, 0, 0), 1), [P("x1")]) == 2

    def test_far_sphere(self):
        assert count_cells_met_by_surface(Surface.sphere((5, 5, 5), 1), self.planes) == 1

    def test_monotone_in_density(self):
        S = Surface.sphere((Fraction(1, 2), 0, 0), 1)
        polys = [P("x1"), P("x2 - x3"), P("x1^2 + x2 - 1/3")]
        counts = [count_cells_met_by_surface(S, polys, n, seed=0) for n in (64, 256, 1024, 4096)]
        assert counts == sorted(counts)

    def test_surface_inside_zero_set(self):
        S = Surface.sphere((0, 0, 0), 1)
        with pytest.raises(SurfaceInZeroSet):
            count_cells_met_by_surface(S, [P("x1 (x1^2+x2^2+x3^2-1)")])
