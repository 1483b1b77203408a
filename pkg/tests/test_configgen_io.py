import json
from fractions import Fraction

import pytest

from conftest import P
from polypart import Surface, configgen
from polypart import io as pio
from polypart.configgen import GeneratorSpec, generate
from polypart.polynomial import evaluate, parse_poly, to_text


class TestGenerators:
    def test_grid(self):
        g = configgen.grid(3)
        assert len(g) == 27 and len(set(g)) == 27
        assert configgen.grid(2, Fraction(1, 2))[-1] == (Fraction(1, 2),) * 3

    def test_random_box_deterministic_and_distinct(self):
        a = configgen.random_box(100, seed=4)
        assert a == configgen.random_box(100, seed=4)
        assert a != configgen.random_box(100, seed=5)
        assert len(set(a)) == 100
        assert all(abs(v) <= 1 for p in a for v in p)

    def test_random_box_too_small(self):
        with pytest.raises(ValueError):
            configgen.random_box(30, half_width=1, denominator=1)

    def test_sphere_points_exact(self):
        pts = configgen.sphere_rational_points(40, seed=2, center=(1, 0, 0), radius=2)
        f = P("(x1-1)^2 + x2^2 + x3^2 - 4")
        assert all(evaluate(f, p) == 0 for p in pts) and len(set(pts)) == 40

    def test_random_spheres_through_points(self):
        pts = configgen.random_box(30, seed=1, half_width=2, denominator=2)
        S = configgen.random_spheres(20, seed=1, points=pts)
        assert len(set(S)) == 20
        assert all(any(S_.contains(p) for p in pts) for S_ in S)

    def test_examples(self):
        assert len(configgen.octants_24()) == 24
        assert all(p[0] == 0 for p in configgen.plane_8())


class TestGenerate:
    def test_aliases(self):
        assert generate({"kind": "paper_example_1"})[0] == configgen.octants_24()
        assert generate({"kind": "paper_example_2"})[0] == configgen.plane_8()

    def test_nested_points(self):
        pts, S = generate({"kind": "unit_spheres_at", "points": {"kind": "grid", "n_per_side": 2}})
        assert len(pts) == 8 and len(S) == 8

    def test_spec_object(self):
        spec = GeneratorSpec("random_box", {"m": 5}, seed=3)
        assert generate(spec)[0] == configgen.random_box(5, 3)

    def test_errors(self):
        with pytest.raises(ValueError, match="unknown"):
            generate({"kind": "nope"})
        with pytest.raises(ValueError, match="needs parameter"):
            generate({"kind": "random_box"})


class TestIO:
    def test_points_roundtrip(self, tmp_path):
        pts = [(Fraction(1, 3), 0, -2), (5, Fraction(-7, 4), 1)]
        path = tmp_path / "p.json"
        pio.write_points(pts, path)
        obj = json.loads(path.read_text())
        assert obj == {"dim": 3, "points": [["1/3", "0", "-2"], ["5", "-7/4", "1"]]}
        assert pio.read_points(path) == [tuple(Fraction(v) for v in p) for p in pts]

    def test_surfaces_roundtrip(self, tmp_path):
        S = [Surface.sphere((0, 0, Fraction(1, 2)), 2), Surface.general(P("x1 x2 - x3"))]
        path = tmp_path / "s.json"
        pio.write_surfaces(S, path)
        obj = json.loads(path.read_text())
        assert obj["spheres"] == [{"center": ["0", "0", "1/2"], "radius_sq": "2"}]
        assert obj["polys"] == [to_text(P("x1 x2 - x3"))]
        back = pio.read_surfaces(path)
        assert [s.defining_poly for s in back] == [s.defining_poly for s in S]

    def test_bad_points(self):
        with pytest.raises(ValueError):
            pio.points_from_json({"dim": 3})
        with pytest.raises(ValueError):
            pio.points_from_json({"dim": 2, "points": [["1", "2", "3"]]})

    def test_canonical_text_roundtrip(self):
        for text in ["x1^2 - 3/2 x2 x3 + 1", "0", "-x3", "(x1 + x2)^3"]:
            p = parse_poly(text, 3)
            assert parse_poly(to_text(p), 3) == p
            assert to_text(parse_poly(to_text(p), 3)) == to_text(p)

    def test_polys_from_json(self):
        assert pio.polys_from_json({"polys": ["x1", "x2^2"]}) == [P("x1"), P("x2^2")]
