import math

import pytest
from hypothesis import given, strategies as st

from navbot.core import GridMap, Pose, cell_to_world, normalize_angle, world_to_cell
from navbot.planner import parse_map

from oracles import wrap_angle


class TestNormalizeAngle:
    def test_identity(self):
        assert normalize_angle(0.0) == 0.0

    def test_odd_multiple_of_pi_maps_to_pi(self):
        assert normalize_angle(3 * math.pi) == pytest.approx(math.pi)
        assert normalize_angle(3 * math.pi) > 0

    def test_negative_three_halves_pi(self):
        # oracle: shift by 2*pi until in range
        expected = wrap_angle(-1.5 * math.pi)
        assert expected == pytest.approx(math.pi / 2)
        assert normalize_angle(-1.5 * math.pi) == pytest.approx(expected, abs=1e-12)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            normalize_angle(math.nan)
        with pytest.raises(ValueError):
            normalize_angle(math.inf)

    @given(st.floats(-1e6, 1e6))
    def test_in_range_and_idempotent(self, a):
        r = normalize_angle(a)
        assert -math.pi < r <= math.pi
        assert normalize_angle(r) == r

    @given(st.floats(-100.0, 100.0))
    def test_congruent_mod_2pi(self, a):
        r = normalize_angle(a)
        assert r == pytest.approx(wrap_angle(a), abs=1e-9)


class TestCellToWorld:
    def grid(self, res=100.0):
        return parse_map("M..\n..E\n...", res)

    def test_first_cell_center(self):
        g = parse_map("M.E", 100.0)
        assert cell_to_world(g, (0, 0)) == (50.0, 50.0)

    def test_center_formula(self):
        g = parse_map("M...\n....\n...E", 100.0)
        assert cell_to_world(g, (2, 3)) == (350.0, 250.0)

    def test_center_formula_other_resolution(self):
        g = parse_map("M.E", 250.0)
        assert cell_to_world(g, (0, 1)) == (375.0, 125.0)

    def test_out_of_bounds(self):
        with pytest.raises(IndexError):
            cell_to_world(self.grid(), (5, 0))

    def test_roundtrip_all_cells(self):
        g = self.grid(250.0)
        for r in range(g.height):
            for c in range(g.width):
                x, y = cell_to_world(g, (r, c))
                assert world_to_cell(g, x, y) == (r, c)


class TestPose:
    def test_theta_normalized_on_construction(self):
        p = Pose(0.0, 0.0, 3 * math.pi)
        assert p.theta == pytest.approx(math.pi)

    def test_rejects_non_finite_coords(self):
        with pytest.raises(ValueError):
            Pose(math.nan, 0.0, 0.0)
