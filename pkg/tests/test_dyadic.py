import math

import mpmath
import numpy as np
import pytest

from stabindex.constants import THREE_ROOT_THREE
from stabindex.dyadic import (DepthBudgetExceeded, DuplicatePosition,
                              DyadicCell, ResonanceOutsideWindow, cell_index,
                              depth_for_width, locate)
from stabindex.index import index_lower_bound
from stabindex.resonance import Resonance


class TestDyadicCell:
    def test_invalid_cells_rejected(self):
        with pytest.raises(ValueError):
            DyadicCell(-1, 0)
        with pytest.raises(ValueError):
            DyadicCell(3, 8)

    def test_children_partition_parent(self):
        estar = 1000.0
        cell = DyadicCell(4, 7)
        lo, hi = cell.bounds(estar)
        left, right = cell.children()
        assert left.bounds(estar)[0] == lo
        assert left.bounds(estar)[1] == right.bounds(estar)[0]
        assert right.bounds(estar)[1] == hi

    def test_bounds_match_successive_halvings_bitexact(self):
        estar = 1000.0
        cell = DyadicCell(0, 0)
        lo, hi = 0.0, estar
        rng = np.random.default_rng(9)
        for _ in range(40):
            mid = (lo + hi) / 2.0
            go_right = rng.integers(2)
            cell = cell.children()[go_right]
            lo, hi = (mid, hi) if go_right else (lo, mid)
            assert cell.bounds(estar) == (lo, hi)

    def test_width_is_exact(self):
        estar = 640.0
        for depth in range(0, 30):
            lo, hi = DyadicCell(depth, 0).bounds(estar)
            assert hi - lo == estar / 2.0 ** depth


class TestDepthForWidth:
    def test_exact_power_of_two(self):
        assert depth_for_width(1024.0, 1.0) == 10

    def test_neutron_scale(self):
        assert depth_for_width(939.0, 7.43e-25) == 91

    def test_equal_width(self):
        assert depth_for_width(5.0, 5.0) == 0

    def test_invalid(self):
        with pytest.raises(ValueError):
            depth_for_width(1.0, 2.0)
        with pytest.raises(ValueError):
            depth_for_width(1.0, 0.0)

    def test_exact_ceil_log2_oracle(self):
        rng = np.random.default_rng(17)
        mpmath.mp.dps = 60
        for _ in range(500):
            estar = float(rng.uniform(1, 1e4))
            gamma = estar / float(10 ** rng.uniform(0, 25))
            want = int(mpmath.ceil(mpmath.log(mpmath.mpf(estar) / mpmath.mpf(gamma), 2)))
            assert depth_for_width(estar, gamma) == want

    def test_relation_to_index_lower_bound(self):
        # bound route = first integer above depth quantity + log2(3sqrt3)
        rng = np.random.default_rng(23)
        mpmath.mp.dps = 60
        for _ in range(1000):
            estar = float(rng.uniform(1, 1e4))
            gamma = estar / float(10 ** rng.uniform(0.5, 25))
            b = mpmath.log(mpmath.mpf(THREE_ROOT_THREE) * mpmath.mpf(estar)
                           / mpmath.mpf(gamma), 2)
            assert index_lower_bound(estar, gamma) == int(mpmath.floor(b)) + 1


class TestLocate:
    def test_two_resonances_example(self):
        res = locate(1000.0, [Resonance(300.0, 100.0), Resonance(700.0, 1.0)])
        assert [r.resolution_depth for r in res] == [4, 10]
        assert [r.isolation_depth for r in res] == [1, 1]

    def test_single_resonance_isolated_at_root(self):
        res = locate(1000.0, [Resonance(123.4, 5.0)])
        assert res[0].isolation_depth == 0

    def test_opposite_halves_isolate_at_depth_one(self):
        res = locate(100.0, [Resonance(10.0, 1.0), Resonance(90.0, 1.0)])
        assert all(r.isolation_depth == 1 for r in res)

    def test_close_pair_needs_depth(self):
        # same eighth, different sixteenths of [0, 16)
        res = locate(16.0, [Resonance(8.1, 1.0), Resonance(9.9, 1.0)])
        assert all(r.isolation_depth == 4 for r in res)

    def test_permutation_invariance(self):
        rs = [Resonance(100.0, 3.0), Resonance(317.0, 0.5), Resonance(900.0, 20.0)]
        fwd = locate(1000.0, rs)
        rev = locate(1000.0, rs[::-1])
        by_pos = {r.resonance.e0: (r.isolation_depth, r.resolution_depth)
                  for r in fwd}
        for r in rev:
            assert by_pos[r.resonance.e0] == (r.isolation_depth, r.resolution_depth)

    def test_boundary_goes_to_right_cell(self):
        # position exactly at the midpoint belongs to the upper half
        assert cell_index(100.0, 1, 50.0) == 1
        res = locate(100.0, [Resonance(50.0, 1.0), Resonance(49.0, 1.0)])
        depths = {r.resonance.e0: r.isolation_depth for r in res}
        assert depths[50.0] == 1 and depths[49.0] == 1

    def test_outside_window(self):
        with pytest.raises(ResonanceOutsideWindow):
            locate(100.0, [Resonance(101.0, 1.0)])
        with pytest.raises(ResonanceOutsideWindow):
            locate(100.0, [Resonance(-5.0, 1.0)])

    def test_duplicate_positions(self):
        with pytest.raises(DuplicatePosition):
            locate(100.0, [Resonance(50.0, 1.0), Resonance(50.0, 2.0)])

    def test_depth_budget(self):
        eps = math.ulp(50.0)
        with pytest.raises(DepthBudgetExceeded):
            locate(100.0, [Resonance(50.0, 1.0), Resonance(50.0 + eps, 1.0)],
                   max_depth=40)

    def test_resolution_monotone_in_width(self):
        rng = np.random.default_rng(31)
        for _ in range(300):
            estar = float(rng.uniform(10, 1e4))
            g1, g2 = sorted(rng.uniform(1e-12, 1.0, 2) * estar)
            assert depth_for_width(estar, g1) >= depth_for_width(estar, g2)
