"""Baseline oracles: plain Dijkstra, ray-crossing words, cylinder unrolling,
and the brute-force enumerator."""

import math

import numpy as np
import pytest

from nagplan import InvalidQueryError, UnreachableError, make_environment
from nagplan.errors import DegenerateCrossingError
from nagplan.oracles import (
    Ray,
    RaySet,
    brute_force_k_geodesics,
    cylinder_unrolled_klengths,
    h_augmented_dijkstra,
    h_signature,
    plain_dijkstra,
    plain_distance,
)
from conftest import block_env, flat_env

SQ2 = math.sqrt(2.0)


def octile(dx, dy):
    dx, dy = abs(dx), abs(dy)
    return max(dx, dy) + (SQ2 - 1.0) * min(dx, dy)


class TestPlainDijkstra:
    def test_straight_line(self):
        env = flat_env(9, 9)
        assert plain_distance(env, (0, 4), (8, 4)) == pytest.approx(8.0)

    def test_octile_distance_on_flat_grid(self):
        env = flat_env(12, 12)
        assert plain_distance(env, (1, 1), (9, 4)) == pytest.approx(octile(8, 3))

    def test_radius_bound_returns_ball(self):
        env = flat_env(9, 9)
        done = plain_dijkstra(env, (4, 4), radius=2.0)
        assert all(g <= 2.0 for g in done.values())
        assert (4, 6) in done and (4, 7) not in done

    def test_unreachable_raises(self):
        obst = np.zeros((5, 5), dtype=bool)
        obst[2, :] = True
        env = make_environment((5, 5), "planar2d", obstacles=obst)
        with pytest.raises(UnreachableError):
            plain_distance(env, (0, 0), (4, 4))


class TestHSignature:
    def _rays(self):
        return RaySet((Ray((3, 3), "a"),))

    def test_no_crossing_empty_word(self):
        assert h_signature([(0, 0), (1, 0), (2, 0)], self._rays()) == ()

    def test_back_and_forth_cancels(self):
        path = [(3, 5), (4, 5), (3, 5)]
        assert h_signature(path, self._rays()) == ()

    def test_ccw_loop_single_letter(self):
        # unit-step square loop encircling the anchor (3, 3): the bottom edge
        # passes below the anchor, the top edge crosses the ray once
        loop = [(2, 2), (3, 2), (4, 2), (4, 3), (4, 4), (3, 4), (2, 4),
                (2, 3), (2, 2)]
        word = h_signature(loop, self._rays())
        assert word in ((("a", 1),), (("a", -1),))
        reverse = h_signature(list(reversed(loop)), self._rays())
        assert reverse == tuple((c, -s) for c, s in reversed(word))

    def test_below_anchor_no_crossing(self):
        path = [(2, 1), (3, 1), (4, 1)]
        assert h_signature(path, self._rays()) == ()

    def test_anchor_touch_is_degenerate(self):
        with pytest.raises(DegenerateCrossingError):
            h_signature([(2, 3), (3, 3)], self._rays())

    def test_duplicate_anchor_columns_rejected(self):
        with pytest.raises(InvalidQueryError):
            RaySet((Ray((3, 3), "a"), Ray((3, 8), "b")))

    def test_perturbation_invariance(self):
        rays = RaySet((Ray((5, 5), "a"),))
        base = [(2, 8), (3, 8), (4, 8), (5, 8), (6, 8), (7, 8), (8, 8)]
        wiggled = [(2, 8), (3, 9), (4, 8), (5, 9), (6, 8), (7, 9), (8, 8)]
        assert h_signature(base, rays) == h_signature(wiggled, rays)


class TestHAugmented:
    def test_no_obstacles_single_class(self):
        env = flat_env(9, 9)
        rays = RaySet(())
        out = h_augmented_dijkstra(env, (0, 4), (8, 4), rays, 2)
        assert len(out) == 1
        assert out[0] == ((), pytest.approx(8.0))

    def test_single_obstacle_two_classes(self):
        env = block_env(15, 15, [(6, 9, 6, 9)])
        rays = RaySet((Ray((7, 7), "a"),))
        out = h_augmented_dijkstra(env, (1, 7), (13, 7), rays, 2)
        assert len(out) == 2
        # the below-obstacle class never crosses the upward ray; the
        # above-obstacle class crosses it exactly once
        words = {w for w, _ in out}
        assert words == {(), (("a", 1),)}
        assert out[0][1] == pytest.approx(plain_distance(env, (1, 7), (13, 7)))
        # symmetric fixture: both classes tie
        assert out[0][1] == pytest.approx(out[1][1])

    def test_two_obstacles_four_distinct_classes(self):
        env = block_env(20, 22, [(8, 12, 4, 9), (8, 12, 13, 18)])
        rays = RaySet((Ray((9, 6), "a"), Ray((10, 15), "b")))
        out = h_augmented_dijkstra(env, (2, 11), (17, 11), rays, 4)
        assert len(out) == 4
        words = [w for w, _ in out]
        assert len(set(words)) == 4
        lens = [l for _, l in out]
        assert lens == sorted(lens)

    def test_shortest_class_equals_plain(self):
        env = block_env(15, 15, [(6, 9, 6, 9)])
        rays = RaySet((Ray((7, 7), "a"),))
        out = h_augmented_dijkstra(env, (1, 2), (13, 12), rays, 3)
        assert out[0][1] == pytest.approx(
            plain_distance(env, (1, 2), (13, 12)), abs=1e-9)


class TestCylinderUnrolled:
    def test_same_coord_one_wrap(self):
        env = make_environment((12, 6), "cylinder2d")
        # ignoring the trivial zero-length class means asking from a neighbor
        lengths = cylinder_unrolled_klengths(env, (0, 3), (0, 3), 2)
        assert lengths[0] == pytest.approx(0.0)
        assert lengths[1] == pytest.approx(12.0)

    def test_dx_zero_two_classes(self):
        env = make_environment((10, 8), "cylinder2d")
        lengths = cylinder_unrolled_klengths(env, (4, 1), (4, 6), 2)
        assert lengths[0] == pytest.approx(5.0)
        # one-wrap path: 10 sideways, 5 of them diagonal
        assert lengths[1] == pytest.approx(octile(10, 5))

    def test_continuum_analogy_straight_line(self):
        # half-turn on the cylinder with no vertical offset unrolls to a
        # straight run of W/2 axis steps
        env = make_environment((16, 5), "cylinder2d")
        lengths = cylinder_unrolled_klengths(env, (0, 2), (8, 2), 1)
        assert lengths[0] == pytest.approx(8.0)

    def test_planar_input_rejected(self):
        with pytest.raises(InvalidQueryError):
            cylinder_unrolled_klengths(flat_env(4, 4), (0, 0), (1, 1), 1)


class TestBruteForce:
    def test_3x3_single_class(self):
        env = flat_env(3, 3)
        out = brute_force_k_geodesics(env, (0, 0), (2, 2), 1)
        assert out == [pytest.approx(2 * SQ2)]

    def test_center_blocked_two_equal_classes(self):
        env = block_env(5, 5, [(2, 3, 2, 3)])

        def classify(path):
            return 1 if any(y > 2 for _, y in path) else -1

        out = brute_force_k_geodesics(env, (0, 2), (4, 2), 2,
                                      classify=classify, max_length=8.0)
        assert len(out) == 2
        assert out[0] == pytest.approx(out[1])

    def test_k_larger_than_class_count(self):
        env = flat_env(3, 3)
        out = brute_force_k_geodesics(env, (0, 0), (2, 0), 5, max_length=3.0)
        assert len(out) == 1
