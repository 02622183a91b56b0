import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hyperfell.constants import TAU_MEM, TAU_SEP
from hyperfell.scene import builtin_scene, parse_scene
from hyperfell.setrep import (BOUNDED, CLOSURE_ESCAPE, COMPACT, DIVERGENT, INCONCLUSIVE, UNBOUNDED,
                              ImplicitClosedSet, PointCloud, ball, boundary_cloud, classify_growth,
                              compactness_probe, directed_hausdorff, distance_to_cloud, finite_set,
                              hausdorff_distance, hausdorff_windowed, ideal, intersection, interval_rim,
                              near_members, order_interval, sample, scene_set, segment)
from hyperfell.window import Window, growing_windows

import oracles

PLANE = parse_scene("region plane dim 2 { 0 <= 1 } order coordinatewise")


def _everything(dim):
    return ImplicitClosedSet(dim, lambda p, tol: np.ones(len(p), dtype=bool), "all")


def test_sample_ideal_open_square():
    s = builtin_scene("ex41")
    pts = sample(ideal(s, (0.5, 0.5)), s.window).points
    assert len(pts) and np.all(pts <= 0.5)


def test_sample_counts_full_grid():
    w = Window((0, 0, 0), (1, 1, 1), 64)
    assert len(sample(_everything(3), w)) == 64 ** 3


def test_sample_ex36_ideal():
    s = builtin_scene("ex36")
    pts = sample(ideal(s, (1, 0)), s.window).points
    assert len(pts)
    assert np.all(np.sum(pts ** 2, axis=1) <= 1 + TAU_MEM) and np.all(pts[:, 1] <= TAU_MEM)


def test_sample_is_deterministic_and_on_set():
    s = builtin_scene("ex42")
    a = sample(ideal(s, (-0.5, -0.5, 0)), s.window)
    b = sample(ideal(s, (-0.5, -0.5, 0)), s.window)
    assert a.points.tobytes() == b.points.tobytes()
    u, v, w = a.points.T
    assert np.all((a.points <= (-0.5, -0.5, 0)) & (u * v + w - 1 <= TAU_MEM)[:, None])


def test_distance_to_cloud():
    assert distance_to_cloud((0, 0), [(0, 0), (1, 1)]) == 0
    assert distance_to_cloud((0, 0), [(3, 4)]) == 5
    assert distance_to_cloud((0, 0), [(1, 0), (0, 2)]) == 1
    with pytest.raises(ValueError):
        distance_to_cloud((0, 0), np.empty((0, 2)))


def test_hausdorff_examples():
    a = np.array([(0.0, 0.0), (1.0, 0.0)])
    assert hausdorff_distance(a, a) == 0
    assert hausdorff_distance(a, [(0.0, 1.0)]) == pytest.approx(math.sqrt(2), abs=1e-15)
    assert hausdorff_distance([(0, 0)], [(3, 4)]) == 5
    assert directed_hausdorff([(0, 0)], a) == 0 and directed_hausdorff(a, [(0, 0)]) == 1
    assert hausdorff_distance(PointCloud(a, "a"), a) == 0
    with pytest.raises(ValueError):
        hausdorff_distance(a, np.empty((0, 2)))


clouds = st.lists(st.tuples(st.floats(-10, 10), st.floats(-10, 10)), min_size=1, max_size=25).map(np.array)


@settings(max_examples=200, deadline=None)
@given(clouds, clouds)
def test_hausdorff_matches_naive(a, b):
    assert abs(hausdorff_distance(a, b) - oracles.hausdorff_naive(a, b)) <= 1e-12


def test_windowed_identical_sets_bounded():
    s = builtin_scene("ex42")
    rep = hausdorff_windowed(ideal(s, (-0.5, -0.5, 0)), ideal(s, (-0.5, -0.5, 0)), growing_windows(s.window))
    assert rep.verdict == BOUNDED and rep.values == [0.0, 0.0, 0.0]


def test_windowed_offset_disks():
    windows = [Window((-r, -r), (r, r), 65) for r in (4.0, 8.0, 16.0)]
    a, b = ball(PLANE, (0, 0), 1, closed=True), ball(PLANE, (1, 0), 1, closed=True)
    rep = hausdorff_windowed(a, b, windows)
    assert rep.verdict == BOUNDED
    assert all(abs(v - 1) <= w.max_pitch for v, w in zip(rep.values, windows))


def test_windowed_validation_and_empty():
    s = builtin_scene("ex41")
    with pytest.raises(ValueError):
        hausdorff_windowed(scene_set(s), scene_set(s), growing_windows(s.window, (1.0, 2.0)))
    with pytest.raises(ValueError):
        hausdorff_windowed(scene_set(s), scene_set(s), [s.window] * 3)
    far = ball(PLANE, (50, 50), 1)
    rep = hausdorff_windowed(far, scene_set(s), growing_windows(s.window))
    assert rep.verdict == INCONCLUSIVE and "empty" in rep.note


def test_classify_growth():
    assert classify_growth([1, 2, 4], [1, 1, 2e3])[0] == DIVERGENT
    assert classify_growth([10, 20, 40], [1.0, 2.0, 4.0])[0] == DIVERGENT
    assert classify_growth([10, 20, 40], [1.0, 1.0, 1.0])[0] == BOUNDED
    assert classify_growth([10, 20, 40], [1.0, 1.02, 1.04])[0] == INCONCLUSIVE


def test_boundary_cloud_disk_and_plane():
    w = Window((-2, -2), (2, 2))
    cloud = boundary_cloud(ball(PLANE, (0, 0), 1, closed=True), PLANE, w).points
    assert len(cloud) and np.all(np.abs(np.linalg.norm(cloud, axis=1) - 1) <= 2 * w.max_pitch)
    assert len(boundary_cloud(scene_set(PLANE), PLANE, w)) == 0


def test_boundary_cloud_ex42_interval():
    s = builtin_scene("ex42")
    cloud = boundary_cloud(order_interval(s, (-1, -1, -1), (0, 0, 0)), s, s.window).points
    # the relative boundary in X is the three inner faces
    assert len(cloud) and np.all(np.min(np.abs(cloud + 1), axis=1) <= 2 * s.window.max_pitch)


def test_compactness_probe():
    disk = ball(PLANE, (0, 0), 1, closed=True)
    w = Window((-2, -2), (2, 2))
    assert compactness_probe(disk, PLANE, growing_windows(w, (1.0, 2.0))).status == COMPACT
    ex25 = builtin_scene("ex25")
    wins = growing_windows(ex25.window, (1.0, 2.0))
    rep = compactness_probe(interval_rim(ex25, (-1, -1), (1, 1), 0.25 * ex25.window.max_pitch), ex25, wins)
    assert rep.status == CLOSURE_ESCAPE
    # (1, 0) and its mirror (0, 1) are equivalent escape points
    lim = np.array(rep.witness["limit"])
    assert min(np.linalg.norm(lim - (1, 0)), np.linalg.norm(lim - (0, 1))) <= 1e-3
    assert not oracles.in_ex25(np.round(lim, 12))
    assert compactness_probe(ideal(ex25, (0, 0)), ex25, wins).status == UNBOUNDED
    assert compactness_probe(ball(PLANE, (9, 9), 0.1), PLANE, growing_windows(w, (1.0, 2.0))).status == COMPACT


def test_refinement_monotonicity():
    s = builtin_scene("ex36")
    coarse = Window((-1.5, -1.5), (6, 6), 33)
    fine = coarse.with_resolution(65)
    rng = np.random.default_rng(5)
    for target in (ideal(s, (1, 0)), scene_set(s), ball(s, (2, 2), 0.7)):
        a, b = sample(target, coarse).points, sample(target, fine).points
        for z in rng.uniform(-1.5, 6, size=(20, 2)):
            assert distance_to_cloud(z, b) <= distance_to_cloud(z, a) + coarse.max_pitch


def test_curves_and_finite_sets():
    seg = segment((0, 0), (1, 1)).as_set()
    pts = seg.sampler(Window((0, 0), (1, 1)))
    assert len(pts) > 64 and np.allclose(pts[:, 0], pts[:, 1])
    assert seg.contains((0.5, 0.5)) and not seg.contains((0.5, 0.6))
    cut = segment((0, 0), (1, 1), lo=0.25, hi=0.75).as_set()
    assert not cut.contains((0.1, 0.1)) and cut.contains((0.5, 0.5))
    f = finite_set([(0.1, 0.2), (0.3, 0.4)])
    assert len(sample(f, Window((0, 0), (1, 1)))) == 2


def test_intersection_and_near_members():
    a, b = ball(PLANE, (0, 0), 1), ball(PLANE, (1, 0), 1)
    both = intersection(a, b)
    assert both.contains((0.5, 0)) and not both.contains((-0.5, 0))
    s = finite_set([(0.0, 0.0)])
    q = np.array([[TAU_SEP, 0.0], [3 * TAU_SEP, 0.0]])
    assert near_members(s, q).tolist() == [True, False]


def test_point_cloud_csv():
    text = PointCloud(np.array([[0.5, 1.0]]), "p").to_csv()
    assert text.splitlines()[0] == "x1,x2" and text.splitlines()[1] == "0.5,1"
