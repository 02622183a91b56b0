import math

import numpy as np
import pytest

from hyperfell.order import ConeOrder
from hyperfell.props import (BOUNDED, FAIL, FALSIFIED, INCONCLUSIVE, NEITHER, OK, PASSED, UPPER_COMPACT_BOUNDED,
                             check_decreasing_continuous, check_dense_boundaries, check_proper_inclusion,
                             classify_point, lemma31_bound, lemma32_box, lemma33_boundary_point, seeded_points)
from hyperfell.scene import builtin_scene, parse_scene
from hyperfell.setrep import ball, scene_set

PLANE = parse_scene("region plane dim 2 { 0 <= 1 } order coordinatewise\nwindow (-2, -2) (2, 2)")
EX41 = builtin_scene("ex41")
CW = ConeOrder.coordinatewise()


def test_seeded_points_are_interior_and_deterministic():
    a, b = seeded_points(EX41, 5), seeded_points(EX41, 5)
    assert np.array_equal(a, b) and len(a) == 5
    assert np.all((a > 0) & (a < 1))


def test_decreasing_continuous():
    assert check_decreasing_continuous(EX41).status == PASSED
    ex35 = builtin_scene("ex35")
    o = ball(ex35, (-0.5, -0.75, 0.0), 0.1)
    rep = check_decreasing_continuous(ex35, points=[(0.0, 0.0, 0.0)], open_sets=[o])
    assert rep.status == FALSIFIED and rep.witness is not None
    assert check_decreasing_continuous(EX41, open_sets=[scene_set(EX41)]).status == PASSED


def test_proper_inclusion():
    assert check_proper_inclusion(builtin_scene("open_box:2")).status == PASSED
    ex42 = builtin_scene("ex42")
    pairs = [(np.zeros(3), np.array([-0.5, -0.5, -0.5]))]
    assert check_proper_inclusion(ex42, pairs=pairs).status == PASSED


def test_dense_boundaries():
    assert check_dense_boundaries(builtin_scene("open_box:2")).status == PASSED
    ex42 = builtin_scene("ex42")
    assert check_dense_boundaries(ex42, points=[(-0.5, -0.5, -0.5)]).status == PASSED


def test_classify_open_square():
    assert classify_point(EX41, (0.5, 0.5)).status == UPPER_COMPACT_BOUNDED


def test_classify_neither():
    assert classify_point(builtin_scene("ex25"), (0, 0)).status == NEITHER
    assert classify_point(builtin_scene("ex36"), (0.5, math.sqrt(0.75))).status == NEITHER
    with pytest.raises(ValueError):
        classify_point(EX41, (2, 2))


def test_lemma31():
    res = lemma31_bound((1.0, 0.5), CW)
    assert res["status"] == BOUNDED
    assert abs(res["R"] - math.hypot(1.0, 0.5)) <= 2 * res["pitch"]
    assert lemma31_bound((0.0, 0.0), CW)["R"] == 0
    cone = ConeOrder.halfspaces([(1, 1), (-1, 1)])
    res = lemma31_bound((0.0, 1.0), cone)
    assert res["status"] == BOUNDED and abs(res["R"] - 1) <= 2 * res["pitch"]
    with pytest.raises(ValueError):
        lemma31_bound((-1.0, 0.5), CW)


def test_lemma32_ambient_unit_disk():
    res = lemma32_box(PLANE, (0, 0), ball(PLANE, (0, 0), 1))
    assert res.status == OK and res.t0 >= 0.4 and res.t0 * math.sqrt(2) < 1
    assert res.a == [res.t0, res.t0] and res.b == [-res.t0, -res.t0]


def test_lemma32_open_square_and_failure():
    x = (0.5, 0.5)
    res = lemma32_box(EX41, x, ball(EX41, x, 0.1))
    assert res.status == OK
    assert max(np.linalg.norm(np.array(c) - x) for c in (res.a, res.b)) < 0.1
    ex36 = builtin_scene("ex36")
    top = (0.5, math.sqrt(0.75))
    assert lemma32_box(ex36, top, ball(ex36, top, 0.2)).status == FAIL


@pytest.mark.parametrize("c, want", [((2, 2), (1, 1)), ((0, 2), (0, 1)), ((-3, 0), (-1, 0))])
def test_lemma33_analytic_crossings(c, want):
    bp = lemma33_boundary_point(c, (0, 0), (1, 1), (-1, -1))
    np.testing.assert_allclose(bp.u, want, atol=1e-12)
    assert bp.flip_length <= 2.0 ** -60 * bp.segment_length * (1 + 1e-12)


def test_lemma33_validation():
    with pytest.raises(ValueError):
        lemma33_boundary_point((0.5, 0.5), (0, 0), (1, 1), (-1, -1))
    with pytest.raises(ValueError):
        lemma33_boundary_point((2, -2), (0, 0), (1, 1), (-1, -1))


def test_inconclusive_without_pairs():
    far = [(np.array([0.9, 0.9]), np.array([0.95, 0.1]))]
    assert check_proper_inclusion(EX41, pairs=far).status == INCONCLUSIVE
