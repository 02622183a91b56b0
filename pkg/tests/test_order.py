import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hyperfell.order import (INCONCLUSIVE, MEET, ConeOrder, down_closure_membership, filter_membership,
                             ideal_membership, join_brute, join_ex35, leq, meet_brute, meet_ex42,
                             up_closure_membership)
from hyperfell.scene import builtin_scene

import oracles

CW = ConeOrder.coordinatewise()
WEDGE = ConeOrder.halfspaces([(1, 1), (-1, 1)])


def test_leq_examples():
    assert leq((0, -1, 0), (0, 0, 0), CW)
    assert leq((0.3, 0.2), (0.3, 0.2), CW)
    assert not leq((0.5, 0.6), (0.5, 0.5), CW)
    with pytest.raises(ValueError):
        leq((0, 0), (0, 0, 0), CW)


def test_halfspace_order():
    assert leq((0, 0), (0, 1), WEDGE)
    assert not leq((0, 0), (1, 0.5), WEDGE)
    # closed under rounding: the cone boundary counts
    assert leq((0, 0), (1, 1), WEDGE)
    np.testing.assert_allclose(WEDGE.interior_direction(2), (0, 1), atol=1e-12)


def test_order_validation():
    with pytest.raises(ValueError):
        ConeOrder("lexicographic")
    with pytest.raises(ValueError):
        ConeOrder.halfspaces([])
    with pytest.raises(ValueError):
        ConeOrder("coordinatewise", ((1.0, 0.0),))


def test_order_axioms_random():
    rng = np.random.default_rng(0)
    for order, dim in ((CW, 3), (WEDGE, 2)):
        x, y, z = (np.round(rng.normal(size=(10_000, dim)) * 4) / 4 for _ in range(3))
        assert order.leq_many(x, x).all()
        xy, yz, xz = order.leq_many(x, y), order.leq_many(y, z), order.leq_many(x, z)
        assert np.all(~(xy & yz) | xz)
        yx = order.leq_many(y, x)
        assert np.all(~(xy & yx) | np.all(np.abs(x - y) <= 1e-9, axis=1))


def test_ideal_and_filter_membership():
    ex36, ex25 = builtin_scene("ex36"), builtin_scene("ex25")
    assert ideal_membership((0.5, -0.5), (1, 0), ex36)
    assert not ideal_membership((2, 2), (1, 0), ex36)
    assert ideal_membership((-1, -1), (0, 0), ex25)
    assert filter_membership((1, 1), (0, 0), ex25)
    assert not filter_membership((1, -1), (0, 0), ex25)


def test_closure_membership():
    ex41 = builtin_scene("ex41")
    a = [(0.5, 0.5), (0.2, 0.9)]
    assert down_closure_membership((0.1, 0.8), a, ex41)
    assert down_closure_membership((0.5, 0.5), a, ex41)
    assert down_closure_membership((0.1, 0.1), [(0.5, 0.5)], ex41) == ideal_membership((0.1, 0.1), (0.5, 0.5), ex41)
    assert up_closure_membership((0.6, 0.95), a, ex41)
    assert not up_closure_membership((0.1, 0.1), a, ex41)
    with pytest.raises(ValueError):
        down_closure_membership((0.1, 0.1), [], ex41)


def test_meet_ex42_examples():
    np.testing.assert_array_equal(meet_ex42((-0.5, -0.5, 0), (-1, -0.2, -0.1)), (-1, -0.5, -0.1))
    np.testing.assert_array_equal(meet_ex42((-1, -0.5, 0), (-0.25, -2, 0)), (-1, -2, -1))
    np.testing.assert_array_equal(meet_ex42((-1, -1, -2), (-1, -1, -2)), (-1, -1, -2))
    with pytest.raises(ValueError):
        meet_ex42((-2, -2, 0), (0, 0, 0))


def test_meet_brute_examples():
    ex42, ex35 = builtin_scene("ex42"), builtin_scene("ex35")
    res = meet_brute((-0.5, -0.5, 0), (-1, -0.2, -0.1), ex42)
    assert res.status == MEET
    assert np.all(np.abs(res.point - (-1, -0.5, -0.1)) <= res.pitch)
    x = np.array([-0.5, -1.0, -0.5])
    assert np.all(np.abs(meet_brute(x, x, ex42).point - x) <= ex42.window.pitch)
    res = meet_brute((-0.25, -0.25, -0.125), (0, -1, 0), ex35)
    assert np.all(np.abs(res.point - (-1, -1, -0.125)) <= res.pitch)


def test_meet_brute_window_excludes_bounds():
    # the meet lies at w = 1 - uv < -2, below the default window
    res = meet_brute((-0.41, -1.89, -0.65), (-1.92, -0.66, -0.83), builtin_scene("ex42"))
    assert res.status == INCONCLUSIVE and "enlarge" in res.note


def test_join_ex35_examples():
    np.testing.assert_array_equal(join_ex35((-0.5, -0.5, -0.25), (-0.5, -1, 0)), (-0.5, -0.5, 0))
    x = np.array([-0.5, -0.5, -0.25])
    np.testing.assert_array_equal(join_ex35(x, x), x)
    np.testing.assert_array_equal(join_ex35(x, (0, 0, 0)), (0, 0, 0))
    res = join_brute((-0.5, -0.5, -0.25), (-0.5, -1, 0), builtin_scene("ex35"))
    assert np.all(np.abs(res.point - (-0.5, -0.5, 0)) <= res.pitch)
    with pytest.raises(ValueError):
        join_ex35((-0.5, 0, 0), (0, 0, 0))


ex42_points = st.tuples(*(st.floats(-2, 0),) * 3).filter(oracles.in_ex42).map(np.array)


@settings(max_examples=300, deadline=None)
@given(ex42_points, ex42_points, ex42_points)
def test_meet_ex42_semilattice_laws(x, y, z):
    m = meet_ex42(x, y)
    assert oracles.in_ex42(m)
    assert leq(m, x, CW) and leq(m, y, CW)
    np.testing.assert_array_equal(m, meet_ex42(y, x))
    np.testing.assert_allclose(meet_ex42(meet_ex42(x, y), z), meet_ex42(x, meet_ex42(y, z)), atol=1e-12)
    np.testing.assert_array_equal(meet_ex42(x, x), x)


def test_meet_ex42_dominates_grid_lower_bounds():
    rng = np.random.default_rng(1)
    nodes = oracles.grid_nodes((-2, -2, -2), (0, 0, 0), 33)
    nodes = nodes[oracles.in_ex42_many(nodes)]
    for _ in range(50):
        x, y = (p for p in (-2 * rng.random(3), -2 * rng.random(3)))
        if not (oracles.in_ex42(x) and oracles.in_ex42(y)):
            continue
        m = meet_ex42(x, y)
        lower = nodes[np.all(nodes <= np.minimum(x, y), axis=1)]
        assert np.all(CW.leq_many(lower, m))
