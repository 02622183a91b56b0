import numpy as np
import pytest

from hyperfell.hyperspace import (CONTINUOUS_WITNESS, CONVERGES, DIVERGES, HitSet, InconclusiveError, MissSet,
                                  PathSpec, fell_probe, hausdorff_probe, hits, inverse_probe, misses,
                                  tail_outcome, vietoris_probe)
from hyperfell.repro import ex41_segment
from hyperfell.scene import builtin_scene
from hyperfell.setrep import ImplicitClosedSet, ball, box, finite_set, ideal, scene_set
from hyperfell.window import Window, growing_windows

EX41 = builtin_scene("ex41")
X0 = (0.5, 0.5)


def _toward_x0_from_below(m0=0.5):
    return PathSpec(lambda a: np.array([0.5, 0.5 - a]), X0, alpha0=m0, tag="below")


def test_path_spec():
    p = PathSpec.linear((0.0, 0.0), X0)
    assert len(p.points()) == 21
    np.testing.assert_allclose(p.points()[0], (0.25, 0.25))
    assert np.linalg.norm(p.points()[-1] - X0) < 1e-6
    assert np.all(PathSpec.constant(X0).points() == X0)


def test_hits_examples():
    seg = HitSet(ex41_segment(X0, margin=0.0))
    assert hits(ideal(EX41, (0.5, 0.6)), seg, EX41.window)
    assert not hits(ideal(EX41, X0), seg, EX41.window)
    inner = HitSet(ball(EX41, (0.2, 0.2), 0.05))
    assert hits(ideal(EX41, X0), inner, EX41.window)


def test_hits_empty_samples_is_inconclusive():
    nowhere = HitSet(finite_set([(5.0, 5.0)]))
    with pytest.raises(InconclusiveError):
        hits(ideal(EX41, X0), nowhere, EX41.window)


def test_misses_examples():
    a = ideal(EX41, X0)
    far = MissSet(box(EX41, (0.7, 0.7), (0.9, 0.9)))
    assert misses(a, far, EX41.window)
    assert not misses(a, MissSet(box(EX41, (0.4, 0.4), (0.6, 0.6))), EX41.window)
    ex36 = builtin_scene("ex36")
    e = MissSet(box(ex36, (-2.0, 0.1), (2.0, 2.0)))
    assert misses(ideal(ex36, (1, 0)), e, ex36.window)


def test_hit_miss_monotonicity():
    a = ideal(EX41, X0)
    small, large = ball(EX41, (0.45, 0.45), 0.03), ball(EX41, (0.45, 0.45), 0.2)
    assert hits(a, HitSet(small), EX41.window) <= hits(a, HitSet(large), EX41.window)
    far, farther = box(EX41, (0.6, 0.6), (0.9, 0.9)), box(EX41, (0.7, 0.7), (0.9, 0.9))
    assert misses(a, MissSet(far), EX41.window) <= misses(a, MissSet(farther), EX41.window)


def test_tail_outcome():
    assert tail_outcome([False] * 10 + [True] * 11, 20) == "holds"
    assert tail_outcome([True] * 15 + [False] * 6, 20) == "fails"
    assert tail_outcome([None] * 21, 20) == "unknown"


def test_fell_constant_and_open_square():
    assert fell_probe(EX41, PathSpec.constant(X0)).status == CONVERGES
    assert fell_probe(EX41, _toward_x0_from_below()).status == CONVERGES


def test_vietoris_ex41_diverges():
    path = PathSpec(lambda a: np.array([0.5, 0.5 + a / 2]), X0, tag="above")
    miss = MissSet(ex41_segment(X0))
    v = vietoris_probe(EX41, path, hit_sets=[], miss_sets=[miss])
    assert v.status == DIVERGES and v.witness is not None


def test_fell_ex35_diverges():
    ex35 = builtin_scene("ex35")
    path = PathSpec(lambda a: -2 * a * np.array([1.0, 1.0, 0.5]), (0.0, 0.0, 0.0), tag="y_m")
    o = HitSet(ball(ex35, (-0.5, -0.75, 0.0), 0.1))
    assert fell_probe(ex35, path, hit_sets=[o], miss_sets=[]).status == DIVERGES


def test_hausdorff_constant_and_open_square():
    windows = growing_windows(EX41.window)
    v = hausdorff_probe(EX41, PathSpec.constant(X0, tail=6), windows)
    assert v.status == CONVERGES
    assert all(val == [0.0, 0.0, 0.0] for val in v.tests[0]["values"])
    v = hausdorff_probe(EX41, _toward_x0_from_below(), windows)
    assert v.status == CONVERGES
    # nested boxes: H = 2^-m-1, the m = 0 point lies outside the square
    assert v.tests[0]["values"][0] is None
    for m, val in enumerate(v.tests[0]["values"][1:], 1):
        assert abs(val[0] - 2.0 ** (-m - 1)) <= EX41.window.max_pitch


def test_inverse_open_square():
    assert inverse_probe(EX41, X0, HitSet(ball(EX41, X0, 0.2))).status == CONTINUOUS_WITNESS
    rep = inverse_probe(EX41, X0, HitSet(scene_set(EX41)))
    assert rep.status == CONTINUOUS_WITNESS and rep.candidates[0]["tag"] == "whole"


def test_inverse_rejects_outside_point():
    with pytest.raises(ValueError):
        inverse_probe(EX41, (1.5, 0.5), HitSet(scene_set(EX41)))


def test_inverse_neither_is_inconclusive():
    ex25 = builtin_scene("ex25")
    rep = inverse_probe(ex25, (0, 0), HitSet(ball(ex25, (0, 0), 0.5)))
    assert rep.status == "INCONCLUSIVE" and "NEITHER" in rep.notes[0]


def test_custom_hit_set_tag():
    s = ImplicitClosedSet(2, lambda p, tol: np.ones(len(p), bool), "all")
    assert HitSet(s).tag == "all" and HitSet(s, "named").tag == "named"
    assert not MissSet(s).compact
    cert = MissSet.certified(ball(EX41, X0, 0.1, closed=True), EX41, growing_windows(Window((0, 0), (1, 1)), (1, 2)))
    assert cert.compact
