import numpy as np
import pytest

from hyperfell.window import Window, expanded_windows, growing_windows


def test_pitch_grid_and_contains():
    w = Window((0, 0), (1, 1), 65)
    np.testing.assert_allclose(w.pitch, (1 / 64, 1 / 64))
    assert w.grid().shape == (65 * 65, 2)
    assert w.contains(np.array([[0.5, 0.5], [1.5, 0.5]])).tolist() == [True, False]
    assert w.with_resolution(9).grid().shape == (81, 2)


@pytest.mark.parametrize("lower, upper, res", [((0,), (0,), 8), ((0, 0), (1,), 8), ((0,), (1,), 1),
                                               ((0,), (float("inf"),), 8)])
def test_window_validation(lower, upper, res):
    with pytest.raises(ValueError):
        Window(lower, upper, res)


def test_growing_and_expanded():
    base = Window((-1, -1), (1, 1))
    ws = growing_windows(base)
    assert [w.extent for w in ws] == sorted(w.extent for w in ws) and len(ws) == 3
    assert all(w.dim == 2 for w in expanded_windows(base, (2.0, 4.0, 8.0)))
