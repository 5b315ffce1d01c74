import numpy as np
import pytest

from inghamlab import Grid, InvalidDataError, SampledFunction, SpectralFunction


def test_nodes_exclude_right_endpoint():
    g = Grid(0.0, 1.0, 4)
    np.testing.assert_allclose(g.nodes, [0.0, 0.25, 0.5, 0.75])
    assert g.step == 0.25


def test_offset_nodes_sit_at_half_steps():
    g = Grid(0.0, 1.0, 4, offset=True)
    np.testing.assert_allclose(g.nodes, [0.125, 0.375, 0.625, 0.875])
    assert not g.has_zero_node


def test_symmetric_constructor():
    g = Grid.symmetric(2.0, 8)
    assert g.x_min == -2.0 and g.x_max == 2.0
    assert g.is_symmetric
    assert g.has_zero_node
    go = Grid.symmetric(2.0, 8, offset=True)
    assert go.is_symmetric
    assert not go.has_zero_node
    # offset nodes come in exact +/- pairs
    np.testing.assert_allclose(go.nodes, -go.nodes[::-1])


def test_dual_frequencies_are_fft_dual():
    g = Grid.symmetric(4.0, 16)
    xi = g.dual_frequencies()
    assert xi.size == 16
    np.testing.assert_allclose(np.diff(xi), 2 * np.pi / (g.step * 16))
    assert np.all(np.diff(xi) > 0)


def test_reflect_values_fixes_even_functions():
    for offset in (False, True):
        g = Grid.symmetric(3.0, 10, offset=offset)
        even = np.cos(g.nodes)
        np.testing.assert_allclose(g.reflect_values(even), even, atol=1e-12)


def test_reflect_values_negates_odd_functions():
    go = Grid.symmetric(3.0, 10, offset=True)
    odd = np.sin(go.nodes)
    np.testing.assert_allclose(go.reflect_values(odd), -odd, atol=1e-12)
    # without the half-step offset the leftmost node has no mirror partner
    # and is self-paired by convention
    g = Grid.symmetric(3.0, 10)
    odd = np.sin(g.nodes)
    mirrored = g.reflect_values(odd)
    assert mirrored[0] == odd[0]
    np.testing.assert_allclose(mirrored[1:], -odd[1:], atol=1e-12)


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid(1.0, 0.0, 4)
    with pytest.raises(ValueError):
        Grid(0.0, 1.0, 1)


def test_sampled_function_rejects_bad_values():
    g = Grid(0.0, 1.0, 4)
    with pytest.raises(InvalidDataError):
        SampledFunction(g, np.array([1.0, np.nan, 0.0, 0.0]))
    with pytest.raises(InvalidDataError):
        SampledFunction(g, np.zeros(3))


def test_sampled_function_from_callable_and_with_values():
    g = Grid(0.0, 1.0, 8)
    f = SampledFunction.from_callable(g, np.cos, label="cos")
    assert f.label == "cos"
    assert f.values.dtype == complex
    g2 = f.with_values(2 * f.values)
    np.testing.assert_allclose(g2.values, 2 * np.cos(g.nodes))


def test_spectral_function_needs_increasing_frequencies():
    with pytest.raises(InvalidDataError):
        SpectralFunction(np.array([0.0, 0.0, 1.0]), np.zeros(3, dtype=complex))
