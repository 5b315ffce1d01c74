import numpy as np
import pytest

import inghamlab as il
from inghamlab.construct import spec_from_psi, spec_from_theta
from inghamlab.profiles import DecayProfile, ProfileKind


def _step_theta(cut, half=None):
    """1 below cut, optionally 1/2 up to half, then 0."""
    def fn(r):
        r = np.asarray(r, dtype=float)
        out = np.where(r < cut, 1.0, 0.0)
        if half is not None:
            out = np.where((r >= cut) & (r < half), 0.5, out)
        return out
    return DecayProfile("step", ProfileKind.THETA_DECREASING, fn,
                        validate=False)


def test_theta_log_sq_spec_radius_is_block_sum():
    theta = il.theta_log_sq()
    spec = spec_from_theta(theta)
    # schedule starts at k = 1: half-widths theta(2), theta(4), ...
    ks = np.arange(1, spec.n_factors + 1, dtype=float)
    np.testing.assert_allclose(spec.support_radius,
                               np.sum(theta(2.0 ** ks)), rtol=1e-12)
    assert np.all(np.diff(spec.half_widths) <= 0)


def test_divergent_theta_refused():
    with pytest.raises(il.DivergentProfileError):
        spec_from_theta(il.theta_log())


def test_step_theta_gives_single_factor():
    # theta(2) = 1, theta(4) = 0: exactly one factor of half-width 1
    spec = spec_from_theta(_step_theta(3.0))
    assert spec.n_factors == 1
    np.testing.assert_allclose(spec.support_radius, 1.0)


def test_sqrt_psi_radius_closed_form():
    # derived half-widths 2^{-k/2} for k >= 1; geometric sum 1/(sqrt 2 - 1)
    psi = il.PROFILES["psi_power"]()
    spec = spec_from_psi(psi)
    expect = 1.0 / (np.sqrt(2.0) - 1.0)
    # truncation below 1e-8 shaves a tail of comparable size off the sum
    np.testing.assert_allclose(spec.support_radius, expect, rtol=1e-7)


def test_zero_psi_is_trivial():
    spec = spec_from_psi(il.PROFILES["psi_zero"]())
    assert spec.is_trivial
    assert spec.support_radius == 0.0
    xi = np.linspace(-10, 10, 101)
    np.testing.assert_allclose(il.evaluate_product_fourier(spec, xi), 1.0)


def test_linear_psi_refused():
    with pytest.raises(il.DivergentProfileError):
        spec_from_psi(il.PROFILES["psi_linear"]())


def test_single_factor_transform_is_sinc():
    spec = spec_from_theta(_step_theta(3.0))
    xi = np.linspace(-30.0, 30.0, 601)
    got = il.evaluate_product_fourier(spec, xi)
    # normalized indicator of half-width 1: sin(xi)/xi
    expect = np.sinc(xi / np.pi)
    np.testing.assert_allclose(got, expect, atol=1e-12)


def test_two_factor_convolution_oracle():
    # indicators of half-widths 1 and 1/2 convolve to a plateau of height
    # 1/2 on |x| <= 1/2 with linear ramps reaching 0 at |x| = 3/2
    spec = spec_from_theta(_step_theta(4.0, half=8.0))
    assert spec.half_widths == (1.0, 0.5)
    grid = il.Grid.symmetric(8.0, 2 ** 12)
    f = il.realize_function(spec, grid)
    x = grid.nodes
    expect = 0.5 * np.clip(1.5 - np.abs(x), 0.0, 1.0)
    assert np.max(np.abs(f.values.real - expect)) < 1e-3
    np.testing.assert_allclose(f.values.imag, 0.0, atol=1e-10)


def test_realized_function_mass_stays_inside_support():
    spec = spec_from_theta(il.theta_log_sq())
    grid = il.Grid.symmetric(16.0, 4096)
    f = il.realize_function(spec, grid)
    outside, total = il.support_mass_fractions(f, spec.support_radius)
    assert total > 0
    assert outside / total < 1e-6
    # product value 1 at xi = 0 pins unit mass
    mass = grid.step * np.sum(f.values.real)
    np.testing.assert_allclose(mass, 1.0, atol=1e-9)


def test_realize_needs_room_for_support():
    spec = spec_from_theta(il.theta_log_sq())
    small = il.Grid.symmetric(1.0, 256)
    with pytest.raises(il.GridTooSmallError):
        il.realize_function(spec, small)


def test_realize_rejects_trivial_spec():
    spec = spec_from_psi(il.PROFILES["psi_zero"]())
    with pytest.raises(ValueError):
        il.realize_function(spec, il.Grid.symmetric(4.0, 256))


def test_certificate_holds_for_convergent_theta():
    theta = il.theta_log_sq()
    spec = spec_from_theta(theta)
    cert = il.decay_certificate(spec, il.psi_from_theta(theta))
    assert cert.verdict == il.HOLDS
    assert len(cert.windows) == 3
    assert cert.meta["slack_exponent"] == 0.5


def test_certificate_fails_for_overclaimed_decay():
    # the product decays subexponentially, so an exp(-r/4) claim must
    # blow the window constants apart
    theta = il.theta_log_sq()
    spec = spec_from_theta(theta)
    cert = il.decay_certificate(spec, il.PROFILES["psi_linear"](slope=0.5))
    assert cert.verdict == il.FAILS
    assert cert.growth_factor > 10.0


def test_spec_json_dict():
    spec = spec_from_theta(il.theta_log_sq())
    blob = spec.to_json_dict()
    assert len(blob["half_widths"]) == spec.n_factors
    assert blob["support_radius"] == pytest.approx(spec.support_radius)


def test_spec_validation():
    with pytest.raises(ValueError):
        il.SincProductSpec((0.5, 1.0))  # increasing
    with pytest.raises(ValueError):
        il.SincProductSpec((1.0, -0.5))
    with pytest.raises(ValueError):
        spec_from_theta(il.PROFILES["psi_linear"]())  # wrong kind
