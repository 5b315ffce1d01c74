import numpy as np
import pytest

import inghamlab as il
from inghamlab.envelopes import fit_dyadic, fit_nested


def _ratio_data(fn, x_max=32.0, n=4096):
    x = np.linspace(0.0, x_max, n)
    return x, fn(x)


def test_decreasing_ratio_holds():
    x, ratio = _ratio_data(lambda x: np.exp(-0.1 * x))
    rep = fit_dyadic(x, ratio, start=2.0)
    assert rep.verdict == il.HOLDS
    assert np.all(np.diff(rep.constants) < 0)
    assert rep.growth_factor < 1.0


def test_growing_ratio_fails():
    x, ratio = _ratio_data(lambda x: np.exp(0.3 * x))
    rep = fit_dyadic(x, ratio, start=2.0)
    assert rep.verdict == il.FAILS
    assert rep.monotone_growth
    assert rep.growth_factor > 10.0


def test_flat_ratio_within_slack_holds():
    x, ratio = _ratio_data(lambda x: np.full_like(x, 3.0))
    rep = fit_dyadic(x, ratio, start=2.0, slack=0.10)
    assert rep.verdict == il.HOLDS
    np.testing.assert_allclose(rep.constants, 3.0)
    assert rep.growth_factor == 1.0


def test_slack_boundary_is_sharp():
    # constants 1.0 then 1.2: fails at 10% slack, holds at 25%
    x = np.linspace(0.0, 8.0, 4097)
    ratio = np.where(x < 4.0, 1.0, 1.2)
    lo = fit_dyadic(x, ratio, start=2.0, n_windows=2, slack=0.10)
    hi = fit_dyadic(x, ratio, start=2.0, n_windows=2, slack=0.25)
    assert lo.verdict == il.FAILS
    assert hi.verdict == il.HOLDS


def test_windows_are_disjoint_dyadic():
    x, ratio = _ratio_data(lambda x: np.exp(-x))
    rep = fit_dyadic(x, ratio, start=1.5, n_windows=3)
    los = [w.lo for w in rep.windows]
    his = [w.hi for w in rep.windows]
    np.testing.assert_allclose(los, [1.5, 3.0, 6.0])
    np.testing.assert_allclose(his, [3.0, 6.0, 12.0])


def test_zero_data_holds_with_zero_constants():
    x, ratio = _ratio_data(lambda x: np.zeros_like(x))
    rep = fit_dyadic(x, ratio, start=2.0)
    assert rep.verdict == il.HOLDS
    np.testing.assert_allclose(rep.constants, 0.0)


def test_zero_then_positive_fails():
    # nothing in the first window but mass later: no finite constant works
    x = np.linspace(0.0, 16.0, 8193)
    ratio = np.where(x < 4.0, 0.0, 1.0)
    rep = fit_dyadic(x, ratio, start=2.0, n_windows=3)
    assert rep.verdict == il.FAILS
    assert rep.growth_factor == np.inf


def test_window_past_data_raises():
    x, ratio = _ratio_data(lambda x: np.exp(-x), x_max=8.0)
    with pytest.raises(il.WindowTooSmallError):
        fit_dyadic(x, ratio, start=4.0, n_windows=3)


def test_negative_x_uses_absolute_value():
    x = np.linspace(-32.0, 32.0, 4096)
    ratio = np.exp(-0.2 * np.abs(x))
    rep = fit_dyadic(x, ratio, start=2.0)
    assert rep.verdict == il.HOLDS


def test_nested_windows_share_origin():
    x, ratio = _ratio_data(lambda x: np.exp(-x / 8.0))
    rep = fit_nested(x, ratio, x0=4.0, n_windows=3)
    assert [w.lo for w in rep.windows] == [0.0, 0.0, 0.0]
    np.testing.assert_allclose([w.hi for w in rep.windows], [4.0, 8.0, 16.0])
    # largest window sees the origin value, so constants all equal ratio(0)
    np.testing.assert_allclose(rep.constants, 1.0)
    assert rep.verdict == il.HOLDS


def test_report_json_roundtrip():
    x, ratio = _ratio_data(lambda x: np.exp(-0.1 * x))
    rep = fit_dyadic(x, ratio, start=2.0)
    blob = rep.to_json_dict()
    assert blob["verdict"] == il.HOLDS
    assert len(blob["windows"]) == 3
    assert blob["windows"][0]["lo"] == 2.0
