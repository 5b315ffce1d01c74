import json

import numpy as np
import pytest

import inghamlab as il
from inghamlab import io


def test_samples_csv_format(tmp_path):
    g = il.Grid(0.0, 1.0, 4)
    f = il.SampledFunction(g, np.array([1.0, 0.5j, -1.0, 0.25 + 0.25j]))
    path = tmp_path / "f.csv"
    io.write_samples_csv(path, f)
    lines = path.read_text().splitlines()
    assert lines[0] == "x,re,im"
    assert len(lines) == 5
    assert lines[1] == "0.0,1.0,0.0"
    assert lines[2] == "0.25,0.0,0.5"


def test_spectrum_csv_format(tmp_path):
    F = il.SpectralFunction(np.array([-1.0, 0.0, 2.0]),
                            np.array([1j, 2.0, -0.5 + 0j]))
    path = tmp_path / "F.csv"
    io.write_spectrum_csv(path, F)
    lines = path.read_text().splitlines()
    assert lines[0] == "xi,re,im"
    assert lines[1] == "-1.0,0.0,1.0"


def test_csv_floats_roundtrip(tmp_path):
    # shortest-repr cells parse back to the exact binary values
    g = il.Grid.symmetric(np.pi, 16)
    f = il.SampledFunction.from_callable(g, lambda x: np.sin(x) * 1e-7)
    path = tmp_path / "r.csv"
    io.write_samples_csv(path, f)
    rows = np.loadtxt(path, delimiter=",", skiprows=1)
    np.testing.assert_array_equal(rows[:, 0], g.nodes)
    np.testing.assert_array_equal(rows[:, 1], f.values.real)


def test_jsonable_handles_numpy_and_complex():
    blob = io.jsonable({
        "a": np.float64(1.5),
        "b": np.int32(3),
        "c": np.bool_(True),
        "d": 1 + 2j,
        "e": np.array([1.0, 2.0]),
        "f": (np.inf, np.nan),
    })
    assert blob["a"] == 1.5 and isinstance(blob["a"], float)
    assert blob["b"] == 3 and isinstance(blob["b"], int)
    assert blob["c"] is True
    assert blob["d"] == {"re": 1.0, "im": 2.0}
    assert blob["e"] == [1.0, 2.0]
    assert blob["f"] == ["inf", "nan"]


def test_canonical_json_is_sorted_and_newline_terminated(tmp_path):
    text = io.canonical_json({"b": 1, "a": {"z": 2, "y": 3}})
    assert text.endswith("\n")
    assert text.index('"a"') < text.index('"b"')
    parsed = json.loads(text)
    assert parsed == {"b": 1, "a": {"z": 2, "y": 3}}


def test_canonical_json_sanitizes_non_finite():
    text = io.canonical_json({"x": float("nan"), "y": float("inf")})
    assert '"nan"' in text and '"inf"' in text


def test_config_digest_is_order_insensitive():
    d1 = io.config_digest({"a": 1, "b": [1, 2]})
    d2 = io.config_digest({"b": [1, 2], "a": 1})
    assert d1 == d2
    assert len(d1) == 64
    assert io.config_digest({"a": 2, "b": [1, 2]}) != d1


def test_build_manifest(tmp_path):
    m = io.build_manifest("construct", {"grid": {"points": 4}},
                          {"verdict": il.HOLDS},
                          ["b.csv", "a.json"])
    assert m["schema_version"] == 1
    assert m["subcommand"] == "construct"
    assert m["outputs"] == ["a.json", "b.csv"]
    assert m["config_sha256"] == io.config_digest({"grid": {"points": 4}})
    path = tmp_path / "m.json"
    io.write_json(path, m)
    assert json.loads(path.read_text())["results"]["verdict"] == il.HOLDS
