import json

import numpy as np
import pytest

from curvedwigner.artifacts import (
    emit_csv,
    emit_grid_csv,
    emit_pgm,
    format_value,
    read_csv,
    read_pgm,
    validate_manifest,
    write_manifest,
)
from curvedwigner.errors import ConfigError
from curvedwigner.wigner import WignerGrid


def _toy_grid(values):
    v = np.asarray(values, dtype=float)
    return WignerGrid(np.arange(v.shape[0], dtype=float),
                      np.arange(v.shape[1], dtype=float),
                      v, "closed_form", {"n": 0, "s": 4.0, "R": 1.0})


class TestCsv:
    def test_round_trip_exact(self, tmp_path):
        xs = np.array([0.0, 1.0 / 3.0, np.pi, 6.02214076e23, 1.2345678901234567e-7])
        ys = np.array([-1.0, 2.0 ** -40, 123456.789012345678, -0.1, 9.9e300])
        path = emit_csv(tmp_path / "t.csv", ["x", "y"], [xs, ys], comments=["units: none"])
        names, cols = read_csv(path)
        assert names == ["x", "y"]
        assert np.array_equal(cols[0], xs)  # bit-exact after the text round trip
        assert np.array_equal(cols[1], ys)

    def test_header_and_comments(self, tmp_path):
        path = emit_csv(tmp_path / "t.csv", ["a"], [[1.5]], comments=["hello"])
        lines = path.read_text().splitlines()
        assert lines[0] == "# hello"
        assert lines[1] == "a"
        assert lines[2] == format_value(1.5)

    def test_locale_independent_decimal_point(self):
        assert "." in format_value(0.5)
        assert "," not in format_value(1234567.25)

    def test_grid_csv_row_major_chi_outer(self, tmp_path):
        grid = _toy_grid([[1.0, 2.0], [3.0, 4.0]])
        path = emit_grid_csv(grid, tmp_path / "g.csv")
        names, cols = read_csv(path)
        assert names == ["chi", "pR", "W"]
        assert list(cols[0]) == [0.0, 0.0, 1.0, 1.0]  # chi varies slowest
        assert list(cols[2]) == [1.0, 2.0, 3.0, 4.0]

    def test_rejects_ragged_and_nonfinite(self, tmp_path):
        with pytest.raises(ValueError):
            emit_csv(tmp_path / "b.csv", ["a", "b"], [[1.0], [1.0, 2.0]])
        with pytest.raises(ValueError):
            emit_csv(tmp_path / "b.csv", ["a"], [[np.inf]])


class TestPgm:
    def test_two_by_two_mapping(self, tmp_path):
        grid = _toy_grid([[0.0, 1.0], [-1.0, 0.0]])
        path = emit_pgm(grid, tmp_path / "t.pgm")
        w, h, fields, px = read_pgm(path)
        assert (w, h) == (2, 2)
        assert fields["min"] == "-1" and fields["max"] == "1"
        # half-integer gray rounds to nearest even: 127.5 -> 128
        assert fields["zero_gray"] == "128"
        # rows: pR descending; columns: chi ascending
        assert px[0, 0] == 255   # (chi=0, pR=1) -> value 1
        assert px[0, 1] == 128   # (chi=1, pR=1) -> value 0
        assert px[1, 0] == 128   # (chi=0, pR=0) -> value 0
        assert px[1, 1] == 0     # (chi=1, pR=0) -> value -1

    def test_constant_grid_uniform_anchor(self, tmp_path):
        grid = _toy_grid([[0.7, 0.7], [0.7, 0.7]])
        path = emit_pgm(grid, tmp_path / "c.pgm")
        _, _, fields, px = read_pgm(path)
        assert np.all(px == 128)
        assert fields["zero_gray"] == "128"

    def test_header_round_trip(self, tmp_path):
        grid = _toy_grid(np.linspace(-0.25, 0.5, 12).reshape(3, 4))
        path = emit_pgm(grid, tmp_path / "h.pgm")
        w, h, fields, px = read_pgm(path)
        assert (w, h) == (3, 4)[::-1][::-1] == (3, 4)  # width = n_chi, height = n_p
        assert float(fields["min"]) == -0.25
        assert float(fields["max"]) == 0.5
        assert px.shape == (4, 3)


class TestManifest:
    def test_write_and_validate(self, tmp_path):
        f1 = emit_csv(tmp_path / "a.csv", ["x"], [[1.0]])
        f2 = emit_pgm(_toy_grid([[0.0, 1.0], [2.0, 3.0]]), tmp_path / "b.pgm")
        manifest = write_manifest(tmp_path, [(f1, "csv"), (f2, "pgm")],
                                  {"command": "test"}, "0.1.0")
        doc = validate_manifest(manifest)
        assert {e["path"] for e in doc["files"]} == {"a.csv", "b.pgm"}
        assert doc["library_version"] == "0.1.0"

    def test_detects_corruption(self, tmp_path):
        f1 = emit_csv(tmp_path / "a.csv", ["x"], [[1.0]])
        manifest = write_manifest(tmp_path, [(f1, "csv")], {}, "0.1.0")
        f1.write_text("tampered\n")
        with pytest.raises(ConfigError):
            validate_manifest(manifest)

    def test_detects_missing_file(self, tmp_path):
        f1 = emit_csv(tmp_path / "a.csv", ["x"], [[1.0]])
        manifest = write_manifest(tmp_path, [(f1, "csv")], {}, "0.1.0")
        f1.unlink()
        with pytest.raises(ConfigError):
            validate_manifest(manifest)

    def test_manifest_is_deterministic_json(self, tmp_path):
        f1 = emit_csv(tmp_path / "a.csv", ["x"], [[1.0]])
        m1 = write_manifest(tmp_path, [(f1, "csv")], {"k": 1}, "0.1.0").read_bytes()
        m2 = write_manifest(tmp_path, [(f1, "csv")], {"k": 1}, "0.1.0").read_bytes()
        assert m1 == m2
        json.loads(m1)  # well-formed
