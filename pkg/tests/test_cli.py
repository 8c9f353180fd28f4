import csv
import io
import json
import math

import pytest

from amalgams.cli import emit_report, main, parse_exponent, parse_grid, parse_window
from amalgams.verify import InequalityCase


@pytest.fixture()
def spec_path(tmp_path):
    spec = {
        "group": "real-line",
        "cells": [{"lo": [0.0], "hi": [4.0], "value": 1.0}],
    }
    path = tmp_path / "f.json"
    path.write_text(json.dumps(spec))
    return str(path)


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_parse_exponent_tokens():
    assert parse_exponent("inf") == math.inf
    assert parse_exponent("2") == 2.0
    with pytest.raises(Exception):
        parse_exponent("0.3")
    with pytest.raises(Exception):
        parse_exponent("many")


def test_norm_subcommand(capsys, spec_path):
    code, payload = _run(
        capsys,
        ["norm", "--form", "partition", "--q", "2", "--p", "2", "--r", "4",
         "--fn", spec_path],
    )
    assert code == 0
    # diagonal: ||chi||_2 with lambda-measure 2
    assert payload["value"] == pytest.approx(math.sqrt(2.0), rel=1e-12)
    assert payload["method"] == "exact"


def test_norm_ball_subcommand(capsys, spec_path):
    code, payload = _run(
        capsys,
        ["norm", "--form", "ball", "--q", "1", "--p", "inf", "--r", "0.25",
         "--fn", spec_path],
    )
    assert code == 0
    assert payload["value"] == pytest.approx(0.25, rel=1e-12)


def test_lorentz_subcommand(capsys, tmp_path):
    spec = {"group": "real-line", "cells": [{"lo": [0.0], "hi": [8.0], "value": 1.0}]}
    path = tmp_path / "g.json"
    path.write_text(json.dumps(spec))
    code, payload = _run(capsys, ["lorentz", "--q", "2", "--p", "inf", "--fn", str(path)])
    assert code == 0
    assert payload["value"] == pytest.approx(2.0, rel=1e-12)


def test_fracnorm_subcommand(capsys, tmp_path):
    spec = {"group": "real-line", "cells": [{"lo": [0.0], "hi": [2.0], "value": 1.0}]}
    path = tmp_path / "h.json"
    path.write_text(json.dumps(spec))
    code, payload = _run(
        capsys,
        ["fracnorm", "--q", "1", "--p", "inf", "--alpha", "2",
         "--grid", "0.0625:16:4", "--form", "ball", "--fn", str(path)],
    )
    assert code == 0
    assert payload["value"] == pytest.approx(1.0, rel=1e-12)
    assert payload["classification"] == "nontrivial"
    assert payload["argmax_r"] == pytest.approx(1.0)


def test_partition_info_subcommand(capsys):
    code, payload = _run(
        capsys,
        ["partition-info", "--group", "real-line", "--r", "2", "--window=-4:4"],
    )
    assert code == 0
    assert payload["cell_count"] == 8
    assert payload["u_radius"] == pytest.approx(0.5)
    assert payload["validation"]["ok"] is True
    assert payload["n_pi_bounds"]["paper_form"] == pytest.approx(7.0)


def test_counterexample_subcommand(capsys):
    code, payload = _run(
        capsys,
        ["counterexample", "--q", "1", "--alpha", "2", "--p", "4", "--levels", "2"],
    )
    assert code == 0
    assert len(payload["by_level"]) == 2
    assert payload["bound_constant"] == pytest.approx(21.14, abs=0.01)
    assert payload["by_level"][0]["measure"] == pytest.approx(1.25)
    assert all(lvl["margin"] > 0 for lvl in payload["by_level"])


def test_usage_errors(capsys, spec_path, tmp_path):
    # missing required flag
    assert main(["norm", "--form", "partition", "--p", "2", "--r", "1",
                 "--fn", spec_path]) == 2
    capsys.readouterr()
    # unknown flag
    assert main(["norm", "--florm", "partition"]) == 2
    capsys.readouterr()
    # malformed spec file
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["lorentz", "--q", "2", "--p", "2", "--fn", str(bad)]) == 2
    capsys.readouterr()
    # exponent below 1
    assert main(["lorentz", "--q", "0.5", "--p", "2", "--fn", spec_path]) == 2
    capsys.readouterr()


def test_verify_subcommand_quick(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"criteria": ["diagonal-identity"], "n_identity": 3}))
    out = tmp_path / "report.json"
    code = main(["verify", "--config", str(cfg), "--out", str(out)])
    capsys.readouterr()
    assert code == 0
    payload = json.loads(out.read_text())
    assert all(c["status"] == "pass" for c in payload["cases"])
    # JSON report round-trips the in-memory cases
    rebuilt = [InequalityCase(**c) for c in payload["cases"]]
    assert all(isinstance(c.margin, float) for c in rebuilt)


def test_verify_bad_config_key(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"bogus": 1}))
    assert main(["verify", "--config", str(cfg)]) == 2
    capsys.readouterr()


def test_emit_report_csv_and_roundtrip(tmp_path):
    cases = [
        InequalityCase("a", 1.0, 2.0, 1.5, 0.5, "pass", 1e-9, {"k": 1}),
        InequalityCase("b", 3.0, 1.0, 1.0, -0.6, "fail", 0.0, {}),
    ]
    text = emit_report(cases, "csv", None)
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["id", "lhs", "rhs", "constant", "margin", "status", "context"]
    assert len(rows) == len(cases) + 1
    assert rows[1][1] == "1"
    # empty case list -> header only
    assert len(list(csv.reader(io.StringIO(emit_report([], "csv", None))))) == 1
    # JSON round-trip preserves numbers exactly
    jtext = emit_report(cases, "json", str(tmp_path / "r.json"))
    parsed = json.loads(jtext)
    assert [InequalityCase(**c) for c in parsed["cases"]] == cases


def test_out_dir_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("AMALGAMS_OUT_DIR", str(tmp_path))
    cases = [InequalityCase("a", 1.0, 2.0, 1.0, 0.5, "pass", 0.0, {})]
    emit_report(cases, "json", "report.json")
    assert (tmp_path / "report.json").exists()
