import csv
import json

import numpy as np

from holder_resolvent import InequalityReport, LpSpace, SamplerConfig
from holder_resolvent.fitting import check_holder_fit
from holder_resolvent.reporting import (PLOT_COLUMNS, REPORT_FIELDS, _cell, emit_plot_data,
                                        report_text, safe_name, write_reports)


def sample_report(**kw):
    base = dict(check_name="fnt[r=0.1]", samples=3, violations=0, worst_margin=0.1 + 0.2,
                estimated_constant=None, passed=True,
                details={"x": np.array([1.0, np.nan]), "n": np.int64(3), "inf": np.inf})
    base.update(kw)
    return InequalityReport(**base)


def test_empty_plot_data_is_header_only(tmp_path):
    paths = emit_plot_data({}, tmp_path)
    assert [p.name for p in paths] == ["plot_data.csv"]
    assert paths[0].read_bytes() == b"base_point_id,log10_dist,log10_image_dist,bound_value\n"


def test_plot_data_identity_on_diagonal(tmp_path):
    rep, fit = check_holder_fit("J", LpSpace(2, 2.0), SamplerConfig(seed=1, count=1000))
    (path,) = emit_plot_data({rep.check_name: fit}, tmp_path)
    rows = list(csv.reader(path.open(encoding="utf-8")))
    assert tuple(rows[0]) == PLOT_COLUMNS
    vals = np.array(rows[1:], dtype=float)
    np.testing.assert_allclose(vals[:, 2], vals[:, 1], atol=1e-9)
    assert np.all(vals[:, 2] <= vals[:, 3])


def test_floats_use_shortest_round_trip():
    assert _cell(0.1 + 0.2) == "0.30000000000000004"
    assert float(_cell(1 / 3)) == 1 / 3
    assert _cell(True) == "true" and _cell(None) == ""


def test_report_schema_order():
    d = json.loads(report_text(sample_report(), "json"))
    assert tuple(d) == REPORT_FIELDS
    assert d["details"]["x"] == [1.0, "nan"] and d["details"]["inf"] == "inf"
    header = report_text(sample_report(), "csv").splitlines()[0]
    assert header == ",".join(REPORT_FIELDS)


def test_safe_names():
    assert safe_name("fnt[r=0.1]") == "fnt_r0.1"
    assert safe_name("search:main1") == "search_main1"


def test_written_files_are_deterministic_utf8_lf(tmp_path):
    reps = [sample_report(), sample_report(check_name="mu", estimated_constant=1.5)]
    for fmt in ("json", "csv"):
        a = write_reports(reps, tmp_path / "a", fmt, {"seed": 1}, 0)
        b = write_reports(reps, tmp_path / "b", fmt, {"seed": 1}, 0)
        assert [p.name for p in a] == [p.name for p in b]
        for pa, pb in zip(a, b):
            data = pa.read_bytes()
            assert data == pb.read_bytes()
            assert b"\r\n" not in data
            data.decode("utf-8")
    summary = json.loads((tmp_path / "a" / "summary.json").read_text(encoding="utf-8"))
    assert summary["seed"] == 1 and summary["exit_code"] == 0
    assert {"mu", "rho", "slack", "floor", "theorem_constant"} <= set(summary["conventions"])
    assert {"holder_resolvent", "numpy", "mpmath"} <= set(summary["versions"])
