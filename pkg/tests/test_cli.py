import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from uhlmann import cli, transport, triangle
from uhlmann.cli import JobError, JobSpec, load_job_document, main, run_job, spec_from_document

OCTANT_HALF = [[0.5, 0, 0], [0, 0.5, 0], [0, 0, 0.5]]


def _run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def _records(out):
    return [json.loads(line) for line in out.splitlines()]


def _flags(points):
    return [f"--{k}=" + ",".join(repr(float(x)) for x in p) for k, p in zip("uvw", points)]


def test_triangle_octant(capsys):
    code, out, _ = _run(["--mode", "triangle"] + _flags(OCTANT_HALF), capsys)
    assert code == 0
    (rec,) = _records(out)
    assert rec["tan_phase"] == pytest.approx(-1 / 26, abs=1e-12)
    assert rec["diagnostics"]["closed_form_vs_oracle"] < 1e-12


def test_output_equals_library(capsys):
    pts = [[0.1, -0.4, 0.2], [0.5, 0.3, -0.1], [-0.2, 0.1, 0.7]]
    code, out, _ = _run(["--mode", "triangle"] + _flags(pts), capsys)
    (rec,) = _records(out)
    res = triangle.triangle_rotation(*map(np.array, pts))
    # 17 significant digits round-trip exactly
    assert rec["phase"] == float(res.phase)
    assert rec["visibility"] == float(res.visibility)
    assert rec["delta"] == float(res.delta)
    assert rec["axis"] == [float(x) for x in res.axis]


def test_pure_limit(capsys):
    code, out, _ = _run(["--mode", "pure-limit", "--u=1,0,0", "--v=0,1,0", "--w=0,0,1"], capsys)
    (rec,) = _records(out)
    assert rec["phase"] == pytest.approx(-math.pi / 4, abs=1e-15)
    assert rec["visibility"] == pytest.approx(1.0, abs=1e-15)
    code, out, _ = _run(["--mode", "pure-limit", "--degrees", "--u=1,0,0", "--v=0,1,0", "--w=0,0,1"], capsys)
    (rec,) = _records(out)
    assert rec["phase"] == pytest.approx(-45.0)
    assert rec["omega"] == pytest.approx(90.0)
    assert rec["diagnostics"]["radius"] == 1 - 1e-6


def test_polygon_two_gon(tmp_path, capsys):
    doc = tmp_path / "job.yaml"
    doc.write_text("mode: polygon\npoints:\n  - [0.1, 0.2, 0.3]\n  - [-0.4, 0.0, 0.5]\n")
    code, out, _ = _run(["--input", str(doc)], capsys)
    assert code == 0
    (rec,) = _records(out)
    assert abs(rec["phase"]) < 1e-15
    assert rec["visibility"] == pytest.approx(1.0, abs=1e-15)


def test_geodesic_refine(capsys):
    code, out, _ = _run(["--mode", "geodesic-refine", "--subdivisions", "16", "--u=0.3,0,0", "--v=0,0.6,0.1"], capsys)
    recs = _records(out)
    assert [r["n_subdiv"] for r in recs] == [1, 2, 4, 8, 16]
    assert max(r["deviation"] for r in recs) < 1e-13


def test_compare_slater_csv(capsys):
    code, out, _ = _run(["--mode", "compare-slater", "--format", "csv", "--radius-grid", "0.5:0.5:0.1"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["r", "mu", "tan_uhlmann", "tan_slater", "tan_interferometric", "ratio"]
    row = rows[0]
    assert float(row["r"]) == 0.5
    assert float(row["tan_uhlmann"]) == pytest.approx(-1 / 26, abs=1e-15)
    assert float(row["tan_slater"]) == pytest.approx(-1 / 17, abs=1e-15)
    assert float(row["ratio"]) == pytest.approx(1 / 13, abs=1e-15)


def test_sweep_order_and_threads(monkeypatch, capsys):
    monkeypatch.setenv("UHLMANN_THREADS", "4")
    code, out, _ = _run(["--mode", "sweep", "--radius-grid", "0.1:1.0:0.1"], capsys)
    recs = _records(out)
    assert [r["r"] for r in recs] == pytest.approx([0.1 * k for k in range(1, 11)])
    assert recs[-1]["phase"] == pytest.approx(-math.pi / 4)


def test_hopf_check_seeded(capsys):
    argv = ["--mode", "hopf-check", "--seed", "7", "--samples", "5", "--subdivisions", "256"]
    _, first, _ = _run(argv, capsys)
    _, second, _ = _run(argv, capsys)
    assert first == second
    for rec in _records(first):
        assert rec["pancharatnam_vs_closed_form"] < 1e-10
        assert rec["wilson_vs_closed_form"] < 1e-2


def test_run_job_matches_library():
    spec = JobSpec(mode="polygon", points=OCTANT_HALF)
    (rec,) = run_job(spec)
    hol = transport.polygon_holonomy(OCTANT_HALF)
    assert rec["phase"] == hol.phase
    assert rec["visibility"] == hol.visibility


def test_exit_code_validation(capsys):
    code, _, err = _run(["--mode", "triangle", "--u=1.5,0,0", "--v=0,0.5,0", "--w=0,0,0.5"], capsys)
    assert code == 1
    assert "points[0]" in err
    code, _, err = _run(["--mode", "triangle", "--u=0.1,0,0"], capsys)
    assert code == 1
    assert "exactly 3" in err


def test_exit_code_numerical(capsys):
    # zero visibility: coplanar, 120 degrees apart, r^2 = 8/9
    r = math.sqrt(8 / 9)
    pts = [[r * math.cos(a), r * math.sin(a), 0.0] for a in (0, 2 * math.pi / 3, 4 * math.pi / 3)]
    code, _, err = _run(["--mode", "triangle"] + _flags(pts), capsys)
    assert code == 2
    assert "visibility" in err


def test_parse_error_has_location():
    with pytest.raises(JobError, match=r"job.yaml:2:"):
        load_job_document("mode: triangle\npoints: [[0.1, 0.2], : ]\nseed: 1\n", "job.yaml")


def test_unknown_and_bad_fields():
    with pytest.raises(JobError, match="unknown field.*colour"):
        spec_from_document({"mode": "triangle", "colour": "red"})
    with pytest.raises(JobError, match=r"points\[1\]"):
        spec_from_document({"mode": "triangle", "points": [[0, 0, 0], [0, 0]]})
    with pytest.raises(JobError, match="subdivisions"):
        spec_from_document({"mode": "polygon", "subdivisions": "many"})
    with pytest.raises(JobError, match="mode"):
        spec_from_document({"points": []})
    with pytest.raises(JobError, match="radius_grid"):
        run_job(JobSpec(mode="sweep", radius_grid=(0.5, 1.5, 0.1)))


def test_radius_grid_values():
    np.testing.assert_allclose(cli.radius_values((0.1, 0.9, 0.1)), np.arange(1, 10) / 10)
    assert cli.parse_grid("0.2:0.4:0.1") == (0.2, 0.4, 0.1)


def test_output_file(tmp_path, capsys):
    out_file = tmp_path / "rec.jsonl"
    code, out, _ = _run(["--mode", "pure-limit", "--u=1,0,0", "--v=0,1,0", "--w=0,0,1", "--output", str(out_file)], capsys)
    assert code == 0 and out == ""
    assert json.loads(out_file.read_text())["phase"] == pytest.approx(-math.pi / 4)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "uhlmann", "--mode", "polygon", "--u=0.1,0,0", "--v=0,0.2,0"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["n_vertices"] == 2
