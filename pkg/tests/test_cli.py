import json
import math

import pytest

from polypol.cli import main, parse_shape
from polypol.region import signed_area


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def get_result(out):
    doc = json.loads(out)
    assert "config" in doc and "seed" in doc["config"]
    return doc["result"]


def test_area_triangle(capsys):
    code, out, _ = run_cli(capsys, "area", "--shape", "triangle")
    assert code == 0
    assert get_result(out)["area"] == "1/2"


def test_transform_eval_disk_origin(capsys):
    code, out, _ = run_cli(capsys, "transform", "eval", "--shape", "disk",
                           "--u", "0", "--v", "0")
    assert code == 0
    res = get_result(out)
    assert abs(res["value"] - 2 * math.pi) < 1e-12
    assert res["method"] in ("boundary_dy", "boundary_dx")


def test_validate_exit_codes(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "validate", "--shape", "square")
    assert code == 0 and get_result(out)["all_passed"]


def test_moments_json_and_csv(capsys):
    code, out, _ = run_cli(capsys, "moments", "--shape", "triangle",
                           "--max-degree", "1")
    assert code == 0
    vals = get_result(out)["values"]
    assert vals["(0,0)"] == "1/2" and vals["(1,0)"] == "1/6"
    code, out, _ = run_cli(capsys, "moments", "--shape", "triangle",
                           "--max-degree", "1", "--output", "csv")
    assert code == 0
    lines = [l for l in out.splitlines() if not l.startswith("#")]
    assert lines[0] == "i,j,value"
    assert "0,0,1/2" in lines


def test_mgf_series(capsys):
    code, out, _ = run_cli(capsys, "mgf-series", "--shape", "triangle",
                           "--order", "2")
    assert code == 0
    coeffs = get_result(out)["coefficients"]
    assert all(v == "1" for v in coeffs.values())


def test_transform_grid_csv(capsys):
    code, out, _ = run_cli(capsys, "transform", "grid", "--shape", "triangle",
                           "--umin", "-0.1", "--umax", "0.1",
                           "--vmin", "-0.1", "--vmax", "0.1", "--n", "2")
    assert code == 0
    lines = [l for l in out.splitlines() if not l.startswith("#")]
    assert lines[0] == "u,v,F,status"
    assert len(lines) == 5


def test_polygon_polar(capsys):
    code, out, _ = run_cli(capsys, "polygon-polar",
                           "--vertices=-1,-1;2,-1;-1,2")
    assert code == 0
    res = get_result(out)
    assert res["adjoint"] == [[0, 0, "9"]]
    assert res["degree_ok"]


def test_canonical_and_residues(capsys):
    code, out, _ = run_cli(capsys, "canonical", "--shape", "square")
    assert code == 0
    assert get_result(out)["kappa"] == "4"
    code, out, _ = run_cli(capsys, "residues", "--shape", "half-disk")
    assert code == 0
    rows = get_result(out)["residues"]
    assert sorted(r["residue"] for r in rows) == ["1", "1"]


def test_adjoint_cmd(capsys):
    code, out, _ = run_cli(capsys, "adjoint", "--shape", "half-disk")
    assert code == 0
    res = get_result(out)
    assert res["degree"] == 0 and res["adjoint"] == [[0, 0, "1"]]


def test_harmonic_cmds(capsys):
    code, out, _ = run_cli(capsys, "harmonic", "--shape", "triangle",
                           "--order", "2")
    assert code == 0
    res = get_result(out)
    assert res["mu"][0] == ["1/2", "0"]
    assert res["G"][1] == ["1/3", "1/3"]
    code, out, _ = run_cli(capsys, "harmonic", "check-restriction",
                           "--shape", "triangle", "--order", "6")
    assert code == 0
    res = get_result(out)
    assert res["passed"] and res["exact"]


def test_dual_locus_cmd(capsys):
    code, out, _ = run_cli(capsys, "dual-locus", "--shape", "disk")
    assert code == 0
    res = get_result(out)
    assert res["dual_curves"] == [[[0, 0, "1"], [0, 2, "-1"], [2, 0, "-1"]]]


def test_scan_cmd(capsys):
    code, out, _ = run_cli(capsys, "scan", "--shape", "triangle",
                           "--grid", "21")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# note=")
    assert any(l.startswith("# flagged_contained=True") for l in lines)
    header = next(l for l in lines if not l.startswith("#"))
    assert header == "u,v,absF,flagged,nearest_component,distance"


def test_probe_cmd(capsys):
    code, out, _ = run_cli(capsys, "probe", "--shape", "triangle",
                           "--component", "0", "--base", "1,0", "--dir=-1,0")
    assert code == 0
    res = get_result(out)
    assert abs(res["exponent"] + 1.0) < 0.05


def test_verify_single_criterion(capsys):
    code, out, _ = run_cli(capsys, "verify", "--only", "6")
    assert code == 0
    assert "[PASS]" in out and "all criteria passed" in out


def test_region_file_roundtrip(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "emit-region", "--shape", "half-disk")
    assert code == 0
    doc = get_result(out)
    path = tmp_path / "region.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run_cli(capsys, "area", "--region", str(path))
    assert code == 0
    assert abs(float(get_result(out)["area"]) - math.pi / 2) < 1e-12


def test_computation_error_exit_code(capsys):
    code, out, err = run_cli(capsys, "transform", "eval", "--shape", "disk",
                             "--u", "3", "--v", "0")
    assert code == 1
    assert json.loads(err)["error"] == "KernelOnBoundary"


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["transform", "eval", "--shape", "disk"])   # missing --u/--v
    assert exc.value.code == 2


def test_repeat_invocations_are_bit_identical(capsys):
    outs = set()
    for _ in range(2):
        _, out, _ = run_cli(capsys, "canonical", "--shape", "square")
        outs.add(out)
    assert len(outs) == 1
    outs = set()
    for _ in range(2):
        _, out, _ = run_cli(capsys, "transform", "eval", "--shape", "half-disk",
                            "--u", "0.17", "--v", "-0.05")
        outs.add(out)
    assert len(outs) == 1


def test_parse_shape_variants():
    assert signed_area(parse_shape("rectangle:1,2")) == 2
    assert signed_area(parse_shape("polygon:0,0;2,0;0,2")) == 2
    sec = parse_shape("sector:0,inf")
    assert abs(float(signed_area(sec)) - math.pi / 2) < 1e-12
    with pytest.raises(Exception):
        parse_shape("dodecahedron")
