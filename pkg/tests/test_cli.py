"""Command-line interface: descriptors, reports, exit codes, determinism."""

import json
import subprocess
import sys

import pytest

from paracomplex.cli import main, parse_theta_expr
from paracomplex.patch import KForm, ext_deriv


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def write_desc(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


# -- validate ---------------------------------------------------------------


def test_validate_trivial_ok(tmp_path, capsys):
    path = write_desc(tmp_path, "trivial.json", {"schema": 1, "kind": "trivial"})
    code, out = run_cli(capsys, "validate", path)
    assert code == 0
    report = json.loads(out)
    assert report["ok"] and report["kind"] == "trivial"


def test_validate_bad_product_names_invariant(tmp_path, capsys):
    p_bad = [["2", "0", "0", "0"], ["0", "2", "0", "0"],
             ["0", "0", "2", "0"], ["0", "0", "0", "2"]]
    path = write_desc(tmp_path, "badp.json", {"kind": "product", "P": p_bad})
    code, out = run_cli(capsys, "validate", path)
    assert code == 1
    report = json.loads(out)
    assert not report["ok"]
    assert any("P^2" in entry.get("error", "") for entry in report["points"])


def test_validate_malformed_json_exit_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _ = run_cli(capsys, "validate", str(path))
    assert code == 2


def test_validate_assembled(tmp_path, capsys):
    k_std = [["0", "0", "1", "0"], ["0", "0", "0", "1"],
             ["1", "0", "0", "0"], ["0", "1", "0", "0"]]
    g = [["1", "0", "0", "0"], ["0", "1", "0", "0"],
         ["0", "0", "-1", "0"], ["0", "0", "0", "-1"]]
    path = write_desc(tmp_path, "asm.json", {
        "kind": "assembled", "g": g, "theta": {"1,2": "3"},
        "k1": k_std, "k2": k_std,
    })
    code, out = run_cli(capsys, "validate", path)
    assert code == 0
    report = json.loads(out)
    assert report["ok"]
    assert all(entry["compatible"] for entry in report["points"])


# -- integrability ---------------------------------------------------------------


def test_integrability_symplectic(tmp_path, capsys):
    path = write_desc(tmp_path, "omega.json", {
        "kind": "omega", "omega": {"1,2": "1", "3,4": "1"}})
    code, out = run_cli(capsys, "integrability", path)
    assert code == 0
    report = json.loads(out)
    assert report["integrable"] and report["criterion"] == "d_omega_zero"
    assert all(s["nonzero_frame_pairs"] == 0
               for s in report["nijenhuis_residual_samples"])


def test_integrability_non_poisson_witness(tmp_path, capsys):
    path = write_desc(tmp_path, "pi.json", {
        "kind": "pi", "pi": {"1,2": "1", "3,4": "x1"}})
    code, out = run_cli(capsys, "integrability", path)
    assert code == 1
    report = json.loads(out)
    assert not report["integrable"]
    assert report["witness"]["jacobiator_triple"] == [2, 3, 4]


def test_integrability_trivial(tmp_path, capsys):
    path = write_desc(tmp_path, "triv.json", {"kind": "trivial"})
    code, out = run_cli(capsys, "integrability", path)
    assert code == 0
    assert json.loads(out)["integrable"]


# -- curvature --------------------------------------------------------------------


def test_curvature_flat(capsys):
    code, out = run_cli(capsys, "curvature", "flat", "--point", "0,0,0,0")
    assert code == 0
    report = json.loads(out)
    assert report["s"] == "0"
    assert report["self_dual"] and report["anti_self_dual"]
    assert report["sectional_constant"] == "0"
    assert all(v == "0" for row in report["ricci"] for v in row)


def test_curvature_constcurv(capsys):
    code, out = run_cli(capsys, "curvature", "constcurv:1", "--point", "0,0,0,0")
    assert code == 0
    report = json.loads(out)
    assert report["s"] == "12"
    assert report["sectional_constant"] == "1"
    assert all(v == "0" for row in report["b_part"] for v in row)
    assert all(v == "0" for row in report["w_plus"] for v in row)
    assert all(v == "0" for row in report["w_minus"] for v in row)


def test_curvature_file_metric_nonzero_weyl(tmp_path, capsys):
    payload = {
        "vars": ["x1", "x2", "x3", "x4"],
        "g": [["1", "0", "0", "0"],
              ["0", "(1+x1*x2/2)^2", "0", "0"],
              ["0", "0", "-1", "0"],
              ["0", "0", "0", "-(1+x1/3)^2"]],
        "onb": [["1", "0", "0", "0"],
                ["0", "1/(1+x1*x2/2)", "0", "0"],
                ["0", "0", "1", "0"],
                ["0", "0", "0", "1/(1+x1/3)"]],
    }
    path = write_desc(tmp_path, "metric.json", payload)
    code, out = run_cli(capsys, "curvature", f"file:{path}", "--point", "1,1/2,0,0")
    assert code == 0
    report = json.loads(out)
    assert any(v != "0" for row in report["w_plus"] for v in row)
    assert not report["conformally_flat"]


def test_curvature_ppwave_orientation_swap(capsys):
    code, out = run_cli(capsys, "curvature", "ppwave:x2^2", "--point", "0,0,0,0")
    assert code == 0
    report = json.loads(out)
    assert report["anti_self_dual"] and not report["self_dual"]
    code, out = run_cli(capsys, "curvature", "ppwave:x2^2", "--point", "0,0,0,0",
                        "--orientation", "-")
    report_rev = json.loads(out)
    assert report_rev["self_dual"] and not report_rev["anti_self_dual"]


def test_curvature_pole_exit_2(capsys):
    # constcurv:1 has a pole of the conformal factor where phi = 0
    code, _ = run_cli(capsys, "curvature", "constcurv:-4", "--point", "1,0,0,0")
    assert code == 2


# -- theorem -----------------------------------------------------------------------


def test_theorem_flat_all_ok(capsys):
    code, out = run_cli(capsys, "theorem", "flat", "--component", "++",
                        "--samples", "5")
    assert code == 0
    assert json.loads(out)["integrable"]


def test_theorem_constcurv_verdicts(capsys):
    code, out = run_cli(capsys, "theorem", "constcurv:1", "--component", "+-",
                        "--samples", "5")
    assert code == 0 and json.loads(out)["integrable"]
    code, out = run_cli(capsys, "theorem", "constcurv:1", "--component", "++",
                        "--samples", "5")
    assert code == 1
    report = json.loads(out)
    assert not report["integrable"]
    assert report["evidence"]["ricci_zero"] is False


def test_theorem_theta_obstruction(capsys):
    code, out = run_cli(capsys, "theorem", "flat", "--theta", "x1*dx2^dx3",
                        "--component", "++", "--samples", "4")
    assert code == 1
    report = json.loads(out)
    assert report["evidence"]["d_theta_zero"] is False
    assert "np_residual_witness" in report["evidence"]


def test_theorem_epsilon_never_integrable(capsys):
    code, out = run_cli(capsys, "theorem", "flat", "--component", "++",
                        "--epsilon", "2")
    assert code == 1
    assert json.loads(out)["evidence"]["epsilon_never_integrable"]


def test_theorem_deterministic_bytes(capsys):
    args = ("theorem", "constcurv:1", "--component", "+-", "--samples", "6",
            "--seed", "11")
    code1, out1 = run_cli(capsys, *args)
    code2, out2 = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_theorem_bad_point_exit_2(capsys):
    code, _ = run_cli(capsys, "theorem", "flat", "--component", "++",
                      "--points", "0,0,0")
    assert code == 2


# -- theta grammar -------------------------------------------------------------------


def test_parse_theta_expr_terms():
    theta = parse_theta_expr("3*dx1^dx2 - x1*dx2^dx3 + dx3^dx4")
    assert theta.get((0, 1)).to_str() == "3"
    assert theta.get((1, 2)).to_str() == "-x1"
    assert theta.get((2, 3)).to_str() == "1"


def test_parse_theta_expr_parenthesized_coeff():
    theta = parse_theta_expr("(1+x1)*dx1^dx3")
    assert theta.get((0, 2)).to_str() == "x1 + 1"


def test_parse_theta_expr_leading_minus():
    theta = parse_theta_expr("-dx1^dx2")
    assert theta.get((0, 1)).to_str() == "-1"


def test_validate_accepts_single_point(tmp_path, capsys):
    path = write_desc(tmp_path, "triv2.json", {"kind": "trivial"})
    code, out = run_cli(capsys, "validate", path, "--point", "1,2,3,4")
    assert code == 0
    report = json.loads(out)
    assert len(report["points"]) == 1
    assert report["points"][0]["point"] == ["1", "2", "3", "4"]


def test_theta_expr_matches_module_level_forms():
    theta = parse_theta_expr("x1*dx2^dx3")
    d = ext_deriv(theta)
    assert d.get((0, 1, 2)).to_str() == "1"


# -- text format and console entry -----------------------------------------------------


def test_text_format(capsys):
    code, out = run_cli(capsys, "curvature", "flat", "--format", "text")
    assert code == 0
    assert "s: 0" in out
    assert "self_dual: True" in out


def test_module_invocation_round_trip():
    # the -- component needs the = form so argparse does not eat it
    proc = subprocess.run(
        [sys.executable, "-m", "paracomplex", "theorem", "flat",
         "--component=--", "--samples", "3"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["integrable"]
