import json
import math

import pytest

from heightlab.cli import load_scenario, main, run_command
from heightlab.errors import ReduciblePolynomial, SchemaError
from heightlab.scenario import parse_scenario

DEMO = {
    "v": 1,
    "name": "demo",
    "field": [-2, 0, 1],
    "subfields": {"Q": []},
    "elements": {"a": "1+t", "b": "t"},
}


# -- parse_scenario --------------------------------------------------------


def test_parse_demo_scenario():
    sc = parse_scenario(DEMO)
    assert sc.field.degree == 2
    assert sc.elements["a"] == sc.field.element([1, 1])


def test_parse_from_json_text():
    sc = parse_scenario(json.dumps(DEMO))
    assert sc.name == "demo"


def test_zeta3_field_reports_torsion_six():
    sc = parse_scenario({"v": 1, "field": [1, 1, 1]})
    assert sc.field.torsion_order == 6


def test_reducible_field_rejected():
    with pytest.raises(ReduciblePolynomial):
        parse_scenario({"v": 1, "field": [-4, 0, 1]})


def test_schema_errors():
    with pytest.raises(SchemaError):
        parse_scenario({"field": [-2, 0, 1]})  # missing v
    with pytest.raises(SchemaError):
        parse_scenario({"v": 2, "field": [-2, 0, 1]})
    with pytest.raises(SchemaError):
        parse_scenario({"v": 1, "field": [-2, 0, 1], "bogus": 1})
    with pytest.raises(SchemaError):
        parse_scenario({"v": 1})
    with pytest.raises(SchemaError):
        parse_scenario({"v": 1, "field": "x^2-2"})
    with pytest.raises(SchemaError):
        parse_scenario("not json {{")


# -- run_command -------------------------------------------------------------


@pytest.fixture(scope="module")
def demo():
    return parse_scenario(DEMO)


def test_height_command(demo):
    report = run_command("height", demo, {"element": "a"})
    value = float(report["value"])
    assert abs(value - 0.5 * math.log(1 + math.sqrt(2))) < 1e-12
    assert "abs_error" in report


def test_torsion_command(demo):
    assert run_command("torsion", demo, {"element": "-1"})["is_torsion"] is True
    assert run_command("torsion", demo, {"element": "b"})["is_torsion"] is False


def test_orbit_and_delta_commands(demo):
    rep = run_command("orbit", demo, {"element": "a", "K": "Q"})
    assert rep["delta"] == 2 and rep["conjugate_count"] == 2
    assert run_command("delta", demo, {"element": "b", "K": "Q"})["delta"] == 1


def test_vk_bounds_command(demo):
    rep = run_command("vk-bounds", demo, {"element": "a", "K": "Q"})
    lo = float(rep["lower"]["value"])
    hi = float(rep["upper"]["value"])
    assert abs(lo - 0.4406867935097715) < 1e-9
    assert abs(hi - 0.4406867935097715) < 1e-9
    assert rep["in_kdiv"] is False
    rep2 = run_command("vk-bounds", demo, {"element": "b", "K": "Q"})
    assert rep2["in_kdiv"] is True
    assert rep2["kdiv_witness"]["exponent"] == 2


def test_places_command(demo):
    rep = run_command("places", demo, {})
    assert rep["degree"] == 2
    assert len(rep["archimedean"]) == 2
    assert all(e["kind"] == "real" for e in rep["archimedean"])


def test_fvector_command(demo):
    rep = run_command("fvector", demo, {"element": "b", "scale": "1"})
    assert len(rep["arch"]) == 2 and len(rep["finite"]) == 1
    assert rep["finite"][0]["p"] == 2
    assert abs(float(rep["l1_norm"]) - math.log(2)) < 1e-12
    assert abs(float(rep["integral"])) < 1e-12


def test_member_command_on_biquadratic():
    sc = load_scenario("sqrt2_sqrt3")
    rep = run_command("member", sc, {"element": "sqrt6", "D": "K1,K2"})
    assert rep["is_member"] is True
    assert rep["witness"]["exponent"] >= 1
    rep2 = run_command("member", sc, {"element": "s2s3", "D": "K1,K2"})
    assert rep2["is_member"] is False and rep2["witness"] is None


def test_decompose_command():
    sc = load_scenario("sqrt2_sqrt3")
    rep = run_command("decompose", sc, {"element": "u13", "D": "K1", "E": "K2"})
    assert set(rep) >= {"d_part", "e_part", "is_member", "condition_ok"}


def test_commutes_command():
    sc = load_scenario("sqrt2_sqrt3")
    rep = run_command("commutes", sc,
                      {"field_list": "K1,K2,K3", "count": 5})
    assert len(rep["pairs"]) == 3
    assert all(p["commutes"] and p["galois_condition"] for p in rep["pairs"])


def test_inline_expression_element(demo):
    rep = run_command("height", demo, {"element": "2"})
    assert abs(float(rep["value"]) - math.log(2)) < 1e-12


def test_verify_single_suite():
    sc = load_scenario("zeta3")
    rep = run_command("verify", sc, {"suite": "product-formula"})
    assert rep["passed"] is True
    assert rep["suites"][0]["criterion"] == 2


# -- main() exit codes ----------------------------------------------------------


def run_main(tmp_path, capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_main_success(tmp_path, capsys):
    path = tmp_path / "demo.json"
    path.write_text(json.dumps(DEMO))
    code, out = run_main(tmp_path, capsys, "height", "--scenario", str(path),
                         "--element", "a", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["command"] == "height"


def test_main_math_refusal(tmp_path, capsys):
    bad = {"v": 1, "field": [-2, 0, 0, 1]}  # x^3-2: not Galois
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, out = run_main(tmp_path, capsys, "height", "--scenario", str(path),
                         "--element", "t")
    assert code == 1
    assert json.loads(out)["error"]["kind"] == "NotGalois"


def test_main_reducible_refusal(tmp_path, capsys):
    path = tmp_path / "red.json"
    path.write_text(json.dumps({"v": 1, "field": [-4, 0, 1]}))
    code, out = run_main(tmp_path, capsys, "places", "--scenario", str(path))
    assert code == 1
    assert json.loads(out)["error"]["kind"] == "ReduciblePolynomial"


def test_main_usage_errors(tmp_path, capsys):
    # parse error in an expression
    path = tmp_path / "demo.json"
    path.write_text(json.dumps(DEMO))
    code, out = run_main(tmp_path, capsys, "height", "--scenario", str(path),
                         "--element", "1+")
    assert code == 2
    # missing scenario
    code, _ = run_main(tmp_path, capsys, "height", "--element", "2")
    assert code == 2
    # unknown subfield
    code, out = run_main(tmp_path, capsys, "delta", "--scenario", str(path),
                         "--element", "a", "--K", "nope")
    assert code == 2


def test_main_bad_scale_is_usage_error(tmp_path, capsys):
    path = tmp_path / "demo.json"
    path.write_text(json.dumps(DEMO))
    for bad in ("abc", "1/0"):
        code, out = run_main(tmp_path, capsys, "fvector", "--scenario",
                             str(path), "--element", "a", "--scale", bad)
        assert code == 2
        assert json.loads(out)["error"]["kind"] == "SchemaError"


def test_main_zero_element_refused(tmp_path, capsys):
    path = tmp_path / "demo.json"
    path.write_text(json.dumps(DEMO))
    code, out = run_main(tmp_path, capsys, "height", "--scenario", str(path),
                         "--element", "t-t")
    assert code == 1
    assert json.loads(out)["error"]["kind"] == "ZeroElement"


def test_determinism(tmp_path, capsys):
    path = tmp_path / "demo.json"
    path.write_text(json.dumps(DEMO))
    argv = ["fvector", "--scenario", str(path), "--element", "a", "--json"]
    code1, out1 = run_main(tmp_path, capsys, *argv)
    code2, out2 = run_main(tmp_path, capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2


def test_determinism_across_processes(tmp_path):
    import subprocess
    import sys
    path = tmp_path / "demo.json"
    path.write_text(json.dumps(DEMO))
    cmd = [sys.executable, "-m", "heightlab.cli", "orbit",
           "--scenario", str(path), "--element", "a", "--K", "Q", "--json"]
    runs = [subprocess.run(cmd, capture_output=True, text=True) for _ in range(2)]
    assert all(r.returncode == 0 for r in runs)
    assert runs[0].stdout == runs[1].stdout
    assert json.loads(runs[0].stdout)["delta"] == 2


def test_bundled_scenario_lookup():
    sc = load_scenario("sqrt2")
    assert sc.name == "sqrt2"
    with pytest.raises(SchemaError):
        load_scenario("no_such_scenario")


def test_main_strict_condition_refusal(capsys):
    # the two cube-root fields violate the pairwise Galois condition; the
    # strict mode turns the warning into a refusal
    code = main(["member", "--scenario", "cbrt2_split", "--element", "cbrt2",
                 "--D", "K1,K2", "--strict-condition"])
    out = capsys.readouterr().out
    assert code == 1
    assert json.loads(out)["error"]["kind"] == "ConditionViolated"
    # without strict mode the same run succeeds with a warning flag
    code = main(["member", "--scenario", "cbrt2_split", "--element", "cbrt2",
                 "--D", "K1,K2"])
    out = capsys.readouterr().out
    assert code == 0
    assert json.loads(out)["condition_ok"] is False


def test_main_index_divisor_refusal(tmp_path, capsys):
    # the classic sqrt2+sqrt3 generator has power-basis index 8: place data
    # at p = 2 is refused with exit code 1
    doc = {"v": 1, "field": [1, 0, -10, 0, 1],
           "elements": {"a": "(t^3-9*t)/2"}}
    path = tmp_path / "classic.json"
    path.write_text(json.dumps(doc))
    code, out = run_main(tmp_path, capsys, "fvector", "--scenario", str(path),
                         "--element", "a")
    assert code == 1
    assert json.loads(out)["error"]["kind"] == "IndexDivisor"


def test_precision_env_override(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("HEIGHTLAB_PRECISION", "128")
    path = tmp_path / "demo.json"
    path.write_text(json.dumps(DEMO))
    code, out = run_main(tmp_path, capsys, "height", "--scenario", str(path),
                         "--element", "a", "--json")
    assert code == 0
    report = json.loads(out)
    assert abs(float(report["value"]) - 0.4406867935097715) < 1e-12
