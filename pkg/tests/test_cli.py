import json

import pytest

from hdual.cli import main

F7 = ["--field", "3", "--vars", "3", "--gens", "x0^7 + x1^7 + x2^7"]
DUAL28 = ("y0^28 + 2*y0^21*y1^7 + 2*y0^21*y2^7 + 2*y0^14*y1^7*y2^7 + 2*y0^7*y1^21"
          " + 2*y0^7*y1^14*y2^7 + 2*y0^7*y1^7*y2^14 + 2*y0^7*y2^21 + y1^28"
          " + 2*y1^21*y2^7 + 2*y1^7*y2^21 + y2^28")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out) if out else None


def test_derive_level(capsys):
    code, out, _ = run(capsys, "derive", "--field", "3", "--vars", "1", "--gens", "x0^7", "--level", "1")
    assert code == 0 and out.strip() == "2*x0^4"
    code, out, _ = run(capsys, "derive", "--field", "3", "--vars", "1", "--gens", "x0^7")
    assert out.strip() == "x0^6"


def test_gb_listing(capsys):
    code, out, _ = run(capsys, "gb", "--field", "3", "--vars", "x,y,z", "--gens", "x - y; x^2 - z")
    assert code == 0
    assert "Basis:" in out and "x + 2*y" in out and "y^2 + 2*z" in out


def test_eliminate_member_equal(capsys):
    common = ["--field", "3", "--vars", "x,y,z", "--gens", "x - y\nx^2 - z"]
    code, doc = run_json(capsys, "eliminate", *common, "--keep", "y,z")
    assert doc["basis"] == ["y^2 + 2*z"]
    assert run(capsys, "member", *common, "--poly", "y^2 - z")[0] == 0
    assert run(capsys, "member", *common, "--poly", "y")[0] == 1
    assert run(capsys, "equal", *common, "--other", "y^2 - z; x - y")[0] == 0
    assert run(capsys, "equal", *common, "--other", "x - y")[0] == 1


def test_dual_and_conormal(capsys):
    code, doc = run_json(capsys, "dual", *F7, "--h", "1", "--levels", "0,1")
    assert code == 0 and doc["basis"] == [DUAL28.replace("y0", "y0_1").replace("y1", "y1_1")
                                          .replace("y2", "y2_1")]
    code, doc = run_json(capsys, "conormal", *F7, "--levels", "0,1")
    assert "x0^4 + y0_1" in doc["generators"]


def test_reflexive_exit_codes(capsys):
    code, doc = run_json(capsys, "reflexive", *F7, "--h", "1", "--h2", "0")
    assert code == 0 and doc["verdict"] == "equal"
    assert "timings" not in doc
    code, doc = run_json(capsys, "bidual", *F7, "--h", "0", "--h2", "0")
    assert code == 1 and doc["verdict"] == "not-equal"


def test_output_is_deterministic(capsys):
    args = ["reflexive", *F7, "--h", "1", "--format", "json"]
    first = run(capsys, *args)[1]
    second = run(capsys, *args)[1]
    assert first == second


def test_parse_error_reports_position(capsys):
    code, out, err = run(capsys, "gb", "--vars", "2", "--gens", "x0 + x1\nx0 * * x1")
    assert code == 2 and out == ""
    assert "line 2" in err and "column" in err


def test_missing_input_and_bad_field(capsys):
    assert run(capsys, "gb", "--vars", "2")[0] == 2
    assert run(capsys, "gb", "--field", "9", "--vars", "2", "--gens", "x0")[0] == 2


def test_budget_writes_partial(capsys, tmp_path):
    side = tmp_path / "partial.json"
    code, _, err = run(capsys, "gb", "--vars", "4", "--budget", "2", "--partial", str(side),
                       "--gens", "x0^3 + x1*x2 + 2*x3; x1^3 + x0*x3 + x2; x2^3 + x0*x1*x3 + 1")
    assert code == 2 and "partial" in err
    assert json.loads(side.read_text())["partial"]


def test_gens_from_file(capsys, tmp_path):
    path = tmp_path / "ideal.txt"
    path.write_text("# Hermitian curve\nx0^4 + x1^4 + x2^4\n")
    code, doc = run_json(capsys, "dual", "--vars", "3", "--gens", str(path), "--h", "1")
    assert doc["basis"] == ["y0^4 + y1^4 + y2^4"]


def test_small_verbs(capsys):
    assert run(capsys, "suggest-h", *F7)[1].strip() == "1"
    code, doc = run_json(capsys, "h-homog", *F7, "--h", "1")
    assert doc["results"][0]["h_degree"] == 2
    code, out, _ = run(capsys, "omega-eval", "--field", "3", "--h", "1", "--v", "0,1,1,0", "--w", "1,0,0,1")
    assert out.strip() == "0"
    code, out, _ = run(capsys, "omega-eval", "--field", "3", "--h", "1", "--v", "1,0", "--w", "0,1")
    assert out.strip() == "1"
    code, out, _ = run(capsys, "lagrangian-check", "--vars", "3", "--gens", "x0^4 + x1^4 + x2^4", "--h", "1")
    assert code == 0 and "lagrangian: true" in out


def test_timings_opt_in(capsys):
    code, doc = run_json(capsys, "dual", "--vars", "3", "--gens", "x0^4+x1^4+x2^4", "--h", "1", "--timings")
    assert "dual" in doc["timings"]


def test_preset_appendix(capsys):
    code, doc = run_json(capsys, "preset", "appendix-fermat7")
    assert code == 0
    assert doc["verdict"] == "equal"
    assert doc["second_dual"] == ["y0^7 + y1^7 + y2^7"]
    assert len(doc["dual"]) == 1 and doc["dual"][0].startswith("y0_1^28 + 2*y0_1^21*y1_1^7")


def test_preset_fermat5(capsys):
    code, doc = run_json(capsys, "preset", "fermat5-char101")
    assert doc["verdict"] == "equal"
    assert doc["dual"][0].startswith("y0^20 + 97*y0^15*y1^5 + 97*y0^15*y2^5 + 6*y0^10*y1^10"
                                     " + 78*y0^10*y1^5*y2^5")


def test_presets_keep_order_in_parallel(capsys):
    code, doc = run_json(capsys, "preset", "hermitian(3,1,2)", "fermat-2p1(3,2)",
                         "quadratic([[1,1],[0,1]],3)", "--jobs", "3")
    res = doc["results"]
    assert [r["preset"] for r in res] == ["hermitian", "fermat-2p1", "quadratic"]
    assert res[0]["dual"] == ["y0^4 + y1^4 + y2^4"] and res[0]["agree"]
    assert res[1]["dual"] == [DUAL28]
    assert res[2]["agree"]


def test_unknown_preset(capsys):
    code, _, err = run(capsys, "preset", "nope")
    assert code == 2 and "unknown preset" in err


def test_help_exits_cleanly():
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0
