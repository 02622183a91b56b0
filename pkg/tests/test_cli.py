import json
from pathlib import Path

import jsonschema
import pytest

from hyperfell import cli
from hyperfell.scene import BUILTIN_TEXT

SCHEMA = json.loads((Path(cli.__file__).parent / "schema" / "report.schema.json").read_text(encoding="utf-8"))


def run(capsys, *argv):
    code = cli.main([*argv, "--no-timestamp"] if argv and argv[0] != "--version" else list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    assert doc["exit_code"] == code and "timestamp" not in doc
    return code, doc


def test_scene_check_builtin_and_file(capsys, tmp_path):
    code, doc = run_json(capsys, "scene", "check", "--builtin", "ex41")
    assert code == cli.EXIT_OK and doc["result"]["round_trip"]
    p = tmp_path / "ex36.txt"
    p.write_text(BUILTIN_TEXT["ex36"], encoding="utf-8")
    code, doc = run_json(capsys, "scene", "check", str(p))
    assert code == cli.EXIT_OK


def test_scene_check_bad_file(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("region a dim 2 {\n  x1 <= 0 and\n  x7 > 0 }\n", encoding="utf-8")
    code, out, err = run(capsys, "scene", "check", str(p))
    assert code >= 3 and "3:3" in err and str(p) in err and out == ""
    code, _, err = run(capsys, "scene", "check", str(tmp_path / "missing.txt"))
    assert code >= 3 and err


@pytest.mark.parametrize("argv", [
    ("meet",),
    ("classify", "--builtin", "ex41"),
    ("classify", "--builtin", "ex41", "--point", "0.5,0.5", "--scene", "x"),
    ("hausdorff", "--builtin", "ex41", "--set-a", "nonsense(", "--set-b", "scene"),
    ("probe", "fell", "--builtin", "ex41", "--point", "0.5"),
    ("repro", "ex99"),
    ("frobnicate",),
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == cli.EXIT_USAGE and err and out == ""


def test_hausdorff_ex42_divergent(capsys):
    code, doc = run_json(capsys, "hausdorff", "--builtin", "ex42", "--resolution", "32",
                         "--set-a", "ideal(-0.75,-0.375,0)", "--set-b", "ideal(-0.5,-0.5,0)",
                         "--windows", "10,20,40")
    assert doc["status"] == "DIVERGENT" and code == cli.EXIT_OK
    code, doc = run_json(capsys, "hausdorff", "--builtin", "ex42", "--resolution", "32",
                         "--set-a", "ideal(-0.75,-0.375,0)", "--set-b", "ideal(-0.5,-0.5,0)",
                         "--windows", "10,20,40", "--expect", "BOUNDED")
    assert code == cli.EXIT_FAIL


def test_meet_and_classify(capsys):
    code, doc = run_json(capsys, "meet", "--builtin", "ex42", "--x", "-0.5,-0.5,0", "--y", "-1,-0.2,-0.1")
    assert code == cli.EXIT_OK
    code, doc = run_json(capsys, "meet", "--builtin", "ex35", "--join", "--x", "-0.5,-0.5,-0.25",
                         "--y", "-0.5,-1,0")
    assert code == cli.EXIT_OK
    code, doc = run_json(capsys, "classify", "--builtin", "ex41", "--point", "0.5,0.5",
                         "--expect", "UPPER_COMPACT_BOUNDED")
    assert code == cli.EXIT_OK and doc["status"] == "UPPER_COMPACT_BOUNDED"
    code, doc = run_json(capsys, "classify", "--builtin", "ex41", "--point", "0.5,0.5", "--expect", "NEITHER")
    assert code == cli.EXIT_FAIL


def test_probe_and_props(capsys):
    code, doc = run_json(capsys, "probe", "vietoris", "--builtin", "ex41", "--point", "0.5,0.5",
                         "--from", "0.5,0.75", "--miss", "curve:ex41_segment(0.5,0.5)", "--hit", "scene")
    assert doc["status"] == "DIVERGES"
    code, doc = run_json(capsys, "probe", "fell", "--builtin", "ex41", "--point", "0.5,0.5")
    assert code == cli.EXIT_OK and doc["status"] == "CONVERGES_AT_RESOLUTION"
    code, doc = run_json(capsys, "props", "proper-inclusion", "--builtin", "open_box:2")
    assert code == cli.EXIT_OK


def test_repro_ex41(capsys):
    code, doc = run_json(capsys, "repro", "ex41", "--format", "json")
    assert code == cli.EXIT_OK
    observed = {c["observed"] for r in doc["result"]["reports"] for c in r["claims"]}
    assert {"DIVERGES", "CONVERGES_AT_RESOLUTION"} <= observed


def test_text_format_and_determinism(capsys):
    argv = ("classify", "--builtin", "ex41", "--point", "0.5,0.5")
    _, text, _ = run(capsys, *argv, "--format", "text")
    assert "UPPER_COMPACT_BOUNDED" in text and not text.lstrip().startswith("{")
    outs = {run(capsys, *argv)[1] for _ in range(2)}
    assert len(outs) == 1


def test_plot_csv(capsys, tmp_path):
    dest = tmp_path / "scene.csv"
    code, _ = run_json(capsys, "scene", "check", "--builtin", "ex41", "--plot-csv", str(dest))
    assert code == cli.EXIT_OK and dest.read_text().startswith("x1,x2\n")
    code, _, err = run(capsys, "scene", "check", "--builtin", "ex41", "--plot-csv", str(tmp_path / "no" / "x.csv"))
    assert code == cli.EXIT_IO and err


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["--version"])
    assert exc.value.code == 0 and "hyperfell" in capsys.readouterr().out
