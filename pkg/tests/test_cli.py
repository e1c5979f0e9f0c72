import json

import pytest

from wfhcalc.cli import main


def _no_floats(text):
    raise AssertionError(f"float in output: {text}")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_wfh_ak_3_2(capsys):
    code, out, _ = run(capsys, "wfh", "ak:n=3,k=2", "--max-action", "20pi", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert {0, 3, 5, 8, 10} <= {int(d) for d in data["wfh"]}
    assert data["slope_per_pi"] == "1/3"


def test_rs_index_example(capsys):
    code, out, _ = run(capsys, "rs-index", "--blocks", "1/3,1/2,1/2,1/2,-1", "--duration", "12pi", "--type", "graph")
    assert code == 0
    assert json.loads(out)["index"] == "10"
    code, out, _ = run(capsys, "rs-index", "--blocks", "1/3,1/2,1/2,1/2,-1", "--duration", "12pi",
                       "--type", "graph", "--format", "ascii")
    assert out == "10\n"


def test_rs_index_numeric_with_seed(capsys):
    code, out, _ = run(capsys, "rs-index", "--blocks", "2/5", "--duration", "5pi", "--numeric", "--seed", "7")
    data = json.loads(out)
    assert data["index"] == data["numeric_index"] == "2"


def test_ss_page_ascii_ak_3_3(capsys):
    code, out, _ = run(capsys, "ss-page", "ak:n=3,k=3", "--max-action", "20pi", "--format", "ascii")
    assert code == 0
    rows = {int(line.split("|")[0]): line.split("|")[1] for line in out.splitlines() if "|" in line}
    marks = {d: [i for i, ch in enumerate(row.split()) if ch == "o"] for d, row in rows.items()}
    assert {d: cols for d, cols in marks.items() if cols} == {0: [0], 4: [1], 6: [1], 10: [2], 12: [2]}


def test_ss_page_svg_deterministic(capsys):
    _, a, _ = run(capsys, "ss-page", "ak:n=3,k=2", "--max-action", "20pi", "--format", "svg")
    _, b, _ = run(capsys, "ss-page", "ak:n=3,k=2", "--max-action", "20pi", "--format", "svg")
    assert a == b
    assert a.lstrip().startswith("<?xml") and "<svg" in a


@pytest.mark.parametrize("argv", [
    ["model", "ak:n=3,k=2"],
    ["model", "cross:base=rp,n=4"],
    ["spectrum", "ak:n=3,k=2"],
    ["spectrum", "--weights", "3,2,2,2"],
    ["index", "ak:n=3,k=2"],
    ["index", "--weights", "3,2,2,2", "--cover", "2"],
    ["ss-page", "cpn-complement:n=3,k=7"],
    ["wfh", "hypersurface-complement:n=3,d=5"],
    ["growth", "homogeneous:n=4,k=5"],
    ["verdict", "cross:base=sphere,n=4"],
])
def test_json_round_trip(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert json.dumps(json.loads(out), sort_keys=True, indent=2) + "\n" == out
    json.loads(out, parse_float=_no_floats)


@pytest.mark.parametrize("argv", [
    ["model", "ak:n=3,k=2"], ["spectrum", "ak:n=3,k=2"], ["index", "ak:n=3,k=2"],
    ["wfh", "ak:n=3,k=2"], ["growth", "ak:n=3,k=2"], ["verdict", "ak:n=3,k=2"], ["ss-page", "ak:n=3,k=2"],
])
def test_ascii_formats(capsys, argv):
    code, out, _ = run(capsys, *argv, "--format", "ascii")
    assert code == 0 and out.strip()


def test_cross_index_refused(capsys):
    code, _, err = run(capsys, "index", "cross:base=rp,n=4")
    assert code == 3
    assert json.loads(err)["code"] == "model-refusal"


def test_invalid_model_refused(capsys):
    code, _, err = run(capsys, "wfh", "ak:n=2,k=1")
    assert code == 3


@pytest.mark.parametrize("argv", [
    ["wfh", "ak:n=3,k=2", "--bogus"],
    ["wfh", "ak:n=3,k=2", "--max-action", "20"],
    ["wfh", "ak:n=3,k=2", "--format", "svg"],
    ["wfh", "nonsense"],
    ["frobnicate"],
    [],
    ["rs-index", "--blocks", "1", "--duration", "2pi", "--type", "diagonal"],
    ["wfh", "ak:n=3,k=2", "--period-convention", "mine"],
    ["spectrum"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert json.loads(err)["code"] in {"usage", "insufficient-data"}


def test_insufficient_growth_data(capsys):
    code, _, err = run(capsys, "growth", "cpn-complement:n=3,k=7", "--max-action", "14pi")
    assert code == 2
    assert json.loads(err)["code"] == "insufficient-data"


def test_period_convention_changes_only_actions(capsys):
    _, a, _ = run(capsys, "ss-page", "ak:n=3,k=2", "--max-action", "60pi")
    _, b, _ = run(capsys, "ss-page", "ak:n=3,k=2", "--max-action", "30pi", "--period-convention", "paper")
    pa, pb = json.loads(a), json.loads(b)
    strip = lambda page: [c["generators"] for c in page["columns"]]  # noqa: E731
    assert strip(pa) == strip(pb)
    assert [c["action_pi"] for c in pa["columns"]] == ["0", "6", "12", "18", "24", "30", "36", "42", "48", "54", "60"]
    assert [c["action_pi"] for c in pb["columns"]] == ["0", "3", "6", "9", "12", "15", "18", "21", "24", "27", "30"]


def test_report_writes_files(capsys, tmp_path):
    code, out, _ = run(capsys, "report", "ak:n=3,k=2", "--max-action", "30pi", "--out", str(tmp_path))
    assert code == 0
    files = json.loads(out)["files"]
    assert set(files) == {"report.json", "page.txt", "page.svg", "page.png", "growth.svg"}
    bundle = json.loads((tmp_path / "report.json").read_text())
    assert bundle["verdict"]["theorem_a"]["applies"] is True
    assert (tmp_path / "page.png").read_bytes()[:4] == b"\x89PNG"


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "wfhcalc", "index", "--weights", "3,2,2,2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["orbit_index"] == "10"
