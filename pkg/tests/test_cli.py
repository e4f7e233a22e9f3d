import json
import subprocess
import sys

import pytest

from samples import INSERTION_SORT, NESTED_IF
from swmetrics.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def measure_json(capsys, *argv):
    code, out, err = run(capsys, "measure", "--format", "json", *argv)
    assert code == 0, err
    return json.loads(out)


def test_measure_nested_if_wrapped_in_function(tmp_path, capsys):
    src = tmp_path / "snippet.c"
    src.write_text("void f(int k, int x)\n{\n" + NESTED_IF + "}\n")
    (row,) = measure_json(capsys, str(src))
    assert row["unit"].endswith("snippet.c:f")
    assert (row["n1"], row["n2"], row["N1"], row["N2"]) == (10, 4, 13, 7)
    assert row["V"] == pytest.approx(76.15, abs=0.01)
    assert row["D"] == 8.75
    assert row["cc_graph"] == row["cc_decisions"] == 3
    assert row["band"] == "simple"


def test_measure_insertion_sort(tmp_path, capsys):
    src = tmp_path / "sort.c"
    src.write_text(INSERTION_SORT)
    (row,) = measure_json(capsys, str(src))
    assert row["cc_graph"] == row["cc_decisions"] == 3
    assert row["ploc"] == 12


def test_measure_empty_file(tmp_path, capsys):
    src = tmp_path / "empty.c"
    src.write_text("")
    (row,) = measure_json(capsys, str(src))
    assert row["ploc"] == 0 and row["V"] is None and row["halstead_note"] == "EmptyProgram"
    assert row["cc_graph"] == 1


def test_file_granularity_sums_functions(tmp_path, capsys):
    src = tmp_path / "two.c"
    src.write_text("int a(int x) { if (x) return 1; return 0; }\nint b(int y) { while (y) y--; return y; }\n")
    (row,) = measure_json(capsys, "--granularity", "file", str(src))
    assert row["cc_graph"] == row["cc_decisions"] == 4


def test_directory_order_and_dump(tmp_path, capsys):
    d = tmp_path / "src"
    d.mkdir()
    for name in ("b.c", "a.c", "c.txt"):
        (d / name).write_text("int g(void) { return 1; }\n")
    rows = measure_json(capsys, "--dump-cfg", str(tmp_path / "cfg"), str(d))
    assert [r["unit"].split("/")[-1] for r in rows] == ["a.c:g", "b.c:g"]
    assert (tmp_path / "cfg" / "a.c.g.cfg.txt").read_text().startswith("# cfg g")


def test_missing_source_exits_one(tmp_path, capsys):
    code, _, err = run(capsys, "measure", str(tmp_path / "missing.c"))
    assert code == 1 and "missing.c" in err


def test_diagnostics_go_to_stderr(tmp_path, capsys):
    src = tmp_path / "bad.c"
    src.write_text('int f(void) { s = "open;\n return 0; }\n')
    code, out, err = run(capsys, "measure", str(src))
    assert code == 0 and "UnterminatedString" in err and "bad.c:f" in out


def test_usage_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["measure", "x.c", "--format", "xml"])
    assert info.value.code == 2


def write_dataset(tmp_path, rows, name="d.csv", header="id,loc,v(g),hv,err"):
    path = tmp_path / name
    path.write_text(header + "\n" + "".join(r + "\n" for r in rows))
    return path


def test_analyze_perfect_line(tmp_path, capsys):
    rows = [f"m{c},{5 * c},{c},{10 * c + c * c},{c % 3}" for c in range(1, 11)]
    mapping = tmp_path / "map.ini"
    mapping.write_text("module_id=id\nloc=loc\ncyclomatic=v(g)\nhalstead_volume=hv\nerror_count=err\n")
    path = write_dataset(tmp_path, rows)
    code, out, _ = run(capsys, "analyze", str(path), "--mapping", str(mapping), "--format", "json",
                       "--pairs", "cc:loc", "--scatter-dir", str(tmp_path / "sc"))
    assert code == 0
    payload = json.loads(out)
    (pair,) = payload["pairs"]
    assert pair["r"] == pytest.approx(1.0, abs=1e-12)
    assert pair["slope"] == pytest.approx(5.0, rel=1e-12)
    assert pair["intercept"] == pytest.approx(0.0, abs=1e-9)
    assert payload["summary"]["module_count"] == 10
    assert (tmp_path / "sc" / "d_cyclomatic_vs_loc.csv").exists()


def test_analyze_auto_mapping_and_quarantine(tmp_path, capsys):
    header = "MODULE_ID,LOC_TOTAL,CYCLOMATIC_COMPLEXITY,HALSTEAD_VOLUME,ERROR_COUNT"
    path = write_dataset(tmp_path, ["a,10,1,20,0", "b,20,2,bad,1", "c,30,4,90,2", "d,15,2,40,0"], header=header)
    qpath = tmp_path / "q.csv"
    code, out, err = run(capsys, "analyze", str(path), "--quarantine-out", str(qpath))
    assert code == 0
    assert "row 3" in err and "Correlations: d" in out
    assert qpath.read_text().splitlines()[1].startswith("3,")


def test_analyze_missing_column_exits_one(tmp_path, capsys):
    header = "MODULE_ID,LOC_TOTAL,CYCLOMATIC_COMPLEXITY,ERROR_COUNT"
    path = write_dataset(tmp_path, ["a,1,1,0"], header=header)
    code, _, err = run(capsys, "analyze", str(path))
    assert code == 1 and "HALSTEAD_VOLUME" in err


def test_analyze_unknown_pair_field_is_usage_error(tmp_path, capsys):
    path = write_dataset(tmp_path, ["a,1,1,1,0", "b,2,2,2,1"])
    with pytest.raises(SystemExit) as info:
        main(["analyze", str(path), "--pairs", "cc:size"])
    assert info.value.code == 2


def test_summarize_two_module_values(tmp_path, capsys):
    path = write_dataset(tmp_path, ["a,10,2,50,1", "b,30,4,150,2"],
                         header="module_id,loc_total,cyclomatic_complexity,halstead_volume,error_count")
    code, out, _ = run(capsys, "summarize", str(path), "--format", "json")
    assert code == 0
    (s,) = json.loads(out)
    assert (s["module_count"], s["total_loc"], s["total_errors"]) == (2, 40, 3)
    assert (s["avg_errors"], s["avg_halstead_volume"], s["avg_cyclomatic"]) == (1.5, 100.0, 3.0)


def test_summarize_partial_and_total_failure(tmp_path, capsys):
    good = write_dataset(tmp_path, ["a,10,2,50,1"],
                         header="module_id,loc_total,cyclomatic_complexity,halstead_volume,error_count")
    code, out, err = run(capsys, "summarize", str(good), str(tmp_path / "none.csv"))
    assert code == 1 and "# of Modules" in out and "none.csv" in err
    code, _, err = run(capsys, "summarize", str(tmp_path / "none.csv"))
    assert code == 1 and "no dataset" in err


def test_console_module_runs():
    result = subprocess.run([sys.executable, "-m", "swmetrics", "--help"], capture_output=True, text=True)
    assert result.returncode == 0 and "measure" in result.stdout
