import json
import subprocess
import sys
from pathlib import Path

import pytest

from matroid_partition import brute
from matroid_partition.cli import main
from matroid_partition.serialization import ParseError, loads, parse_instance

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def data(name):
    return DATA / name


# -- check / partition -------------------------------------------------------------


def test_check_k4(capsys):
    code, out, _ = run(capsys, "check", data("k4_double.json"))
    body = json.loads(out)
    assert code == 0
    assert body["covering"]["exists"] and body["packing"]["exists"]


def test_check_u13(capsys):
    code, out, _ = run(capsys, "check", data("u13_double.json"))
    body = json.loads(out)
    assert code == 0
    assert body["covering"] == {
        "exists": False,
        "certificate": {"kind": "uncoverable", "X": ["a", "b"], "element": "c"},
    }
    # ({c}, {a, b}) is a packing: both parts are non-empty, hence spanning in U_{1,3}
    assert body["packing"]["exists"] is True
    assert body["packing"]["assignment"]["parts"] == [["c"], ["a", "b"]]


def test_check_empty(capsys):
    code, out, _ = run(capsys, "check", data("empty.json"))
    assert code == 0
    assert json.loads(out) == {
        "covering": {"exists": True, "assignment": {"mode": "covering", "parts": []}},
        "packing": {"exists": True, "assignment": {"mode": "packing", "parts": []}},
    }


def test_check_no_members_nonempty_ground(tmp_path, capsys):
    path = tmp_path / "lonely.json"
    path.write_text('{"elements": ["a"], "matroids": []}')
    code, out, _ = run(capsys, "check", path)
    body = json.loads(out)
    assert code == 0
    assert body["covering"]["exists"] is False and body["packing"]["exists"] is True


def test_partition_k4_golden(capsys):
    code, out, _ = run(capsys, "partition", data("k4_double.json"))
    assert code == 0
    assert out == '{"mode": "partitioning", "parts": [["12", "14", "34"], ["13", "23", "24"]]}\n'


def test_partition_u13_certificate(capsys):
    code, out, _ = run(capsys, "partition", data("u13_double.json"))
    assert code == 1
    assert out == '{"X": ["a", "b"], "element": "c", "kind": "uncoverable"}\n'


def test_partition_reduced_certificate(capsys):
    code, out, _ = run(capsys, "partition", data("u13_double.json"), "--use-reduction")
    body = json.loads(out)
    assert code == 1 and body["reduced"] is True and body["kind"] == "uncoverable"


def test_partition_matching(capsys):
    code, out, _ = run(capsys, "partition", data("k22_matching.json"))
    parts = json.loads(out)["parts"]
    assert code == 0 and parts[0] in (["e1", "e4"], ["e2", "e3"])


@pytest.mark.parametrize("name", ["k4_double.json", "k22_matching.json", "u12_double.json"])
def test_partition_with_reduction_verifies(name, capsys, tmp_path):
    code, out, _ = run(capsys, "partition", data(name), "--use-reduction")
    assert code == 0
    path = tmp_path / "a.json"
    path.write_text(out)
    code, out, _ = run(capsys, "verify", data(name), "--assignment", path)
    assert code == 0 and json.loads(out)["valid"]


def test_unpackable_certificate(tmp_path, capsys):
    path = tmp_path / "ff.json"
    path.write_text('{"elements": ["a"], "matroids": [{"type": "free"}, {"type": "free"}]}')
    code, out, _ = run(capsys, "partition", path)
    body = json.loads(out)
    assert code == 1 and body["kind"] == "unpackable" and body["route"] == "dual"


# -- tight / verify / reduce3 ------------------------------------------------------


def test_tight_largest(capsys):
    assert run(capsys, "tight", data("u12_double.json"), "--largest")[1] == '{"largest_tight": ["a", "b"]}\n'
    assert run(capsys, "tight", data("u12_free.json"), "--largest")[1] == '{"largest_tight": []}\n'


def test_tight_subset(capsys):
    assert run(capsys, "tight", data("u12_double.json"), "--subset", "")[1] == '{"tight": true}\n'
    assert run(capsys, "tight", data("u12_free.json"), "--subset", "a,b")[1] == '{"tight": false}\n'
    code, _, err = run(capsys, "tight", data("u12_free.json"), "--subset", "a,z")
    assert code == 2 and "z" in err


def test_tight_largest_uncoverable_is_precondition_error(capsys):
    code, _, err = run(capsys, "tight", data("u13_double.json"), "--largest")
    assert code == 2 and "coverable" in err


def test_verify_valid_and_invalid(tmp_path, capsys):
    code, out, _ = run(capsys, "verify", data("k4_double.json"), "--assignment", data("k4_trees.json"))
    assert code == 0 and json.loads(out) == {"mode": "partitioning", "valid": True, "violations": []}
    bad = tmp_path / "bad.json"
    bad.write_text('{"parts": [["12"], ["13"]]}')
    code, out, _ = run(capsys, "verify", data("k4_double.json"), "--assignment", bad, "--mode", "packing")
    body = json.loads(out)
    assert code == 1 and body["mode"] == "packing" and len(body["violations"]) == 2


def test_reduce3_output_parses_back(capsys):
    code, out, _ = run(capsys, "reduce3", data("u12_double.json"))
    assert code == 0
    reduced = parse_instance(loads(out))
    assert len(reduced) == 3 and len(reduced.ground) == 4
    assert [r.value for r in reduced.roles] == ["finitary", "cofinitary", "cofinitary"]
    assert brute.has_partitioning(reduced)


# -- input errors ------------------------------------------------------------------


@pytest.mark.parametrize(
    "text, fragment",
    [
        ('{"elements": ["a"], "matroids": [', ":1:"),
        ('{"elements": ["a"]}', "matroids"),
        ('{"elements": ["a"], "matroids": [{"type": "mystery"}]}', "mystery"),
        ('{"elements": ["a", "a"], "matroids": []}', "a"),
        ('{"elements": ["a"], "matroids": [{"type": "uniform"}]}', "rank"),
        ('{"elements": ["a"], "matroids": [{"type": "free", "role": "sideways"}]}', "role"),
    ],
)
def test_parse_errors_exit_2(tmp_path, capsys, text, fragment):
    path = tmp_path / "bad.json"
    path.write_text(text)
    code, out, err = run(capsys, "check", path)
    assert code == 2 and out == "" and fragment in err


def test_missing_file_exit_2(capsys):
    code, _, err = run(capsys, "check", "/nonexistent/instance.json")
    assert code == 2 and "instance.json" in err


def test_parse_error_names_field():
    with pytest.raises(ParseError) as info:
        parse_instance({"elements": ["a"], "matroids": [{"type": "uniform"}]})
    assert "matroids[0]" in info.value.where


# -- selftest / determinism --------------------------------------------------------


def test_selftest_vacuous(capsys):
    code, out, _ = run(capsys, "selftest", "--max-elements", "0", "--trials", "20")
    body = json.loads(out)
    assert code == 0 and body["ok"] and body["failures"] == []
    assert body["seed"] == 0 and body["max_elements"] == 0


def test_selftest_small_run_passes(capsys):
    code, out, _ = run(capsys, "selftest", "--max-elements", "5", "--trials", "40", "--seed", "3")
    body = json.loads(out)
    assert code == 0 and body["ok"] and body["seed"] == 3
    assert body["checks"]["partition-oracle"]["run"] == 40


@pytest.mark.parametrize("fault, check", [("covering", "covering-oracle"), ("tight", "tight-agreement")])
def test_selftest_fault_injection(capsys, fault, check):
    code, out, err = run(capsys, "selftest", "--max-elements", "5", "--trials", "30",
                         "--inject-fault", fault)
    body = json.loads(out)
    assert code == 3 and not body["ok"]
    assert body["checks"][check]["failed"] > 0
    assert f"[{check}]" in err


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "matroid_partition", *map(str, argv)],
                          capture_output=True, check=False)


def test_byte_identical_runs():
    for argv in (("partition", data("k4_double.json")),
                 ("partition", data("k22_matching.json"), "--use-reduction"),
                 ("selftest", "--max-elements", "6", "--trials", "30", "--seed", "11")):
        a, b = _cli(*argv), _cli(*argv)
        assert a.returncode == b.returncode == 0
        assert a.stdout == b.stdout and a.stdout
