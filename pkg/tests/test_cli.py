import io
import json
import re
import subprocess
import sys

import pytest

from goldens import FINITE_RANK2, REFERENCE_RUNS
from scatterlab.cli import main


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows_equal(out_rows, want_rows):
    from fractions import Fraction

    def norm(r):
        c = r[-1]
        c = Fraction(c[0], c[1]) if isinstance(c, list) else Fraction(str(c))
        return (tuple(r[:-1]), c)

    return [norm(r) for r in out_rows] == [norm(r) for r in want_rows]


class TestOrder:
    @pytest.mark.parametrize("name", sorted(FINITE_RANK2))
    def test_finite(self, capsys, name):
        src, want = FINITE_RANK2[name]
        code, out, _ = run(capsys, "order", "--degree", "6", "--product", json.dumps(src))
        assert code == 0 and rows_equal(json.loads(out), want)

    def test_reference_run_with_fraction_strings(self, capsys):
        L, src, want = REFERENCE_RUNS[1]
        code, out, _ = run(capsys, "order", "--degree", str(L), "--product", json.dumps(src))
        assert code == 0 and rows_equal(json.loads(out), want)

    def test_random_pairs_same_result(self, capsys, monkeypatch):
        L, src, want = REFERENCE_RUNS[0]
        monkeypatch.setenv("SCATTERLAB_SEED", "11")
        code, out, _ = run(capsys, "order", "--random-pairs", "--degree", str(L), "--product", json.dumps(src))
        assert code == 0 and rows_equal(json.loads(out), want)

    def test_output_file(self, capsys, tmp_path):
        p = tmp_path / "o.json"
        assert main(["order", "--degree", "3", "--product", "[[0,1,1],[1,0,1]]", "-o", str(p)]) == 0
        assert json.loads(p.read_text()) == [[1, 0, 1], [1, 1, 1], [0, 1, 1]]

    @pytest.mark.parametrize(
        "argv",
        [
            ["order", "--degree", "3", "--product", "not json"],
            ["order", "--degree", "0", "--product", "[[0,1,1]]"],
            ["order", "--degree", "3", "--product", "[[2,2,\"1/4\"]]"],
            ["order", "--degree", "3"],
            ["build", "--type", "nope", "--degree", "2"],
            ["build", "--type", "A2", "--degree", "0"],
            ["badlands", "1", "2"],
            ["frobnicate"],
        ],
    )
    def test_usage_errors(self, capsys, argv):
        code, _, _ = run(capsys, *argv)
        assert code == 2


class TestBuildVerify:
    def test_round_trip_through_stdin(self, capsys, monkeypatch):
        code, out, _ = run(capsys, "build", "--type", "B2", "--degree", "4")
        assert code == 0
        D = json.loads(out)
        assert D["format"] == 1 and len(D["walls"]) == 4
        code, out, _ = run(capsys, "verify", stdin=out, monkeypatch=monkeypatch)
        res = json.loads(out)
        assert code == 0 and res["consistent"] and res["admissible"]

    def test_custom_seed(self, capsys):
        code, out, _ = run(capsys, "build", "--B", "[[0,-1],[1,0]]", "--delta", "[1,1]", "--degree", "2")
        assert code == 0 and len(json.loads(out)["walls"]) == 3

    def test_corrupted_diagram_fails(self, capsys, tmp_path):
        code, out, _ = run(capsys, "build", "--type", "A2", "--degree", "3")
        D = json.loads(out)
        for w in D["walls"]:
            if w["normal"] == [1, 1]:
                w["s"] = [2, 1]
        p = tmp_path / "bad.json"
        p.write_text(json.dumps(D))
        code, out, _ = run(capsys, "verify", "consistency", "--diagram", str(p))
        res = json.loads(out)
        assert code == 1 and not res["consistent"] and res["failures"]

    @pytest.mark.parametrize("suite", ["pentagon", "oracle", "bracket"])
    def test_suites(self, capsys, suite):
        code, out, _ = run(capsys, "verify", suite, "--count", "10", "--degree", "4")
        res = json.loads(out)
        assert code == 0 and res["ok"] and res["count"] == 10

    def test_parallel_verify(self, capsys, tmp_path):
        p = tmp_path / "a3.json"
        assert main(["build", "--type", "A3", "--degree", "3", "-o", str(p)]) == 0
        code, out, _ = run(capsys, "--jobs", "2", "verify", "--diagram", str(p))
        assert code == 0 and json.loads(out)["joints"] > 0


class TestOtherCommands:
    def test_mutate_verify(self, capsys, tmp_path):
        p = tmp_path / "g2.json"
        main(["build", "--type", "G2", "--degree", "8", "-o", str(p)])
        capsys.readouterr()
        code, out, _ = run(capsys, "mutate", "--diagram", str(p), "--direction", "1", "--verify")
        res = json.loads(out)
        assert code == 0 and res["verified"] and res["seed"]["word"] == [1]

    def test_mutate_bad_direction(self, capsys, tmp_path):
        p = tmp_path / "a2.json"
        main(["build", "--type", "A2", "--degree", "2", "-o", str(p)])
        code, _, _ = run(capsys, "mutate", "--diagram", str(p), "--direction", "3")
        assert code == 2

    def test_theta(self, capsys):
        code, out, _ = run(capsys, "theta", "--type", "A2", "--m0", "[-1,0]", "--Q", "[\"3/7\",\"5/11\"]", "--degree", "4")
        res = json.loads(out)
        assert code == 0
        assert [t["shift"] for t in res["terms"]] == [[0, 0], [1, 0]]

    def test_theta_wrong_length(self, capsys):
        code, _, _ = run(capsys, "theta", "--type", "A2", "--m0", "[-1,0,0]", "--Q", "[1,1]", "--degree", "3")
        assert code == 2

    def test_gfan(self, capsys):
        code, out, _ = run(capsys, "gfan", "--type", "A3", "--depth", "8")
        assert code == 0 and len(json.loads(out)["cones"]) == 14

    @pytest.mark.parametrize("d", [(1, 5), (1, 6), (2, 3), (2, 4), (3, 3)])
    def test_badlands(self, capsys, d):
        code, out, _ = run(capsys, "badlands", str(d[0]), str(d[1]))
        res = json.loads(out)
        assert code == 0 and res["ok"] and res["inside"] and not res["missing"]


class TestRender:
    def test_a3_picture(self, capsys):
        code, out, _ = run(capsys, "render", "--type", "A3", "--degree", "3")
        assert code == 0 and "<svg" in out and out.rstrip().endswith("</svg>")
        assert len(re.findall(r"<text", out)) == 6

    def test_deterministic(self, capsys):
        _, a, _ = run(capsys, "render", "--type", "A3", "--degree", "3", "--gfan-depth", "4")
        _, b, _ = run(capsys, "render", "--type", "A3", "--degree", "3", "--gfan-depth", "4")
        assert a == b

    def test_unreachable_walls_thick(self, capsys):
        _, out, _ = run(capsys, "render", "--type", "A2(1)", "--degree", "3", "--gfan-depth", "2")
        assert re.search(r'stroke-width="3(\.0)?"', out)


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "scatterlab.cli", "order", "--degree", "2", "--product", "[[0,1,1],[1,0,1]]"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout) == [[1, 0, 1], [1, 1, 1], [0, 1, 1]]
