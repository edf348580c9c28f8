import json
import subprocess
import sys

import pytest

from rrgmoves.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def tsv_rows(text):
    return [line.split("\t") for line in text.splitlines()[1:]]


class TestCount:
    def test_difference_totals(self, capsys):
        code, out = run(capsys, "--jobs", "1", "count", "--side", "difference", "--k", "3", "--a", "2", "--max-n", "9")
        assert code == 0
        assert out.splitlines()[0] == "n\tcount"
        assert "9\t10" in out.splitlines()

    def test_modulus_totals(self, capsys):
        _, out = run(capsys, "count", "--side", "modulus", "--k", "2", "--a", "1", "--max-n", "9")
        assert out.splitlines()[-1] == "9\t3"

    def test_zero(self, capsys):
        _, out = run(capsys, "count", "--side", "difference", "--k", "3", "--a", "3", "--max-n", "0")
        assert out.splitlines() == ["n\tcount", "0\t1"]

    def test_by_parts(self, capsys):
        _, out = run(capsys, "count", "--side", "difference", "--k", "3", "--a", "2", "--max-n", "9", "--by-parts")
        rows = tsv_rows(out)
        assert sum(int(c) for n, m, c in rows if n == "9") == 10

    def test_bad_flags(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["count", "--side", "difference", "--k", "3", "--a", "4", "--max-n", "5"])
        assert info.value.code == 2


class TestSeries:
    def test_t2_marginal(self, capsys):
        _, out = run(capsys, "series", "--which", "t2", "--qmax", "9", "--xmax", "9")
        assert sum(int(c) for x, q, c in tsv_rows(out) if q == "9") == 10

    def test_product_constant(self, capsys):
        _, out = run(capsys, "series", "--which", "product", "--a", "3", "--qmax", "0")
        assert tsv_rows(out) == [["0", "0", "1"]]

    def test_andrews_matches_product(self, capsys):
        _, andrews = run(capsys, "series", "--which", "andrews3", "--qmax", "50")
        _, product = run(capsys, "series", "--which", "product", "--a", "3", "--qmax", "50")
        assert andrews == product

    def test_json(self, capsys):
        _, out = run(capsys, "series", "--which", "t3", "--qmax", "6", "--format", "json")
        payload = json.loads(out)
        assert payload["truncation"] == 6 and payload["xmax"] == 6
        assert [0, 0, "1"] in payload["terms"]

    @pytest.mark.parametrize("argv", [["--which", "product", "--qmax", "5"], ["--which", "t1", "--a", "2", "--qmax", "5"]])
    def test_bad_flags(self, capsys, argv):
        with pytest.raises(SystemExit) as info:
            main(["series", *argv])
        assert info.value.code == 2


class TestBijection:
    def test_backward_example(self, capsys):
        code, out = run(capsys, "bijection", "backward", "--a", "3", "--partition", "14,14,11,10,7,7,5,5,2,1")
        payload = json.loads(out)
        assert code == 0
        assert payload["mu"] == [10, 4, 4] and payload["nu"] == [3, 3, 0, 0]
        assert payload["base"] == [10, 9, 8, 7, 5, 5, 3, 3, 1, 1]
        assert "trace" not in payload

    def test_forward_example(self, capsys):
        argv = ["bijection", "forward", "--a", "2", "--pairs", "2", "--singletons", "4", "--mu", "2,2", "--nu", "9,6,3,0"]
        _, out = run(capsys, *argv)
        assert json.loads(out)["lambda"] == [17, 13, 9, 6, 6, 4, 4, 1]

    def test_empty_partition(self, capsys):
        _, out = run(capsys, "bijection", "backward", "--a", "3", "--partition", "", "--trace")
        payload = json.loads(out)
        assert payload["base"] == [] and payload["mu"] == [] and payload["nu"] == [] and payload["trace"] == []

    def test_trace(self, capsys):
        _, out = run(capsys, "bijection", "backward", "--a", "3", "--partition", "14,14,11,10,7,7,5,5,2,1", "--trace")
        trace = json.loads(out)["trace"]
        assert len(trace) == 15
        assert trace[1] == {"partition": [14, 14, 11, 10, 7, 7, 4, 3, 1, 1], "kind": "pair", "dir": "backward", "from": 4, "to": 1}

    @pytest.mark.parametrize(
        "argv",
        [
            ["backward", "--a", "3", "--partition", "1,2"],
            ["backward", "--a", "3", "--partition", "3,3,3"],
            ["backward", "--a", "1", "--partition", "x,1"],
            ["forward", "--a", "3", "--pairs", "1", "--singletons", "0", "--mu", "3"],
            ["forward", "--a", "3", "--pairs", "1", "--singletons", "1", "--mu", "2"],
        ],
    )
    def test_invalid_data_exits_3(self, capsys, argv):
        code, out = run(capsys, "bijection", *argv)
        assert code == 3
        assert json.loads(out)["error"] == "invalid input"


class TestVerify:
    def test_examples_suite(self, capsys):
        code, out = run(capsys, "verify", "--suite", "examples", "--a", "3")
        assert code == 0
        assert out.splitlines()[-1].startswith("examples: PASS")

    def test_theorem_suite_json_is_deterministic(self, capsys):
        argv = ["--jobs", "1", "verify", "--suite", "theorem", "--a", "2", "--qmax", "30", "--json"]
        code, first = run(capsys, *argv)
        _, second = run(capsys, *argv)
        assert code == 0 and first == second
        payload = json.loads(first)
        assert payload["status"] == "pass" and "elapsed_ms" not in payload["checks"][0]

    def test_sanity_suite(self, capsys):
        code, out = run(capsys, "verify", "--suite", "sanity", "--qmax", "100")
        assert code == 0

    def test_roundtrip_alias(self, capsys):
        code, out = run(capsys, "--jobs", "1", "roundtrip", "--max-weight", "12", "--json")
        payload = json.loads(out)
        assert code == 0 and payload["suite"] == "bijection" and len(payload["checks"]) == 6

    def test_failure_exit_code(self, capsys, monkeypatch):
        from rrgmoves import verify

        monkeypatch.setitem(verify.GOLDEN, (3, "backward"), "example_a2_backward.txt")
        code, out = run(capsys, "verify", "--suite", "examples", "--a", "3")
        assert code == 1 and "FAIL" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "rrgmoves", "count", "--side", "difference", "--k", "3", "--a", "3", "--max-n", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "n\tcount\n0\t1\n1\t1\n2\t2\n"
