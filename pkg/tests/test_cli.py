import subprocess
import sys

import pytest

from binrel import cli
from binrel.core import OPS
from binrel.rel_wt import BinRelWt
from conftest import R0_N, R0_PAIRS, R0_SIGMA

R0_TEXT = "% 5 4\n# fixture\n" + "".join(f"{a} {x}\n" for a, x in R0_PAIRS)


@pytest.fixture
def r0_file(tmp_path):
    p = tmp_path / "r0.txt"
    p.write_text(R0_TEXT)
    return p


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_read_edge_list(r0_file, tmp_path):
    pairs, n, sigma = cli.read_edge_list(r0_file)
    assert (n, sigma) == (5, 4) and sorted(pairs) == sorted(R0_PAIRS)
    p = tmp_path / "noheader.txt"
    p.write_text("2 7\n\n# c\n3 1\n")
    assert cli.read_edge_list(p)[1:] == (7, 3)


@pytest.mark.parametrize("text,line", [("0 3\n", 1), ("1 2\nfoo bar\n", 2), ("1 2 3\n", 1),
                                       ("% 2 2\n1 3\n", 2)])
def test_parse_errors_name_the_line(tmp_path, text, line):
    p = tmp_path / "bad.txt"
    p.write_text(text)
    with pytest.raises(cli.InputError, match=f":{line}:"):
        cli.read_edge_list(p)


def test_build_and_stats(capsys, r0_file, tmp_path):
    out_path = tmp_path / "r0.brel"
    code, out, _ = run(capsys, "build", r0_file, "--repr", "wt", "-o", out_path)
    assert code == 0 and "t=8" in out and "n=5" in out and "payload_bits=29" in out
    code, out, _ = run(capsys, "stats", out_path)
    assert code == 0 and "t=8" in out and "entropy_bits=16.9427" in out


def test_build_empty_with_header(capsys, tmp_path):
    src = tmp_path / "empty.txt"
    src.write_text("% 5 4\n")
    code, out, _ = run(capsys, "build", src, "--repr", "brwt", "-o", tmp_path / "e.brel")
    assert code == 0 and "t=0" in out
    code, out, _ = run(capsys, "stats", tmp_path / "e.brel")
    assert "entropy_bits=0" in out and "brwt_within_bound=True" in out


def test_build_errors(capsys, tmp_path, r0_file):
    bad = tmp_path / "bad.txt"
    bad.write_text("0 3\n")
    code, _, err = run(capsys, "build", bad, "-o", tmp_path / "x.brel")
    assert code != 0 and ":1:" in err
    code, _, err = run(capsys, "build", r0_file, "--repr", "wt", "--arity", "4", "-o", tmp_path / "x")
    assert code != 0 and "gwt" in err
    code, _, _ = run(capsys, "build", r0_file, "-o", tmp_path / "missing" / "x.brel")
    assert code != 0


def test_stats_brwt_has_bound_line(capsys, r0_file, tmp_path):
    run(capsys, "build", r0_file, "--repr", "brwt", "-o", tmp_path / "b.brel")
    _, out, _ = run(capsys, "stats", tmp_path / "b.brel")
    assert "brwt_ideal_bits" in out and "brwt_bound_bits" in out and "brwt_within_bound=True" in out


def test_query_examples(capsys, r0_file, tmp_path):
    run(capsys, "build", r0_file, "--repr", "wt", "-o", tmp_path / "wt.brel")
    assert run(capsys, "query", tmp_path / "wt.brel", "rel_num", 2, 3, 1, 3) == (0, "3\n", "")
    assert run(capsys, "query", tmp_path / "wt.brel", "rel_acc", 1, 4, 3, 2) == (0, "", "")
    assert run(capsys, "query", tmp_path / "wt.brel", "rel_sel_lab_fst", 2, 2, 1, 5)[1] == "2 4\n"
    assert run(capsys, "query", tmp_path / "wt.brel", "lab_sel", 1, 9, 1, 5)[1] == "none\n"
    assert run(capsys, "query", tmp_path / "wt.brel", "obj_acc", 3, 3, 1, 5)[1] == "1\n3\n5\n"
    code, _, err = run(capsys, "query", tmp_path / "wt.brel", "rel_frobnicate", 1)
    assert code != 0 and "unknown operation" in err
    code, _, err = run(capsys, "query", tmp_path / "wt.brel", "rel_sel_lab_fst", 1, 0, 1, 5)
    assert code != 0


def test_query_on_edge_list_directly(capsys, r0_file):
    assert run(capsys, "query", r0_file, "rel_num", 1, 4, 1, 5)[1] == "8\n"


def test_verify_r0(capsys, r0_file):
    code, out, _ = run(capsys, "verify", r0_file, "--rounds", "20", "--seed", "3")
    assert code == 0
    assert "rel_num          20 passed" in out
    assert "all 540 checks passed" in out


def test_verify_zero_rounds(capsys, r0_file):
    code, out, _ = run(capsys, "verify", r0_file, "--rounds", "0")
    assert code == 0 and "all 0 checks passed" in out


def test_verify_reports_injected_fault(capsys, r0_file, monkeypatch):
    real_build = cli.build

    class Broken(BinRelWt):
        def rel_num(self, alpha, beta, x, y):
            return super().rel_num(alpha, beta, x, y) + (alpha == 3)

    def rigged(config, pairs, n, sigma):
        if config.repr == "wt":
            return Broken(pairs, n, sigma)
        return real_build(config, pairs, n, sigma)

    monkeypatch.setattr(cli, "build", rigged)
    code, out, _ = run(capsys, "verify", r0_file, "--reprs", "wt,brwt", "--rounds", "50")
    assert code == 1
    assert "mismatch structure=wt" in out and "pairs=1:2,1:5,2:1" in out


def test_bench(capsys, tmp_path):
    import random

    rng = random.Random(0)
    src = tmp_path / "big.txt"
    src.write_text("% 200 256\n" + "".join(
        f"{rng.randint(1, 256)} {rng.randint(1, 200)}\n" for _ in range(2000)))
    run(capsys, "build", src, "--repr", "wt", "-o", tmp_path / "wt.brel")
    run(capsys, "build", src, "--repr", "gwt", "--arity", "16", "-o", tmp_path / "g.brel")
    _, out, _ = run(capsys, "bench", tmp_path / "wt.brel", "rel_rnk", "--count", "500")
    assert int(out.split("max_visits=")[1]) <= 9
    _, out, _ = run(capsys, "bench", tmp_path / "g.brel", "rel_rnk", "--count", "500")
    assert int(out.split("max_visits=")[1]) <= 3
    code, out, _ = run(capsys, "bench", tmp_path / "g.brel", "rel_rnk", "--count", "0")
    assert code == 0 and out == "op=rel_rnk queries=0\n"
    code, out, _ = run(capsys, "bench", tmp_path / "g.brel", "lab_sel", "--count", "20")
    assert code == 0 and "mean_visits" in out


def test_console_script(r0_file):
    proc = subprocess.run([sys.executable, "-m", "binrel.cli", "query", str(r0_file),
                           "obj_min", "1", "4", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "2\n"


def test_format_answer_kinds():
    assert cli.format_answer("count", 0) == ["0"]
    assert cli.format_answer("labels", []) == []
    assert cli.format_answer("object", None) == ["none"]
    assert set(kind for _, kind in OPS.values()) == {
        "count", "pair", "pairs", "label", "labels", "object", "objects"}
