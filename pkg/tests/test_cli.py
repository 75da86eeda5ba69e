import csv
import io
import subprocess
import sys

import pytest

from respectcut.cli import CSV_HEADER, main
from respectcut.graph import parse_graph


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def triangle(tmp_path):
    path = tmp_path / "triangle.g"
    path.write_text("p 3 3\n1 2 1\n2 3 1\n1 3 1\n")
    return str(path)


@pytest.fixture
def small(tmp_path, capsys):
    main(["generate", "--family", "random", "--n", "12", "--p", "0.4", "--weights", "1:20", "--seed", "3"])
    path = tmp_path / "small.g"
    path.write_text(capsys.readouterr().out)
    return str(path)


def test_stoer_wagner_triangle(capsys, triangle):
    code, out, _ = run(capsys, "mincut", "--algorithm", "stoer-wagner", triangle)
    assert code == 0 and out == "value 2\n"


def test_emit_partition(capsys, triangle):
    code, out, _ = run(capsys, "mincut", "--emit-partition", triangle)
    lines = out.splitlines()
    assert lines[0] == "value 2"
    side = [int(x) for x in lines[1].split()[1:]]
    assert side == sorted(side) and len(side) == 1 and 2 <= side[0] <= 3
    crossing = [line for line in lines if line.startswith("crossing ")]
    assert len(crossing) == 2


def test_respect_is_deterministic(capsys, small):
    argv = ("mincut", "--algorithm", "respect", "--seed", "7", "--d", "2", "--emit-partition", small)
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


@pytest.mark.parametrize("algo", ["brute", "stoer-wagner", "contraction"])
def test_algorithms_agree(capsys, small, algo):
    _, ref, _ = run(capsys, "mincut", small)
    _, out, _ = run(capsys, "mincut", "--algorithm", algo, small)
    assert out == ref


def test_trees_override_and_parallel(capsys, small):
    _, ref, _ = run(capsys, "mincut", "--algorithm", "brute", small)
    code, out, _ = run(capsys, "mincut", "--trees", "40", "--parallel", small)
    assert code == 0 and out == ref


@pytest.mark.parametrize(
    "text", ["p 2 1\n1 5 1\n", "garbage\n", "p 4 2\n1 2 1\n3 4 1\n", "p 2 1\n1 2 -3\n"]
)
def test_bad_files(capsys, tmp_path, text):
    path = tmp_path / "bad.g"
    path.write_text(text)
    code, out, err = run(capsys, "mincut", str(path))
    assert code != 0 and out == "" and err.startswith("respectcut: error:")


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "mincut", str(tmp_path / "absent.g"))
    assert code != 0 and "error" in err


def test_bench_rows(capsys):
    code, out, _ = run(
        capsys, "bench", "--family", "random", "--n", "16", "--n-max", "64", "--seeds", "2",
        "--algorithms", "respect,stoer-wagner,contraction", "--trials", "200",
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert tuple(rows[0]) == CSV_HEADER
    body = rows[1:]
    assert len(body) == 3 * 3 * 2
    for alg in ("respect", "stoer-wagner", "contraction"):
        assert sum(r[2] == alg for r in body) == 3 * 2
    groups = {}
    for r in body:
        groups.setdefault((r[0], r[3]), set()).add(r[4])
        if r[2] == "respect":
            assert int(r[6]) > 0
    assert all(len(v) == 1 for v in groups.values())


def test_bench_unknown_family(capsys):
    code, _, err = run(capsys, "bench", "--family", "hypercube", "--n", "8")
    assert code != 0 and "unknown family" in err


def test_generate_determinism_and_round_trip(capsys):
    argv = ("generate", "--family", "random", "--n", "50", "--p", "0.3", "--seed", "1")
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b
    assert parse_graph(a).n == 50


def test_generate_two_cliques(capsys):
    _, out, _ = run(capsys, "generate", "--family", "two-cliques", "--n", "8", "--bridges", "3")
    assert "# planted 3" in out.splitlines()


def test_generate_infeasible(capsys):
    code, _, err = run(capsys, "generate", "--family", "cycle", "--n", "2")
    assert code != 0 and err


def test_console_entry_point(triangle):
    proc = subprocess.run(
        [sys.executable, "-m", "respectcut", "mincut", "--algorithm", "brute", triangle],
        capture_output=True, text=True, check=True,
    )
    assert proc.stdout == "value 2\n"
