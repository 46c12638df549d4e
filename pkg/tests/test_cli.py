import subprocess
import sys

import pytest

from coset2pc.cli import main
from coset2pc.code import load_code, paper_code_9_4, save_code, simplex_code
from coset2pc.protocol import read_transcript
from conftest import F2


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, code in [("simplex7", simplex_code(3, F2)), ("code9", paper_code_9_4())]:
        paths[name] = tmp_path / f"{name}.txt"
        save_code(code, paths[name])
    paths["ident"] = tmp_path / "ident.txt"
    paths["ident"].write_text("2 2 2\n1 0\n0 1\n")
    paths["code9perm"] = tmp_path / "code9perm.txt"
    rows = paper_code_9_4().H.rows
    paths["code9perm"].write_text("2 4 9\n" + "".join(" ".join(map(str, (r[1], r[0]) + tuple(r[2:]))) + "\n" for r in rows))
    return paths


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_code_simplex(capsys, tmp_path):
    out_path = tmp_path / "s.txt"
    code, out, _ = run(capsys, "gen-code", "simplex", "--r", 3, "--q", 2, "--out", out_path)
    assert code == 0 and "minimal: true" in out and "n: 7" in out and "w_max: 4" in out
    assert load_code(out_path).H == simplex_code(3, F2).H


def test_gen_code_fixed_and_expand(capsys, tmp_path):
    nine = tmp_path / "nine.txt"
    assert run(capsys, "gen-code", "paper-9-4", "--out", nine)[0] == 0
    assert load_code(nine).H == paper_code_9_4().H
    code, out, _ = run(capsys, "gen-code", "expand", "--in", nine, "--q", 3)
    assert code == 0 and "n: 20" in out and "minimal: true" in out
    code, out, _ = run(capsys, "gen-code", "paper-20-4")
    assert code == 0 and "q: 3  r: 4  n: 20" in out


def test_gen_code_search(capsys):
    code, out, _ = run(capsys, "gen-code", "search", "--n", 7, "--k", 3, "--q", 2, "--seed", 1)
    assert code == 0 and "minimal: true" in out
    code, out, _ = run(capsys, "gen-code", "search", "--n", 5, "--k", 4, "--trials", 20, "--seed", 1)
    assert code == 2
    assert run(capsys, "gen-code", "search", "--n", 7, "--k", 3)[1].startswith("seed: ")
    assert run(capsys, "gen-code", "expand")[0] == 2


def test_check(capsys, files):
    code, out, _ = run(capsys, "check", files["simplex7"])
    assert code == 0
    assert "minimal: true" in out and "intersecting: true" in out
    assert "weights: {4x7}" in out and "GHW: 4 6 7" in out
    code, out, _ = run(capsys, "check", files["ident"])
    assert code == 0 and "minimal: false" in out and "witness:" in out and "intersecting: false" in out
    code, out, _ = run(capsys, "check", files["code9"])
    assert "weights: {4x9, 6x6}" in out and "w_max: 6" in out


def test_check_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("2 1 3\n1 0 x\n")
    code, _, err = run(capsys, "check", bad)
    assert code == 2 and "line 2" in err
    assert run(capsys, "check", tmp_path / "missing.txt")[0] == 2


def test_run_local(capsys, files, tmp_path):
    code, out, _ = run(capsys, "run", "local", "--function", "scalar", "--x", "101", "--y", "110",
                       "--code", files["simplex7"], "--seed", 1, "--transcript-dir", tmp_path / "t")
    assert code == 0 and out.strip() == "output: 1"
    recs = read_transcript(tmp_path / "t" / "p2.jsonl")
    assert recs[0]["rng"] == "numpy-PCG64"
    code, out, _ = run(capsys, "run", "local", "--x", "111", "--y", "110", "--code", files["simplex7"],
                       "--seed", 2, "--reveal", "--ot-mode", "sequential")
    assert "output: 0" in out and "p1 output: 0" in out


def test_run_seed_printed(capsys, files):
    code, out, _ = run(capsys, "run", "local", "--x", "101", "--y", "110", "--code", files["simplex7"])
    assert code == 0 and out.startswith("seed: ") and out.rstrip().endswith("output: 1")


def test_run_functions(capsys, tmp_path):
    f5 = tmp_path / "s5.txt"
    save_code(simplex_code(3, __import__("coset2pc").PrimeField(5)), f5)
    assert run(capsys, "run", "local", "--function", "hamming", "--x", "101", "--y", "110",
               "--code", f5, "--seed", 0)[1].strip() == "output: 2"
    f7 = tmp_path / "s7.txt"
    save_code(simplex_code(3, __import__("coset2pc").PrimeField(7)), f7)
    assert run(capsys, "run", "local", "--function", "euclid", "--x", "12", "--y", "23",
               "--code", f7, "--seed", 0)[1].strip() == "output: 2"


def test_run_errors(capsys, files):
    assert run(capsys, "run", "local", "--x", "101", "--y", "000", "--code", files["simplex7"], "--seed", 0)[0] == 2
    assert run(capsys, "run", "local", "--x", "10", "--y", "110", "--code", files["simplex7"], "--seed", 0)[0] == 2
    assert run(capsys, "run", "local", "--function", "hamming", "--x", "101", "--y", "110",
               "--code", files["simplex7"], "--seed", 0)[0] == 2
    code, out, _ = run(capsys, "run", "local", "--function", "hamming", "--x", "101", "--y", "110",
                       "--code", files["simplex7"], "--seed", 0, "--allow-wraparound")
    assert code == 0 and out.strip() == "output: 0"  # distance 2 mod 2


def test_run_refusal(capsys, files):
    code, _, err = run(capsys, "run", "local", "--x", "10", "--y", "11", "--code", files["ident"], "--seed", 0)
    assert code == 3 and "not a minimal code" in err
    code, out, _ = run(capsys, "run", "local", "--x", "10", "--y", "11", "--code", files["ident"], "--seed", 0, "--unsafe")
    assert code == 0 and out.strip() == "output: 1"


def test_analyze(capsys, files, tmp_path):
    rec = tmp_path / "a.jsonl"
    code, out, _ = run(capsys, "analyze", "--code", files["simplex7"], "--revealed", "2,3,4,5", "--values", "0,0,0,1",
                       "--records", rec)
    assert code == 0 and "posterior: 4 messages, uniform: true" in out and "leaked dimension: 1" in out
    code, out, _ = run(capsys, "analyze", "--code", files["simplex7"], "--wtc2-sweep", 7)
    assert code == 0 and "violations: 0" in out
    lines = out.splitlines()
    header = next(i for i, line in enumerate(lines) if "max leak" in line)
    leak = {int(l.split()[0]): int(l.split()[1]) for l in lines[header + 1:header + 9]}
    assert all(leak[s] == 0 for s in range(4))
    assert run(capsys, "analyze", "--code", files["simplex7"])[0] == 2
    assert run(capsys, "analyze", "--code", files["simplex7"], "--revealed", "1,2", "--values", "1")[0] == 2


def test_bounds(capsys, tmp_path):
    code, out, _ = run(capsys, "bounds", "--q", 2, "--n-max", 10, "--records", tmp_path / "b.jsonl")
    assert code == 0
    assert "min rate (existence): 0.20751874963942" in out
    assert "max rate (Sperner):   1.00000000000000" in out
    assert len((tmp_path / "b.jsonl").read_text().splitlines()) == sum(min(4, n) - 1 for n in range(2, 11))
    assert run(capsys, "bounds", "--q", 4)[0] == 2


def _spawn(*argv):
    return subprocess.Popen([sys.executable, "-m", "coset2pc", *map(str, argv)],
                            stdout=subprocess.PIPE, stderr=subprocess.PIPE, text=True)


def _socket_run(p1_args, p2_args):
    p1 = _spawn("run", "p1", "--listen", "127.0.0.1:0", *p1_args)
    line = p1.stdout.readline()
    assert line.startswith("listening: "), line + p1.stderr.read()
    port = line.rsplit(":", 1)[1].strip()
    p2 = _spawn("run", "p2", "--connect", f"127.0.0.1:{port}", *p2_args)
    out2, err2 = p2.communicate(timeout=20)
    out1, err1 = p1.communicate(timeout=20)
    return (p1.returncode, out1, err1), (p2.returncode, out2, err2)


def test_socket_two_processes(capsys, files, tmp_path):
    common = ["--code", files["code9"], "--seed", 5, "--reveal"]
    (c1, o1, _), (c2, o2, _) = _socket_run(
        ["--x", "1011", "--transcript", tmp_path / "p1.jsonl", *common],
        ["--y", "0110", "--transcript", tmp_path / "p2.jsonl", *common],
    )
    assert c1 == c2 == 0
    assert o2.strip() == "output: 1" and o1.strip() == "output: 1"
    run(capsys, "run", "local", "--x", "1011", "--y", "0110", "--transcript-dir", tmp_path / "local", *common)
    for role in ("p1", "p2"):
        sock = [(r["dir"], r["frame"]) for r in read_transcript(tmp_path / f"{role}.jsonl") if "frame" in r]
        local = [(r["dir"], r["frame"]) for r in read_transcript(tmp_path / "local" / f"{role}.jsonl") if "frame" in r]
        assert sock == local


def test_socket_mismatch_aborts(files):
    (c1, _, e1), (c2, _, e2) = _socket_run(
        ["--x", "1011", "--code", files["code9"], "--seed", 1],
        ["--y", "0110", "--code", files["code9perm"], "--seed", 1],
    )
    assert c1 == 4 and c2 == 4
    assert "mismatch" in e1 + e2
