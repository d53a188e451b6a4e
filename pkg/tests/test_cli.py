import subprocess
import sys

import pytest

from oracles import FANO
from tripleconf.cli import RunManifest, main
from tripleconf.triples import load


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_full(tmp_path, capsys):
    path = tmp_path / "z7.txt"
    code, out, _ = run(["gen", "--group", "Z7", "--full", "--output", str(path)], capsys)
    assert code == 0 and "|S|=49" in out
    assert len(load(path)) == 49


def test_gen_random(tmp_path, capsys):
    path = tmp_path / "r.txt"
    code, out, _ = run(["gen", "--group", "Z2xZ5", "--density", "0.4", "--seed", "1", "--output", str(path)], capsys)
    assert code == 0 and len(load(path)) == 40 and "n=10" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["gen", "--group", "Z0", "--full"],
        ["gen", "--group", "Z5", "--density", "1.5"],
        ["find", "--group", "Z5", "--full", "--t", "0"],
        ["gen"],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_quads_full(capsys):
    code, out, _ = run(["quads", "--group", "Z5", "--full"], capsys)
    assert code == 0
    assert "total=100" in out and "buckets=20" in out and "qmax=5" in out
    code, out, _ = run(["quads", "--group", "Z7", "--full"], capsys)
    assert "total=294" in out and "qmax=7" in out


def test_quads_empty(tmp_path, capsys):
    path = tmp_path / "e.txt"
    path.write_text("Z4\n")
    code, out, _ = run(["quads", "--input", str(path)], capsys)
    assert code == 0 and "total=0" in out


def test_quads_histogram_and_dump(tmp_path, capsys):
    hist, dump = tmp_path / "h.txt", tmp_path / "d.txt"
    run(["quads", "--group", "Z5", "--full", "--output", str(hist), "--dump", str(dump)], capsys)
    lines = hist.read_text().splitlines()
    assert len(lines) == 20 and lines[0] == "0 1 2 5"
    body = [line for line in dump.read_text().splitlines() if not line.startswith("#")]
    assert len(body) == 100 and all(len(line.split()) == 4 for line in body)


def test_quads_parse_error_line(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("Z4\n0 1\n0 one\n")
    code, _, err = run(["quads", "--input", str(path)], capsys)
    assert code == 2 and "line 3" in err


def test_find_and_verify(tmp_path, capsys):
    s, c = tmp_path / "s.txt", tmp_path / "c.txt"
    run(["gen", "--group", "Z101", "--full", "--output", str(s)], capsys)
    code, out, _ = run(["find", "--input", str(s), "--t", "2", "--output", str(c)], capsys)
    assert code == 0 and "pass=true" in out
    assert c.read_text().splitlines()[-1].endswith("pass=true")
    code, out, _ = run(["verify", "--input", str(s), "--config", str(c)], capsys)
    assert code == 0 and "pass=true" in out


def test_find_not_found(tmp_path, capsys):
    s = tmp_path / "e.txt"
    s.write_text("Z9\n")
    code, _, err = run(["find", "--input", str(s), "--t", "2"], capsys)
    assert code == 3 and "reason=no-quadruples" in err


def test_verify_failure_and_truncation(tmp_path, capsys):
    s, c = tmp_path / "s.txt", tmp_path / "c.txt"
    run(["gen", "--group", "Z25", "--full", "--output", str(s)], capsys)
    run(["find", "--input", str(s), "--output", str(c)], capsys)
    a, b, _ = c.read_text().split("TRIPLES\n")[1].splitlines()[0].split()
    # drop that edge from S: the configuration now lists a triple absent from S
    kept = [line for line in s.read_text().splitlines() if line != f"{a} {b}"]
    s2 = tmp_path / "s2.txt"
    s2.write_text("\n".join(kept) + "\n")
    code, out, _ = run(["verify", "--input", str(s2), "--config", str(c)], capsys)
    assert code == 1 and "pass=false" in out
    trunc = tmp_path / "t.txt"
    trunc.write_text("\n".join(c.read_text().splitlines()[:6]) + "\n")
    assert run(["verify", "--input", str(s), "--config", str(trunc)], capsys)[0] == 2


def test_span(tmp_path, capsys):
    code, out, _ = run(["span", "--group", "Z5", "--full", "--subset", "0"], capsys)
    assert code == 0 and out.strip() == "spanned=1"
    fano = tmp_path / "fano.txt"
    fano.write_text("7\n" + "".join(" ".join(map(str, e)) + "\n" for e in FANO))
    code, out, _ = run(["span", "--input", str(fano), "--m", "6"], capsys)
    assert code == 0 and out.startswith("k_max=4 ")
    big = tmp_path / "big.txt"
    run(["gen", "--group", "Z40", "--full", "--output", str(big)], capsys)
    code, _, err = run(["span", "--input", str(big), "--m", "30"], capsys)
    assert code == 2 and "budget-exceeded" in err


def test_manifest_round_trip(tmp_path):
    m = RunManifest(command="find", group="Z31", source="random", density=0.8, seed=4, params={"t": 2}, output="x.txt")
    assert RunManifest.from_json(m.to_json()) == m
    assert m.argv() == ["find", "--group", "Z31", "--density", "0.8", "--seed", "4", "--t", "2", "--output", "x.txt"]


def test_manifest_run_is_byte_identical(tmp_path, capsys):
    outputs = []
    for k in range(2):
        out = tmp_path / f"cfg{k}.txt"
        m = RunManifest(command="find", group="Z2xZ21", source="random", density=0.85, seed=3, params={"t": 2}, output=str(out))
        mf = tmp_path / f"m{k}.json"
        mf.write_text(m.to_json())
        assert main(["run", str(mf)]) in (0, 3)
        outputs.append(out.read_bytes() if out.exists() else b"")
    capsys.readouterr()
    assert outputs[0] == outputs[1] and outputs[0]


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "tripleconf", "quads", "--group", "Z5", "--full"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and "total=100" in proc.stdout
