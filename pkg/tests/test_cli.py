import json

from imprimitive import families
from imprimitive.cli import main
from imprimitive.records import read_jsonl


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, [json.loads(l) for l in out.splitlines() if l.startswith("{")]


def test_scan_tate5(capsys):
    code, lines = _run(capsys, "scan", "--family", "tate5", "--param", "5", "--ell", "5", "--bound", "3000")
    assert code == 0
    summary = lines[-1]
    assert summary["kind"] == "summary" and summary["v"] == 1
    assert summary["counterexamples"] == 0
    prime_lines = lines[:-1]
    assert [l["p"] for l in prime_lines] == sorted(l["p"] for l in prime_lines)
    assert {"v", "job", "kind", "p", "N", "ord", "idx", "flags", "ok"} <= set(prime_lines[0])


def test_scan_12100_primitive(capsys):
    code, lines = _run(capsys, "scan", "--registry", "12100.j1", "--primitive", "--bound", "2000")
    assert code == 0
    assert lines[-1]["successes"] == 0


def test_scan_mult(capsys):
    code, lines = _run(capsys, "scan", "--mult", "2", "--bound", "100000")
    assert code == 0
    assert abs(float(lines[-1]["density"]) - 0.374) < 0.005
    assert lines[-1]["density_exact"].count("/") == 1


def test_scan_input_errors(capsys):
    assert main(["scan", "--curve", "0,0,0,0,0", "--point", "0,0", "--ell", "2"]) == 2
    assert main(["scan", "--curve", "0,0,0,-1,0", "--point", "5,5", "--ell", "2"]) == 2
    assert main(["scan", "--mult", "2", "--bound", "2000000"]) == 2
    assert main(["scan", "--mult", "2", "--workers", "0"]) == 2
    assert main(["scan", "--family", "tate5", "--param", "1", "--ell", "5"]) == 2
    assert main(["scan", "--registry", "no.such"]) == 2
    assert main(["scan", "--mult", "-1"]) == 2
    capsys.readouterr()


def test_scan_output_is_byte_stable(tmp_path, capsys):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    for path in (a, b):
        assert main(["scan", "--registry", "5835.c2", "--bound", "2000", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    # rerunning the same job replaces its lines instead of duplicating them
    assert main(["scan", "--registry", "5835.c2", "--bound", "2000", "--out", str(a)]) == 0
    assert a.read_bytes() == b.read_bytes()
    capsys.readouterr()


def test_resume_reproduces_uninterrupted_run(tmp_path, capsys):
    full, part = tmp_path / "full.jsonl", tmp_path / "part.jsonl"
    args = ["scan", "--registry", "12100.j1", "--ell", "2,3", "--bound", "3000"]
    assert main(args + ["--out", str(full)]) == 0
    assert main(args + ["--out", str(part)]) == 0
    # simulate a crash after about a third of the lines
    lines = part.read_text().splitlines(keepends=True)
    part.write_text("".join(lines[: len(lines) // 3]))
    last = json.loads(lines[len(lines) // 3 - 1])["p"]
    assert main(args + ["--out", str(part), "--resume-from-prime", str(last - 10)]) == 0
    assert part.read_bytes() == full.read_bytes()
    capsys.readouterr()


def test_resume_needs_output_file(capsys):
    assert main(["scan", "--mult", "2", "--resume-from-prime", "100"]) == 2
    capsys.readouterr()


def test_timestamps_optional(capsys):
    _, lines = _run(capsys, "scan", "--mult", "3", "--bound", "50", "--timestamps")
    assert all("ts" in l for l in lines)
    _, lines = _run(capsys, "scan", "--mult", "3", "--bound", "50")
    assert all("ts" not in l for l in lines)


def test_classify_5835(capsys):
    code, lines = _run(capsys, "classify", "--registry", "5835.c2")
    assert code == 0
    assert lines[0]["nontrivial"] is True and lines[0]["condC"] is True


def test_classify_12100(capsys):
    code, lines = _run(capsys, "classify", "--registry", "12100.j1", "--ell", "2,3")
    assert code == 0
    assert [l["locally_ell_imprimitive"] for l in lines] == [False, False]


def test_classify_torsion_point(capsys):
    code, _ = _run(capsys, "classify", "--curve", "0,0,0,0,1", "--point", "2,3", "--ell", "3")
    assert code == 2


def test_family_command(capsys):
    code, lines = _run(capsys, "family", "--family", "deuring3", "--param", "2")
    assert code == 0
    assert lines[0]["point"] == ["19/4", "-99/8"]
    code, lines = _run(capsys, "family", "--family", "twist2", "--param", "605", "--param", "-3025", "--param", "1/2")
    assert code == 0
    assert lines[0]["identities"]["product_ok"]


def test_density_command(capsys):
    code, lines = _run(capsys, "density", "--group", "level6", "--cutoff", "50")
    assert code == 0
    assert lines[0]["vanishing"] is True
    code, lines = _run(capsys, "density", "--artin", "--cutoff", "10000")
    assert lines[0]["artin_partial"].startswith("0.3739")
    assert main(["density", "--group", "nope"]) == 2
    capsys.readouterr()


def test_verify_paper_single_criterion(capsys):
    assert main(["verify-paper", "--only", "1"]) == 0
    out = capsys.readouterr().out
    assert "[PASS] criterion  1" in out


def test_verify_paper_corrupted_registry(monkeypatch, capsys, tmp_path):
    monkeypatch.setattr(families, "P0_20622", (families.P0_20622[0] + 1, families.P0_20622[1]))
    out = tmp_path / "v.jsonl"
    assert main(["verify-paper", "--only", "1", "--out", str(out)]) == 1
    assert "[FAIL] criterion  1" in capsys.readouterr().out
    (rec,) = read_jsonl(str(out))
    assert rec["kind"] == "criterion" and rec["passed"] is False


def test_verify_paper_bad_only(capsys):
    assert main(["verify-paper", "--only", "11"]) == 2
    capsys.readouterr()
