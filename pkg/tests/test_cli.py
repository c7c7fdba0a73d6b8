from pathlib import Path

from qgt.cli import main
from qgt.serialize import code_from_text


def run(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def test_build_encode_decode_roundtrip(tmp_path, capsys):
    code_file = tmp_path / "code.qgtc"
    fv_file = tmp_path / "fv.txt"
    status, _, _ = run(
        capsys, "build", "--n", "16", "--k", "2", "--alpha", "2",
        "--mode", "plain", "--out", str(code_file),
    )
    assert status == 0
    status, _, _ = run(
        capsys, "encode", "--code", str(code_file), "--set", "5,11", "--out", str(fv_file),
    )
    assert status == 0
    status, out, _ = run(capsys, "decode", "--code", str(code_file), "--fv", str(fv_file))
    assert status == 0
    assert out == "5 1\n11 1\n"


def test_build_determinism(tmp_path, capsys):
    outs = []
    for _ in range(2):
        status, out, _ = run(
            capsys, "build", "--n", "32", "--k", "3", "--alpha", "3", "--seed", "4",
        )
        assert status == 0
        outs.append(out)
    assert outs[0] == outs[1]


def test_multiset_cli_roundtrip(tmp_path, capsys):
    code_file = tmp_path / "m.qgtc"
    fv_file = tmp_path / "fv.txt"
    run(capsys, "build", "--n", "16", "--k", "4", "--mode", "multiset",
        "--alpha", "4", "--out", str(code_file))
    run(capsys, "encode", "--code", str(code_file), "--set", "3:2,7", "--out", str(fv_file))
    status, out, _ = run(capsys, "decode", "--code", str(code_file), "--fv", str(fv_file))
    assert status == 0
    assert out == "3 2\n7 1\n"


def test_verify_uniqueness_pass_and_fail(tmp_path, capsys):
    code_file = tmp_path / "code.qgtc"
    run(capsys, "build", "--n", "16", "--k", "2", "--alpha", "2", "--out", str(code_file))
    status, out, _ = run(capsys, "verify", "--code", str(code_file), "--uniqueness", "--claim-a")
    assert status == 0
    assert "uniqueness: pass" in out
    assert "claim-a: pass" in out

    bad = tmp_path / "bad.qgtc"
    body = " ".join(str(v) for v in range(1, 9))
    bad.write_text(f"qgtc 1\nn 8\nk 2\nalpha 1\nmode random\nblocks 0\n{body}\n")
    status, out, _ = run(capsys, "verify", "--code", str(bad), "--uniqueness")
    assert status == 1
    assert "FAIL" in out


def test_verify_selector_levels(tmp_path, capsys):
    code_file = tmp_path / "code.qgtc"
    run(capsys, "build", "--n", "16", "--k", "2", "--alpha", "3", "--out", str(code_file))
    status, out, _ = run(capsys, "verify", "--code", str(code_file), "--sui", "--ssui")
    assert status == 0
    assert "pass" in out


def test_verify_dispersion_vacuous_on_singleton_levels(tmp_path, capsys):
    code_file = tmp_path / "code.qgtc"
    run(capsys, "build", "--n", "16", "--k", "2", "--alpha", "3", "--out", str(code_file))
    status, out, _ = run(capsys, "verify", "--code", str(code_file), "--dispersion")
    assert status == 0
    assert "singleton" in out or "vacuous" in out


def test_verify_without_flags_is_usage_error(tmp_path, capsys):
    code_file = tmp_path / "code.qgtc"
    run(capsys, "build", "--n", "16", "--k", "2", "--alpha", "2", "--out", str(code_file))
    status, _, _ = run(capsys, "verify", "--code", str(code_file))
    assert status == 2


def test_random_with_exhaustive_verify(tmp_path, capsys):
    out_file = tmp_path / "r.qgtc"
    status, _, err = run(
        capsys, "random", "--n", "32", "--k", "3", "--alpha", "8",
        "--verify", "exhaustive", "--out", str(out_file),
    )
    assert status == 0
    assert "claim1" in err and "pass" in err
    parsed = code_from_text(out_file.read_text())
    assert parsed.mode == "random"
    assert len(parsed.queries) == 32


def test_bench_emits_csv_rows(tmp_path, capsys):
    grid = tmp_path / "grid.txt"
    grid.write_text("# n k alpha [mode]\n16 2 2 plain\n16 2 3 plain\n32 2 2 plain\n")
    status, out, _ = run(capsys, "bench", "--grid", str(grid))
    assert status == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("n,k,alpha,mode,m,")
    assert len(lines) == 4
    assert all(line.count(",") == 9 for line in lines)


def test_stream_replay_and_reconstruct(tmp_path, capsys):
    code_file = tmp_path / "m.qgtc"
    ops_file = tmp_path / "ops.txt"
    run(capsys, "build", "--n", "64", "--k", "4", "--mode", "multiset",
        "--alpha", "4", "--out", str(code_file))
    ops_file.write_text("I 9\nI 9\nI 40\nD 9\n")
    status, out, _ = run(
        capsys, "stream", "--code", str(code_file), "--ops", str(ops_file), "--reconstruct",
    )
    assert status == 0
    assert out == "9 1\n40 1\n"


def test_graph_replay(tmp_path, capsys):
    ops_file = tmp_path / "gops.txt"
    ops_file.write_text("I 1 2\nI 2 3\nD 1 2\nI 5 6\n")
    status, out, _ = run(
        capsys, "graph", "--nodes", "6", "--k", "2", "--ops", str(ops_file), "--reconstruct",
    )
    assert status == 0
    assert out == "2 3\n5 6\n"


def test_format_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.qgtc"
    bad.write_text("not a code file\n")
    status, _, err = run(capsys, "decode", "--code", str(bad), "--fv", str(bad))
    assert status == 2
    assert "error" in err


def test_decode_error_exit_code(tmp_path, capsys):
    code_file = tmp_path / "code.qgtc"
    fv_file = tmp_path / "fv.txt"
    run(capsys, "build", "--n", "16", "--k", "2", "--alpha", "2", "--out", str(code_file))
    n_queries = len(code_from_text(Path(code_file).read_text()).queries)
    fv_file.write_text(" ".join("9" for _ in range(n_queries)) + "\n")
    status, _, err = run(capsys, "decode", "--code", str(code_file), "--fv", str(fv_file))
    assert status == 1
    assert "error" in err


def test_missing_file_is_usage_error(capsys):
    status, _, _ = run(capsys, "decode", "--code", "/nonexistent", "--fv", "/nonexistent")
    assert status == 2


def test_budget_refusal_exits_nonzero(tmp_path, capsys):
    code_file = tmp_path / "code.qgtc"
    run(capsys, "build", "--n", "32", "--k", "3", "--alpha", "2", "--out", str(code_file))
    status, _, err = run(
        capsys, "verify", "--code", str(code_file), "--uniqueness", "--budget", "10",
    )
    assert status == 1
    assert "too large" in err


def test_random_unknown_verify_mode(tmp_path, capsys):
    status, _, err = run(
        capsys, "random", "--n", "32", "--k", "2", "--alpha", "4",
        "--verify", "guess", "--out", str(tmp_path / "r.qgtc"),
    )
    assert status == 2
    assert "unknown verify mode" in err


def test_random_sampled_verify(tmp_path, capsys):
    status, _, err = run(
        capsys, "random", "--n", "32", "--k", "2", "--alpha", "4",
        "--verify", "sampled:20", "--out", str(tmp_path / "r.qgtc"),
    )
    assert status == 0
    assert "claim1" in err


def test_stream_rejects_graph_style_ops(tmp_path, capsys):
    code_file = tmp_path / "m.qgtc"
    ops_file = tmp_path / "ops.txt"
    run(capsys, "build", "--n", "16", "--k", "2", "--mode", "multiset",
        "--alpha", "2", "--out", str(code_file))
    ops_file.write_text("I 1 2\n")
    status, _, err = run(capsys, "stream", "--code", str(code_file), "--ops", str(ops_file))
    assert status == 2
    assert "one element" in err
