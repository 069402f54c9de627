"""End-to-end CLI behavior: JSON I/O, exit codes, deterministic proptest."""

from __future__ import annotations

import json

import pytest

from gaugenorm import cli, norms


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def diag_json(*values):
    n = len(values)
    entries = [
        [[float(values[i]) if i == j else 0.0, 0.0] for j in range(n)]
        for i in range(n)
    ]
    return {"n": n, "entries": entries}


def run(capsys, argv):
    code = cli.main(argv)
    return code, capsys.readouterr().out


def test_snumbers_prints_vector_and_step_function(tmp_path, capsys):
    mat = write(tmp_path / "m.json", diag_json(3, 1))
    code, out = run(capsys, ["snumbers", mat])
    assert code == 0
    report = json.loads(out)
    assert report["s"] == [3.0, 1.0]
    assert report["mu"]["breakpoints"] == ["0", "1/2", "1"]


def test_malformed_json_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    assert cli.main(["snumbers", str(bad)]) == 2
    assert cli.main(["snumbers", str(tmp_path / "missing.json")]) == 2
    capsys.readouterr()


def test_zero_denominator_rational_exits_2(tmp_path, capsys):
    spec = write(tmp_path / "s.json", {"kind": "kyfan", "t": "2/0"})
    mat = write(tmp_path / "m.json", diag_json(2, 1))
    assert cli.main(["norm", spec, mat]) == 2
    capsys.readouterr()


def test_norm_kyfan_example(tmp_path, capsys):
    spec = write(tmp_path / "s.json", {"kind": "kyfan", "t": "2/3"})
    mat = write(tmp_path / "m.json", diag_json(3, 2, 1))
    code, out = run(capsys, ["norm", spec, mat])
    assert code == 0
    assert json.loads(out)["norm"] == pytest.approx(2.5)


def test_norm_accepts_vectors_and_step_functions(tmp_path, capsys):
    spec = write(tmp_path / "s.json", {"kind": "trace"})
    vec = write(tmp_path / "v.json", {"x": [3, "1/2", [0.0, 1.5]]})
    code, out = run(capsys, [
        "norm", spec, vec])
    assert code == 0
    assert json.loads(out)["norm"] == pytest.approx((3.0 + 0.5 + 1.5) / 3.0)

    step = write(
        tmp_path / "f.json",
        {"breakpoints": ["0", "1/3", "1"], "values": [3.0, 1.0]},
    )
    code, out = run(capsys, ["norm", spec, step])
    assert code == 0
    assert json.loads(out)["norm"] == pytest.approx(3.0 / 3.0 + 2.0 / 3.0)


def test_dual_norm_example_with_witness(tmp_path, capsys):
    spec = write(tmp_path / "s.json", {"kind": "kyfan", "t": "1/2"})
    mat = write(tmp_path / "m.json", diag_json(2, 1))
    code, out = run(capsys, ["norm", "--dual", spec, mat])
    assert code == 0
    report = json.loads(out)
    assert report["dual"] == pytest.approx(1.5)
    assert report["primal"] == pytest.approx(2.0)
    assert report["witness"] == pytest.approx([1.0, 1.0])


def test_profile_emits_csv_with_the_bracket_knot(tmp_path, capsys):
    spec = write(tmp_path / "s.json", {"kind": "tbracket", "t": 0.75})
    code, out = run(capsys, ["norm", "--profile", spec])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "s,f"
    assert "0.5,0.75" in lines
    code, _ = run(capsys, ["norm", spec])
    assert code == 2  # operand required without --profile


def test_dominance_exit_codes(tmp_path, capsys):
    flat = write(tmp_path / "flat.json", diag_json(1, 1))
    spike = write(tmp_path / "spike.json", diag_json(2, 0))
    code, out = run(capsys, ["dominance", flat, spike])
    assert code == 0
    assert json.loads(out)["dominates"] is True

    code, out = run(capsys, ["dominance", spike, flat])
    assert code == 1
    report = json.loads(out)
    assert report["dominates"] is False
    assert report["violating_k"] == 1


def test_dominance_of_equal_inputs_has_zero_margins(tmp_path, capsys):
    flat = write(tmp_path / "flat.json", diag_json(1, 1))
    code, out = run(capsys, ["dominance", flat, flat])
    assert code == 0
    report = json.loads(out)
    assert report["partial_sums_S"] == pytest.approx(report["partial_sums_T"])


def test_dominance_dimension_mismatch_exits_5(tmp_path, capsys):
    a = write(tmp_path / "a.json", diag_json(1, 1))
    b = write(tmp_path / "b.json", diag_json(1, 1, 1))
    assert cli.main(["dominance", a, b]) == 5
    capsys.readouterr()


def test_decompose_round_trip(tmp_path, capsys):
    prof = write(
        tmp_path / "p.json", {"knots": [0, 0.5, 1], "values": [0.75, 0.75, 1.0]}
    )
    code, out = run(capsys, ["decompose", prof])
    assert code == 0
    assert json.loads(out)["atoms"] == [{"t": 0.75, "w": 1.0}]


def test_decompose_inadmissible_profile_exits_6(tmp_path, capsys):
    prof = write(tmp_path / "p.json", {"knots": [0, 1], "values": [0.3, 1.0]})
    assert cli.main(["decompose", prof]) == 6
    capsys.readouterr()


def test_lpcheck_reports_small_error(capsys):
    code, out = run(capsys, ["lpcheck", "--p", "2.0"])
    assert code == 0
    report = json.loads(out)
    assert report["ok"] is True
    assert report["max_error"] <= 1e-6


def test_proptest_axioms_passes_and_is_deterministic(capsys):
    argv = ["proptest", "--suite", "axioms", "--seed", "7", "--trials", "10"]
    code1, out1 = run(capsys, argv)
    code2, out2 = run(capsys, argv)
    assert code1 == code2 == 0
    assert out1 == out2
    assert json.loads(out1)["passed"] is True


def test_proptest_seed_env_override(capsys, monkeypatch):
    _, baseline = run(
        capsys, ["proptest", "--suite", "extreme2", "--seed", "9", "--trials", "6"]
    )
    monkeypatch.setenv("GAUGENORM_SEED", "9")
    _, overridden = run(
        capsys, ["proptest", "--suite", "extreme2", "--seed", "0", "--trials", "6"]
    )
    assert overridden == baseline


def test_proptest_failure_dumps_witnesses(tmp_path, capsys, monkeypatch):
    original = norms.check_norm_axioms

    def broken_axioms(spec, n=4, trials=50, seed=0):
        report = original(spec, n=n, trials=trials, seed=seed)
        report["checks"]["triangle"]["fail"] = 1
        report["checks"]["triangle"]["witness"] = {"injected": True}
        report["passed"] = False
        return report

    monkeypatch.setattr(norms, "check_norm_axioms", broken_axioms)
    witness_file = tmp_path / "w.json"
    code = cli.main(
        [
            "proptest",
            "--suite",
            "axioms",
            "--trials",
            "2",
            "--witness-file",
            str(witness_file),
        ]
    )
    captured = capsys.readouterr()
    assert code == 6
    assert json.loads(captured.out)["passed"] is False
    dumped = json.loads(witness_file.read_text())
    assert dumped and dumped[0]["suite"] == "axioms"
