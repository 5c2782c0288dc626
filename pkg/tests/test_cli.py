import numpy as np
import pytest

from lemon.cli import cli_main
from lemon.records import parse_record


def run_cli(capsys, *argv):
    code = cli_main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture(scope="module")
def planted_files(tmp_path_factory):
    tmp = tmp_path_factory.mktemp("data")
    prefix = str(tmp / "fig")
    code = cli_main(["gen", "--preset", "figure1", "--rng-seed", "7", "--out-prefix", prefix])
    assert code == 0
    return f"{prefix}_edges.txt", f"{prefix}_communities.txt"


def test_gen_is_deterministic(tmp_path, capsys):
    a = str(tmp_path / "a")
    b = str(tmp_path / "b")
    code1, out1, _ = run_cli(capsys, "gen", "--preset", "figure1", "--rng-seed", "3", "--out-prefix", a)
    code2, out2, _ = run_cli(capsys, "gen", "--preset", "figure1", "--rng-seed", "3", "--out-prefix", b)
    assert code1 == code2 == 0
    assert out1.replace(a, "X") == out2.replace(b, "X")
    with open(f"{a}_edges.txt", "rb") as fa, open(f"{b}_edges.txt", "rb") as fb:
        assert fa.read() == fb.read()


def test_gen_custom_groups(tmp_path, capsys):
    prefix = str(tmp_path / "tiny")
    code, out, _ = run_cli(
        capsys,
        "gen",
        "--groups", "8:1.0,6:1.0",
        "--overlaps", "0:1:2",
        "--background-p", "0.0",
        "--rng-seed", "1",
        "--out-prefix", prefix,
    )
    assert code == 0
    record = parse_record(out)
    assert record["vertices"] == 12
    assert record["group_sizes"] == [8, 6]


def test_detect_subcommand(planted_files, capsys):
    edges, comms = planted_files
    with open(comms) as fh:
        first = fh.readline().split()
    seeds = ",".join(first[:3])
    code, out, err = run_cli(
        capsys,
        "detect",
        "--graph", edges,
        "--seeds", seeds,
        "--ground-truth", comms,
        "--community-index", "0",
        "--rng-seed", "5",
    )
    assert code == 0, err
    record = parse_record(out)
    assert record["chosen_size"] == len(record["members"])
    assert record["stop_reason"] in ("size_exceeded", "max_iter")


def test_detect_auto_mode_without_truth(planted_files, capsys):
    edges, _ = planted_files
    code, out, err = run_cli(
        capsys,
        "detect",
        "--graph", edges,
        "--seeds", "0,1,2",
        "--mode", "auto",
        "--avg-comm-size", "100",
    )
    assert code == 0, err
    record = parse_record(out)
    assert record["params.mode"] == "auto"
    assert "iteration_phi_min" in record


def test_detect_gt_mode_without_truth_is_usage_error(planted_files, capsys):
    edges, _ = planted_files
    code, _, err = run_cli(capsys, "detect", "--graph", edges, "--seeds", "0,1")
    assert code == 1
    assert "--ground-truth" in err


def test_unknown_flag_exits_one(capsys):
    code, _, err = run_cli(capsys, "detect", "--graph", "x", "--seeds", "1", "--bogus")
    assert code == 1
    assert "usage" in err.lower()


def test_missing_file_exits_two(capsys):
    code, _, err = run_cli(capsys, "detect", "--graph", "/nonexistent", "--seeds", "1", "--mode", "auto", "--avg-comm-size", "5")
    assert code == 2
    assert err


def test_foreign_seed_exits_two(planted_files, capsys):
    edges, _ = planted_files
    code, _, err = run_cli(
        capsys, "detect", "--graph", edges, "--seeds", "99999", "--mode", "auto", "--avg-comm-size", "10"
    )
    assert code == 2
    assert "99999" in err


def test_batch_subcommand(planted_files, capsys):
    edges, comms = planted_files
    code, out, err = run_cli(
        capsys,
        "batch",
        "--graph", edges,
        "--ground-truth", comms,
        "--cases", "3",
        "--rng-seed", "2",
        "--seed-count", "3",
        "--max-iterations", "3",
    )
    assert code == 0, err
    record = parse_record(out)
    assert record["cases"] == 3
    assert len(record["f1_scores"]) == 3


def test_eval_subcommand(tmp_path, capsys):
    detected = tmp_path / "detected.txt"
    truth = tmp_path / "truth.txt"
    detected.write_text("1 2 3\n7 8\n")
    truth.write_text("1 2 3 4\n9 10\n")
    code, out, err = run_cli(capsys, "eval", "--detected", str(detected), "--ground-truth", str(truth))
    assert code == 0, err
    record = parse_record(out)
    assert record["detected_count"] == 2
    first = record["best_f1"][0]
    assert first == pytest.approx(6 / 7, rel=1e-5)
    assert record["best_match_indices"] == [0, 0]


def test_sweep_params_smoke(planted_files, capsys):
    edges, comms = planted_files
    code, out, err = run_cli(
        capsys,
        "sweep-params",
        "--graph", edges,
        "--ground-truth", comms,
        "--dims", "2,3",
        "--walk-steps", "3",
        "--cases", "2",
        "--rng-seed", "1",
        "--seed-count", "3",
        "--max-iterations", "2",
    )
    assert code == 0, err
    record = parse_record(out)
    assert record["dimensions"] == [2, 3]
    assert record["combos"] == 2
