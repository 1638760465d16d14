"""
CLI de extremo a extremo: synth -> train -> project -> score -> eval
"""

import io
from pathlib import Path

import pytest
from rich.console import Console

from baryalign import __version__
from baryalign.cli.cli import CLI
from baryalign.services import storage_service as storage


def run_cli(*argv: str):
    stdout = io.StringIO()
    stderr = io.StringIO()
    code = CLI(stdout=stdout, console=Console(file=stderr, width=200)).run([str(a) for a in argv])
    return code, stdout.getvalue(), stderr.getvalue()


def _synth(out: Path, models: int = 3, *extra: str) -> Path:
    code, _, err = run_cli(
        "synth", "--n-train", 60, "--m-test", 20, "--d", 6, "--models", models,
        "--noise", 0.05, "--seed", 7, "--out", out, *extra,
    )
    assert code == 0, err
    return out


def _pipeline(root: Path, threads: int) -> Path:
    data = _synth(root / "data")
    for argv in (
        ("train", "--pool", data / "train" / "manifest.json", "--out", root / "bundle"),
        ("project", "--model", root / "bundle", "--pool", data / "test" / "manifest.json", "--out", root / "projected"),
        ("score", "--projected", root / "projected" / "manifest.json", "--out", root / "scores.tsv"),
        ("eval", "--projected", root / "projected" / "manifest.json", "--topk", "1,5", "--out", root / "eval.tsv"),
    ):
        code, _, err = run_cli(*argv, "--threads", threads)
        assert code == 0, err
    return root


def test_full_pipeline(tmp_path):
    root = _pipeline(tmp_path, threads=1)

    assert (root / "data" / "truth" / "ground_truth.json").exists()
    assert (root / "bundle" / "metadata.json").exists()
    scores = storage.load_consistency_report(root / "scores.tsv")
    assert len(scores.scores) == 20
    assert scores.mean_score > 0.9

    report = storage.load_eval_report(root / "eval.tsv")
    assert report.n_stimuli == 20
    assert report.chance_levels == {1: 0.05, 5: 0.25}
    assert all(acc[1] == 1.0 for acc in report.per_model_retrieval.values())


def test_reports_do_not_depend_on_thread_count(tmp_path):
    single = _pipeline(tmp_path / "one", threads=1)
    multi = _pipeline(tmp_path / "four", threads=4)
    for name in ("scores.tsv", "eval.tsv"):
        assert (single / name).read_bytes() == (multi / name).read_bytes()
    assert (single / "bundle" / "barycenter.barymat").read_bytes() == (
        multi / "bundle" / "barycenter.barymat"
    ).read_bytes()


def test_train_prints_summary(tmp_path):
    data = _synth(tmp_path / "data")
    code, out, _ = run_cli("train", "--pool", data / "train" / "manifest.json", "--out", tmp_path / "bundle")
    assert code == 0
    keys = [line.split("\t")[0] for line in out.splitlines()]
    assert keys == ["iterations_run", "final_objective", "final_relative_change", "converged"]
    assert "converged\ttrue" in out


def test_budget_exhaustion_is_not_an_error_unless_strict(tmp_path):
    data = _synth(tmp_path / "data")
    pool = data / "train" / "manifest.json"

    code, out, _ = run_cli("train", "--pool", pool, "--out", tmp_path / "loose", "--max-iters", 1, "--eps", 1e-15)
    assert code == 0
    assert "converged\tfalse" in out

    code, _, err = run_cli("train", "--pool", pool, "--out", tmp_path / "strict", "--max-iters", 1, "--eps", 1e-15, "--strict")
    assert code == 9
    assert "NotConverged" in err
    assert (tmp_path / "strict" / "metadata.json").exists()


def test_invalid_manifest_writes_nothing(tmp_path):
    manifest = tmp_path / "manifest.json"
    manifest.write_text("{oops")
    code, _, err = run_cli("train", "--pool", manifest, "--out", tmp_path / "bundle")
    assert code == 5
    assert "ManifestParse" in err
    assert not (tmp_path / "bundle").exists()


def test_missing_files_exit_with_io_code(tmp_path):
    code, _, _ = run_cli("train", "--pool", tmp_path / "missing.json", "--out", tmp_path / "bundle")
    assert code == 6
    code, _, _ = run_cli("score", "--projected", tmp_path / "p.json", "--config", tmp_path / "none.json")
    assert code == 6


def test_project_requires_subset_flag_for_partial_pools(tmp_path):
    data = _synth(tmp_path / "data")
    partial = _synth(tmp_path / "partial", 2)
    run_cli("train", "--pool", data / "train" / "manifest.json", "--out", tmp_path / "bundle")

    args = ("project", "--model", tmp_path / "bundle", "--pool", partial / "test" / "manifest.json",
            "--out", tmp_path / "projected")
    code, _, err = run_cli(*args)
    assert code == 3
    assert "ModelPoolMismatch" in err

    code, _, _ = run_cli(*args, "--subset")
    assert code == 0
    assert storage.load_projected(tmp_path / "projected" / "manifest.json").model_ids == ("model-0000", "model-0001")


def test_score_and_eval_print_to_stdout(tmp_path):
    root = _pipeline(tmp_path, threads=1)
    projected = root / "projected" / "manifest.json"

    code, out, _ = run_cli("score", "--projected", projected, "--pair", "model-0000,model-0002")
    assert code == 0
    assert out.startswith(f"# {storage.CONSISTENCY_FORMAT} v1\n")
    assert "# models: model-0000,model-0002" in out

    code, out, _ = run_cli("eval", "--projected", projected, "--subset", "model-0000,model-0001", "--topk", "1")
    assert code == 0
    assert "*\tchance\t1\t0.05" in out.splitlines()

    code, out, _ = run_cli("eval", "--projected", projected, "--format", "table",
                           "--query-models", "model-0000", "--gallery-models", "model-0001,model-0002")
    assert code == 0
    assert "Top-10" in out
    assert "cruzado (forward)" in out


def test_validation_errors_exit_two(tmp_path):
    root = _pipeline(tmp_path, threads=1)
    projected = root / "projected" / "manifest.json"

    assert run_cli("train")[0] == 2
    assert run_cli("eval", "--projected", projected, "--topk", "50")[0] == 2
    assert run_cli("eval", "--projected", projected, "--topk", "x")[0] == 2
    assert run_cli("score", "--projected", projected, "--pair", "model-0000")[0] == 2
    assert run_cli("eval", "--projected", projected, "--query-models", "model-0000")[0] == 2
    assert run_cli("synth", "--n-train", 5, "--m-test", 5, "--d", 3, "--models", 1, "--out", tmp_path / "x")[0] == 2


def test_missing_command_and_bad_choice():
    assert run_cli()[0] == 2
    with pytest.raises(SystemExit) as excinfo:
        run_cli("fly")
    assert excinfo.value.code == 2


def test_version_lists_formats():
    code, out, _ = run_cli("--version")
    assert code == 0
    lines = dict(line.split("\t", 1) for line in out.splitlines())
    assert lines["baryalign"] == __version__
    assert lines["matrix"] == "BARYMAT1 v1"
    assert lines["generator"] == "numpy.random.PCG64"

    assert run_cli("version")[1] == out


def test_config_file_supplies_defaults(tmp_path):
    root = _pipeline(tmp_path, threads=1)
    config = tmp_path / "config.json"
    config.write_text('{"ks": [1, 2], "report_format": "tsv"}')
    code, out, _ = run_cli("eval", "--projected", root / "projected" / "manifest.json", "--config", config)
    assert code == 0
    assert "# ks: 1,2" in out
