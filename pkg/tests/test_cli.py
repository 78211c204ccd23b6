import subprocess
import sys

import numpy as np
import pytest

from mgpfusion import io
from mgpfusion.cli import main


def run(*args):
    return main([str(a) for a in args])


def test_experiment_outputs_are_reproducible(tmp_path):
    for d in ("a", "b"):
        assert run("experiment", "bivariate_gamma", "--realizations", 40, "--seed", 5,
                   "--out", tmp_path / d, "--format", "svg-data") == 0
    for name in ("realizations.csv", "summary.csv", "mse_summary.svg", "reconstruction.svg"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    assert run("experiment", "bivariate_gamma", "--realizations", 40, "--seed", 6,
               "--out", tmp_path / "c", "--no-figures") == 0
    assert (tmp_path / "c" / "realizations.csv").read_bytes() != \
        (tmp_path / "a" / "realizations.csv").read_bytes()
    assert not list((tmp_path / "c").glob("*.png"))


def test_single_mode(tmp_path):
    assert run("experiment", "single_gp", "--realizations", 5, "--mode", "rank",
               "--out", tmp_path, "--no-figures") == 0
    modes = {r["mode"] for r in io.read_csv(tmp_path / "summary.csv")}
    assert modes == {"rank"}


def test_generate_fit_reconstruct_chain(tmp_path):
    assert run("generate", "bivariate_gamma", "--realizations", 300, "--out", tmp_path) == 0
    assert (tmp_path / "field.png").exists()
    field = io.read_csv(tmp_path / "field.csv")
    assert len(field) == 300 * 40
    assert len(io.read_csv(tmp_path / "truth.csv")) == 300 * 102

    assert run("fit", tmp_path / "field.csv", "--out", tmp_path, "--column", "f") == 0
    ls = {r["modality"]: float(r["length_scale"]) for r in io.read_csv(tmp_path / "length_scale.csv")}
    assert ls["all"] == pytest.approx(1.0, rel=0.1)
    R = io.read_csv(tmp_path / "pseudo_correlation.csv")
    assert len(R) == 40 * 40

    assert run("reconstruct", tmp_path / "field.csv", "bivariate_gamma", "--realization", 0,
               "--out", tmp_path) == 0
    preds = io.read_csv(tmp_path / "predictions_rank.csv")
    assert list(preds[0]) == io.PREDICTIONS_HEADER
    assert len(preds) == 102
    assert all(float(r["mse"]) >= 0 for r in preds)
    assert (tmp_path / "predictions.png").exists()


def test_sweep(tmp_path):
    assert run("sweep", "sweep_impulse20", "--realizations", 20, "--out", tmp_path) == 0
    rows = io.read_csv(tmp_path / "sweep.csv")
    assert list(rows[0]) == io.SWEEP_HEADER
    assert len(rows) == 27 * 2 * 2
    assert (tmp_path / "mse_vs_l.png").exists() and (tmp_path / "mse_vs_theta.png").exists()


def test_errors_exit_nonzero(tmp_path, capsys):
    assert run("experiment", "nope", "--out", tmp_path) == 2
    assert "error" in capsys.readouterr().err
    with pytest.raises(SystemExit):
        run("experiment", "bivariate_gamma", "--mode", "other")


def test_module_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "mgpfusion", "experiment", "single_gp",
                          "--realizations", "3", "--no-figures", "--out", str(tmp_path)],
                         capture_output=True, text=True, check=True)
    assert "single_gp" in out.stdout
    assert np.isfinite([float(r["mean_mse"]) for r in io.read_csv(tmp_path / "summary.csv")]).all()
