"""Headered CSV readers and writers.

Floats are written with ``repr`` so files round-trip exactly and identical
inputs give byte-identical output. Modality labels are 1-based on disk.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .fitting import SampleMatrix
from .sblue import ObservationSet

REALIZATIONS_HEADER = ["realization", "modality", "mode", "mse"]
SUMMARY_HEADER = ["modality", "mode", "mean_mse"]
SWEEP_HEADER = ["l", "theta", "sigma", "mode", "modality", "mean_mse"]
PREDICTIONS_HEADER = ["x1", "x2", "modality", "f_hat", "mse"]
FIELD_HEADER = ["realization", "x1", "x2", "modality", "f", "u", "z", "y"]
TRUTH_HEADER = ["realization", "x1", "x2", "modality", "f"]


def fmt(x):
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    if isinstance(x, np.integer):
        return str(int(x))
    return str(x)


def write_csv(path, header, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\r\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])
    return path


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def write_realizations(path, report):
    rows = (
        (r, m + 1, mode, report.mse[r, i, m])
        for r in range(report.mse.shape[0])
        for i, mode in enumerate(report.modes)
        for m in range(report.n_modalities)
    )
    return write_csv(path, REALIZATIONS_HEADER, rows)


def write_summary(path, report):
    means = report.mean_mse()
    rows = ((m + 1, mode, means[i, m])
            for m in range(report.n_modalities) for i, mode in enumerate(report.modes))
    return write_csv(path, SUMMARY_HEADER, rows)


def write_sweep(path, reports):
    rows = []
    for rep in reports:
        means = rep.mean_mse()
        p = rep.params
        for i, mode in enumerate(rep.modes):
            for m in range(rep.n_modalities):
                rows.append((p["l"], p["theta"], p["sigma"], mode, m + 1, means[i, m]))
    return write_csv(path, SWEEP_HEADER, rows)


def write_predictions(path, X, modality, f_hat, mse):
    rows = ((x[0], x[1], m + 1, f, v) for x, m, f, v in zip(X, modality, f_hat, mse))
    return write_csv(path, PREDICTIONS_HEADER, rows)


def read_realizations(path):
    """Per-realization rows as ``{(mode, modality): array}`` in file order."""
    out = {}
    for row in read_csv(path):
        key = (row["mode"], int(row["modality"]))
        out.setdefault(key, []).append(float(row["mse"]))
    return {k: np.array(v) for k, v in out.items()}


def _long_rows(path, value_col):
    rows = read_csv(path)
    if not rows:
        raise ValueError(f"{path}: no data rows")
    missing = {"x1", "x2", "modality", value_col} - set(rows[0])
    if missing:
        raise ValueError(f"{path}: missing columns {sorted(missing)}")
    return rows


def read_observations(path, realization=None, noise_var=None) -> ObservationSet:
    """Read ``x1,x2,modality,y`` rows; a ``realization`` column selects one data set."""
    rows = _long_rows(path, "y")
    if "realization" in rows[0]:
        wanted = rows[0]["realization"] if realization is None else str(realization)
        rows = [r for r in rows if r["realization"] == wanted]
        if not rows:
            raise ValueError(f"{path}: no rows for realization {realization}")
    X = np.array([[float(r["x1"]), float(r["x2"])] for r in rows])
    modality = np.array([int(r["modality"]) - 1 for r in rows])
    y = np.array([float(r["y"]) for r in rows])
    return ObservationSet(X, modality, y, noise_var=noise_var)


def read_sample_matrix(path, value_col="y") -> SampleMatrix:
    """Pivot long-format ``realization,x1,x2,modality,<value>`` rows into a SampleMatrix.

    Sensors are keyed by ``(modality, x1, x2)`` in order of first appearance.
    """
    rows = _long_rows(path, value_col)
    if "realization" not in rows[0]:
        raise ValueError(f"{path}: a 'realization' column is required")
    sensors = {}
    reals = {}
    for r in rows:
        key = (int(r["modality"]), r["x1"], r["x2"])
        sensors.setdefault(key, len(sensors))
        reals.setdefault(r["realization"], len(reals))
    values = np.full((len(reals), len(sensors)), np.nan)
    for r in rows:
        key = (int(r["modality"]), r["x1"], r["x2"])
        values[reals[r["realization"]], sensors[key]] = float(r[value_col])
    if np.isnan(values).any():
        raise ValueError(f"{path}: every realization must observe every sensor")
    keys = list(sensors)
    X = np.array([[float(k[1]), float(k[2])] for k in keys])
    modality = np.array([k[0] - 1 for k in keys])
    return SampleMatrix(values, X, modality)
