"""Figures written next to the CSV reports.

Everything renders off-screen through the Agg backend; ``save`` picks the
format from the file suffix (``.png`` or ``.svg``).
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

MODE_STYLE = {
    "rank": {"color": "#D55E00", "linestyle": "-", "label": "R-BLUE"},
    "pearson": {"color": "#0072B2", "linestyle": "--", "label": "L-BLUE"},
}
MODALITY_COLORS = ["#000000", "#009E73", "#CC79A7", "#E69F00"]

RC = {
    "figure.figsize": (7.0, 4.3),
    "figure.dpi": 110,
    "axes.spines.right": False,
    "axes.spines.top": False,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "legend.frameon": False,
    "font.size": 10,
    "lines.linewidth": 1.6,
    "svg.hashsalt": "mgpfusion",
}


def save(fig, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    # no timestamp in svg metadata so reruns give identical files
    meta = {"Date": None} if path.suffix == ".svg" else None
    fig.savefig(path, metadata=meta)
    plt.close(fig)
    return path


def _transect(X):
    return X[:, 0] if np.ptp(X[:, 1]) == 0 else np.arange(len(X))


def plot_field(scn, draw, path):
    """Latent GPs and their physical counterparts for one draw."""
    with plt.rc_context(RC):
        fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(7, 6))
        for m in range(scn.model.n_modalities):
            c = MODALITY_COLORS[m % len(MODALITY_COLORS)]
            qs = scn.query_modality == m
            ss = scn.sensor_modality == m
            ax1.plot(_transect(scn.query_X[qs]), draw.f_query[qs], color=c, label=f"f{m + 1}")
            ax1.plot(_transect(scn.sensor_X[ss]), draw.f_sensor[ss], "o", color=c, ms=3)
            ax2.plot(_transect(scn.sensor_X[ss]), draw.z[ss], "-o", color=c, ms=3,
                     label=f"Z{m + 1}")
            ax2.plot(_transect(scn.sensor_X[ss]), draw.y[ss], "x", color=c, ms=4, alpha=0.7)
        ax1.set_ylabel("latent intensity")
        ax1.legend()
        ax2.set_ylabel("physical field / obs (x)")
        ax2.set_xlabel("location")
        ax2.legend()
        return save(fig, path)


def plot_reconstruction(scn, draw, predictions, path):
    """Truth vs. R-BLUE/L-BLUE predictions, one panel per modality.

    ``predictions`` maps mode name to the query-point predictions.
    """
    M = scn.model.n_modalities
    with plt.rc_context(RC):
        fig, axes = plt.subplots(M, 1, sharex=True, figsize=(7, 3 * M), squeeze=False)
        for m, ax in enumerate(axes[:, 0]):
            qs = scn.query_modality == m
            x = _transect(scn.query_X[qs])
            ax.plot(x, draw.f_query[qs], color="0.3", lw=2.2, label="true GP")
            for mode, f_hat in predictions.items():
                ax.plot(x, f_hat[qs], **MODE_STYLE[mode])
            ax.set_ylabel(f"GP {m + 1}")
            ax.legend(ncol=3)
        axes[-1, 0].set_xlabel("location")
        return save(fig, path)


def plot_predictions(Xq, mq, f_hat_by_mode, mse_by_mode, path, obs=None):
    M = int(np.max(mq)) + 1
    with plt.rc_context(RC):
        fig, axes = plt.subplots(M, 1, sharex=True, figsize=(7, 3 * M), squeeze=False)
        for m, ax in enumerate(axes[:, 0]):
            qs = mq == m
            x = _transect(Xq[qs])
            for mode, f_hat in f_hat_by_mode.items():
                sd = np.sqrt(mse_by_mode[mode][qs])
                style = MODE_STYLE[mode]
                ax.plot(x, f_hat[qs], **style)
                ax.fill_between(x, f_hat[qs] - 2 * sd, f_hat[qs] + 2 * sd,
                                color=style["color"], alpha=0.12)
            ax.set_ylabel(f"latent {m + 1}")
            ax.legend()
        axes[-1, 0].set_xlabel("location")
        return save(fig, path)


def plot_mse_summary(report, path):
    means = report.mean_mse()
    M = report.n_modalities
    width = 0.8 / len(report.modes)
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(5, 3.5))
        for i, mode in enumerate(report.modes):
            st = MODE_STYLE[mode]
            ax.bar(np.arange(M) + i * width, means[i], width, color=st["color"], label=st["label"])
        ax.set_xticks(np.arange(M) + 0.4 - width / 2)
        ax.set_xticklabels([f"GP{m + 1}" for m in range(M)])
        ax.set_ylabel(f"mean MSE ({report.mse.shape[0]} realizations)")
        ax.set_title(report.scenario)
        ax.legend()
        return save(fig, path)


def plot_sweep(reports, x_param, path, fixed=None):
    """MSE against ``x_param`` ("l" or "theta"), one line per (mode, sigma).

    ``fixed`` pins the remaining grid parameter (default: its first value).
    """
    other = "theta" if x_param == "l" else "l"
    if fixed is None:
        fixed = reports[0].params[other]
    sel = [r for r in reports if r.params[other] == fixed]
    sigmas = sorted({r.params["sigma"] for r in sel})
    with plt.rc_context(RC):
        fig, ax = plt.subplots()
        for k, sigma in enumerate(sigmas):
            pts = sorted((r for r in sel if r.params["sigma"] == sigma),
                         key=lambda r: r.params[x_param])
            xs = [r.params[x_param] for r in pts]
            for i, mode in enumerate(pts[0].modes):
                st = MODE_STYLE[mode]
                ys = [r.mean_mse()[i].mean() for r in pts]
                ax.plot(xs, ys, marker="os^v"[k % 4], color=st["color"],
                        linestyle=st["linestyle"], label=f"{st['label']}, sigma={sigma:g}")
        ax.set_xlabel("length scale l" if x_param == "l" else "theta")
        ax.set_ylabel("mean MSE")
        ax.set_yscale("log")
        ax.set_title(f"{other} = {fixed:g}")
        ax.legend(fontsize=8, ncol=2)
        return save(fig, path)
