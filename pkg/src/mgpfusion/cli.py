"""Command line entry point: ``mgpfusion <command> ...``.

Commands
--------
generate     simulate field realizations at the sensors (long-format CSV)
fit          fit the Gaussian copula and length scale to repeated observations
reconstruct  R-BLUE / L-BLUE predictions from one observation CSV
experiment   Monte-Carlo comparison of R-BLUE and L-BLUE for one scenario
sweep        the same over the scenario's (l, theta, sigma) grid

Every command writes CSV into ``--out``; unless ``--no-figures`` is given it
also renders figures there (PNG for ``--format csv``, SVG for
``--format svg-data``).
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import io, plotting
from .fitting import fit_length_scale, fit_pseudo_correlation, length_scale_objective
from .harness import Simulator, run_scenario, run_sweep
from .sblue import BluePredictor, CorrelationMode
from .scenario import bundled_scenarios, load_scenario

log = logging.getLogger("mgpfusion")


def _modes(arg):
    if arg == "both":
        return (CorrelationMode.RANK, CorrelationMode.PEARSON)
    return (CorrelationMode(arg),)


def _scenario(args):
    scn = load_scenario(args.scenario)
    changes = {"modes": _modes(args.mode)}
    if args.seed is not None:
        changes["seed"] = args.seed
    if getattr(args, "realizations", None):
        changes["realizations"] = args.realizations
    return replace(scn, **changes)


def _fig(args, out, stem):
    if args.no_figures:
        return None
    return out / f"{stem}.{'svg' if args.format == 'svg-data' else 'png'}"


def cmd_generate(args):
    scn = _scenario(args)
    out = Path(args.out)
    sim = Simulator(scn)
    field_rows, truth_rows = [], []
    for r in range(scn.realizations):
        d = sim.draw(r)
        for i in range(scn.n_sensors):
            x = scn.sensor_X[i]
            field_rows.append((r, x[0], x[1], scn.sensor_modality[i] + 1,
                               d.f_sensor[i], d.u[i], d.z[i], d.y[i]))
        for i, x in enumerate(scn.query_X):
            truth_rows.append((r, x[0], x[1], scn.query_modality[i] + 1, d.f_query[i]))
    io.write_csv(out / "field.csv", io.FIELD_HEADER, field_rows)
    io.write_csv(out / "truth.csv", io.TRUTH_HEADER, truth_rows)
    fig = _fig(args, out, "field")
    if fig:
        plotting.plot_field(scn, sim.draw(0), fig)
    print(f"wrote {scn.realizations} realization(s) to {out}")


def cmd_fit(args):
    data = io.read_sample_matrix(args.samples, value_col=args.column)
    out = Path(args.out)
    R = fit_pseudo_correlation(data, args.estimator)
    n = R.shape[0]
    io.write_csv(out / "pseudo_correlation.csv", ["i", "j", "modality_i", "modality_j", "r"],
                 ((i + 1, j + 1, data.modality[i] + 1, data.modality[j] + 1, R[i, j])
                  for i in range(n) for j in range(n)))
    same = data.modality[:, None] == data.modality[None, :]
    rows = []
    for m in np.unique(data.modality):
        sel = data.modality == m
        if sel.sum() >= 2:
            rows.append((m + 1, fit_length_scale(R[np.ix_(sel, sel)], data.X[sel])))
    rows.append(("all", fit_length_scale(R, data.X, mask=same)))
    io.write_csv(out / "length_scale.csv", ["modality", "length_scale"], rows)
    for m, l in rows:
        print(f"modality {m}: length scale {l:.6g}")
    fig = _fig(args, out, "fit")
    if fig:
        _plot_fit(R, data, same, rows[-1][1], fig)


def _plot_fit(R, data, mask, l_hat, path):
    plt = plotting.plt
    obj = length_scale_objective(R, data.X, mask)
    grid = np.linspace(np.log(l_hat) - 2.5, np.log(l_hat) + 2.5, 200)
    with plt.rc_context(plotting.RC):
        fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.8))
        im = ax1.imshow(R, vmin=-1, vmax=1, cmap="RdBu_r")
        fig.colorbar(im, ax=ax1)
        ax1.set_title("pseudo correlation")
        ax2.plot(np.exp(grid), [obj(g) for g in grid])
        ax2.axvline(l_hat, color="#D55E00", ls="--")
        ax2.set_xscale("log")
        ax2.set_xlabel("length scale")
        ax2.set_ylabel("squared residual")
        plotting.save(fig, path)


def cmd_reconstruct(args):
    scn = _scenario(args)
    obs = io.read_observations(args.observations, realization=args.realization)
    out = Path(args.out)
    Xq, mq = scn.query_X, scn.query_modality
    f_by_mode, mse_by_mode = {}, {}
    for mode in scn.modes:
        f_hat, mse = BluePredictor(obs, scn.model, mode, scn.noise_model).predict(Xq, mq)
        io.write_predictions(out / f"predictions_{mode.value}.csv", Xq, mq, f_hat, mse)
        f_by_mode[mode.value], mse_by_mode[mode.value] = f_hat, mse
    fig = _fig(args, out, "predictions")
    if fig:
        plotting.plot_predictions(Xq, mq, f_by_mode, mse_by_mode, fig)
    print(f"wrote predictions for {len(Xq)} query points to {out}")


def cmd_experiment(args):
    scn = _scenario(args)
    out = Path(args.out)
    report = run_scenario(scn)
    io.write_realizations(out / "realizations.csv", report)
    io.write_summary(out / "summary.csv", report)
    means = report.mean_mse()
    for m in range(report.n_modalities):
        line = ", ".join(f"{mode} {means[i, m]:.4f}" for i, mode in enumerate(report.modes))
        print(f"{scn.name} GP{m + 1}: mean MSE {line}")
    if not args.no_figures:
        plotting.plot_mse_summary(report, _fig(args, out, "mse_summary"))
        sim = Simulator(scn)
        d = sim.draw(0)
        plotting.plot_field(scn, d, _fig(args, out, "field"))
        preds = {mode.value: sim.predict(d.y, mode) for mode in scn.modes}
        plotting.plot_reconstruction(scn, d, preds, _fig(args, out, "reconstruction"))


def cmd_sweep(args):
    scn = _scenario(args)
    out = Path(args.out)
    reports = run_sweep(scn)
    io.write_sweep(out / "sweep.csv", reports)
    for r in reports:
        means = r.mean_mse().mean(axis=1)
        vals = ", ".join(f"{mode} {v:.4f}" for mode, v in zip(r.modes, means))
        p = r.params
        print(f"l={p['l']:g} theta={p['theta']:g} sigma={p['sigma']:g}: {vals}")
    if not args.no_figures:
        plotting.plot_sweep(reports, "l", _fig(args, out, "mse_vs_l"))
        plotting.plot_sweep(reports, "theta", _fig(args, out, "mse_vs_theta"))


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=".", help="output directory (default: .)")
    common.add_argument("--format", choices=["csv", "svg-data"], default="csv",
                        help="csv: CSV + PNG figures; svg-data: CSV + SVG figures")
    common.add_argument("--no-figures", action="store_true", help="write CSV only")
    common.add_argument("-v", "--verbose", action="store_true")

    scen = argparse.ArgumentParser(add_help=False)
    scen.add_argument("scenario",
                      help=f"scenario TOML path or bundled name ({', '.join(bundled_scenarios())})")
    scen.add_argument("--seed", type=int, help="override the scenario seed")
    scen.add_argument("--mode", choices=["rank", "pearson", "both"], default="both")

    parser = argparse.ArgumentParser(prog="mgpfusion", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", parents=[common, scen], help="simulate field realizations")
    p.add_argument("--realizations", type=int, help="override the realization count")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("fit", parents=[common], help="fit copula correlation and length scale")
    p.add_argument("samples", help="long-format CSV with realization,x1,x2,modality,<value>")
    p.add_argument("--estimator", choices=["spearman", "kendall"], default="spearman")
    p.add_argument("--column", default="y", help="value column (default: y)")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("reconstruct", parents=[common],
                       help="predict the latent fields from observations")
    p.add_argument("observations", help="CSV with x1,x2,modality,y")
    p.add_argument("scenario", help="scenario supplying the model and query locations")
    p.add_argument("--mode", choices=["rank", "pearson", "both"], default="both")
    p.add_argument("--realization", help="realization to use when the CSV holds several")
    p.set_defaults(func=cmd_reconstruct, seed=None)

    p = sub.add_parser("experiment", parents=[common, scen], help="run one Monte-Carlo scenario")
    p.add_argument("--realizations", type=int, help="override the realization count")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("sweep", parents=[common, scen], help="run the scenario's parameter grid")
    p.add_argument("--realizations", type=int, help="override the realization count")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except (ValueError, FileNotFoundError, np.linalg.LinAlgError) as exc:
        print(f"mgpfusion {args.command}: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
