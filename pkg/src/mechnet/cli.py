"""Command-line front end: ``mechnet {steady,sweep,pulse,oracle,fig}``.

Exit codes: 0 success, 2 configuration error, 3 solver failure on a
single-point run. Sweeps always exit 0 and flag failed points per row.
"""

import argparse
import logging
import sys

import numpy as np

from . import config, fock, output, sweep
from .cascaded import NonConvergence, SingularSystem, Unstable, entanglement_report
from .figures import FIG6_CURVES, FIGURE_IDS, field_for, figure_spec
from .pulse import e12, subsystem_cm

EXIT_CONFIG = 2
EXIT_SOLVER = 3

log = logging.getLogger("mechnet")


def _load(path, kind):
    if path is None:
        return config.parse_config("", kind)
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise config.ConfigError(f"cannot read {path}: {exc}") from None
    return config.parse_config(text, kind)


def _print_pairs(pairs):
    for k, v in pairs:
        print(f"{k} = {v!r}" if isinstance(v, str) else f"{k} = {v:.10g}")


def cmd_steady(args):
    p = _load(args.config, "cascaded")
    try:
        rep = entanglement_report(p)
    except (NonConvergence, Unstable, SingularSystem) as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    ss = rep.steady
    two_pi = 2 * np.pi
    pairs = [
        ("|G_c|/2pi", abs(ss.G_c) / two_pi), ("|G_1|/2pi", abs(ss.G_1) / two_pi),
        ("|G_2|/2pi", abs(ss.G_2) / two_pi), ("|G_m|/2pi", abs(ss.G_m) / two_pi),
        ("stable_full", float(rep.stability.full)),
        ("stable_upstream", float(rep.stability.upstream)),
        ("stable_downstream", float(rep.stability.downstream)),
    ]
    if rep.stable:
        pairs += [(k, getattr(rep, k)) for k in config.REPORT_FIELDS_A]
        pairs += [("lyapunov_residual", rep.residual), ("physical", float(rep.physical))]
    _print_pairs(pairs)
    if args.out:
        row = sweep.ResultRow({}, {k: getattr(rep, k) for k in config.REPORT_FIELDS_A},
                              stable=rep.stable, residual=rep.residual)
        output.emit_csv([row], args.out, diagnostics=True)
    return 0


def _write_heatmaps(args, table, spec):
    for item in args.heatmap or []:
        name, _, path = item.partition("=")
        if not path:
            raise config.ConfigError(f"--heatmap expects FIELD=PATH, got {item!r}")
        if len(spec.axes) != 2:
            raise config.ConfigError("--heatmap needs a two-axis sweep")
        if name not in spec.outputs:
            raise config.ConfigError(f"--heatmap field {name!r} is not among the outputs")
        output.emit_heatmap(sweep.as_grid(table, spec, name), path)


def _finish_table(args, table, spec):
    if args.out:
        output.emit_csv(table, args.out, diagnostics=spec.scheme == "A")
    else:
        output.write_csv(table, sys.stdout, diagnostics=spec.scheme == "A")
    _write_heatmaps(args, table, spec)


def cmd_sweep(args):
    spec = _load(args.config, "sweep")
    if args.grid:
        spec = config.SweepSpec(spec.scheme, spec.axis1.with_steps(args.grid),
                                spec.axis2.with_steps(args.grid) if spec.axis2 else None,
                                spec.fixed, spec.outputs)
    table = sweep.run_sweep(spec, threads=args.threads)
    _finish_table(args, table, spec)
    return 0


def cmd_pulse(args):
    setup = _load(args.config, "pulse")
    p = setup.pulse_params()
    lab = setup.lab
    two_pi = 2 * np.pi
    _print_pairs([
        ("G_blue/2pi", lab.blue_coupling() / two_pi), ("G_red/2pi", lab.red_coupling() / two_pi),
        ("r", p.r), ("W", p.W), ("R", p.R), ("E_12", e12(p)),
    ])
    if args.out:
        spec = config.SweepSpec("B", config.Axis("R", 0.0, 1.0, args.grid or 101), None,
                                {"r": repr(p.r), "W": repr(p.W)}, ("E_12",))
        output.emit_csv(sweep.run_sweep(spec), args.out, diagnostics=False)
    return 0


def cmd_oracle(args):
    setup = _load(args.config, "pulse")
    p = setup.pulse_params()
    dim = args.truncation or fock.tmsv_dimension(p.r)
    try:
        rho = fock.mechanical_pair(p.r, p.W, p.R, dim)
    except fock.TruncationTooSmall as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    v_num = fock.numeric_cm(rho).matrix
    v_ana = subsystem_cm(p).matrix
    _print_pairs([
        ("r", p.r), ("W", p.W), ("R", p.R), ("truncation", float(dim)),
        ("trace", rho.trace()),
        ("cm_max_abs_diff", float(np.abs(v_num - v_ana).max())),
        ("E_12_gaussian", e12(p)),
        ("E_12_fock", fock.numeric_log_negativity(rho)),
    ])
    return 0


def cmd_fig(args):
    fig_id = args.id or args.fig
    if fig_id not in FIGURE_IDS:
        raise config.ConfigError(f"unknown figure id {fig_id!r}; choose from {', '.join(FIGURE_IDS)}")
    steps = args.grid or (101 if fig_id == "6" else 41)
    if fig_id == "6":
        specs = figure_spec("6", steps)
        curves = [sweep.run_sweep(s, threads=args.threads) for s in specs]
        table = []
        for i, row in enumerate(curves[0]):
            vals = {f"E_12_r{r}_W{w}": c[i].values["E_12"] for (r, w), c in zip(FIG6_CURVES, curves)}
            table.append(sweep.ResultRow(dict(row.axes), vals))
        spec = config.SweepSpec("B", specs[0].axis1, None, {}, tuple(table[0].values))
    else:
        spec = figure_spec(fig_id, steps)
        table = sweep.run_sweep(spec, threads=args.threads)
        if args.heatmap_out:
            output.emit_heatmap(sweep.as_grid(table, spec, field_for(fig_id)), args.heatmap_out)
    args.heatmap = None
    _finish_table(args, table, spec)
    return 0


def build_parser():
    keys = ("scheme A keys:\n" + config.schema("A") + "\n\nscheme B keys:\n"
            + config.schema("B"))
    parser = argparse.ArgumentParser(
        prog="mechnet",
        description="Entanglement distribution between megahertz and gigahertz mechanical nodes.",
        epilog=keys,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, grid=False, threads=False):
        p.add_argument("--config", help="key = value configuration file")
        p.add_argument("--out", help="CSV output path")
        if grid:
            p.add_argument("--grid", type=int, help="steps per axis")
        if threads:
            p.add_argument("--threads", type=int, default=1, help="worker threads")

    p = sub.add_parser("steady", help="single-point report for the cascaded scheme",
                       epilog=config.schema("A"), formatter_class=argparse.RawDescriptionHelpFormatter)
    common(p)
    p.set_defaults(func=cmd_steady)

    p = sub.add_parser("sweep", help="grid sweep from a sweep config")
    common(p, grid=True, threads=True)
    p.add_argument("--heatmap", action="append", metavar="FIELD=PATH",
                   help="also write a PPM heatmap of FIELD")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("pulse", help="pulsed-scheme point; --out writes E_12 versus R",
                       epilog=config.schema("B"), formatter_class=argparse.RawDescriptionHelpFormatter)
    common(p, grid=True)
    p.set_defaults(func=cmd_pulse)

    p = sub.add_parser("oracle", help="Fock-space cross-check of the pulsed scheme")
    common(p)
    p.add_argument("--truncation", type=int, help="Fock levels per mode")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("fig", help="canned figure reproduction")
    common(p, grid=True, threads=True)
    p.add_argument("--id", choices=FIGURE_IDS)
    p.add_argument("--fig", choices=FIGURE_IDS, help="alias of --id")
    p.add_argument("--heatmap-out", help="PPM heatmap path (two-axis figures)")
    p.set_defaults(func=cmd_fig)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    if args.command == "fig" and not (args.id or args.fig):
        parser.error("fig needs --id")
    try:
        return args.func(args)
    except config.ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
