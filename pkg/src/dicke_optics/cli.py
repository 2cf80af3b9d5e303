"""Command-line front end.

    dicke-optics figure {energy,photon_number,statistics,xp_coeffs,all} [options]
    dicke-optics dynamics --theta T --phi P --lambda L [options]
    dicke-optics finite-size --atoms 8 16 32 [options]

Output goes to ``--out``, else ``$DICKE_OPTICS_OUT``, else ``./dicke_output``.
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys
from pathlib import Path

from dicke_optics import __version__
from dicke_optics.figures import FIGURES, SweepSpec, run_dynamics, run_figure, run_finite_size

OUT_ENV = "DICKE_OPTICS_OUT"
DEFAULT_OUT = "dicke_output"

log = logging.getLogger("dicke_optics")


def _beta(text: str) -> float:
    if text.lower() in ("inf", "infinity", "t0"):
        return math.inf
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("beta must be positive")
    return value


def _add_output_args(p: argparse.ArgumentParser):
    p.add_argument("--out", type=Path, default=None, help=f"output directory (default ${OUT_ENV} or ./{DEFAULT_OUT})")
    p.add_argument("--no-timestamp", action="store_true", help="omit the generated= comment line")
    p.add_argument("--plot", action="store_true", help="also render PNG figures next to the CSV files")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dicke-optics", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    fig = sub.add_parser("figure", help="coupling sweep for one figure dataset")
    fig.add_argument("fig_id", choices=(*FIGURES, "all"))
    fig.add_argument("--lambda-min", type=float, default=0.0)
    fig.add_argument("--lambda-max", type=float, default=1.0)
    fig.add_argument("--steps", type=int, default=200)
    fig.add_argument("--epsilon", type=float, default=1.0)
    fig.add_argument("--beta", type=_beta, default=math.inf, help="inverse temperature ('inf' for T=0)")
    fig.add_argument("--atoms", type=int, default=32, help="atom count N for the exact Dicke model")
    fig.add_argument("--cutoff", type=int, default=None, help="fixed Fock cutoff (disables auto-convergence)")
    fig.add_argument("--auto-cutoff-tol", type=float, default=1e-6)
    fig.add_argument("--include-critical", action="store_true", help="keep a grid point sitting exactly on lambda_c")
    fig.add_argument("--jobs", type=int, default=1, help="worker threads for sweep points")
    _add_output_args(fig)

    dyn = sub.add_parser("dynamics", help="coherent-state trajectory")
    dyn.add_argument("--theta", type=float, default=None, help="initial theta (default: fixed point + --offset)")
    dyn.add_argument("--offset", type=float, default=0.0)
    dyn.add_argument("--phi", type=float, default=math.pi)
    dyn.add_argument("--k", type=float, default=0.25, choices=(0.25, 0.75))
    dyn.add_argument("--lambda", dest="lam", type=float, required=True)
    dyn.add_argument("--epsilon", type=float, default=1.0)
    dyn.add_argument("--dt", type=float, default=1e-3)
    dyn.add_argument("--steps", type=int, default=10000)
    dyn.add_argument("--stride", type=int, default=1, help="write every n-th sample")
    _add_output_args(dyn)

    fs = sub.add_parser("finite-size", help="parity-resolved Dicke gap minimum versus N")
    fs.add_argument("--atoms", type=int, nargs="+", default=[8, 16, 32])
    fs.add_argument("--lambda-min", type=float, default=0.40)
    fs.add_argument("--lambda-max", type=float, default=0.80)
    fs.add_argument("--steps", type=int, default=41)
    fs.add_argument("--epsilon", type=float, default=1.0)
    fs.add_argument("--tol", type=float, default=1e-8)
    _add_output_args(fs)
    return parser


def _out_dir(args) -> Path:
    if args.out is not None:
        return args.out
    return Path(os.environ.get(OUT_ENV, DEFAULT_OUT))


def _emit(tables, args) -> list[Path]:
    out = _out_dir(args)
    paths = []
    for table in tables:
        paths.append(table.write(out, timestamp=not args.no_timestamp))
        if args.plot:
            from dicke_optics.plotting import render

            png = render(table, out)
            if png is not None:
                paths.append(png)
    return paths


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")

    try:
        if args.command == "figure":
            spec = SweepSpec(
                lambda_min=args.lambda_min,
                lambda_max=args.lambda_max,
                steps=args.steps,
                epsilon=args.epsilon,
                beta=args.beta,
                n_atoms=args.atoms,
                cutoff=args.cutoff,
                auto_cutoff_tol=args.auto_cutoff_tol,
                include_critical=args.include_critical,
                jobs=args.jobs,
            )
            tables = run_figure(args.fig_id, spec)
        elif args.command == "dynamics":
            theta = args.theta
            if theta is None:
                from dicke_optics.analytic import fixed_point_theta

                theta = fixed_point_theta(args.lam, args.epsilon) + args.offset
            tables = [run_dynamics(theta, args.phi, args.k, args.lam, args.epsilon, args.dt, args.steps, args.stride)]
            status = tables[0].meta["status"]
            if status != "ok":
                log.warning("trajectory stopped early: %s", status)
        else:
            tables = run_finite_size(args.atoms, args.lambda_min, args.lambda_max, args.steps, args.epsilon, args.tol)
    except ValueError as exc:
        parser.error(str(exc))

    for path in _emit(tables, args):
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
