"""Command-line interface: ``vortexff {amplitude,sweep,figure}``.

Exit status is 0 on success, 1 for bad arguments or configuration and 2 when
any row failed to converge (the table is still written in full).
"""
from __future__ import annotations

import argparse
import sys
from contextlib import contextmanager
from pathlib import Path

from .cubature import IntegratorConfig
from .sweeps import AXES, FIGURE_PRESETS, SweepSpec, figure_spec, make_config, run_point, run_sweep, write_csv

EXIT_OK, EXIT_USAGE, EXIT_UNCONVERGED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_integrator_flags(p, defaults: bool = True):
    d = IntegratorConfig()
    p.add_argument("--abs-tol", type=float, default=d.abs_tol if defaults else None)
    p.add_argument("--rel-tol", type=float, default=d.rel_tol if defaults else None)
    p.add_argument("--max-evals", type=int, default=d.max_evals if defaults else None)
    p.add_argument("--r-max-factor", type=float, default=30.0)


def _add_point_flags(p):
    p.add_argument("--config", type=Path, help="file of 'key = value' lines mirroring the flags")
    p.add_argument("--initial", default="1s")
    p.add_argument("--initial-m", type=int, default=0)
    p.add_argument("--final", default="3d")
    p.add_argument("--final-m", type=int, default=None,
                   help="default: initial-m + l-in - l-out")
    p.add_argument("--l-in", type=int, default=1)
    p.add_argument("--l-out", type=int, default=-1)
    p.add_argument("--p-in", type=int, default=0)
    p.add_argument("--p-out", type=int, default=0)
    p.add_argument("--wavelength-nm", type=float, default=550.0)
    p.add_argument("--rayleigh-nm", type=float, default=1000.0)
    p.add_argument("--theta-rad", type=float, default=0.0)
    p.add_argument("--pol-overlap", type=float, default=1.0)
    _add_integrator_flags(p)
    p.add_argument("--out", type=Path, help="CSV path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vortexff", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    amp = sub.add_parser("amplitude", help="evaluate a single configuration")
    _add_point_flags(amp)

    sw = sub.add_parser("sweep", help="sweep one parameter over a grid")
    _add_point_flags(sw)
    sw.add_argument("--axis", choices=AXES, required=True)
    sw.add_argument("--from", dest="start", type=float, required=True)
    sw.add_argument("--to", dest="stop", type=float, required=True)
    sw.add_argument("--points", type=int, required=True)
    sw.add_argument("--scale", choices=("linear", "log"), default="linear")
    sw.add_argument("--jobs", type=int, default=1)

    fig = sub.add_parser("figure", help="reproduce a figure panel")
    fig.add_argument("--id", dest="fig_id", choices=sorted(FIGURE_PRESETS), required=True)
    fig.add_argument("--points", type=int, default=None)
    fig.add_argument("--jobs", type=int, default=1)
    _add_integrator_flags(fig, defaults=False)
    fig.add_argument("--out", type=Path)
    return parser


def _config_file_args(path: Path) -> list[str]:
    args = []
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lstrip("-").replace("_", "-")
        if key == "config":
            raise UsageError(f"{path}:{lineno}: nested config files are not supported")
        args += [f"--{key}", value]
    return args


def parse_args(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "config", None) is not None:
        try:
            file_args = _config_file_args(args.config)
        except OSError as exc:
            raise UsageError(f"cannot read config file: {exc}") from None
        # file values first so explicit flags override them
        args = parser.parse_args([argv[0], *file_args, *argv[1:]])
    return args


def _integrator(args, fallback: IntegratorConfig | None = None) -> IntegratorConfig:
    base = fallback or IntegratorConfig()
    return IntegratorConfig(
        abs_tol=base.abs_tol if args.abs_tol is None else args.abs_tol,
        rel_tol=base.rel_tol if args.rel_tol is None else args.rel_tol,
        max_evals=base.max_evals if args.max_evals is None else args.max_evals,
    )


def _point_config(args):
    return make_config(
        args.initial,
        args.final,
        initial_m=args.initial_m,
        final_m=args.final_m,
        l_in=args.l_in,
        l_out=args.l_out,
        p_in=args.p_in,
        p_out=args.p_out,
        wavelength_nm=args.wavelength_nm,
        rayleigh_nm=args.rayleigh_nm,
        theta_rad=args.theta_rad,
        pol_overlap=args.pol_overlap,
        integrator=_integrator(args),
        r_max_factor=args.r_max_factor,
    )


@contextmanager
def _output(path: Path | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _build_job(args):
    if args.command == "amplitude":
        cfg = _point_config(args)
        return lambda: [run_point(cfg)]
    if args.command == "sweep":
        spec = SweepSpec(args.axis, args.start, args.stop, args.points, args.scale, _point_config(args))
        return lambda: run_sweep(spec, jobs=args.jobs)
    pre = FIGURE_PRESETS[args.fig_id]
    integrator = _integrator(args, IntegratorConfig(abs_tol=pre.abs_tol, rel_tol=pre.rel_tol))
    spec = figure_spec(args.fig_id, points=args.points, integrator=integrator, r_max_factor=args.r_max_factor)
    return lambda: run_sweep(spec, jobs=args.jobs)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parse_args(argv)
        job = _build_job(args)
    except (UsageError, ValueError) as exc:
        print(f"vortexff: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rows = job()
    with _output(args.out) as fh:
        write_csv(rows, fh)
    return EXIT_OK if all(r.converged for r in rows) else EXIT_UNCONVERGED


if __name__ == "__main__":
    sys.exit(main())
