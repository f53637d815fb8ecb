"""Command-line interface.

Subcommands: ``solitary`` (construct and save a profile), ``run`` (execute a
config or preset), ``fit`` (offline spectrum fit of a snapshot), ``slice``
(axis slice of a snapshot).  Exit codes: 0 success, 2 config error,
3 integration fault, 4 run stopped by a policy.
"""

import argparse
import csv
import json
import logging
import sys

from .config import ConfigError, from_dict, parse_config, preset_dict, preset_names
from .diagnostics import axis_slice
from .grid import make_grid
from .runner import read_snapshot, run
from .solitary import ConstructionError, solve_profile
from .tracker import FitUnavailableError, SingularityFit, axis_modulus, fit_ssf

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_FAULT = 3
EXIT_STOPPED = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="asbq",
        description="Pseudospectral laboratory for the Amick-Schonbek "
                    "Boussinesq system")
    parser.add_argument("-v", "--verbose", action="store_true",
                        help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    sol = sub.add_parser("solitary", help="construct a solitary-wave profile")
    sol.add_argument("--c", type=float, required=True, help="wave speed (> 1)")
    sol.add_argument("--eps", type=float, default=1.0, help="model parameter")
    sol.add_argument("--Nx", type=int, required=True, help="modes (power of two)")
    sol.add_argument("--Lx", type=float, required=True, help="half-period scale")
    sol.add_argument("--out", required=True, help="output .aspw file")

    runp = sub.add_parser("run", help="execute an experiment")
    src = runp.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", help="JSON config file")
    src.add_argument("--preset", help="named preset (see --list-presets)")
    runp.add_argument("--out-dir", help="output directory (overrides config)")
    runp.add_argument("--list-presets", action="store_true", help=argparse.SUPPRESS)

    fitp = sub.add_parser("fit", help="fit the spectrum tail of a snapshot")
    fitp.add_argument("--snapshot", required=True)
    fitp.add_argument("--field", default="eta", choices=("eta", "vx", "vy"))
    fitp.add_argument("--axis", default="x", choices=("x", "y"))
    fitp.add_argument("--out", help="write the fit as CSV instead of stdout")

    slicep = sub.add_parser("slice", help="axis slice of a snapshot")
    slicep.add_argument("--snapshot", required=True)
    slicep.add_argument("--axis", default="x", choices=("x", "y"))
    slicep.add_argument("--out", help="write CSV instead of stdout")

    listp = sub.add_parser("presets", help="list available presets")
    del listp
    return parser


def _cmd_solitary(args) -> int:
    try:
        grid = make_grid(1, args.Nx, args.Lx)
        profile = solve_profile(args.c, args.eps, grid)
    except (ValueError, ConstructionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    profile.save(args.out)
    print(f"wrote {args.out}: c = {profile.c:g}, amplitude = {profile.amplitude:.6g}, "
          f"residual = {profile.residual_norm:.3e}")
    return EXIT_OK


def _cmd_run(args) -> int:
    try:
        if args.preset:
            config = from_dict(preset_dict(args.preset))
        else:
            with open(args.config) as fh:
                config = parse_config(fh.read())
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    report = run(config, out_dir=args.out_dir)
    print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    if report.status == "fault":
        return EXIT_FAULT
    if report.status == "stopped":
        return EXIT_STOPPED
    return EXIT_OK


def _cmd_fit(args) -> int:
    try:
        state, _ = read_snapshot(args.snapshot)
        fld = state.fields().get(args.field)
        if fld is None:
            raise ValueError(f"snapshot has no field {args.field!r}")
        k, mod = axis_modulus(fld, args.axis)
        fit = fit_ssf(k, mod, t=state.t, field=args.field, axis=args.axis)
    except FitUnavailableError as exc:
        print(f"fit unavailable: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    target = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(target)
        writer.writerow(SingularityFit.CSV_HEADER)
        writer.writerow(fit.csv_row())
    finally:
        if args.out:
            target.close()
    return EXIT_OK


def _cmd_slice(args) -> int:
    try:
        state, _ = read_snapshot(args.snapshot)
        data = axis_slice(state, args.axis)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    target = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(target)
        writer.writerow(("t", "axis", "coord", "eta", "vx", "vy"))
        for coord, eta, vx, vy in zip(data["coord"], data["eta"],
                                      data["vx"], data["vy"]):
            writer.writerow([format(state.t, ".17g"), args.axis]
                            + [format(v, ".17g") for v in (coord, eta, vx, vy)])
    finally:
        if args.out:
            target.close()
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.verbose:
        logging.basicConfig(level=logging.INFO, stream=sys.stderr,
                            format="%(asctime)s %(levelname)s %(message)s")
    try:
        if args.command == "presets":
            for name in preset_names():
                print(name)
            return EXIT_OK
        handler = {"solitary": _cmd_solitary, "run": _cmd_run,
                   "fit": _cmd_fit, "slice": _cmd_slice}[args.command]
        return handler(args)
    except BrokenPipeError:
        # stdout consumer (head, less) went away; not an error
        try:
            sys.stdout.close()
        except OSError:
            pass
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
