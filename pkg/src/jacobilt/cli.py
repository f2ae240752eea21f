"""Command-line harness.

Subcommands: spectrum | verify | sharpness | constructs | sweep.
Exit codes: 0 all checks pass, 1 inequality/property failure, 2 usage or
parse error, 3 truncation did not converge (partial output still emitted).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import harness
from .operators import InstanceFormatError, ValidationError, load_instance
from .spectral import ConvergenceError, EigenConfig, eigenvalues_outside

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CONVERGENCE = 3


def _csv_floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip() != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}") from exc


def _csv_int_pair(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected LO,HI: {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected integers: {text!r}") from exc


def _csv_float_pair(text: str) -> tuple[float, float]:
    vals = _csv_floats(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError(f"expected LO,HI: {text!r}")
    return vals[0], vals[1]


def _add_output_flags(sub):
    sub.add_argument("--format", choices=("csv", "json"), default="csv",
                     help="report format (default csv)")
    sub.add_argument("--out", type=Path, default=None,
                     help="write the report to this path instead of stdout")


def _add_model_flags(sub):
    sub.add_argument("--random", type=int, metavar="N", default=None,
                     help="generate N seeded instances instead of reading files")
    sub.add_argument("--seed", type=int, default=harness.DEFAULT_SEED,
                     help=f"SplitMix64 seed (default {harness.DEFAULT_SEED})")
    sub.add_argument("--b-sites", type=_csv_int_pair, default=(1, 9), metavar="LO,HI",
                     help="range for the number of diagonal sites (default 1,9)")
    sub.add_argument("--b-magnitude", type=float, default=2.0,
                     help="bound on |b| (default 2.0)")
    sub.add_argument("--a-bonds", type=_csv_int_pair, default=(0, 8), metavar="LO,HI",
                     help="range for the number of perturbed bonds (default 0,8)")
    sub.add_argument("--a-range", type=_csv_float_pair, default=(0.0, 2.0), metavar="LO,HI",
                     help="bond value bounds (default 0,2)")
    sub.add_argument("--no-negative-b", action="store_true",
                     help="draw b values in [0, b-magnitude] only")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jacobilt",
        description=(
            "Eigenvalue-sum bounds for doubly infinite Jacobi operators with "
            "finitely supported perturbations: spectra, inequality verification, "
            "sharpness curves, and proof-construct property suites."
        ),
        epilog=(
            "Report CSV columns: instance_id,inequality,gamma,lhs,rhs,margin,"
            "n_used,est_error,pass. Numbers carry 17 significant digits. "
            "eq3_report rows are informational (never affect the exit code); "
            "their gamma column is the exponent applied to G (2 as printed, "
            "1 un-squared) or 3/2 for the sweep's Riesz-vs-F comparison."
        ),
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("spectrum", help="eigenvalues outside [-2, 2] for one instance")
    sp.add_argument("instance", type=Path)
    sp.add_argument("--half-width", type=int, default=None,
                    help="initial truncation half-width (doubling starts here)")
    sp.add_argument("--tol", type=float, default=None,
                    help="movement tolerance for truncation doubling (default 1e-11)")
    _add_output_flags(sp)

    vf = subs.add_parser("verify", help="run the inequality suite per instance")
    vf.add_argument("instances", type=Path, nargs="*")
    vf.add_argument("--gamma", type=_csv_floats, default=[1.5], metavar="G1,G2,...",
                    help="gamma grid for the Riesz-mean rows (default 1.5)")
    vf.add_argument("--tol", type=float, default=harness.DEFAULT_MARGIN_TOL,
                    help="margin tolerance (default 1e-7)")
    _add_model_flags(vf)
    _add_output_flags(vf)

    sh = subs.add_parser("sharpness", help="equality-family curves")
    sh.add_argument("--mode", choices=("bond", "site"), default="bond")
    sh.add_argument("--grid", type=_csv_floats, default=None, metavar="V1,V2,...",
                    help="grid values (default: bond 1+2^-k for k=1..10; site 0.5..3.0)")
    _add_output_flags(sh)

    ct = subs.add_parser("constructs", help="proof-construct property suites")
    ct.add_argument("--suite", choices=("all", "decomposition", "bs", "smu", "gmu", "convexity"),
                    default="all")
    ct.add_argument("--seed", type=int, default=harness.DEFAULT_SEED)
    ct.add_argument("--tol", type=float, default=None,
                    help="override the suite's default check tolerance")
    _add_output_flags(ct)

    sw = subs.add_parser("sweep", help="gamma sweep of the Riesz-mean bounds")
    sw.add_argument("instances", type=Path, nargs="*")
    sw.add_argument("--gamma-range", type=_csv_floats, required=True, metavar="G1,G2,...",
                    help="gamma grid, every value must exceed 1/2")
    sw.add_argument("--tol", type=float, default=harness.DEFAULT_MARGIN_TOL)
    _add_model_flags(sw)
    _add_output_flags(sw)

    return parser


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _model_from_args(args) -> harness.RandomModel:
    return harness.RandomModel(
        seed=args.seed,
        b_sites=args.b_sites,
        b_magnitude=args.b_magnitude,
        a_bonds=args.a_bonds,
        a_low=args.a_range[0],
        a_high=args.a_range[1],
        allow_negative_b=not args.no_negative_b,
    )


def _gather_instances(args):
    """(instance_id, perturbation) pairs in deterministic order."""
    pairs = []
    if args.random is not None:
        if args.random < 1:
            raise ValidationError("--random needs a positive count")
        model = _model_from_args(args)
        for i in range(args.random):
            pairs.append((harness.instance_label(model, i), harness.random_perturbation(model, i)))
    if args.instances:
        for path in args.instances:
            pairs.append((path.stem, load_instance(path)))
    if not pairs:
        raise ValidationError("no instances: give instance files or --random N")
    return sorted(pairs, key=lambda pair: pair[0])


def _cmd_spectrum(args) -> int:
    p = load_instance(args.instance)
    cfg = EigenConfig()
    if args.tol is not None:
        cfg = EigenConfig(bisect_tol=args.tol)
    if args.half_width is not None and args.half_width > cfg.max_half_width:
        cfg = EigenConfig(
            edge_buffer=cfg.edge_buffer,
            bisect_tol=cfg.bisect_tol,
            max_half_width=args.half_width,
            dense_tol=cfg.dense_tol,
        )
    instance_id = args.instance.stem
    code = EXIT_OK
    try:
        spectrum = eigenvalues_outside(p, cfg, start_half_width=args.half_width)
    except ConvergenceError as exc:
        if exc.partial is None:
            print(f"spectrum: {exc}", file=sys.stderr)
            return EXIT_CONVERGENCE
        print(f"spectrum: {exc} (emitting partial result)", file=sys.stderr)
        spectrum = exc.partial
        code = EXIT_CONVERGENCE
    text = (
        harness.spectrum_to_json(instance_id, spectrum)
        if args.format == "json"
        else harness.spectrum_to_csv(instance_id, spectrum)
    )
    _emit(text, args.out)
    return code


def _cmd_verify(args) -> int:
    pairs = _gather_instances(args)
    reports = []
    code = EXIT_OK
    for instance_id, p in pairs:
        try:
            reports.extend(
                harness.verify_instance(instance_id, p, gammas=args.gamma, tol=args.tol)
            )
        except ConvergenceError as exc:
            print(f"verify: {instance_id}: {exc}", file=sys.stderr)
            code = EXIT_CONVERGENCE
    if any(not r.passed and not r.informational for r in reports):
        code = max(code, EXIT_FAIL)
    text = (
        harness.reports_to_json(reports)
        if args.format == "json"
        else harness.reports_to_csv(reports)
    )
    _emit(text, args.out)
    return code


def _cmd_sharpness(args) -> int:
    grid = args.grid
    if grid is None:
        grid = harness.DEFAULT_BOND_GRID if args.mode == "bond" else harness.DEFAULT_SITE_GRID
    rows = harness.sharpness_rows(args.mode, grid)
    text = (
        harness.sharpness_to_json(args.mode, rows)
        if args.format == "json"
        else harness.sharpness_to_csv(args.mode, rows)
    )
    _emit(text, args.out)
    return EXIT_OK


def _cmd_constructs(args) -> int:
    rows = harness.run_construct_suites(args.suite, args.seed, tol=args.tol)
    text = (
        harness.checks_to_json(rows)
        if args.format == "json"
        else harness.checks_to_csv(rows)
    )
    _emit(text, args.out)
    return EXIT_OK if all(r.passed for r in rows) else EXIT_FAIL


def _cmd_sweep(args) -> int:
    for gamma in args.gamma_range:
        if not gamma > 0.5:
            print(f"sweep: gamma grid must stay above 1/2, got {gamma}", file=sys.stderr)
            return EXIT_USAGE
    pairs = _gather_instances(args)
    reports = []
    code = EXIT_OK
    for instance_id, p in pairs:
        try:
            reports.extend(
                harness.sweep_instance(instance_id, p, gammas=args.gamma_range, tol=args.tol)
            )
        except ConvergenceError as exc:
            print(f"sweep: {instance_id}: {exc}", file=sys.stderr)
            code = EXIT_CONVERGENCE
    if any(not r.passed and not r.informational for r in reports):
        code = max(code, EXIT_FAIL)
    text = (
        harness.reports_to_json(reports)
        if args.format == "json"
        else harness.reports_to_csv(reports)
    )
    _emit(text, args.out)
    return code


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "verify": _cmd_verify,
    "sharpness": _cmd_sharpness,
    "constructs": _cmd_constructs,
    "sweep": _cmd_sweep,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except InstanceFormatError as exc:
        print(f"jacobilt: instance file error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"jacobilt: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"jacobilt: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"jacobilt: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
