"""Command-line interface: ``collinlab {diagnose,augment,perturb,york,report}``.

Exit codes: 0 clean, 1 operational error, 2 collinearity or instability alarm.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .augmentation import required_replication, replicate_sample, verify_identities
from .datasets import CsvSchema, YorkParams, load_csv, york_design
from .diagnostics import condition_number_of, diagnose
from .errors import CollinLabError, DegenerateT
from .linalg import symmetric_eigenvalues, unit_length_scale
from .perturbation import NOISE_KINDS, PerturbationConfig, monte_carlo_stability
from .regression import fit_ols
from .report import Report, export_report

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_ALARM = 2

SCALING_FLAGS = {"unit": "unit_length", "raw": "raw"}


class StageError(Exception):
    def __init__(self, stage, message):
        super().__init__(f"{stage}: {message}")


def _default_seed() -> int:
    raw = os.environ.get("COLLINLAB_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"collinlab: COLLINLAB_SEED must be an integer, got {raw!r}") from None


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {text}")
    return value


def _probability(text):
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"expected a value in (0, 1), got {text}")
    return value


def _nonnegative(text):
    value = float(text)
    if not value >= 0.0:
        raise argparse.ArgumentTypeError(f"expected a non-negative number, got {text}")
    return value


def _columns(text):
    cols = [c.strip() for c in text.split(",") if c.strip()]
    if not cols:
        raise argparse.ArgumentTypeError("expected a comma-separated list of column names")
    return cols


def _add_data_args(p):
    p.add_argument("input", help="CSV file with a header row")
    p.add_argument("--y", required=True, help="response column")
    p.add_argument("--x", required=True, type=_columns, help="comma-separated regressor columns")
    p.add_argument("--no-intercept", action="store_true", help="do not prepend a column of ones")


def _add_output_args(p):
    p.add_argument("--format", choices=("json", "markdown"), default="json")
    p.add_argument("--out", help="write the report here instead of stdout")


def _add_perturb_args(p, seed):
    p.add_argument("--pct", type=_nonnegative, default=0.01, help="relative perturbation size (0.01 = 1%%)")
    p.add_argument("--trials", type=_positive_int, default=1000)
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("--noise", choices=NOISE_KINDS, default="uniform")
    p.add_argument("--workers", type=_positive_int, default=1, help="threads used for the trials")
    p.add_argument("--threshold", type=_nonnegative, default=10.0, help="alarm when the mean shift exceeds this percentage")


def build_parser() -> argparse.ArgumentParser:
    seed = _default_seed()
    parser = argparse.ArgumentParser(prog="collinlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diagnose", help="fit OLS and measure multicollinearity")
    _add_data_args(p)
    p.add_argument("--cn-scaling", choices=tuple(SCALING_FLAGS), default="unit")
    _add_output_args(p)

    p = sub.add_parser("augment", help="replicate the sample and check the closed-form statistics")
    _add_data_args(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--h", type=_positive_int, help="total number of copies of the sample")
    g.add_argument("--auto", nargs="?", type=_probability, const=-1.0, metavar="ALPHA",
                   help="choose the copies needed for significance at ALPHA (default: --alpha)")
    p.add_argument("--alpha", type=_probability, default=0.05)
    p.add_argument("--include-intercept", action="store_true", help="let the intercept drive the bound too")
    p.add_argument("--exact", action="store_true", help="use exact t quantiles instead of the normal approximation")
    _add_output_args(p)

    p = sub.add_parser("perturb", help="Monte-Carlo perturbation of the regressors")
    _add_data_args(p)
    p.add_argument("--h", type=_positive_int, default=1, help="replicate the sample h times first")
    _add_perturb_args(p, seed)
    _add_output_args(p)

    p = sub.add_parser("york", help="eigenvalues and condition number of York's design")
    p.add_argument("--m", type=_positive_int, default=1)
    _add_output_args(p)

    p = sub.add_parser("report", help="diagnose, augment and perturb in one report")
    _add_data_args(p)
    p.add_argument("--cn-scaling", choices=tuple(SCALING_FLAGS), default="unit")
    p.add_argument("--h", type=_positive_int, help="copies for the replication section (default: automatic)")
    p.add_argument("--alpha", type=_probability, default=0.05)
    _add_perturb_args(p, seed)
    _add_output_args(p)
    return parser


def _load(args):
    schema_args = dict(response=args.y, regressors=tuple(args.x), add_intercept=not args.no_intercept)
    try:
        schema = CsvSchema(**schema_args)
        return load_csv(args.input, schema)
    except FileNotFoundError:
        raise StageError("load_csv", "file not found") from None
    except (OSError, CollinLabError, ValueError) as exc:
        raise StageError("load_csv", str(exc)) from None


def _header(args, keys) -> dict:
    header = {"command": args.command}
    for key in keys:
        value = getattr(args, key, None)
        if isinstance(value, list):
            value = ",".join(value)
        header[key] = value
    return header


def _stage(name, fn, *a, **kw):
    try:
        return fn(*a, **kw)
    except DegenerateT:
        raise
    except CollinLabError as exc:
        raise StageError(name, str(exc)) from None


def _emit(report, args):
    payload = export_report(report, args.format)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()


def cmd_diagnose(args) -> int:
    data = _load(args)
    fit = _stage("fit_ols", fit_ols, data)
    diag = _stage("diagnose", diagnose, data, fit, SCALING_FLAGS[args.cn_scaling])
    header = _header(args, ["input", "y", "x", "no_intercept", "cn_scaling"])
    _emit(Report(fit=fit, diagnostics=diag, header=header), args)
    return EXIT_ALARM if diag.verdict.alarm else EXIT_OK


def _resolve_h(args, fit):
    if args.h is not None:
        return args.h, None
    alpha = args.alpha if args.auto is None or args.auto < 0 else args.auto
    try:
        plan = required_replication(fit, alpha, include_intercept=args.include_intercept, exact=args.exact)
    except DegenerateT as exc:
        raise StageError("required_replication", f"coefficient {exc.name!r} has t = 0, bound is infinite") from None
    return plan.h_required, plan


def cmd_augment(args) -> int:
    data = _load(args)
    fit = _stage("fit_ols", fit_ols, data)
    h, plan = _resolve_h(args, fit)
    check = _stage("verify_identities", verify_identities, data, h, fit)
    header = _header(args, ["input", "y", "x", "no_intercept", "h", "auto", "alpha", "include_intercept", "exact"])
    header["h_used"] = h
    _emit(Report(fit=fit, augmentation=check, plan=plan, header=header), args)
    return EXIT_OK


def _perturb(args, data):
    cfg = PerturbationConfig(pct=args.pct, trials=args.trials, seed=args.seed, noise=args.noise)
    return _stage("monte_carlo_stability", monte_carlo_stability, data, cfg, workers=args.workers)


def cmd_perturb(args) -> int:
    data = _load(args)
    fit = _stage("fit_ols", fit_ols, data)
    summary = _perturb(args, replicate_sample(data, args.h))
    header = _header(args, ["input", "y", "x", "no_intercept", "h", "pct", "trials", "seed", "noise", "threshold"])
    _emit(Report(fit=fit, perturbation=summary, perturbation_h=args.h, header=header), args)
    return EXIT_ALARM if summary.mean > args.threshold else EXIT_OK


def york_summary(m: int) -> dict:
    X = york_design(YorkParams(m))
    mu = symmetric_eigenvalues(unit_length_scale(X).T @ unit_length_scale(X))
    return {"m": m, "eigenvalues": mu, "cn": condition_number_of(X, "unit_length")}


def cmd_york(args) -> int:
    _emit(Report(york=york_summary(args.m), header=_header(args, ["m"])), args)
    return EXIT_OK


def cmd_report(args) -> int:
    data = _load(args)
    fit = _stage("fit_ols", fit_ols, data)
    diag = _stage("diagnose", diagnose, data, fit, SCALING_FLAGS[args.cn_scaling])
    args.auto, args.include_intercept, args.exact = None, False, False
    h, plan = _resolve_h(args, fit)
    check = _stage("verify_identities", verify_identities, data, h, fit)
    summary = _perturb(args, replicate_sample(data, h))
    header = _header(args, ["input", "y", "x", "no_intercept", "cn_scaling", "h", "alpha",
                            "pct", "trials", "seed", "noise", "threshold"])
    header["h_used"] = h
    report = Report(fit=fit, diagnostics=diag, augmentation=check, plan=plan,
                    perturbation=summary, perturbation_h=h, header=header)
    _emit(report, args)
    alarm = diag.verdict.alarm or summary.mean > args.threshold
    return EXIT_ALARM if alarm else EXIT_OK


COMMANDS = {
    "diagnose": cmd_diagnose,
    "augment": cmd_augment,
    "perturb": cmd_perturb,
    "york": cmd_york,
    "report": cmd_report,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, which would read as an alarm
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        return COMMANDS[args.command](args)
    except StageError as exc:
        print(f"collinlab: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (CollinLabError, OSError, ValueError) as exc:
        print(f"collinlab: {args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
