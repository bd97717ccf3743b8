"""``bayeserr`` command line.

Subcommands ``estimate``, ``synth``, ``oracle``, ``ingest`` and ``eval``.
Reports go to stdout; diagnostics to stderr.  Exit status is 0 on success,
2 on usage or validation errors and 1 on anything unexpected.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys

from . import ingest
from .errors import BayesErrorInputError, InvalidLabelError, NotApplicableError, ParseError
from .estimators import (
    DEFAULT_DELTA,
    EstimatorKind,
    IntervalMethod,
    PconfSet,
    SignedNoisySet,
    SoftLabelSet,
    estimate,
)
from .experiments import DEFAULT_GRID, MODES, PAPER_ORACLE_SAMPLES, run_synth
from .gaussian import analytic_bayes_error_isotropic, oracle_bayes_error, resolve_setup
from .noise import PAPER_SIGMA
from .report import Report, dumps
from .rng import make_rng

_KIND_COLUMNS = {
    "soft": ("c",),
    "uncertainty": ("u01",),
    "noisy": ("u", "s"),
    "noisy-naive": ("u",),
    "pconf": ("r",),
}
_KINDS = {
    "soft": EstimatorKind.SOFT,
    "uncertainty": EstimatorKind.UNCERTAINTY,
    "noisy": EstimatorKind.NOISY_SIGNED,
    "noisy-naive": EstimatorKind.NOISY_NAIVE,
    "pconf": EstimatorKind.PCONF,
}


class UsageError(BayesErrorInputError):
    pass


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {value}")
    return value


def _grid(text):
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must be comma-separated integers, got {text!r}")
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError("grid values must be positive integers")
    return values


def _read_columns(path, columns):
    """Read named float columns; returns ``(arrays, line_numbers)``."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise ParseError(1, "file is empty", path)
        header = [h.strip() for h in header]
        missing = [c for c in columns if c not in header]
        if missing:
            raise ParseError(1, f"missing column(s) {', '.join(missing)}", path)
        idx = [header.index(c) for c in columns]
        data = [[] for _ in columns]
        lines = []
        for row in reader:
            if not row or all(not cell.strip() for cell in row):
                continue
            line = reader.line_num
            for out, i, name in zip(data, idx, columns):
                try:
                    out.append(float(row[i]))
                except (IndexError, ValueError):
                    raise ParseError(line, f"bad value for column {name!r}", path) from None
            lines.append(line)
    return data, lines


def _load_input(path, kind, prior):
    columns = _KIND_COLUMNS[kind]
    data, lines = _read_columns(path, columns)
    try:
        if kind == "soft":
            return SoftLabelSet(data[0])
        if kind == "uncertainty":
            return SoftLabelSet.uncertainty(data[0])
        if kind == "noisy":
            signs = [int(s) if float(s).is_integer() else s for s in data[1]]
            return SignedNoisySet(data[0], signs)
        if kind == "noisy-naive":
            return SignedNoisySet(data[0], [1] * len(data[0]))
        return PconfSet(data[0], prior)
    except InvalidLabelError as exc:
        raise ParseError(lines[exc.index], str(exc), path) from None
    except BayesErrorInputError as exc:
        if hasattr(exc, "index") and exc.index < len(lines):
            raise ParseError(lines[exc.index], str(exc), path) from None
        raise


def _methods(args):
    if args.ci == ["none"]:
        return []
    return [IntervalMethod(m) for m in args.ci]


def cmd_estimate(args):
    if args.kind == "pconf" and args.prior is None:
        raise UsageError("--prior is required for kind pconf")
    data = _load_input(args.input, args.kind, args.prior)
    kind = _KINDS[args.kind]
    methods = [] if kind is EstimatorKind.NOISY_NAIVE else _methods(args)
    est = estimate(data, kind, args.delta, methods)
    return [Report.from_estimate(est, input=args.input, delta=args.delta)]


def cmd_synth(args):
    setup = resolve_setup(args.setup)
    return run_synth(setup, args.grid, args.trials, args.mode, args.seed, args.sigma,
                     args.delta, args.oracle_samples)


def cmd_oracle(args):
    setup = resolve_setup(args.setup)
    value = oracle_bayes_error(setup, args.samples, make_rng(args.seed))
    meta = {"setup": setup.name, "seed": args.seed, "samples": args.samples,
            "stderr_bound": 0.5 / math.sqrt(args.samples)}
    try:
        meta["analytic"] = analytic_bayes_error_isotropic(setup)
    except NotApplicableError:
        meta["analytic"] = None
    return [Report("oracle", args.samples, value, (), meta)]


def cmd_ingest(args):
    grouping = ingest.resolve_grouping(args.grouping)
    votes = ingest.load_votes(args.votes, args.votes_format)
    methods = (IntervalMethod.HOEFFDING, IntervalMethod.NORMAL)
    meta = {"input": args.votes, "grouping": grouping.name, "emit": args.emit}
    if args.emit == "soft":
        soft = ingest.soft_labels(votes, grouping)
        if args.output:
            ingest.write_label_file(args.output, [r.sample_id for r in votes], soft.values, "c")
        est = estimate(soft, EstimatorKind.SOFT, args.delta, methods)
        return [Report.from_estimate(est, **meta)]
    if not args.hard_labels:
        raise UsageError("--hard-labels is required when --emit pconf")
    hard = ingest.load_hard_labels(args.hard_labels)
    data = ingest.pconf_subset(votes, grouping, hard)
    if args.output:
        kept = [r.sample_id for r in votes if grouping.sign(hard[r.sample_id]) == 1]
        ingest.write_label_file(args.output, kept, data.confidences, "r")
    est = estimate(data, EstimatorKind.PCONF, args.delta, methods)
    return [Report.from_estimate(est, hard_labels=args.hard_labels, **meta)]


def cmd_eval(args):
    grouping = ingest.resolve_grouping(args.grouping)
    votes = ingest.load_votes(args.votes, args.votes_format)
    preds = ingest.load_predictions(args.predictions)
    ids = [r.sample_id for r in votes]
    soft = ingest.soft_labels(votes, grouping)
    majority = dict(zip(ids, ingest.majority_labels(soft).tolist()))
    meta = {"predictions": args.predictions, "votes": args.votes, "grouping": grouping.name}

    err = ingest.score_predictions(preds, majority, grouping)
    out = [Report("eval_majority", len(preds), err, (), dict(meta))]

    draws = ingest.resampled_errors(preds, votes, grouping, args.resamples, args.seed)
    k = draws.size
    se = float(draws.std(ddof=1)) / math.sqrt(k) if k > 1 else 0.0
    out.append(Report("eval_resampled", len(preds), math.fsum(draws) / k, (),
                      dict(meta, resamples=k, seed=args.seed, stderr=se), tuple(draws.tolist())))

    methods = [IntervalMethod.HOEFFDING]
    if len(soft) >= 2:
        methods.append(IntervalMethod.NORMAL)
    est = estimate(soft, EstimatorKind.SOFT, args.delta, methods)
    out.append(Report.from_estimate(est, **meta))
    return out


def _common(p):
    p.add_argument("--format", choices=("json", "csv"), default="json", help="report format")
    p.add_argument("--full-precision", action="store_true",
                   help="write numbers at full precision instead of 6 significant digits")


def _delta(p):
    p.add_argument("--delta", type=float, default=DEFAULT_DELTA,
                   help="1 - confidence level (default %(default)s)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bayeserr", description="Instance-free Bayes error estimation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="estimate the Bayes error from a label file")
    p.add_argument("input", help="CSV with column c (soft), u01 (uncertainty), u,s (noisy) or r (pconf)")
    p.add_argument("--kind", choices=tuple(_KIND_COLUMNS), default="soft")
    p.add_argument("--prior", type=float, help="positive class prior (required for pconf)")
    p.add_argument("--ci", nargs="+", choices=("hoeffding", "normal", "none"), default=["hoeffding"])
    _delta(p)
    _common(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("synth", help="seeded experiments on a Gaussian setup")
    p.add_argument("--setup", default="A", help="preset A/B or a JSON/YAML setup file")
    p.add_argument("--grid", type=_grid, default=list(DEFAULT_GRID), help="samples per class, comma-separated")
    p.add_argument("--trials", type=_positive_int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=MODES, default="pn")
    p.add_argument("--sigma", type=float, default=PAPER_SIGMA, help="label-noise sd (mode noisy)")
    p.add_argument("--oracle-samples", type=_positive_int, default=PAPER_ORACLE_SAMPLES)
    _delta(p)
    _common(p)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("oracle", help="Monte-Carlo ground-truth Bayes error of a setup")
    p.add_argument("--setup", default="A")
    p.add_argument("--samples", type=_positive_int, default=PAPER_ORACLE_SAMPLES)
    p.add_argument("--seed", type=int, default=0)
    _common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("ingest", help="turn vote counts into soft or Pconf labels")
    p.add_argument("votes", help="vote-count CSV")
    p.add_argument("--votes-format", choices=("wide", "long"), default="wide")
    p.add_argument("--grouping", required=True, help="preset name or grouping file")
    p.add_argument("--emit", choices=("soft", "pconf"), default="soft")
    p.add_argument("--hard-labels", help="CSV sample_id,class (required for --emit pconf)")
    p.add_argument("--output", help="where to write the derived label file")
    _delta(p)
    _common(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("eval", help="score predictions against majority and resampled labels")
    p.add_argument("--predictions", required=True, help="CSV sample_id,predicted_class")
    p.add_argument("--votes", required=True)
    p.add_argument("--votes-format", choices=("wide", "long"), default="wide")
    p.add_argument("--grouping", required=True)
    p.add_argument("--resamples", type=_positive_int, default=20)
    p.add_argument("--seed", type=int, default=0)
    _delta(p)
    _common(p)
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        reports = args.func(args)
        text = dumps(reports, args.format, None if args.full_precision else 6)
    except (BayesErrorInputError, ValueError, OSError) as exc:
        print(f"bayeserr {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"bayeserr {args.command}: internal error: {exc!r}", file=sys.stderr)
        return 1
    sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
