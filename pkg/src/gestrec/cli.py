"""Command-line pipeline runner.

Commands: ``ingest`` (raw tree or canonical manifest -> canonical
manifest), ``features`` (manifest -> feature CSV), ``eval`` (features or
manifest -> evaluation reports), ``bench`` (saved models -> timing
table), ``synth`` (spec flags -> synthetic canonical dataset).

Every run writes a ``run.json`` provenance record with the fully
resolved configuration next to its outputs. Exit codes: 0 success,
2 usage errors, 3 data/file errors, 4 numeric errors.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .classifiers import CLASSIFIER_KINDS, load_model, save_model
from .data import (
    load_adapter_config,
    load_manifest,
    load_sony_tree,
    load_uwave_tree,
    save_manifest,
)
from .errors import (
    DataError,
    GestureRecError,
    ModelFileError,
    NumericError,
    SingularSystemError,
    VersionMismatchError,
)
from .evaluation import (
    ClassifierSpec,
    ConfusionMatrix,
    EvaluationReport,
    crossval_chart_data,
    evaluate,
    evaluate_folds,
    per_user_table,
    plan_mixed,
    plan_user_dependent,
    plan_user_independent,
    time_single_predictions,
)
from .features import FeatureMatrix, extract_all, load_features, save_features
from .synth import EASY_SPEC, SynthSpec, generate

__all__ = ["main"]

MODES = ("user-dependent", "mixed", "user-independent")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4


class UsageError(Exception):
    """Invalid flag combination or value; maps to exit code 2."""


def _write_run(out_dir: Path, command: str, params: dict) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    record = {"tool": "gestrec", "version": __version__, "command": command,
              "params": params}
    with open(out_dir / "run.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(record, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _load_matrix(path: Path, jobs: int) -> FeatureMatrix:
    """Accept either a feature CSV or a manifest CSV (sniffed by header)."""
    if not path.is_file():
        raise DataError("input file not found", path=path)
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
    if header.startswith("user,gesture,f01"):
        return load_features(path)
    if header.startswith("user,gesture,trial"):
        return extract_all(load_manifest(path), jobs=jobs)
    raise DataError(
        "input is neither a feature CSV nor a manifest CSV", path=path, line=1
    )


# ---------------------------------------------------------------- ingest

def cmd_ingest(args) -> int:
    out = Path(args.out)
    if args.adapter == "canonical" and args.adapter_config:
        raise UsageError("--adapter-config only applies to raw-tree adapters")
    config = load_adapter_config(args.adapter_config) if args.adapter_config else None
    if args.adapter == "uwave":
        dataset = load_uwave_tree(args.input, config)
    elif args.adapter == "sony":
        dataset = load_sony_tree(args.input, config)
    else:
        dataset = load_manifest(args.input)
    manifest = save_manifest(dataset, out)
    _write_run(out, "ingest", {
        "adapter": args.adapter,
        "input": str(args.input),
        "out": str(out),
        "adapter_config": str(args.adapter_config) if args.adapter_config else None,
    })
    print(dataset.meta.summary())
    print(f"wrote {manifest}")
    return EXIT_OK


# -------------------------------------------------------------- features

def cmd_features(args) -> int:
    out = Path(args.out)
    dataset = load_manifest(args.manifest)
    matrix = extract_all(dataset, jobs=args.jobs)
    save_features(matrix, out)
    _write_run(out.parent, "features", {
        "manifest": str(args.manifest),
        "out": str(out),
        "jobs": args.jobs,
    })
    print(f"wrote {matrix.n} feature rows to {out}")
    return EXIT_OK


# ------------------------------------------------------------------ eval

def _percent(x: float) -> str:
    return f"{x:.2f}"


def _write_confusion_csv(path: Path, confusion) -> None:
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["true\\pred"] + [str(c) for c in confusion.classes])
        for c, row in zip(confusion.classes, confusion.percents):
            writer.writerow([str(c)] + [_percent(v) for v in row])


def _write_per_user_csv(path: Path, rows, average: float | None) -> None:
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["user", "accuracy"])
        for user, acc in rows:
            writer.writerow([user, _percent(acc)])
        if average is not None:
            writer.writerow(["avg", _percent(average)])


def _report_to_dict(rep: EvaluationReport) -> dict:
    return {
        "mode": rep.mode,
        "classifier": rep.classifier_kind,
        "hyperparams": rep.hyperparams,
        "seed": rep.seed,
        "accuracy": rep.accuracy,
        "n_train": rep.n_train,
        "n_test": rep.n_test,
        "mean_classify_time_s": rep.mean_classify_time_s,
        "per_user_accuracy": {str(k): v for k, v in rep.per_user_accuracy.items()},
        "confusion": {
            "classes": [int(c) for c in rep.confusion.classes],
            "counts": rep.confusion.counts.tolist(),
            "percents": rep.confusion.percents.tolist(),
            "zero_support": [int(c) for c in rep.confusion.zero_support],
        },
    }


def _format_report_txt(title: str, rep_dicts: list[dict], average: float,
                       mean_time: float, confusion) -> str:
    lines = [title, "=" * len(title), ""]
    lines.append(f"{'scope':>12}  {'n_train':>7}  {'n_test':>6}  {'accuracy':>8}  "
                 f"{'time_s':>10}")
    for d in rep_dicts:
        scope = d.get("scope", d["mode"])
        lines.append(
            f"{scope:>12}  {d['n_train']:>7}  {d['n_test']:>6}  "
            f"{_percent(d['accuracy']):>8}  {d['mean_classify_time_s']:>10.3e}"
        )
    lines.append("")
    lines.append(f"average accuracy: {_percent(average)}")
    lines.append(f"mean single-sample classify time: {mean_time:.3e} s")
    lines.append("")
    lines.append("confusion (row = true, percent):")
    head = "      " + "".join(f"{str(c):>8}" for c in confusion.classes)
    lines.append(head)
    for c, row in zip(confusion.classes, confusion.percents):
        lines.append(f"{str(c):>6}" + "".join(f"{_percent(v):>8}" for v in row))
    if confusion.zero_support:
        lines.append(f"zero-support rows: {list(confusion.zero_support)}")
    lines.append("")
    return "\n".join(lines)


def _aggregate_confusion(reports):
    classes = reports[0].confusion.classes
    counts = sum(r.confusion.counts for r in reports)
    support = counts.sum(axis=1)
    percents = np.zeros_like(counts, dtype=np.float64)
    nz = support > 0
    percents[nz] = 100.0 * counts[nz] / support[nz, None]
    zero = tuple(c for c, s in zip(classes, support) if s == 0)
    return ConfusionMatrix(classes, counts, percents, zero)


def _eval_cell(matrix: FeatureMatrix, mode: str, spec: ClassifierSpec,
               ratio: float, seed: int, user: int | None, out_dir: Path,
               save_model_path: Path | None) -> dict:
    """Run one mode x classifier cell, write its artifacts, return summary."""
    out_dir.mkdir(parents=True, exist_ok=True)
    trained = None

    if mode == "mixed":
        plan = plan_mixed(matrix, ratio=ratio, seed=seed)
        rep = evaluate(matrix, plan, spec)
        reports = [rep]
        average = rep.accuracy
        rep_dicts = [_report_to_dict(rep)]
        confusion = rep.confusion
        per_user_rows = sorted(rep.per_user_accuracy.items())
        per_user_avg = None
        crossval = None
    elif mode == "user-dependent":
        users = [user] if user is not None else sorted(
            int(u) for u in np.unique(matrix.users)
        )
        reports = []
        for u in users:
            plan = plan_user_dependent(matrix, u, ratio=ratio, seed=seed)
            reports.append(evaluate(matrix, plan, spec))
        if user is None:
            rows, per_user_avg = per_user_table(reports)
        else:
            rows = [(user, reports[0].accuracy)]
            per_user_avg = reports[0].accuracy
        per_user_rows = rows
        average = per_user_avg
        rep_dicts = []
        for u, rep in zip(users, reports):
            d = _report_to_dict(rep)
            d["scope"] = f"user {u}"
            rep_dicts.append(d)
        confusion = _aggregate_confusion(reports)
        crossval = None
    elif mode == "user-independent":
        if user is not None:
            raise UsageError("--user does not apply to user-independent mode")
        folds = plan_user_independent(matrix, seed=seed)
        results = evaluate_folds(matrix, folds, spec)
        reports = list(results.reports)
        average = results.average_accuracy
        crossval = crossval_chart_data(reports)
        per_user_rows = crossval
        per_user_avg = average
        rep_dicts = []
        for rep in reports:
            d = _report_to_dict(rep)
            tested = next(iter(rep.per_user_accuracy))
            d["scope"] = f"fold u{tested}"
            rep_dicts.append(d)
        confusion = _aggregate_confusion(reports)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown mode {mode!r}")

    mean_time = float(np.mean([r.mean_classify_time_s for r in reports]))
    title = f"{mode} / {spec.kind} (seed {seed})"
    (out_dir / "report.txt").write_text(
        _format_report_txt(title, rep_dicts, average, mean_time, confusion),
        encoding="utf-8",
    )
    doc = {
        "mode": mode,
        "classifier": spec.kind,
        "hyperparams": spec.hyperparams,
        "seed": seed,
        "ratio": ratio if mode != "user-independent" else None,
        "average_accuracy": average,
        "mean_classify_time_s": mean_time,
        "reports": rep_dicts,
    }
    with open(out_dir / "report.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    _write_confusion_csv(out_dir / "confusion.csv", confusion)
    _write_per_user_csv(out_dir / "per_user.csv", per_user_rows, per_user_avg)
    if crossval is not None:
        with open(out_dir / "crossval.csv", "w", newline="\n", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["user", "accuracy"])
            for u, acc in crossval:
                writer.writerow([u, _percent(acc)])

    if save_model_path is not None:
        if mode == "user-independent":
            raise UsageError("--save-model needs a single-split mode")
        if mode == "user-dependent" and user is None:
            raise UsageError("--save-model with user-dependent mode needs --user")
        model = spec.build()
        plan = (
            plan_mixed(matrix, ratio=ratio, seed=seed)
            if mode == "mixed"
            else plan_user_dependent(matrix, user, ratio=ratio, seed=seed)
        )
        model.fit(matrix.X[plan.train_indices],
                  matrix.gestures[plan.train_indices])
        save_model(model, save_model_path)

    print(f"{mode:>16} {spec.kind:>3}  accuracy {_percent(average)}  "
          f"time {mean_time:.3e} s")
    return {"mode": mode, "classifier": spec.kind, "accuracy": average,
            "mean_classify_time_s": mean_time}


def _hyper_from_args(kind: str, args) -> dict:
    hyper: dict = {}
    if kind == "et":
        if args.n_trees is not None:
            hyper["n_trees"] = args.n_trees
        if args.k_features is not None:
            hyper["k_features"] = args.k_features
        if args.min_samples_split is not None:
            hyper["min_samples_split"] = args.min_samples_split
        if args.jobs != 1:
            hyper["jobs"] = args.jobs
    elif kind == "gb":
        if args.n_stages is not None:
            hyper["n_stages"] = args.n_stages
        if args.learning_rate is not None:
            hyper["learning_rate"] = args.learning_rate
        if args.max_depth is not None:
            hyper["max_depth"] = args.max_depth
    elif kind == "rc":
        if args.alpha is not None:
            hyper["alpha"] = args.alpha
    return hyper


def cmd_eval(args) -> int:
    if not args.all and args.mode is None:
        raise UsageError("choose --mode or --all")
    if args.all and args.mode is not None:
        raise UsageError("--mode and --all are mutually exclusive")
    if args.mode == "user-independent" and args.ratio is not None:
        raise UsageError("--ratio does not apply to user-independent mode")
    if args.save_model:
        if args.all or args.mode == "user-independent":
            raise UsageError("--save-model needs a single-split mode")
        if args.mode == "user-dependent" and args.user is None:
            raise UsageError("--save-model with user-dependent mode needs --user")
    ratio = args.ratio if args.ratio is not None else 0.75
    out = Path(args.out)
    matrix = _load_matrix(Path(args.input), args.jobs)

    _write_run(out, "eval", {
        "input": str(args.input),
        "mode": args.mode,
        "all": args.all,
        "classifier": args.classifier,
        "seed": args.seed,
        "ratio": ratio,
        "user": args.user,
        "jobs": args.jobs,
        "hyperparams": {k: _hyper_from_args(k, args) for k in CLASSIFIER_KINDS}
        if args.all
        else _hyper_from_args(args.classifier, args),
        "save_model": str(args.save_model) if args.save_model else None,
    })

    if args.all:
        grid = []
        for mode in MODES:
            for kind in sorted(CLASSIFIER_KINDS):
                spec = ClassifierSpec(kind, _hyper_from_args(kind, args), args.seed)
                cell_dir = out / f"{mode}-{kind}"
                grid.append(
                    _eval_cell(matrix, mode, spec, ratio, args.seed, args.user,
                               cell_dir, None)
                )
        with open(out / "grid.csv", "w", newline="\n", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["mode", "classifier", "accuracy",
                             "mean_classify_time_s"])
            for cell in grid:
                writer.writerow([cell["mode"], cell["classifier"],
                                 _percent(cell["accuracy"]),
                                 f"{cell['mean_classify_time_s']:.6e}"])
        return EXIT_OK

    spec = ClassifierSpec(args.classifier, _hyper_from_args(args.classifier, args),
                          args.seed)
    _eval_cell(matrix, args.mode, spec, ratio, args.seed, args.user, out,
               Path(args.save_model) if args.save_model else None)
    return EXIT_OK


# ----------------------------------------------------------------- bench

def cmd_bench(args) -> int:
    matrix = load_features(Path(args.features))
    if matrix.n == 0:
        raise DataError("feature file has no rows", path=Path(args.features))
    if args.reps < 100:
        raise UsageError("--reps must be >= 100")
    groups = 10
    results = []
    for model_path in args.models:
        model = load_model(model_path, expect_feature_version=matrix.version)
        t = time_single_predictions(model, matrix.X, groups=groups,
                                    calls_per_group=max(1, args.reps // groups))
        results.append((Path(model_path).name, model.kind, t))
        print(f"{model.kind:>3}  {t:.3e} s/sample  ({Path(model_path).name})")
    if args.out:
        out = Path(args.out)
        _write_run(out, "bench", {
            "models": [str(m) for m in args.models],
            "features": str(args.features),
            "reps": args.reps,
        })
        with open(out / "bench.csv", "w", newline="\n", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["model", "kind", "seconds_per_sample"])
            for name, kind, t in results:
                writer.writerow([name, kind, f"{t:.6e}"])
    if len(results) > 1:
        ordered = sorted(results, key=lambda r: r[2])
        print("ordering: " + " < ".join(kind for _, kind, _ in ordered))
    return EXIT_OK


# ----------------------------------------------------------------- synth

def cmd_synth(args) -> int:
    out = Path(args.out)
    if args.preset == "easy":
        spec = (
            EASY_SPEC
            if args.seed is None
            else dataclasses.replace(EASY_SPEC, seed=args.seed)
        )
    else:
        try:
            spec = SynthSpec(
                users=args.users,
                gestures=args.gestures,
                samples_per_gesture_per_user=args.samples,
                length_range=(args.length_min, args.length_max),
                user_speed_jitter=args.speed_jitter,
                noise_sigma=args.noise_sigma,
                user_style_offset=args.style_offset,
                seed=args.seed if args.seed is not None else 0,
            )
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    dataset = generate(spec)
    manifest = save_manifest(dataset, out)
    _write_run(out, "synth", {
        "users": spec.users,
        "gestures": spec.gestures,
        "samples_per_gesture_per_user": spec.samples_per_gesture_per_user,
        "length_range": list(spec.length_range),
        "user_speed_jitter": spec.user_speed_jitter,
        "noise_sigma": spec.noise_sigma,
        "user_style_offset": spec.user_style_offset,
        "seed": spec.seed,
        "preset": args.preset,
    })
    print(dataset.meta.summary())
    print(f"wrote {manifest}")
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gestrec",
        description="Accelerometer gesture recognition pipeline",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="convert a dataset to canonical form")
    p.add_argument("adapter", choices=("uwave", "sony", "canonical"))
    p.add_argument("input", help="tree root (raw) or manifest path (canonical)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--adapter-config", default=None,
                   help="JSON adapter config overriding the built-in pattern")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("features", help="extract the 33-value feature CSV")
    p.add_argument("manifest")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_features)

    p = sub.add_parser("eval", help="run an evaluation mode")
    p.add_argument("input", help="manifest CSV or feature CSV")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--mode", choices=MODES, default=None)
    p.add_argument("--all", action="store_true",
                   help="run every mode x classifier cell")
    p.add_argument("--classifier", choices=sorted(CLASSIFIER_KINDS), default="et")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ratio", type=float, default=None,
                   help="train fraction (default 0.75)")
    p.add_argument("--user", type=int, default=None,
                   help="restrict user-dependent mode to one user")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--save-model", default=None,
                   help="write the fitted model file (single-split modes)")
    p.add_argument("--n-trees", type=int, default=None)
    p.add_argument("--k-features", type=int, default=None)
    p.add_argument("--min-samples-split", type=int, default=None)
    p.add_argument("--n-stages", type=int, default=None)
    p.add_argument("--learning-rate", type=float, default=None)
    p.add_argument("--max-depth", type=int, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("bench", help="time single-sample prediction of models")
    p.add_argument("models", nargs="+", help="model file(s)")
    p.add_argument("--features", required=True, help="feature CSV")
    p.add_argument("--reps", type=int, default=200)
    p.add_argument("--out", default=None, help="optional output directory")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("synth", help="generate a synthetic canonical dataset")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--preset", choices=("easy",), default=None)
    p.add_argument("--users", type=int, default=8)
    p.add_argument("--gestures", type=int, default=8)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--length-min", type=int, default=40)
    p.add_argument("--length-max", type=int, default=120)
    p.add_argument("--speed-jitter", type=float, default=0.0)
    p.add_argument("--noise-sigma", type=float, default=0.0)
    p.add_argument("--style-offset", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_synth)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"gestrec: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericError, SingularSystemError, FloatingPointError,
            ZeroDivisionError) as exc:
        print(f"gestrec: numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (DataError, ModelFileError, VersionMismatchError) as exc:
        print(f"gestrec: {exc}", file=sys.stderr)
        return EXIT_DATA
    except GestureRecError as exc:
        print(f"gestrec: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
