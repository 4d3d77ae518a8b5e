"""``gksmote`` command line.

Subcommands: ``oversample``, ``inspect``, ``bench`` and ``replay``. Each
writes a ``key=value`` manifest next to its outputs; ``gksmote replay
<manifest>`` re-runs the recorded command and reproduces the outputs byte
for byte.

Exit codes: 0 success, 1 some bench cells failed, 2 usage/config error,
3 data error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import warnings
from pathlib import Path

from . import __version__
from .bench import METRICS, RESULT_FIELDS, BenchConfig, rank_statistics, run_bench, write_rows
from .data import NOISE_MODES, load_csv, write_csv
from .density import BandwidthPolicy
from .errors import ConfigError, DataError
from .sampler import SamplerConfig, gk_smote
from .smote import smote_samples

EXIT_OK, EXIT_PARTIAL, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 3


def _floats(text):
    try:
        return tuple(float(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text):
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _names(text):
    return tuple(t.strip() for t in text.split(",") if t.strip())


def _add_input_args(p, many=False):
    if many:
        p.add_argument("inputs", nargs="+", type=Path, help="input CSV files")
    else:
        p.add_argument("input", type=Path, help="input CSV file")
    p.add_argument("--label-column", default="-1",
                   help="label column name or index (default: last column)")
    p.add_argument("--minority-value", default="1", help="label value of the minority class")
    p.add_argument("--no-normalize", action="store_true",
                   help="skip min-max scaling of features to [0, 1]")


def _add_sampler_args(p):
    p.add_argument("--ir", type=float, default=1.0, help="target imbalance ratio (>= 1)")
    p.add_argument("--k", type=int, default=5, help="neighbour count")
    p.add_argument("--bandwidth", default="silverman", help="'silverman' or 'fixed:<h>'")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gksmote", description="KDE-guided SMOTE oversampling and noise benchmarks."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("oversample", help="resample one CSV dataset")
    _add_input_args(p)
    _add_sampler_args(p)
    p.add_argument("--method", choices=("gksmote", "smote"), default="gksmote")
    p.add_argument("--out", type=Path, required=True, help="output CSV path")

    p = sub.add_parser("inspect", help="export the per-sample noise/density taxonomy")
    _add_input_args(p)
    _add_sampler_args(p)
    p.add_argument("--features", type=_ints, default=(0, 1),
                   help="feature pair for the scatter export (default 0,1)")
    p.add_argument("--out-dir", type=Path, required=True)

    p = sub.add_parser("bench", help="noise-rate sweep with cross-validation")
    _add_input_args(p, many=True)
    p.add_argument("--methods", type=_names, default=("none", "smote", "gksmote"))
    p.add_argument("--noise-rates", type=_floats, default=(0.0, 0.1, 0.2, 0.3))
    p.add_argument("--noise-mode", choices=NOISE_MODES, default="symmetric",
                   help="label-flip counting (default: symmetric, keeps the IR)")
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--seeds", type=_ints, default=(0,))
    p.add_argument("--k-clf", type=int, default=5, help="k of the k-NN classifier")
    p.add_argument("--ir", type=float, default=1.0)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--bandwidth", default="silverman")
    p.add_argument("--out-dir", type=Path, required=True)

    p = sub.add_parser("replay", help="re-run a command from its manifest")
    p.add_argument("manifest", type=Path)
    return parser


def _label_column(text):
    try:
        return int(text)
    except ValueError:
        return text


def _load(path, args):
    return load_csv(
        path, label_column=_label_column(args.label_column),
        minority_value=args.minority_value, normalize=not args.no_normalize,
    )


def _sampler(args) -> SamplerConfig:
    return SamplerConfig(
        target_ir=args.ir, k=args.k, bandwidth=BandwidthPolicy.parse(args.bandwidth),
        seed=getattr(args, "seed", 0),
    )


def write_manifest(path: Path, argv, fields: dict) -> None:
    lines = ["tool=gksmote", f"version={__version__}", f"argv={json.dumps(list(argv))}"]
    lines += [f"{k}={v}" for k, v in fields.items()]
    Path(path).write_text("\n".join(lines) + "\n")


def read_manifest(path: Path) -> dict:
    out = {}
    for line in Path(path).read_text().splitlines():
        if "=" in line:
            k, v = line.split("=", 1)
            out[k] = v
    return out


def cmd_oversample(args, argv) -> int:
    cfg = _sampler(args)
    d = _load(args.input, args)
    if args.method == "gksmote":
        res = gk_smote(d, cfg)
        out = res.resampled
        plan = res.plan
        print(f"|P|={plan.n_minority} |P'|={plan.n_retained} N={plan.total_n} "
              f"N_A={plan.per_cluster[0]} N_B={plan.per_cluster[1]}")
    else:
        syn = smote_samples(d, cfg)
        out = d.append_synthetic(syn.X)
        print(f"|P|={d.n_minority} |P'|={d.n_minority} N={len(syn)} N_A=- N_B=-")
    args.out.parent.mkdir(parents=True, exist_ok=True)
    write_csv(out, args.out)
    write_manifest(Path(f"{args.out}.manifest"), argv, {
        "command": "oversample", "method": args.method, "input": args.input,
        "output": args.out, "target_ir": cfg.target_ir, "k": cfg.k,
        "bandwidth": cfg.bandwidth, "seed": cfg.seed, "rows": len(out),
    })
    return EXIT_OK


def cmd_inspect(args, argv) -> int:
    cfg = _sampler(args)
    d = _load(args.input, args)
    fx = tuple(args.features)
    if len(fx) != 2 or not all(0 <= f < d.dim for f in fx):
        raise ConfigError(f"--features must name two of the {d.dim} feature columns, got {fx}")
    res = gk_smote(d, cfg)
    args.out_dir.mkdir(parents=True, exist_ok=True)

    with open(args.out_dir / "records.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["index", "m", "density", "verdict", "cluster"])
        for r in res.records:
            dens = "" if r.density is None else repr(r.density)
            w.writerow([r.row, r.majority_count, dens, r.verdict.value, r.cluster.value])

    with open(args.out_dir / "plan.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["index", "cluster", "weight", "quota"])
        for e in res.plan.entries:
            w.writerow([e.row, e.cluster.value, repr(e.weight), e.quota])

    with open(args.out_dir / "scatter.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "y", "class", "origin"])
        for x, c, o in zip(res.resampled.X, res.resampled.y, res.resampled.origin):
            w.writerow([repr(float(x[fx[0]])), repr(float(x[fx[1]])),
                        "minority" if c else "majority", "synthetic" if o else "real"])

    n_noisy = sum(r.verdict.value == "noisy" for r in res.records)
    print(f"minority={d.n_minority} noisy={n_noisy} bandwidth={res.bandwidth!r} "
          f"N={res.plan.total_n} N_A={res.plan.per_cluster[0]} N_B={res.plan.per_cluster[1]}")
    write_manifest(args.out_dir / "manifest.txt", argv, {
        "command": "inspect", "input": args.input, "out_dir": args.out_dir,
        "target_ir": cfg.target_ir, "k": cfg.k, "bandwidth": cfg.bandwidth,
        "seed": cfg.seed, "features": ",".join(map(str, fx)),
    })
    return EXIT_OK


def cmd_bench(args, argv) -> int:
    cfg = BenchConfig(
        methods=args.methods, noise_rates=args.noise_rates, seeds=args.seeds,
        folds=args.folds, k_clf=args.k_clf, noise_mode=args.noise_mode,
        sampler=SamplerConfig(target_ir=args.ir, k=args.k,
                              bandwidth=BandwidthPolicy.parse(args.bandwidth)),
    )
    datasets = [_load(p, args) for p in args.inputs]
    names = [d.name for d in datasets]
    if len(set(names)) != len(names):
        raise ConfigError(f"input datasets must have distinct file stems, got {names}")
    rows = run_bench(datasets, cfg)
    stats = rank_statistics(rows, cfg.methods, metrics=[f"cv_{m}" for m in METRICS])
    args.out_dir.mkdir(parents=True, exist_ok=True)
    write_rows(rows, args.out_dir / "results.csv", RESULT_FIELDS)
    write_rows(stats, args.out_dir / "stats.csv")

    print(f"{'dataset':<16} {'method':<8} {'noise':>5} {'seed':>4} {'cv_mcc':>8} {'cv_bac':>8} {'cv_auprc':>8}")
    for r in rows:
        vals = [f"{float(r[f'cv_{m}']):8.4f}" if r[f"cv_{m}"] else f"{'ERR':>8}" for m in METRICS]
        print(f"{r['dataset']:<16} {r['method']:<8} {float(r['noise_rate']):5.2f} {r['seed']:>4} " + " ".join(vals))
    write_manifest(args.out_dir / "manifest.txt", argv, {
        "command": "bench", "inputs": ",".join(map(str, args.inputs)), "out_dir": args.out_dir,
        "methods": ",".join(cfg.methods), "noise_rates": ",".join(map(repr, cfg.noise_rates)),
        "noise_mode": cfg.noise_mode, "seeds": ",".join(map(str, cfg.seeds)),
        "folds": cfg.folds, "k_clf": cfg.k_clf, "target_ir": cfg.sampler.target_ir,
        "k": cfg.sampler.k, "bandwidth": cfg.sampler.bandwidth,
    })
    failed = sum(1 for r in rows if r["error"])
    if failed:
        print(f"{failed} of {len(rows)} cells failed; see the error column", file=sys.stderr)
        return EXIT_PARTIAL
    return EXIT_OK


def cmd_replay(args, argv) -> int:
    m = read_manifest(args.manifest)
    if "argv" not in m:
        raise ConfigError(f"{args.manifest}: not a gksmote manifest (no argv entry)")
    return main(json.loads(m["argv"]))


COMMANDS = {
    "oversample": cmd_oversample,
    "inspect": cmd_inspect,
    "bench": cmd_bench,
    "replay": cmd_replay,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return COMMANDS[args.command](args, argv)
    except ConfigError as exc:
        print(f"gksmote: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"gksmote: data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
