"""Noise-rate sweep on the desk benchmark, GK-SMOTE against SMOTE.

Prints mean 10-fold CV MCC per (method, noise rate) and, per seed, whether
GK-SMOTE beats SMOTE at the highest rate and degrades by a smaller
fraction. Both label-noise modes can be compared:

    python3 scripts/noise_sweep.py --mode symmetric --mode per_class
"""

import argparse

import numpy as np

from gksmote.bench import BenchConfig, run_bench
from gksmote.data import NOISE_MODES, Dataset, make_two_blobs, min_max_normalize
from gksmote.sampler import SamplerConfig


def sweep(d, mode, rates, seeds, folds):
    cfg = BenchConfig(methods=("none", "smote", "gksmote"), noise_rates=rates, seeds=seeds,
                      folds=folds, noise_mode=mode, sampler=SamplerConfig(target_ir=1.0, k=5))
    rows = run_bench([d], cfg)
    return {(r["method"], float(r["noise_rate"]), r["seed"]): float(r["cv_mcc"]) for r in rows}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--mode", action="append", choices=NOISE_MODES)
    ap.add_argument("--rates", default="0,0.1,0.2,0.3")
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--folds", type=int, default=10)
    args = ap.parse_args()
    rates = tuple(float(r) for r in args.rates.split(","))
    seeds = tuple(range(args.seeds))
    raw = make_two_blobs(seed=0)
    d = Dataset(min_max_normalize(raw.X), raw.y, name="two_blobs")

    for mode in args.mode or ["symmetric"]:
        v = sweep(d, mode, rates, seeds, args.folds)
        print(f"\nnoise mode: {mode}")
        print(f"{'method':<8}" + "".join(f"{r:>9.2f}" for r in rates))
        for m in ("none", "smote", "gksmote"):
            means = [np.mean([v[m, r, s] for s in seeds]) for r in rates]
            print(f"{m:<8}" + "".join(f"{x:9.4f}" for x in means))
        lo, hi = rates[0], rates[-1]
        drop = lambda m, s: (v[m, lo, s] - v[m, hi, s]) / v[m, lo, s]
        wins = sum(v["gksmote", hi, s] >= v["smote", hi, s] for s in seeds)
        smaller = sum(drop("gksmote", s) <= drop("smote", s) for s in seeds)
        print(f"at rate {hi}: GK-SMOTE MCC >= SMOTE in {wins}/{len(seeds)} seeds, "
              f"smaller relative drop in {smaller}/{len(seeds)}")


if __name__ == "__main__":
    main()
