"""Write the two-blob desk benchmark as CSV.

Majority n=500 at (0, 0), minority n=50 at (2, 2), unit covariance.
The CLI min-max scales features on load, so raw coordinates are written.

    python3 scripts/make_desk_benchmark.py data/two_blobs.csv
"""

import argparse
from pathlib import Path

from gksmote.data import make_two_blobs, write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out", type=Path)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--n-majority", type=int, default=500)
    ap.add_argument("--n-minority", type=int, default=50)
    args = ap.parse_args()
    d = make_two_blobs(args.n_majority, args.n_minority, seed=args.seed)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    write_csv(d, args.out)
    print(f"wrote {args.out}: {d.n_majority} majority, {d.n_minority} minority")


if __name__ == "__main__":
    main()
