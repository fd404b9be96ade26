#!/usr/bin/env python3
"""Sweep box-counting slopes against the equation roots as depth grows.

Writes one CSV row per (set, depth): the fitted slope, the exact root,
and the gap between them.  The gap shrinking with depth is the visual
check that the two dimension routes agree.

    python3 scripts/boxcount_sweep.py --depths 8,10,12 --scales 4..9
"""

import argparse
import csv
import sys

from sadicsets import (
    box_count_for_alphabet,
    dim_alphabet,
    induced_alphabet,
    sprime3_alphabet,
    tilde_alphabet,
)

SETS = {
    "marker0-base3": induced_alphabet(3, 0),
    "marker0-base4": induced_alphabet(4, 0),
    "pooled-base3": tilde_alphabet(3),
    "interleaved-base3": sprime3_alphabet(),
}


def parse_args(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--depths", default="10,12,14")
    ap.add_argument("--scales", default="4..9", help="'lo..hi' exponent span")
    ap.add_argument("--sets", default=",".join(SETS), help="comma list")
    ap.add_argument("--output", default=None, help="CSV path, default stdout")
    return ap.parse_args(argv)


def main(argv=None) -> int:
    args = parse_args(argv)
    lo, hi = (int(p) for p in args.scales.split(".."))
    depths = [int(p) for p in args.depths.split(",")]
    fh = open(args.output, "w", newline="") if args.output else sys.stdout
    w = csv.writer(fh)
    w.writerow(["set", "depth", "slope", "root", "gap"])
    for name in args.sets.split(","):
        a = SETS[name]
        root = dim_alphabet(a).alpha
        for depth in depths:
            # boxes must stay wider than the depth's frontier hulls
            usable = [e for e in range(lo, hi + 1) if e <= depth - a.max_len]
            if len(usable) < 3:
                print(
                    f"skip {name} depth {depth}: needs 3 usable scales",
                    file=sys.stderr,
                )
                continue
            r = box_count_for_alphabet(a, depth, usable)
            w.writerow(
                [name, depth, f"{r.slope:.6f}", f"{root:.6f}",
                 f"{abs(r.slope - root):.2e}"]
            )
    if args.output:
        fh.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
