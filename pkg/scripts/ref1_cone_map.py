#!/usr/bin/env python
"""Verdict maps for the square barrier u0 = 10, L = 1.

Writes two CSV files into ``--out``:

* ``pole_pairs.csv``: verdict code of <u_n|u_m> (standard kind) for
  n, m in +-1..N
* ``pole2_vs_p.csv``: verdict of <psi(p)|u_2> on a real p grid, with the
  cone-section prediction |p - Re p_2| < |Im p_2| alongside
"""
from __future__ import annotations

import argparse
import csv
from pathlib import Path

import numpy as np

from gamowkit import (
    STANDARD, find_resonances, gamow_state, mirror_pole, product_limit, scattering_state, square_barrier,
)

CODES = {"Zero": "0", "Finite": "F", "Divergent": "D", "Distributional": "S", "Marginal": "M"}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=8, help="poles per sign")
    ap.add_argument("--grid", type=int, default=200, help="real-p grid points")
    ap.add_argument("--p-max", type=float, default=20.0)
    ap.add_argument("--out", type=Path, default=Path("out"))
    args = ap.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)

    prof = square_barrier(10.0, 1.0)
    poles = {}
    for p in find_resonances(prof, args.n):
        poles[p.label] = p
        poles[-p.label] = mirror_pole(p, prof)
    labels = sorted(poles)
    states = {n: gamow_state(prof, poles[n]) for n in labels}

    with open(args.out / "pole_pairs.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n"] + labels)
        for n in labels:
            w.writerow([n] + [CODES[product_limit(states[n], states[m], STANDARD).kind.value] for m in labels])

    p2 = poles[2].momentum
    with open(args.out / "pole2_vs_p.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["p", "verdict", "in_cone_section"])
        for p in np.linspace(args.p_max / args.grid, args.p_max, args.grid):
            v = product_limit(scattering_state(prof, float(p)), states[2], STANDARD)
            w.writerow([format(p, ".17g"), CODES[v.kind.value], int(abs(p - p2.real) < abs(p2.imag))])
    print(f"wrote {args.out / 'pole_pairs.csv'} and {args.out / 'pole2_vs_p.csv'}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
