#!/usr/bin/env python
"""Do bound-state momenta ever fall inside a resonance cone?

A well of depth ``V`` on [0, a] is followed by a barrier of height ``B`` on
[a, L].  For each depth the script lists every bound state q_i, the first
few resonances, and the verdict of <phi_i|u_n>.

Both tails of phi_i^* u_n carry the exponent k = p_n + i q_i, so the
product diverges only when arg k < -pi/4.  ``q_gt_abs_im_p`` marks the
stricter condition under which the tail integrals converge without any
regulator.
"""
from __future__ import annotations

import argparse
import csv
import sys

import cmath
import math

import numpy as np

from gamowkit import (
    STANDARD, bound_state, build_profile, find_bound_states, find_resonances, gamow_state, product_limit,
)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--depths", default="2,5,10,20,30,50", help="comma-separated well depths")
    ap.add_argument("--barrier", type=float, default=20.0)
    ap.add_argument("--a", type=float, default=0.5, help="well width")
    ap.add_argument("--L", type=float, default=1.0)
    ap.add_argument("--n", type=int, default=4, help="resonances per profile")
    args = ap.parse_args(argv)

    w = csv.writer(sys.stdout)
    w.writerow(["depth", "i", "q_i", "n", "re_p", "im_p", "q_gt_abs_im_p", "arg_k_over_pi", "verdict"])
    for depth in (float(x) for x in args.depths.split(",")):
        prof = build_profile([(0.0, args.a, -depth), (args.a, args.L, args.barrier)])
        bps = find_bound_states(prof, np.sqrt(depth) + 1.0)
        res = find_resonances(prof, args.n)
        for bp in bps:
            phi = bound_state(prof, bp)
            for pole in res:
                v = product_limit(phi, gamow_state(prof, pole), STANDARD)
                q, p = bp.momentum.imag, pole.momentum
                w.writerow([depth, bp.label, format(q, ".10g"), pole.label, format(p.real, ".10g"),
                            format(p.imag, ".10g"), int(q > abs(p.imag)),
                            format(cmath.phase(p + 1j * q) / math.pi, ".6f"), v.kind.value])
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
