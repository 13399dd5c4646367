#!/usr/bin/env python
"""Symmetric self-product of Gamow states against their complex norm N_n.

For the square barrier u0 = 10, L = 1, prints for n = 1..N:

* N_n from its boundary-term definition
* the lam -> 0 limit of {u_n|u_n} from the tail decomposition
* the regularized value at a few lam, to show the approach
"""
from __future__ import annotations

import argparse

from gamowkit import (
    SYMMETRIC, find_resonances, gamow_state, product_limit, product_regularized, square_barrier, zeldovich_norm,
)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--lams", default="1e-2,1e-3,1e-4")
    args = ap.parse_args(argv)
    lams = [float(x) for x in args.lams.split(",")]

    prof = square_barrier(10.0, 1.0)
    for pole in find_resonances(prof, args.n):
        u = gamow_state(prof, pole)
        N = zeldovich_norm(u)
        v = product_limit(u, u, SYMMETRIC)
        print(f"n={pole.label}  p={pole.momentum:.6f}")
        print(f"   N_n               = {N:.12g}")
        print(f"   limit {{u_n|u_n}}   = {v.kind.value} {v.value if v.value is not None else ''}")
        for lam in lams:
            print(f"   lam={lam:<8g} value = {product_regularized(u, u, SYMMETRIC, lam).to_complex():.12g}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
