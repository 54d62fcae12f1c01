#!/usr/bin/env python3
"""Audit the sharp fractional-logarithmic identity over an (N, s) grid,
plus its s -> 0 logarithmic degeneration.

Usage: python3 scripts/run_identity_sweep.py
"""

import sys

import numpy as np

from fraclog.constants import Params
from fraclog import inequalities as ineq


def main():
    status = 0
    print("N,s,lhs,rhs,rel_residual,pass")
    for N in (1, 2, 3, 4, 5):
        for s in np.arange(0.1, 1.0, 0.2):
            if not N > 2 * s:
                continue
            rep = ineq.sharp_fraclog_identity(Params(N, round(float(s), 3)))
            if not rep.passed:
                status = 1
            print(f"{N},{s:.1f},{rep.lhs:.12g},{rep.rhs:.12g},"
                  f"{rep.residual:.3e},{rep.passed}")
    for N in (1, 2, 3):
        rep = ineq.euclid_log_identity(N)
        if not rep.passed:
            status = 1
        print(f"{N},0.0,{rep.lhs:.12g},{rep.rhs:.12g},{rep.residual:.3e},{rep.passed}")
    return status


if __name__ == "__main__":
    sys.exit(main())
