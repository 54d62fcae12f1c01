#!/usr/bin/env python3
"""Sweep the Sobolev deficit curve of a frozen bubble and print the
negative-derivative witness.

Usage: python3 scripts/run_failure_curve.py [N] [s0] [grid_points]
Writes failure_curve_N{N}_s{s0}.csv next to the working directory.
"""

import sys

from fraclog import inequalities as ineq


def main():
    N = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    s0 = float(sys.argv[2]) if len(sys.argv) > 2 else 0.5
    n = int(sys.argv[3]) if len(sys.argv) > 3 else 80

    report, curve = ineq.failure_demo(N, s0, n)
    out = f"failure_curve_N{N}_s{s0}.csv"
    with open(out, "w") as fh:
        fh.write("s,F,Fprime_fd,F_error\n")
        for row in curve.as_rows():
            fh.write(f"{row['s']:.17g},{row['F']:.17g},"
                     f"{row['Fprime_fd']:.17g},{row['F_error']:.17g}\n")
    d = report.details
    print(f"wrote {out} ({n} points)")
    print(f"F(s0)        = {d['F_at_s0']:.3e} (scale {d['scale']:.3f})")
    print(f"min F        = {d['min_F']:.3e}")
    print(f"min F'       = {d['min_Fprime']:.6f} at s = {d['argmin_s']:.4f}")
    print(f"error budget = {d['derivative_budget']:.2e}")
    print(f"verdict: {'monotonicity fails (naive inequality false)' if report.passed else 'INCONCLUSIVE'}")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
