#!/usr/bin/env python3
"""Tabulate para-family level spacings to see which ladders come out odd.

The even-position spacings carry a rational prefactor M1/(M0+M2), so they can
land on odd integers, even integers, or proper fractions depending on the
inputs.  This table makes the pattern visible at a glance: rows whose every
entry is an odd integer are the transfer-capable ones.

Usage: para_gap_table.py [m] [N]   (defaults m=2, N=6)
"""

import sys

sys.path.insert(0, "src")

from pstlab.models import ModelParams, para_gap_values

m = int(sys.argv[1]) if len(sys.argv) > 1 else 2
N = int(sys.argv[2]) if len(sys.argv) > 2 else 6

ODDS = (1, 3, 5, 7)

print(f"para family, m={m}, N={N}: spacings in units of pi/T")
print(f"{'M0':>3} {'M1':>3} {'M2':>3}  spacings" + " " * 30 + "all odd?")
for M0 in ODDS:
    for M1 in ODDS:
        for M2 in ODDS:
            gaps = para_gap_values(ModelParams("para", m, M0, M1, N, M2=M2))
            shown = ", ".join(str(g) for g in gaps)
            odd = all(g.denominator == 1 and g.numerator % 2 == 1 and g > 0
                      for g in gaps)
            flag = "  <-- PST ladder" if odd else ""
            print(f"{M0:>3} {M1:>3} {M2:>3}  [{shown}]{flag}")
