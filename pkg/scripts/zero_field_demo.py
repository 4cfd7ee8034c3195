#!/usr/bin/env python3
"""Quick look at the field-free chain: couplings, spectrum, and the transfer.

The parameter choice m=2, M0=3, M1=1 makes every on-site field vanish, so the
whole chain is just five sites and four couplings -- a nice minimal example
of engineered perfect transfer.  Prints the exact data and a coarse fidelity
trace around the transfer time.
"""

import math
import sys

sys.path.insert(0, "src")

from pstlab.dynamics import chain_eigensystem, fidelity_trace
from pstlab.models import build_qracah_chain
from pstlab.pstcert import certify

chain = build_qracah_chain(2, 3, 1, 4)

print("on-site fields (exact, units pi/T):", [str(v) for v in chain.b])
print("couplings squared (exact):        ", [str(v) for v in chain.j_sq])
print("couplings (float):                ", ["%.6f" % j for j in chain.j_float])
print("spectrum (units pi/T):            ",
      [str(v) for v in chain.spectrum.eigenvalues])

cert = certify(chain)
print("verdict:", cert.verdict, "| gap integers:", cert.gap_integers)

T = chain.transfer_time
eig = chain_eigensystem(chain)
grid = [T * k / 16 for k in range(17)]
trace = fidelity_trace(eig, grid)
print("\n  t/T    |f(t)|^2")
for t, p in zip(trace.times, trace.probabilities):
    bar = "#" * int(round(40 * p))
    print(f"  {t / T:4.2f}   {p:8.6f}  {bar}")
peak_t, peak_p = trace.peak()
print(f"\npeak probability {peak_p:.12f} at t = {peak_t / math.pi:.2f} pi")
