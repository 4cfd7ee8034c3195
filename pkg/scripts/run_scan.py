#!/usr/bin/env python3
"""Sweep both families over a modest grid and summarize the verdicts.

Writes scan_qracah.csv / scan_para.csv (plus JSON summaries) into the chosen
output directory; pass a directory as the only argument (default: out/).
Set PSTLAB_WORKERS to parallelize the sweep.
"""

import json
import os
import sys

sys.path.insert(0, "src")

from pstlab.cli import main

OUT_DIR = sys.argv[1] if len(sys.argv) > 1 else "out"

QRACAH = {
    "family": "qracah",
    "m_range": [2, 4],
    "N_range": [4, 10],
    "M0_set": [1, 3, 5],
    "M1_set": [1, 3, 5],
}

PARA = {
    "family": "para",
    "m_range": [2, 3],
    "N_range": [4, 8],
    "M0_set": [1, 3, 5],
    "M1_set": [1, 3, 5],
    "M2_set": [1, 3, 5],
}

os.makedirs(OUT_DIR, exist_ok=True)
for req in (QRACAH, PARA):
    name = req["family"]
    req["csv"] = os.path.join(OUT_DIR, f"scan_{name}.csv")
    req["summary"] = os.path.join(OUT_DIR, f"scan_{name}.json")
    req_path = os.path.join(OUT_DIR, f"request_{name}.json")
    with open(req_path, "w") as fh:
        json.dump(req, fh, indent=2)
    print(f"--- scanning {name} grid ---")
    code = main(["scan", req_path])
    if code != 0:
        sys.exit(code)
print(f"done; rows and summaries under {OUT_DIR}/")
