"""Command-line front end: build, certify, simulate, scan.

Chain files are JSON with the exact field data stored as integer quadruples
(numerator/denominator of the rational and surd parts), so a file is a
lossless snapshot of the synthesis.  The loader *re-derives* the chain from
the embedded model and only attaches the exact spectrum when the stored
coefficients match the regenerated ones bit for bit; a file whose numbers
have been edited still loads, but certifies honestly as NotPST for lack of
trustworthy analytic data.

Exit codes: 0 success (certify: verdict PST), 1 NotPST or model-construction
failure, 2 malformed input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .dynamics import chain_eigensystem, fidelity_trace
from .exactnum import QuadExt
from .models import (
    FAMILY_PARA,
    FAMILY_QRACAH,
    ModelParams,
    SpinChain,
    SynthesisError,
    build_chain,
    para_gap_values,
    qracah_gap_values,
)
from .pstcert import (
    PSTCertificate,
    certify,
    check_inequality_para,
    check_inequality_qracah,
    check_ratio_condition_para,
)
from .spectral import ConvergenceFailure

EXIT_OK = 0
EXIT_NOT_PST = 1
EXIT_INPUT = 2
EXIT_NUMERICAL = 3


# ---------------------------------------------------------------------------
# chain file serialization
# ---------------------------------------------------------------------------

def _quad_quadruple(v: QuadExt) -> list[int]:
    return [v.a.numerator, v.a.denominator, v.b.numerator, v.b.denominator]


def _quad_from_quadruple(row: list, d: int) -> QuadExt:
    a_num, a_den, b_num, b_den = (int(x) for x in row)
    return QuadExt(Fraction(a_num, a_den), Fraction(b_num, b_den), d)


def _model_dict(params: ModelParams) -> dict:
    model = {
        "family": params.family,
        "m": params.m,
        "M0": params.M0,
        "M1": params.M1,
        "N": params.N,
    }
    if params.M2 is not None:
        model["M2"] = params.M2
    return model


def chain_to_dict(chain: SpinChain, certificate: PSTCertificate) -> dict:
    return {
        "n_sites": chain.n_sites,
        "T": chain.transfer_time,
        "model": _model_dict(chain.provenance) if chain.provenance else None,
        "exact": {
            "d": chain.field_radicand(),
            "b": [_quad_quadruple(v) for v in chain.b],
            "j_sq": [_quad_quadruple(v) for v in chain.j_sq],
        },
        "float": {"b": chain.b_float, "j": chain.j_float},
        "certificate": dataclasses.asdict(certificate),
    }


def _params_from_model(model: dict, T: float) -> ModelParams:
    return ModelParams(
        family=model["family"],
        m=model["m"],
        M0=model["M0"],
        M1=model["M1"],
        N=model["N"],
        M2=model.get("M2"),
        T=T,
    )


def load_chain(path: str) -> SpinChain:
    """Read a chain file, trusting its exact data only after regeneration.

    The analytic spectrum is never taken from the file: it is recomputed
    from the model parameters, and attached only when the stored coefficient
    arrays coincide exactly with the regenerated ones.
    """
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    T = float(doc["T"])
    d = int(doc["exact"]["d"])
    b = tuple(_quad_from_quadruple(row, d) for row in doc["exact"]["b"])
    j_sq = tuple(_quad_from_quadruple(row, d) for row in doc["exact"]["j_sq"])

    model = doc.get("model")
    if model:
        try:
            params = _params_from_model(model, T)
            rebuilt = build_chain(params)
        except (SynthesisError, ValueError, KeyError):
            rebuilt = None
        if rebuilt is not None and rebuilt.b == b and rebuilt.j_sq == j_sq:
            return rebuilt
    return SpinChain(b=b, j_sq=j_sq, transfer_time=T)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_build(args: argparse.Namespace) -> int:
    params = ModelParams(
        family=args.family,
        m=args.m,
        M0=args.M0,
        M1=args.M1,
        N=args.N,
        M2=args.M2,
        T=args.T,
    )
    chain = build_chain(params)
    doc = chain_to_dict(chain, certify(chain))
    _emit(json.dumps(doc, indent=2), args.out)
    return EXIT_OK


def cmd_certify(args: argparse.Namespace) -> int:
    chain = load_chain(args.chain)
    cert = certify(chain)
    sys.stdout.write(json.dumps(dataclasses.asdict(cert), indent=2) + "\n")
    return EXIT_OK if cert.verdict == "PST" else EXIT_NOT_PST


def cmd_simulate(args: argparse.Namespace) -> int:
    if args.samples < 1:
        raise ValueError("samples must be >= 1")
    chain = load_chain(args.chain)
    horizon = chain.transfer_time if args.horizon is None else args.horizon
    if args.samples == 1:
        grid = [0.0]
    else:
        grid = [horizon * (k / (args.samples - 1)) for k in range(args.samples)]
    trace = fidelity_trace(chain_eigensystem(chain), grid)
    lines = ["t,re_f,im_f,prob"]
    for t, f, p in zip(trace.times, trace.amplitudes, trace.probabilities):
        lines.append(f"{t:.17g},{f.real:.17g},{f.imag:.17g},{p:.17g}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# --- scan ------------------------------------------------------------------

_SCAN_COLUMNS = [
    "family",
    "m",
    "N",
    "M0",
    "M1",
    "M2",
    "T",
    "verdict",
    "reason",
    "persymmetric",
    "couplings_positive",
    "gaps_are_integers",
    "all_gaps_odd",
    "all_gaps_positive",
    "gap_values",
    "advisory_inequality",
    "advisory_ratio_odd",
]

_SCAN_KEYS = {
    "family",
    "m_range",
    "N_range",
    "M0_set",
    "M1_set",
    "M2_set",
    "T",
    "csv",
    "summary",
}


def _flag(value) -> str:
    if value is None:
        return ""
    return "true" if value else "false"


def scan_row(task: tuple) -> dict:
    """Build/certify one parameter tuple; never raises."""
    family, m, M0, M1, M2, N, T = task
    row = {
        "family": family,
        "m": str(m),
        "N": str(N),
        "M0": str(M0),
        "M1": str(M1),
        "M2": "" if M2 is None else str(M2),
        "T": f"{T:.17g}",
        "reason": "",
        "advisory_inequality": "",
        "advisory_ratio_odd": "",
    }
    for col in (
        "persymmetric",
        "couplings_positive",
        "gaps_are_integers",
        "all_gaps_odd",
        "all_gaps_positive",
        "gap_values",
    ):
        row[col] = ""
    try:
        params = ModelParams(family=family, m=m, M0=M0, M1=M1, N=N, M2=M2, T=T)
    except ValueError as exc:
        row["verdict"] = "error"
        row["reason"] = str(exc)
        return row

    if family == FAMILY_QRACAH:
        gaps = qracah_gap_values(params)
        if N >= 3:
            row["advisory_inequality"] = _flag(
                check_inequality_qracah(m, M0, M1, N)
            )
    else:
        gaps = para_gap_values(params)
        if N >= 4:
            row["advisory_inequality"] = _flag(check_inequality_para(m, M0, M2, N))
        row["advisory_ratio_odd"] = _flag(check_ratio_condition_para(M0, M1, M2))
    row["gap_values"] = ";".join(str(g) for g in gaps)

    try:
        chain = build_chain(params)
    except SynthesisError as exc:
        row["verdict"] = "error"
        row["reason"] = f"{type(exc).__name__}: {exc}"
        return row

    cert = certify(chain)
    row["verdict"] = cert.verdict
    row["reason"] = cert.reason or ""
    row["persymmetric"] = _flag(cert.persymmetric)
    row["couplings_positive"] = _flag(cert.couplings_positive)
    row["gaps_are_integers"] = _flag(cert.gaps_are_integers)
    row["all_gaps_odd"] = _flag(cert.all_gaps_odd)
    row["all_gaps_positive"] = _flag(cert.all_gaps_positive)
    return row


def _validate_request(doc: dict) -> dict:
    unknown = set(doc) - _SCAN_KEYS
    if unknown:
        raise ValueError(f"unknown request fields: {sorted(unknown)}")
    family = doc.get("family")
    if family not in (FAMILY_QRACAH, FAMILY_PARA):
        raise ValueError("family must be 'qracah' or 'para'")
    out = {"family": family, "T": float(doc.get("T", math.pi))}
    for key in ("m_range", "N_range"):
        rng = doc.get(key)
        if (
            not isinstance(rng, list)
            or len(rng) != 2
            or not all(isinstance(v, int) for v in rng)
            or rng[0] > rng[1]
        ):
            raise ValueError(f"{key} must be [lo, hi] with lo <= hi")
        out[key] = range(rng[0], rng[1] + 1)
    m_sets = ["M0_set", "M1_set"]
    if family == FAMILY_PARA:
        m_sets.append("M2_set")
    elif "M2_set" in doc:
        raise ValueError("M2_set only applies to the para family")
    for key in m_sets:
        vals = doc.get(key)
        if not isinstance(vals, list) or not vals:
            raise ValueError(f"{key} must be a nonempty list")
        if not all(isinstance(v, int) and v > 0 and v % 2 == 1 for v in vals):
            raise ValueError(f"{key} entries must be positive odd integers")
        out[key] = vals
    for key in ("csv", "summary"):
        if not isinstance(doc.get(key), str) or not doc[key]:
            raise ValueError(f"{key} must be an output path")
        out[key] = doc[key]
    return out


def cmd_scan(args: argparse.Namespace) -> int:
    with open(args.request, "r", encoding="utf-8") as fh:
        req = _validate_request(json.load(fh))

    tasks = []
    m2_values = req.get("M2_set", [None])
    for m in req["m_range"]:
        for n in req["N_range"]:
            for m0 in req["M0_set"]:
                for m1 in req["M1_set"]:
                    for m2 in m2_values:
                        tasks.append(
                            (req["family"], m, m0, m1, m2, n, req["T"])
                        )

    workers = int(os.environ.get("PSTLAB_WORKERS", "1"))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(scan_row, tasks, chunksize=16))
    else:
        rows = [scan_row(t) for t in tasks]

    with open(req["csv"], "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=_SCAN_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)

    counts = {"rows": len(rows), "pst": 0, "not_pst": 0, "errors": 0}
    for row in rows:
        if row["verdict"] == "PST":
            counts["pst"] += 1
        elif row["verdict"] == "NotPST":
            counts["not_pst"] += 1
        else:
            counts["errors"] += 1
    summary = {**counts, "csv": req["csv"]}
    with open(req["summary"], "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2)
        fh.write("\n")
    sys.stdout.write(json.dumps(summary) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pstlab",
        description="Synthesize, certify, and simulate perfect-state-transfer "
        "XX chains.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="synthesize a chain and write JSON")
    p_build.add_argument("family", choices=[FAMILY_QRACAH, FAMILY_PARA])
    p_build.add_argument("--m", type=int, required=True)
    p_build.add_argument("--M0", type=int, required=True)
    p_build.add_argument("--M1", type=int, required=True)
    p_build.add_argument("--M2", type=int, default=None)
    p_build.add_argument("--N", type=int, required=True)
    p_build.add_argument("--T", type=float, default=math.pi)
    p_build.add_argument("--out", default=None, help="chain file (default stdout)")
    p_build.set_defaults(func=cmd_build)

    p_cert = sub.add_parser("certify", help="print the certificate of a chain file")
    p_cert.add_argument("chain")
    p_cert.set_defaults(func=cmd_certify)

    p_sim = sub.add_parser("simulate", help="CSV fidelity trace of a chain file")
    p_sim.add_argument("chain")
    p_sim.add_argument("--samples", type=int, default=1024)
    p_sim.add_argument(
        "--horizon",
        type=float,
        default=None,
        help="final time (default: the chain's transfer time)",
    )
    p_sim.add_argument("--out", default=None, help="CSV file (default stdout)")
    p_sim.set_defaults(func=cmd_simulate)

    p_scan = sub.add_parser("scan", help="sweep a parameter grid from a request file")
    p_scan.add_argument("request")
    p_scan.set_defaults(func=cmd_scan)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SynthesisError as exc:
        _error(type(exc).__name__, str(exc))
        return EXIT_NOT_PST
    except ConvergenceFailure as exc:
        _error(type(exc).__name__, str(exc))
        return EXIT_NUMERICAL
    except (OSError, ValueError, KeyError, TypeError) as exc:
        _error(type(exc).__name__, str(exc))
        return EXIT_INPUT


def _error(kind: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")


if __name__ == "__main__":
    sys.exit(main())
