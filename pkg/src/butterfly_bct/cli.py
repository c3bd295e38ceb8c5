"""Command-line driver.

Exit status: 0 when every checked claim holds, 1 when a violation or
counterexample is found, 2 for usage or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .analysis import (PreconditionError, bct_via_inverse, ddt, walsh_nonlinearity)
from .butterfly import (ButterflyParams, closed_butterfly, gamma_membership, open_butterfly,
                        univariate_coeffs, univariate_sbox)
from .equivalence import gold_witness_for
from .field import FieldConfigError, FieldSpec
from .sbox import NotBijectiveError, algebraic_degree, is_permutation, load, save
from . import scans

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


def _hex(text: str) -> int:
    try:
        return int(text, 16)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a hex number: {text!r}") from None


def _i_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--n", type=int, default=3, help="half width: the S-box acts on 2n bits (default 3)")
    p.add_argument("--i", type=_i_list, default=None,
                   help="exponent index or comma list; default all i coprime to n")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--json", type=Path, help="write a JSON report here")
    p.add_argument("--csv", type=Path, help="write a CSV report here")
    p.add_argument("--modulus", type=_hex, help="GF(2^n) reduction polynomial as hex bit pattern")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="butterfly-bct",
                                 description="Boomerang analysis of closed and open butterflies.")
    sub = ap.add_subparsers(dest="command", required=True)

    sc = sub.add_parser("scan", parents=[common], help="run a named reproduction scan")
    sc.add_argument("scan_id", choices=sorted([*scans.SCANS, "oracles", "references", "properties"]))
    sc.add_argument("--samples", type=int, default=5, help="direct BCT samples for the criterion sweep")
    sc.add_argument("--seed", type=int, default=0)

    an = sub.add_parser("analyze", parents=[common], help="properties of an S-box file")
    an.add_argument("--in", dest="infile", type=Path, required=True)
    for flag in ("ddt", "bct", "walsh", "degree"):
        an.add_argument(f"--{flag}", action="store_true")

    bf = sub.add_parser("butterfly", help="build butterflies or list Gamma")
    bsub = bf.add_subparsers(dest="action", required=True)
    bb = bsub.add_parser("build", parents=[common])
    bb.add_argument("--alpha", type=_hex, required=True)
    bb.add_argument("--beta", type=_hex, required=True)
    bb.add_argument("--kind", choices=("closed", "open", "univariate"), default="closed")
    bb.add_argument("--out", type=Path, required=True)
    bsub.add_parser("gamma", parents=[common])

    eq = sub.add_parser("equiv", help="affine equivalence searches")
    esub = eq.add_subparsers(dest="action", required=True)
    eg = esub.add_parser("gold", parents=[common])
    eg.add_argument("--alpha", type=_hex, required=True)
    eg.add_argument("--beta", type=_hex, required=True)
    eg.add_argument("--all-witnesses", action="store_true")
    return ap


def _single_i(args) -> int:
    if not args.i or len(args.i) != 1:
        raise ValueError("this command needs exactly one --i")
    return args.i[0]


def _write_json(path: Optional[Path], payload: dict) -> None:
    if path is not None:
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def cmd_scan(args) -> int:
    sid = args.scan_id
    if sid == "oracles":
        rep = scans.scan_oracles(args.seed)
    elif sid == "references":
        rep = scans.scan_references()
    elif sid == "properties":
        rep = scans.scan_properties()
    else:
        kw = {"jobs": args.jobs, "modulus": args.modulus}
        if sid == "theorem1":
            kw.update(direct_samples=args.samples, seed=args.seed)
        rep = scans.SCANS[sid](args.n, args.i, **kw)
    if args.json:
        scans.emit(rep, "json", args.json)
    if args.csv:
        scans.emit(rep, "csv", args.csv)
    print(f"{rep.scan_id}: {'PASS' if rep.passed else 'FAIL'} {json.dumps(rep.summary, sort_keys=True)}")
    for row in rep.failures()[:20]:
        print(f"  violation: {json.dumps(row, sort_keys=True)}")
    return EXIT_OK if rep.passed else EXIT_VIOLATION


def analyze_sbox(s, ddt_: bool = True, bct: bool = True, walsh: bool = True, degree: bool = True) -> dict:
    out = {"m": s.m, "is_permutation": is_permutation(s)}
    if ddt_:
        d = ddt(s)
        out["differential_uniformity"] = d.max_value
        out["ddt_histogram"] = {str(k): v for k, v in d.histogram.items()}
    if bct:
        if out["is_permutation"]:
            b = bct_via_inverse(s)
            out["boomerang_uniformity"] = b.max_value
            out["bct_histogram"] = {str(k): v for k, v in b.histogram.items()}
        else:
            out["boomerang_uniformity"] = None
            out["bct_histogram"] = None
    if walsh:
        out["nonlinearity"] = walsh_nonlinearity(s)[0]
    if degree:
        out["algebraic_degree"] = algebraic_degree(s)
    return out


def cmd_analyze(args) -> int:
    s = load(args.infile)
    flags = [args.ddt, args.bct, args.walsh, args.degree]
    if not any(flags):
        flags = [True] * 4
    res = analyze_sbox(s, *flags)
    _write_json(args.json, res)
    for k in ("m", "is_permutation", "differential_uniformity", "boomerang_uniformity",
              "nonlinearity", "algebraic_degree"):
        if k in res:
            print(f"{k}: {res[k]}")
    return EXIT_OK


def cmd_butterfly(args) -> int:
    F = FieldSpec(args.n, args.modulus)
    if args.action == "build":
        p = ButterflyParams(F, _single_i(args), args.alpha, args.beta)
        if args.kind == "closed":
            s = closed_butterfly(p)
        elif args.kind == "open":
            s = open_butterfly(p)
        else:
            s = univariate_sbox(univariate_coeffs(p).eps, F, p.i)
        save(s, args.out, [f"{args.kind} butterfly n={p.n} i={p.i} alpha={p.alpha:#x} beta={p.beta:#x}",
                           f"modulus={F.modulus:#x}", scans.PACKING])
        print(f"wrote {args.out} (m={s.m}, permutation={is_permutation(s)})")
        return EXIT_OK
    # gamma listing
    i = _single_i(args)
    rows = []
    for a in range(1, F.q):
        for b in range(1, F.q):
            w = gamma_membership(a, b, F, i)
            rows.append([f"{a:x}", f"{b:x}", int(w.in_gamma), *(f"{v:x}" for v in w.phi)])
    count = sum(r[2] for r in rows)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["alpha", "beta", "in_gamma", "phi1", "phi2", "phi3", "phi4"])
            w.writerows(rows)
    print(f"|Gamma| = {count} for n={F.n}, i={i}")
    return EXIT_OK


def cmd_equiv(args) -> int:
    F = FieldSpec(args.n, args.modulus)
    p = ButterflyParams(F, _single_i(args), args.alpha, args.beta)
    res = gold_witness_for(p, all_witnesses=args.all_witnesses)
    payload = {"n": p.n, "i": p.i, "alpha": p.alpha, "beta": p.beta,
               "in_gamma": gamma_membership(p.alpha, p.beta, F, p.i).in_gamma,
               "found": res.found, "tuples_searched": res.tuples_searched,
               "probe_survivors": res.probe_survivors}
    if res.found:
        w = res.witness
        payload["witness"] = {"A": w.A, "B": w.B, "C": w.C, "D": w.D, "probe_points": list(w.probe_points)}
        payload["replay_ok"] = scans.replay_gold_witness(p, [w.A, w.B, w.C, w.D])
    if args.all_witnesses:
        payload["all_witnesses"] = [list(t) for t in res.all_witnesses]
        payload["witness_count"] = len(res.all_witnesses)
    _write_json(args.json, payload)
    print(json.dumps({k: v for k, v in payload.items() if k != "all_witnesses"}, sort_keys=True))
    return EXIT_OK if res.found and payload.get("replay_ok") else EXIT_VIOLATION


COMMANDS = {"scan": cmd_scan, "analyze": cmd_analyze, "butterfly": cmd_butterfly, "equiv": cmd_equiv}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (FieldConfigError, PreconditionError, NotBijectiveError, scans.ReportError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
