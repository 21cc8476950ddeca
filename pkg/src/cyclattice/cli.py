"""Command-line interface: ``cyclattice <command> [options]``.

Exit codes: 0 success / condition holds, 1 condition fails or a domain
error, 2 usage or file/parse error.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional

import numpy as np

from . import exact, presets
from .cyclic import cyclic_coordinates, generator_order, n2_row_coprime
from .design import build, derive_coding_lattice, load_design
from .errors import LatticeCodeError
from .iso import GroupSpec, check_divisibility, verify_isomorphism
from .lattice import (EXACT, FLOAT, Lattice, NumericPolicy, builtin_lattice, load_matrix,
                      make_lattice, matrix_to_json)
from .nested import (NestedCode, code_from_coding, code_from_shaping, code_rate, codebook_to_json,
                     encode, enumerate_codebook, index, make_code, usage_metrics, write_codebook_csv)
from .quantize import shaping_gain_estimate

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(s: str) -> List[int]:
    return [int(v) for v in s.replace(" ", "").split(",") if v]


def _policy(args) -> Optional[NumericPolicy]:
    if args.mode is None:
        return None
    return NumericPolicy(args.mode, args.tol)


def _lattice_arg(spec: str, policy: Optional[NumericPolicy]) -> Lattice:
    lat = builtin_lattice(spec)
    if lat is not None:
        return lat
    G = load_matrix(spec)
    return make_lattice(G, policy)


def _code_from_args(args) -> NestedCode:
    if getattr(args, "preset", None):
        return presets.PRESETS[args.preset]()
    diag = _int_list(args.diag) if args.diag else None
    policy = _policy(args)
    W = exact.matrix(load_matrix(args.w)) if args.w else None
    if args.gc and args.gs:
        return make_code(_lattice_arg(args.gc, policy), _lattice_arg(args.gs, policy), diag)
    if args.gc and W is not None:
        return code_from_coding(_lattice_arg(args.gc, policy), W, diag)
    if args.gs and W is not None:
        return code_from_shaping(_lattice_arg(args.gs, policy), W, diag)
    raise UsageError("need two of --gc, --gs, --w (or --preset)")


def _fmt(v) -> str:
    if isinstance(v, (int, Fraction)):
        return str(v)
    s = f"{float(v):.12g}"
    return "0" if s == "-0" else s


def _vec_out(y) -> list:
    return [v if isinstance(v, int) else str(v) if isinstance(v, Fraction) else float(v) for v in y]


def _emit(args, report: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(report, indent=1, default=str))
    else:
        print(text)


# Commands ---------------------------------------------------------------------

def cmd_check(args) -> int:
    if args.w and not (args.gc or args.gs):
        W = exact.matrix(load_matrix(args.w))
        code = None
    else:
        code = _code_from_args(args)
        W = code.W
    rep = cyclic_coordinates(W)
    n = len(W)
    cyc = [v.coordinate + 1 for v in rep.verdicts if v.cyclic]
    iso_coords = []
    for t in range(n):
        diag = tuple(rep.M if i == t else 1 for i in range(n))
        if check_divisibility(W, GroupSpec(diag)):
            iso_coords.append(t + 1)
    report = {
        "W": [list(map(int, r)) for r in W],
        "M": rep.M,
        "rate": code_rate(n, rep.M),
        "coordinates": [{"coordinate": v.coordinate + 1, "q": list(v.q), "gcd": v.gcd, "cyclic": v.cyclic}
                        for v in rep.verdicts],
        "cyclic_coordinates": cyc,
        "iso_divisibility_coordinates": iso_coords,
    }
    if n == 2:
        report["row_coprime"] = list(n2_row_coprime(W))
    if code is not None:
        report["enc_diag"] = list(code.enc_diag)
        report["iso_divisibility_for_diag"] = check_divisibility(W, GroupSpec(code.enc_diag))
    lines = [f"W = {report['W']}", f"M = {rep.M}, rate = {report['rate']:.6f} bits/dim"]
    for v in rep.verdicts:
        lines.append(f"coordinate {v.coordinate + 1}: q = {list(v.q)}, gcd = {v.gcd}, "
                     f"{'cyclic' if v.cyclic else 'not cyclic'}")
    lines.append("coordinates " + ",".join(map(str, cyc)) + " cyclic" if cyc else "no cyclic coordinate")
    lines.append("iso-divisibility: " + (",".join(map(str, iso_coords)) if iso_coords else "none"))
    _emit(args, report, "\n".join(lines))
    return EXIT_OK if cyc else EXIT_FAIL


def cmd_design(args) -> int:
    d = load_design(args.design)
    W, r = build(d, iso=args.iso)
    rep = cyclic_coordinates(W)
    n = len(W)
    report = {"kind": d.kind, "n": n, "W": [list(map(int, row)) for row in W], "r": None if r is None else list(r),
              "M": rep.M, "cyclic_coordinates": [c + 1 for c in rep.cyclic_coordinates]}
    ls = _lattice_arg(args.gs, _policy(args)) if args.gs else builtin_lattice(f"Z{n}")
    lc = derive_coding_lattice(ls, W)
    diag = tuple(rep.M if i == n - 1 else 1 for i in range(n))
    code = make_code(lc, ls, diag)
    ok = rep.is_cyclic(n - 1)
    if args.iso:
        ok = ok and check_divisibility(W, GroupSpec(diag))
        iso_rep = verify_isomorphism(code)
        report["isomorphism"] = {"holds": iso_rep.holds, "pairs_checked": iso_rep.pairs_checked,
                                 "counterexample": iso_rep.counterexample}
        report["generator_order"] = generator_order(code, n - 1)
        ok = ok and iso_rep.holds and report["generator_order"] == rep.M
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "W.json"), "w") as fh:
            json.dump(matrix_to_json(W), fh, indent=1)
        with open(os.path.join(args.out, "Gc.json"), "w") as fh:
            json.dump(matrix_to_json(lc.generator()), fh, indent=1)
        if r is not None:
            with open(os.path.join(args.out, "r.json"), "w") as fh:
                json.dump(list(r), fh)
    lines = [f"{d.kind} design, n = {n}, M = {rep.M}", f"W = {report['W']}"]
    if r is not None:
        lines.append(f"r = {list(r)}")
    lines.append(f"coordinate {n} cyclic: {rep.is_cyclic(n - 1)}")
    if args.iso:
        lines.append(f"isomorphism: {'holds' if report['isomorphism']['holds'] else 'FAILS'} "
                     f"({report['isomorphism']['pairs_checked']} pairs), generator order {report['generator_order']}")
    _emit(args, report, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_encode(args) -> int:
    code = _code_from_args(args)
    b = _int_list(args.b)
    y = encode(code, b)
    _emit(args, {"b": b, "y": _vec_out(y)}, " ".join(_fmt(v) for v in y))
    return EXIT_OK


def cmd_index(args) -> int:
    code = _code_from_args(args)
    raw = [v for v in args.y.replace(" ", "").split(",") if v]
    y = tuple(exact.to_exact(v) for v in raw) if code.exact else np.array([float(Fraction(v)) for v in raw])
    b = index(code, y, args.method)
    _emit(args, {"y": raw, "b": list(b)}, " ".join(map(str, b)))
    return EXIT_OK


def cmd_codebook(args) -> int:
    code = _code_from_args(args)
    book = enumerate_codebook(code)
    if args.format == "json":
        out = codebook_to_json(code, book) + "\n"
    else:
        buf = io.StringIO()
        write_codebook_csv(code, book, buf)
        out = buf.getvalue()
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def cmd_verify_iso(args) -> int:
    code = _code_from_args(args)
    rep = verify_isomorphism(code)
    div = check_divisibility(code.W, GroupSpec(code.enc_diag))
    report = {"M": code.M, "enc_diag": list(code.enc_diag), "holds": rep.holds, "pairs_checked": rep.pairs_checked,
              "counterexample": rep.counterexample, "divisibility": div}
    text = (f"isomorphism {'holds' if rep.holds else 'fails'} over {rep.pairs_checked} pairs"
            + ("" if rep.holds else f"; counterexample b1={rep.counterexample[0]}, b2={rep.counterexample[1]}")
            + f"\nrow divisibility: {div}")
    _emit(args, report, text)
    return EXIT_OK if rep.holds else EXIT_FAIL


def cmd_metrics(args) -> int:
    if (args.M is None) == (args.K is None):
        raise UsageError("give exactly one of --M or --K")
    U_c, U_s = usage_metrics(args.n, M=args.M, K=args.K)
    M = args.M if args.M is not None else args.K ** args.n
    report = {"n": args.n, "M": M, "U_c": float(U_c), "U_s": None if U_s is None else float(U_s),
              "difference": None if U_s is None else float(U_c - U_s), "rate": code_rate(args.n, M)}
    lines = [f"n = {args.n}, M = {M}", f"U_c = {U_c} = {float(U_c):.4%}"]
    if U_s is not None:
        lines += [f"U_s = {U_s} = {float(U_s):.4%}", f"U_c - U_s = {U_c - U_s} = {float(U_c - U_s):.2%}"]
    lines.append(f"rate = {report['rate']:.6g} bits/dim")
    _emit(args, report, "\n".join(lines))
    return EXIT_OK


def cmd_plot(args) -> int:
    from .plotting import write_figure

    code = _code_from_args(args)
    proj = [c - 1 for c in _int_list(args.proj)] if args.proj else [0, 1, 2]
    if code.n > 2 and len(proj) != 3:
        raise UsageError("--proj needs three coordinates for n > 2")
    stem = args.stem or args.preset or "code"
    paths = write_figure(code, args.out or ".", stem, proj)
    _emit(args, paths, "\n".join(f"{k}: {v}" for k, v in sorted(paths.items())))
    return EXIT_OK


def cmd_shaping_gain(args) -> int:
    lat = _lattice_arg(args.lattice, _policy(args))
    g = shaping_gain_estimate(lat, args.samples, args.seed)
    _emit(args, {"lattice": args.lattice, "samples": args.samples, "seed": args.seed, "gain_db": g},
          f"shaping gain = {g:.4f} dB ({args.samples} samples, seed {args.seed})")
    return EXIT_OK


# Parser -----------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exact", dest="mode", action="store_const", const=EXACT, help="force exact arithmetic")
    g.add_argument("--float", dest="mode", action="store_const", const=FLOAT, help="force float arithmetic")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["json", "csv", "svg", "text"], default="text")


def _add_code(p: argparse.ArgumentParser) -> None:
    p.add_argument("--gc", help="coding lattice: matrix JSON file or Z<n>/A2/E8")
    p.add_argument("--gs", help="shaping lattice: matrix JSON file or Z<n>/A2/E8")
    p.add_argument("--w", help="integer nesting matrix W = H_c G_s (JSON file)")
    p.add_argument("--diag", help="encoding diagonal, e.g. 1,5 (default: cyclic)")
    p.add_argument("--preset", choices=sorted(presets.PRESETS), help="built-in example code")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclattice", description="Cyclic nested lattice codes")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="cyclicity and divisibility report")
    _add_code(p)
    _add_common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("design", help="build W from a design file")
    p.add_argument("design", help="design JSON file")
    p.add_argument("--iso", action="store_true", help="repair the last row for isomorphism and verify")
    p.add_argument("--gs", help="shaping lattice (default Z^n)")
    _add_common(p)
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("encode", help="encode an info vector")
    _add_code(p)
    p.add_argument("--b", required=True, help="info vector, e.g. 0,3")
    _add_common(p)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("index", help="info vector of a codeword")
    _add_code(p)
    p.add_argument("--y", required=True, help="codeword, e.g. 2/9,8/9")
    p.add_argument("--method", choices=["auto", "cyclic", "table"], default="auto")
    _add_common(p)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("codebook", help="export the codebook")
    _add_code(p)
    _add_common(p)
    p.set_defaults(func=cmd_codebook, format="csv")

    p = sub.add_parser("verify-iso", help="exhaustive isomorphism check")
    _add_code(p)
    _add_common(p)
    p.set_defaults(func=cmd_verify_iso)

    p = sub.add_parser("metrics", help="codeword usage and rate")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--M", type=int)
    p.add_argument("--K", type=int)
    _add_common(p)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("plot", help="SVG figure plus CSV layers")
    _add_code(p)
    p.add_argument("--proj", help="1-based coordinates to project on for n > 2, e.g. 6,7,8")
    p.add_argument("--stem", help="output file stem")
    _add_common(p)
    p.set_defaults(func=cmd_plot, format="svg")

    p = sub.add_parser("shaping-gain", help="Monte Carlo shaping gain")
    p.add_argument("lattice", help="matrix JSON file or Z<n>/A2/E8")
    p.add_argument("--samples", type=int, default=10**6)
    _add_common(p)
    p.set_defaults(func=cmd_shaping_gain)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LatticeCodeError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, OSError, ValueError, KeyError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
