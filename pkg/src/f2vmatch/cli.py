"""Command line interface: ``f2vmatch <command> ...``.

Exit codes: 0 success, 1 usage error, 2 validation or codec error,
3 verification mismatch.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np

from . import __version__
from .codec import (MatcherCode, bits_to_str, match_decode, match_encode,
                    source_decode, source_encode)
from .core import distribution, tree_from_codewords
from .errors import CodecError, F2VError
from .formats import CodeFile, read_bitfile, write_bitfile
from .metrics import expected_length, idiv_compress, normalized_idiv, tree_metrics
from .optimizer import (completeness_sufficient, global_optimality_check,
                        optimize_matcher, perbit_bound)
from .oracle import EnumerationSpec, brute_min, default_depth_cap
from .tunstall import M_MAX, tunstall_build

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_MISMATCH = 0, 1, 2, 3
SWEEP_FORMAT_VERSION = 1
STATS_FORMAT_VERSION = 1
ORACLE_TOL = 1e-9


class UsageError(Exception):
    pass


def parse_q0(text) -> float:
    """Accept decimals (``0.615``) and fractions (``2/3``)."""
    try:
        q0 = float(Fraction(str(text).strip()))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse q0 from {text!r}") from None
    if not 0.0 < q0 < 1.0:
        raise UsageError(f"q0 must lie strictly between 0 and 1, got {text}")
    return q0


def _check_m(m, upper):
    if not 1 <= m <= upper:
        raise UsageError(f"m must be in 1..{upper}, got {m}")


def _describe(tree, dist, out):
    met = tree_metrics(tree, dist)
    print(f"  E(L)            = {met.expected_len:.6f}", file=out)
    print(f"  D(U_T||Q_T)     = {met.idiv_match:.6f}", file=out)
    print(f"  D(U_T||Q_T)/E(L)= {met.normalized:.6f}", file=out)
    if met.idiv_compress is not None:
        print(f"  D(Q_T||U_T)/m   = {met.idiv_compress / tree.m:.6f}", file=out)


# ---------------------------------------------------------------- build

def cmd_build(q0, m, mode="matcher", out_path=None, tol=1e-12, stream=None):
    stream = stream or sys.stdout
    _check_m(m, M_MAX)
    dist = distribution(q0)
    if mode == "matcher":
        res = optimize_matcher(dist, m, tol)
        tree, delta, kind = res.tree, res.delta, "matcher"
        print(f"delta           = {delta:.6f} after {res.iterations} iteration(s)",
              file=stream)
    elif mode == "tunstall":
        tree, delta, kind = tunstall_build(dist, m), None, "source"
    else:
        raise UsageError(f"unknown mode {mode!r}")
    _describe(tree, dist, stream)
    d = normalized_idiv(tree, dist) if delta is None else delta
    print(f"  4*min condition holds: {completeness_sufficient(dist)}", file=stream)
    print(f"  global optimality certificate: {global_optimality_check(dist, d)}",
          file=stream)
    cf = CodeFile(m=m, q=(dist.w0, dist.w1), codewords=list(tree.codewords),
                  kind=kind, delta=delta)
    if out_path is not None:
        cf.save(out_path)
    return cf


# ---------------------------------------------------------------- encode/decode

DIRECTIONS = {
    "match": match_encode,
    "unmatch": match_decode,
    "source-enc": source_encode,
    "source-dec": source_decode,
}


def cmd_code(code_path, in_path, out_path, direction, pad=False, stream=None):
    stream = stream or sys.stdout
    if direction not in DIRECTIONS:
        raise UsageError(f"unknown direction {direction!r}")
    code = CodeFile.load(code_path).code()
    bits = read_bitfile(in_path)
    n_in = bits.size
    padded = 0
    if pad:
        if direction not in ("match", "source-dec"):
            raise UsageError("--pad applies to the match and source-dec directions only")
        padded = (-n_in) % code.m
        if padded:
            bits = np.concatenate([bits, np.zeros(padded, dtype=np.uint8)])
    try:
        result = DIRECTIONS[direction](code, bits)
    except CodecError as exc:
        off = exc.bit_offset
        where = "" if off is None else f" (bit offset {off}: payload byte {off // 8}, bit {off % 8})"
        raise CodecError(f"{exc}{where}", bit_offset=off) from exc
    consumed = n_in
    if direction == "source-enc":
        result, consumed = result
    write_bitfile(out_path, result)
    print(f"input bits: {n_in}", file=stream)
    if padded:
        print(f"padding bits: {padded}", file=stream)
    if consumed != n_in:
        print(f"unconsumed trailing bits: {n_in - consumed}", file=stream)
    print(f"output bits: {result.size}", file=stream)
    if n_in + padded:
        print(f"rate: {result.size / (n_in + padded):.6f} output bits per input bit",
              file=stream)
    return result


# ---------------------------------------------------------------- stats

def stats_report(cf: CodeFile) -> dict:
    tree = tree_from_codewords(cf.codewords)
    met = tree_metrics(tree, cf.weights)
    rep = {
        "format_version": STATS_FORMAT_VERSION,
        "m": tree.m,
        "complete": tree.complete,
        "kraft_sum": str(tree.kraft_sum),
        "expected_len": met.expected_len,
        "idiv_match": met.idiv_match,
        "idiv_match_per_bit": met.normalized,
        "idiv_compress_per_bit": None,
        "leaf_entropy_per_bit": None,
    }
    if met.idiv_compress is not None:
        rep["idiv_compress_per_bit"] = met.idiv_compress / tree.m
        rep["leaf_entropy_per_bit"] = met.leaf_entropy / tree.m
    return rep


def cmd_stats(code_path, as_json=False, stream=None):
    stream = stream or sys.stdout
    rep = stats_report(CodeFile.load(code_path))
    if as_json:
        json.dump(rep, stream, indent=2)
        print(file=stream)
    else:
        for key, value in rep.items():
            if key != "format_version":
                print(f"{key:22s} {value}", file=stream)
    return rep


# ---------------------------------------------------------------- sweep

def _sweep_row(args):
    q0, m, tol = args
    dist = distribution(q0)
    res = optimize_matcher(dist, m, tol)
    return {
        "m": m,
        "delta": res.delta,
        "bound": perbit_bound(dist, m),
        "expected_len": expected_length(res.tree),
        "iterations": res.iterations,
    }


def cmd_sweep(q0, m_max, tol=1e-12, jobs=1, stream=None):
    stream = stream or sys.stdout
    _check_m(m_max, 20)
    tasks = [(q0, m, tol) for m in range(1, m_max + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            rows = list(pool.map(_sweep_row, tasks))
    else:
        rows = [_sweep_row(t) for t in tasks]
    print(f"# f2vmatch sweep format_version={SWEEP_FORMAT_VERSION} q0={q0!r}",
          file=stream)
    writer = csv.DictWriter(stream, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    bad = [r["m"] for r in rows if r["delta"] > r["bound"] + 1e-12]
    return rows, bad


# ---------------------------------------------------------------- verify

# (q0, m) -> reference values with tolerances
GOLDEN = {
    (0.615, 2): {
        "tunstall_redundancy_per_bit": (0.038503, 2e-4),
        "matcher_redundancy_per_bit": (0.04176, 2e-4),
        "tunstall_idiv_per_bit": (0.039206, 1e-4),
        "matcher_idiv_per_bit": (0.037695, 1e-4),
    },
    (5 / 6, 1): {
        "complete_idiv_per_bit": (0.424, 5e-4),
        "noncomplete_0_10_idiv_per_bit": (0.37034, 2e-4),
    },
}
THIRDS_Q0 = 2 / 3


def _golden_for(q0, m):
    for (gq, gm), values in GOLDEN.items():
        if gm == m and abs(gq - q0) <= 1e-6:
            return values
    return None


class Report:
    def __init__(self, stream):
        self.stream = stream
        self.failures = 0
        self.results = []

    def check(self, name, ok, detail=""):
        self.results.append((name, bool(ok), detail))
        if not ok:
            self.failures += 1
        print(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}", file=self.stream)

    def info(self, text):
        print(f"INFO  {text}", file=self.stream)


def cmd_verify(q0, m, depth_cap=None, tol=1e-12, stream=None):
    """Cross-check the constructions against exhaustive search."""
    stream = stream or sys.stdout
    _check_m(m, 3)
    if depth_cap is None:
        depth_cap = default_depth_cap(m)
    if not 1 <= depth_cap <= 8:
        raise UsageError(f"depth cap must be in 1..8, got {depth_cap}")
    dist = distribution(q0)
    rep = Report(stream)

    t_tree = tunstall_build(dist, m)
    t_val = tree_metrics(t_tree, dist).idiv_match
    b_val, _ = brute_min(EnumerationSpec.complete(m), dist, "idiv_match")
    rep.check("tunstall_minimizes_idiv", abs(t_val - b_val) <= ORACLE_TOL,
              f"tunstall={t_val:.12f} bruteforce={b_val:.12f}")

    res = optimize_matcher(dist, m, tol)
    n_val, n_tree = brute_min(EnumerationSpec.complete(m), dist, "normalized_idiv")
    rep.check("matcher_minimizes_idiv_per_bit", abs(res.delta - n_val) <= ORACLE_TOL,
              f"delta_opt={res.delta:.12f} delta_bruteforce={n_val:.12f}")
    steps = [s.delta_hat for s in res.trace]
    rep.check("matcher_trace_decreasing", all(a > b for a, b in zip(steps, steps[1:])),
              f"iterations={res.iterations}")

    c_val, c_tree = brute_min(EnumerationSpec.capped(m, depth_cap), dist,
                              "normalized_idiv")
    beaten = c_val < res.delta - ORACLE_TOL
    certified = global_optimality_check(dist, res.delta)
    sufficient = completeness_sufficient(dist)
    if beaten:
        rep.info(f"complete optimum {res.delta:.6f} beaten within depth {depth_cap} "
                 f"by non-complete code {list(c_tree.codewords)}: {c_val:.6f}")
    else:
        rep.info(f"no code within depth {depth_cap} beats the complete optimum "
                 f"{res.delta:.6f}")
    rep.check("complete_certificate_consistent", not (certified and beaten),
              f"certificate={certified}")
    rep.check("four_min_condition_consistent", not (sufficient and beaten),
              f"condition={sufficient}")
    if max(res.tree.lengths) <= depth_cap:
        rep.check("capped_search_covers_complete_optimum",
                  c_val <= res.delta + ORACLE_TOL,
                  f"capped={c_val:.12f}")

    golden = _golden_for(q0, m)
    if golden is not None and m == 2:
        values = {
            "tunstall_redundancy_per_bit": idiv_compress(t_tree, dist) / m,
            "matcher_redundancy_per_bit": idiv_compress(res.tree, dist) / m,
            "tunstall_idiv_per_bit": normalized_idiv(t_tree, dist),
            "matcher_idiv_per_bit": res.delta,
        }
        for key, (ref, tol_g) in golden.items():
            rep.check(f"golden.{key}", abs(values[key] - ref) <= tol_g,
                      f"value={values[key]:.6f} reference={ref} tol={tol_g}")
        rep.check("golden.matcher_length_multiset",
                  res.tree.length_multiset() == [1, 2, 3, 3],
                  str(res.tree.length_multiset()))
    elif golden is not None and m == 1:
        alt = tree_from_codewords(["0", "10"])
        values = {
            "complete_idiv_per_bit": res.delta,
            "noncomplete_0_10_idiv_per_bit": normalized_idiv(alt, dist),
        }
        for key, (ref, tol_g) in golden.items():
            rep.check(f"golden.{key}", abs(values[key] - ref) <= tol_g,
                      f"value={values[key]:.6f} reference={ref} tol={tol_g}")
        if depth_cap >= 2:
            rep.check("golden.complete_tree_beaten", beaten,
                      f"capped={c_val:.6f} complete={res.delta:.6f}")
    if abs(q0 - THIRDS_Q0) <= 1e-6 and m == 2:
        rep.check("golden.thirds_tunstall_tree",
                  list(t_tree.codewords) == ["000", "001", "01", "1"],
                  str(list(t_tree.codewords)))

    print("OK" if rep.failures == 0 else f"{rep.failures} check(s) failed",
          file=stream)
    return rep


# ---------------------------------------------------------------- compare

def cmd_compare(q0=0.615, m=2, stream=None):
    """Source coding versus matching, side by side."""
    stream = stream or sys.stdout
    _check_m(m, 12)
    dist = distribution(q0)
    t_tree = tunstall_build(dist, m)
    a_tree = optimize_matcher(dist, m).tree
    cols = [("Tunstall on Q", t_tree), ("Iterative matcher on Q", a_tree)]
    print(f"q0={q0:g} q1={1 - q0:g} m={m}", file=stream)
    for title, tree in cols:
        code = MatcherCode.from_tree(tree)
        print(f"\n{title}", file=stream)
        print("  v2f source encoder: " + ", ".join(
            f"{w}->{k}" for k, w in code.index_map.items()), file=stream)
        print("  f2v matcher:        " + ", ".join(
            f"{k}->{w}" for k, w in code.index_map.items()), file=stream)
        print(f"  redundancy D(Q_T||U_T)/m      = {idiv_compress(tree, dist) / m:.6f}",
              file=stream)
        print(f"  I-div per bit D(U_T||Q_T)/E(L) = {normalized_idiv(tree, dist):.6f}",
              file=stream)
    return t_tree, a_tree


# ---------------------------------------------------------------- entry point

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def build_parser():
    p = _Parser(prog="f2vmatch", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="construct a matcher or Tunstall code")
    b.add_argument("--q0", required=True)
    b.add_argument("--m", type=int, required=True)
    b.add_argument("--mode", choices=("matcher", "tunstall"), default="matcher")
    b.add_argument("--out", required=True)
    b.add_argument("--tol", type=float, default=1e-12)

    for name, dirs, default in (("encode", ("match", "source-enc"), "match"),
                                ("decode", ("unmatch", "source-dec"), "unmatch")):
        e = sub.add_parser(name, help=f"{name} a BitFile with a CodeFile")
        e.add_argument("--code", required=True)
        e.add_argument("--in", dest="inp", required=True)
        e.add_argument("--out", required=True)
        e.add_argument("--direction", choices=dirs, default=default)
        e.add_argument("--pad", action="store_true",
                       help="zero-pad the input to a multiple of m")

    s = sub.add_parser("stats", help="print divergences of a CodeFile")
    s.add_argument("--code", required=True)
    s.add_argument("--json", action="store_true")

    w = sub.add_parser("sweep", help="optimal divergence per bit for m = 1..m_max")
    w.add_argument("--q0", required=True)
    w.add_argument("--m-max", type=int, required=True)
    w.add_argument("--tol", type=float, default=1e-12)
    w.add_argument("--jobs", type=int, default=1)

    v = sub.add_parser("verify", help="cross-check against exhaustive search")
    v.add_argument("--q0", required=True)
    v.add_argument("--m", type=int, required=True)
    v.add_argument("--depth-cap", type=int, default=None)
    v.add_argument("--tol", type=float, default=1e-12)

    c = sub.add_parser("compare", help="source code vs. matcher comparison table")
    c.add_argument("--q0", default="0.615")
    c.add_argument("--m", type=int, default=2)

    k = sub.add_parser("pack", help="write a '0'/'1' string as a BitFile")
    k.add_argument("bits")
    k.add_argument("--out", required=True)

    u = sub.add_parser("unpack", help="print a BitFile as a '0'/'1' string")
    u.add_argument("path")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "build":
            cmd_build(parse_q0(args.q0), args.m, args.mode, args.out, args.tol)
        elif args.command in ("encode", "decode"):
            cmd_code(args.code, args.inp, args.out, args.direction, args.pad)
        elif args.command == "stats":
            cmd_stats(args.code, args.json)
        elif args.command == "sweep":
            _, bad = cmd_sweep(parse_q0(args.q0), args.m_max, args.tol, args.jobs)
            if bad:
                print(f"bound violated for m = {bad}", file=sys.stderr)
                return EXIT_MISMATCH
        elif args.command == "verify":
            rep = cmd_verify(parse_q0(args.q0), args.m, args.depth_cap, args.tol)
            if rep.failures:
                return EXIT_MISMATCH
        elif args.command == "compare":
            cmd_compare(parse_q0(args.q0), args.m)
        elif args.command == "pack":
            write_bitfile(args.out, args.bits)
        elif args.command == "unpack":
            print(bits_to_str(read_bitfile(args.path)))
    except UsageError as exc:
        print(f"f2vmatch: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (F2VError, OSError) as exc:
        print(f"f2vmatch: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
