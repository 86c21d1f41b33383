"""Command line driver.

Every command writes JSON Lines to stdout: one record per order, sorted by
(index, serialization), then one summary record.  ``--tsv`` prints a count
table instead.  Exit codes: 0 ok, 1 unparsable input, 2 failed
precondition (e.g. a reducible polynomial), 3 search budget exceeded,
4 a verification or oracle mismatch.
"""

import argparse
import json
import sys
import time

from .lattice import Lattice, LatticeError
from .numberfield import FieldDefinitionError, nf_make
from .oracle import BudgetExceeded, cross_check
from .fibers import is_radical_candidate, orders_with_radical
from .orders import IncompleteFactorizationError, Order, OrderError, maximal_order_frame, p_radical
from .ramified import SearchBudgetExceeded
from .arith import is_in_hnf, is_prime
from .suites import run_suite
from .tree import EnumerationTask, _exponent_of, overorders_all, suborders_all

EXIT_PARSE, EXIT_PRECONDITION, EXIT_BUDGET, EXIT_MISMATCH = 1, 2, 3, 4


class ParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


# ------------------------------------------------------------------ input

def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, ValueError) as exc:
        raise ParseError(f"{path}: {exc}") from exc


def load_field(path):
    """Field from ``{"coeffs": [c0, ..., 1]}`` (optionally ``"disc_factors"``)."""
    d = _read_json(path)
    if isinstance(d, list):
        d = {"coeffs": d}
    try:
        coeffs = [int(c) for c in d["coeffs"]]
        extra = tuple(int(q) for q in d.get("disc_factors", ()))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{path}: expected {{\"coeffs\": [...]}}") from exc
    K = nf_make(coeffs)
    if not K.certified:
        print("warning: no irreducibility certificate found for f", file=sys.stderr)
    return K, extra


def load_lattice(path, K):
    """Lattice in the power basis from ``{"den": d, "hnf": [...]}``."""
    d = _read_json(path)
    try:
        return Lattice.from_json(K, d)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, LatticeError):
            raise ParseError(f"{path}: {exc}") from exc
        raise ParseError(f"{path}: expected {{\"den\": d, \"hnf\": [[...], ...]}}") from exc


# ------------------------------------------------------------------ output

def order_record(L):
    """Canonical record of an order: power basis HNF plus its index in ``Z_K``."""
    d = L.to_field().to_json()
    d["is_order"] = True
    return {"index": L.det() if L.den == 1 else L.index_in(Lattice.identity(L.frame)), **d}


def _emit(out, records, t0, timing):
    lines = [json.dumps(r, separators=(",", ":")) for r in records]
    keyed = sorted(zip(records, lines), key=lambda rl: (rl[0]["index"], rl[1]))
    for _, line in keyed:
        out.write(line + "\n")
    summary = {"summary": True, "count": len(records),
               "max_index": max((r["index"] for r in records), default=None),
               "wall_time": round(time.perf_counter() - t0, 3) if timing else None}
    out.write(json.dumps(summary, separators=(",", ":")) + "\n")


def _exponent(L, p):
    return _exponent_of(L, p)


def _tsv_prime(out, lats, p, e):
    """Rows ``i, #orders of index dividing p^i, largest exponent m_i``."""
    out.write("i\tcount\tm\n")
    exps = []
    for L in lats:
        idx = L.det()
        k = 0
        while idx % p == 0:
            idx //= p
            k += 1
        exps.append((k, _exponent(L, p)))
    for i in range(e + 1):
        sel = [m for k, m in exps if k <= i]
        out.write(f"{i}\t{len(sel)}\t{max(sel, default=0)}\n")


def _tsv_index(out, lats):
    out.write("index\tcount\tcumulative\n")
    hist = {}
    for L in lats:
        hist[L.det()] = hist.get(L.det(), 0) + 1
    acc = 0
    for idx in sorted(hist):
        acc += hist[idx]
        out.write(f"{idx}\t{hist[idx]}\t{acc}\n")


# --------------------------------------------------------------- commands

def _need_prime(p):
    if p is not None and not is_prime(p):
        raise FieldDefinitionError(f"{p} is not a prime")


def cmd_suborders(args, out):
    K, extra = load_field(args.field)
    t0 = time.perf_counter()
    if args.bound is not None:
        lats = suborders_all(K, args.bound, args.divisor_mode, args.threads, extra)
    else:
        if args.prime is None or args.exp is None:
            raise ParseError("suborders needs --prime and --exp, or --bound")
        _need_prime(args.prime)
        if args.exp < 0:
            raise FieldDefinitionError("--exp must be non-negative")
        task = EnumerationTask(K, args.prime, args.exp, threads=args.threads,
                               debug=args.debug_asserts, disc_factors=extra)
        lats = [n.lattice for n in task.run()]
    if args.tsv:
        if args.bound is None:
            _tsv_prime(out, lats, args.prime, args.exp)
        else:
            _tsv_index(out, lats)
        return 0
    _emit(out, [order_record(L) for L in lats], t0, not args.no_timing)
    return 0


def cmd_counts(args, out):
    args.tsv = True
    args.bound = None
    return cmd_suborders(args, out)


def cmd_overorders(args, out):
    K, extra = load_field(args.field)
    lam = load_lattice(args.order, K)
    frame = maximal_order_frame(K, extra)
    lamf = lam.to_frame(frame)
    if lamf.den != 1 or not _is_ring(lamf):
        raise OrderError("the given lattice is not an order")
    t0 = time.perf_counter()
    if args.prime is not None:
        _need_prime(args.prime)
        task = EnumerationTask(K, args.prime, args.exp, over=lamf, threads=args.threads,
                               debug=args.debug_asserts, disc_factors=extra)
        lats = [n.lattice for n in task.run()]
    else:
        lats = overorders_all(lamf, args.threads, extra)
    if args.tsv:
        _tsv_index(out, lats)
        return 0
    _emit(out, [order_record(L) for L in lats], t0, not args.no_timing)
    return 0


def _is_ring(L):
    mul = L.frame.mul_vec
    H = L.hnf
    if not is_in_hnf(H, list(L.frame.one)):
        return False
    return all(is_in_hnf(H, mul(a, b)) for i, a in enumerate(H) for b in H[i:])


def cmd_radical_fiber(args, out):
    K, extra = load_field(args.field)
    _need_prime(args.prime)
    frame = maximal_order_frame(K, extra)
    I = load_lattice(args.radical, K).to_frame(frame)
    J0 = p_radical(Order(Lattice.identity(frame), certify=False), args.prime)
    if not is_radical_candidate(I, args.prime, J0):
        raise OrderError("the lattice is not the p-radical of any order")
    t0 = time.perf_counter()
    F = orders_with_radical(I, args.prime)
    lats = [O.lattice.to_frame(frame) for O in F.orders]
    _emit(out, [order_record(L) for L in lats], t0, not args.no_timing)
    return 0


def cmd_oracle(args, out):
    K, _ = load_field(args.field)
    _need_prime(args.prime)
    rep = cross_check(K, args.prime, args.exp, budget=args.budget,
                      require_brute_force=not args.skip_brute_force)
    rep["mismatches"] = [[list(r) for r in h] for h in rep["mismatches"]]
    out.write(json.dumps(rep, separators=(",", ":")) + "\n")
    return 0 if rep["ok"] else EXIT_MISMATCH


def cmd_verify(args, out):
    ok = True
    for name, passed, detail in run_suite(args.suite, threads=args.threads):
        ok &= passed
        out.write(f"{'PASS' if passed else 'FAIL'}\t{name}\t{detail}\n")
        out.flush()
    return 0 if ok else EXIT_MISMATCH


def build_parser():
    ap = _Parser(prog="ordertree", description="Enumerate orders of prime power index in number fields.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, prime_required=False):
        sp.add_argument("--field", required=True, help="JSON file {\"coeffs\": [c0, ..., 1]}")
        sp.add_argument("--prime", type=int, required=prime_required)
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--debug-asserts", action="store_true")
        sp.add_argument("--tsv", action="store_true", help="print a count table instead of records")
        sp.add_argument("--no-timing", action="store_true", help="omit the wall time from the summary")

    s = sub.add_parser("suborders", help="orders of index p^i <= p^e (or <= / dividing a bound)")
    common(s)
    s.add_argument("--exp", type=int)
    s.add_argument("--bound", type=int, help="all orders of index <= bound")
    s.add_argument("--divisor-mode", action="store_true", help="with --bound: index dividing bound")
    s.set_defaults(func=cmd_suborders)

    s = sub.add_parser("counts", help="table of #orders with index dividing p^i")
    common(s, True)
    s.add_argument("--exp", type=int, required=True)
    s.set_defaults(func=cmd_counts, divisor_mode=False)

    s = sub.add_parser("overorders", help="orders containing a given order")
    common(s)
    s.add_argument("--order", required=True, help="JSON file {\"den\": d, \"hnf\": [...]}, power basis")
    s.add_argument("--exp", type=int, help="with --prime: cap the index at p^exp")
    s.set_defaults(func=cmd_overorders)

    s = sub.add_parser("radical-fiber", help="all orders with a given p-radical")
    common(s, True)
    s.add_argument("--radical", required=True, help="JSON lattice file, power basis")
    s.set_defaults(func=cmd_radical_fiber)

    s = sub.add_parser("oracle", help="cross-check the tree against the brute force oracles")
    common(s, True)
    s.add_argument("--exp", type=int, required=True)
    s.add_argument("--budget", type=int, default=2 ** 24, help="largest p^(e n) for the brute force scan")
    s.add_argument("--skip-brute-force", action="store_true",
                   help="compare with the two closure oracles only when the scan is over budget")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("verify", help="run a built-in verification suite")
    s.add_argument("--suite", choices=["small", "paper"], default="small")
    s.add_argument("--threads", type=int, default=1)
    s.set_defaults(func=cmd_verify)
    return ap


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (BudgetExceeded, SearchBudgetExceeded) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (FieldDefinitionError, OrderError, IncompleteFactorizationError, LatticeError, ValueError) as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
