"""Command-line front end.

Polynomial grammar (whitespace is ignored between tokens)::

    expr := term ('+' term)*
    term := [coeff '*'] 'x' ['^' exp] | coeff

Coefficients are canonical element reps, reduced mod q when bound to a field.
Implicit multiplication such as ``3x`` is rejected.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from dataclasses import dataclass

from .binom import Binomial, canonicalize_k, degree_gcd_filter, is_trivial
from .errors import PermbinError, PolySyntaxError, TheoremViolation
from .field import FieldDesc, field_of_order, make_field, primes_between
from .permtest import (
    CollidingPair,
    HermiteExponent,
    PermVerdict,
    RootCount,
    is_permutation_direct,
    is_permutation_hermite,
)
from .poly import SparsePoly
from .search import enumerate_perm_binomials, refutation_table, verify_mersenne, verify_theorem_main

log = logging.getLogger("permbin")

RECORD_COLUMNS = ("p", "q", "n", "k", "a", "d", "gcd", "trivial", "verdict")


@dataclass(frozen=True)
class PolyExpr:
    source: str
    terms: tuple[tuple[int, int], ...]  # (coefficient, exponent) in source order

    def bind(self, field: FieldDesc) -> SparsePoly:
        return SparsePoly.from_terms(field, [(e, c % field.q) for c, e in self.terms])


def _tokens(text: str):
    raw = text.encode()
    i = 0
    while i < len(raw):
        ch = raw[i : i + 1]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(raw) and raw[j : j + 1].isdigit():
                j += 1
            yield "num", int(raw[i:j]), i
            i = j
        elif ch in (b"x", b"+", b"*", b"^"):
            yield ch.decode(), None, i
            i += 1
        else:
            raise PolySyntaxError(f"unexpected character {ch!r}", i)
    yield "end", None, len(raw)


def parse_poly(text: str) -> PolyExpr:
    toks = list(_tokens(text))
    pos = 0

    def peek():
        return toks[pos]

    def take(kind):
        nonlocal pos
        tok = toks[pos]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[0])
            raise PolySyntaxError(f"expected {kind!r}, found {what}", tok[2])
        pos += 1
        return tok

    terms = []
    while True:
        coeff, exp = 1, 0
        kind = peek()[0]
        if kind == "num":
            coeff = take("num")[1]
            if peek()[0] == "*":
                take("*")
                take("x")
                exp = 1
        else:
            take("x")
            exp = 1
        if exp and peek()[0] == "^":
            take("^")
            exp = take("num")[1]
        terms.append((coeff, exp))
        if peek()[0] == "+":
            take("+")
            continue
        take("end")
        return PolyExpr(text, tuple(terms))


def render(expr: PolyExpr) -> str:
    parts = []
    for c, e in expr.terms:
        if e == 0:
            parts.append(str(c))
            continue
        mono = "x" if e == 1 else f"x^{e}"
        parts.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(parts)


# -- output --------------------------------------------------------------------

def to_jsonl(row: dict) -> str:
    return json.dumps(row, separators=(",", ":"))


def from_jsonl(line: str) -> dict:
    return json.loads(line)


def _witness_row(w) -> dict | None:
    if w is None:
        return None
    if isinstance(w, CollidingPair):
        return {"type": "colliding_pair", "x": w.x, "y": w.y}
    if isinstance(w, RootCount):
        return {"type": "root_count", "count": w.count}
    if isinstance(w, HermiteExponent):
        return {"type": "hermite_exponent", "exponent": w.exponent, "coefficient": w.coefficient}
    raise TypeError(w)


def verdict_row(q: int, poly: str, v: PermVerdict) -> dict:
    return {
        "q": q,
        "poly": poly,
        "method": v.method,
        "permutation": v.is_permutation,
        "witness": _witness_row(v.witness),
    }


class _Writer:
    def __init__(self, fmt: str, out):
        self.fmt = fmt
        self.out = out
        self._csv = None
        if fmt == "csv":
            self._csv = csv.DictWriter(out, fieldnames=RECORD_COLUMNS, lineterminator="\n")
            self._csv.writeheader()

    def write(self, row: dict):
        if self._csv is not None:
            self._csv.writerow({k: str(v).lower() if isinstance(v, bool) else v for k, v in row.items()})
        else:
            self.out.write(to_jsonl(row) + "\n")


# -- subcommands ---------------------------------------------------------------

def _cmd_check(args, out) -> int:
    F = field_of_order(args.q)
    expr = parse_poly(args.poly)
    f = expr.bind(F)
    shown = render(expr)
    methods = ["direct", "hermite"] if args.method == "both" else [args.method]
    for m in methods:
        v = is_permutation_direct(f) if m == "direct" else is_permutation_hermite(f)
        out.write(to_jsonl(verdict_row(F.q, shown, v)) + "\n")
    return 0


def _cmd_enumerate(args, out) -> int:
    if args.q:
        fields = [field_of_order(args.q)]
    else:
        fields = [make_field(p) for p in primes_between(args.pmin, args.pmax)]
    w = _Writer(args.format, out)
    for F in fields:
        for rec in enumerate_perm_binomials(F, use_pruning=not args.no_prune):
            w.write(rec.as_row())
    return 0


def _report_exit(rep, out) -> int:
    out.write(to_jsonl(rep.as_row()) + "\n")
    log.info("%s: %d fields in %.2fs", rep.kind, len(rep.orders), rep.elapsed)
    return 0 if rep.verified else 1


def _cmd_verify_theorem(args, out) -> int:
    rep = verify_theorem_main(args.pmin, args.pmax, use_pruning=not args.no_prune, strict=False)
    return _report_exit(rep, out)


def _cmd_verify_mersenne(args, out) -> int:
    orders = [int(s) for s in args.q.split(",") if s.strip()]
    rep = verify_mersenne(orders, use_pruning=not args.no_prune, strict=False)
    return _report_exit(rep, out)


def _cmd_canon(args, out) -> int:
    F = field_of_order(args.q)
    b = Binomial(F, args.n, args.k, args.a % F.q)
    row = {"q": F.q, "n": b.n, "k": b.k, "a": b.a, "trivial": is_trivial(b)}
    if not degree_gcd_filter(b):
        row.update(filtered=True)
    else:
        cb = canonicalize_k(b)
        row.update(
            filtered=False,
            d=cb.d,
            multiplier=cb.multiplier,
            substituted_n=cb.substituted_n,
            canonical_n=cb.base.n,
            canonical_k=cb.base.k,
            canonical_a=cb.base.a,
        )
    out.write(to_jsonl(row) + "\n")
    return 0


def _cmd_refute(args, out) -> int:
    for b, r in refutation_table(args.p, args.d, n=args.n, a=args.a):
        out.write(
            to_jsonl(
                {
                    "p": args.p,
                    "d": args.d,
                    "n": b.n,
                    "a": b.a,
                    "ell": r.plan.ell,
                    "case": r.plan.case_tag,
                    "candidates": list(r.plan.candidates),
                    "exponent": r.exponent,
                    "coefficient": r.coefficient,
                    "pretransformed": r.pretransformed,
                }
            )
            + "\n"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="permbin", description="Permutation binomials over finite fields.")
    ap.add_argument("-v", "--verbose", action="store_true", help="log timing to stderr")
    sub = ap.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("check", help="test whether a polynomial permutes F_q")
    s.add_argument("-q", type=int, required=True)
    s.add_argument("--poly", required=True)
    s.add_argument("--method", choices=["direct", "hermite", "both"], default="both")
    s.set_defaults(func=_cmd_check)

    s = sub.add_parser("enumerate", help="list nontrivial permutation binomials")
    s.add_argument("--pmin", type=int, default=3)
    s.add_argument("--pmax", type=int, default=31)
    s.add_argument("-q", type=int, default=None, help="a single field order instead of a prime range")
    s.add_argument("--no-prune", action="store_true")
    s.add_argument("--format", choices=["jsonl", "csv"], default="jsonl")
    s.set_defaults(func=_cmd_enumerate)

    s = sub.add_parser("verify-theorem", help="gcd(m-n, p-1) not in {1,2,4} for all primes in range")
    s.add_argument("--pmin", type=int, default=7)
    s.add_argument("--pmax", type=int, default=499)
    s.add_argument("--no-prune", action="store_true")
    s.set_defaults(func=_cmd_verify_theorem)

    s = sub.add_parser("verify-mersenne", help="no nontrivial permutation binomials when q-1 is prime")
    s.add_argument("--q", default="4,8,32,128", help="comma-separated field orders")
    s.add_argument("--no-prune", action="store_true")
    s.set_defaults(func=_cmd_verify_mersenne)

    s = sub.add_parser("canon", help="canonical form of x^n (x^k + a)")
    s.add_argument("-q", type=int, required=True)
    s.add_argument("-n", type=int, required=True)
    s.add_argument("-k", type=int, required=True)
    s.add_argument("-a", type=int, required=True)
    s.set_defaults(func=_cmd_canon)

    s = sub.add_parser("refute", help="Hermite exponents refuting x^n (x^d + a), d in {2,4}")
    s.add_argument("-p", type=int, required=True)
    s.add_argument("-d", type=int, choices=[2, 4], required=True)
    s.add_argument("-n", type=int, default=None)
    s.add_argument("-a", type=int, default=None)
    s.set_defaults(func=_cmd_refute)
    return ap


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse usage errors
        return 2 if exc.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        return args.func(args, out)
    except TheoremViolation as exc:
        print(f"permbin: {exc}", file=sys.stderr)
        return 1
    except PermbinError as exc:
        print(f"permbin: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
