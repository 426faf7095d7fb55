"""Command-line front end with a persistent JSON-lines result cache.

Commands
--------
d P Q R            correction term of the Brieskorn sphere (exact rational)
lens-d P Q [I]     correction term(s) of the lens space L(P, Q)
mubar P Q R        Neumann-Siebenmann invariant of the Brieskorn sphere
mubar --graph F    the same for an arbitrary odd-determinant plumbing tree
verify TASK        batch verification (thm1.2, thm1.3, cor1.6, rmk1.4,
                   classify-e8) with --families / --n / --bound / --report

All printed rationals are exact strings ("2", "81/46"); no decimals are ever
produced.  Exit codes: 0 success, 1 verification clause failure, 2 invalid
input, 3 rank guard exceeded.

The cache is an append-only JSON-lines file (env PLUMBCALC_CACHE, default
./.plumbcalc-cache.jsonl).  Keys canonicalize the request (triples sorted
ascending, arguments ordered); hits are byte-identical to recomputation, and
corrupt lines are skipped with a warning.  Writes take an advisory lock.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from typing import Optional

from . import __version__
from .arith import NotCoprimeError
from .families import (
    FAMILY_IDS,
    classify_e8_brieskorn,
    conjecture_scan,
    verify_correction_bound,
    verify_theorem_main,
    verify_unbounded_gap,
    write_reports,
)
from .lens import (
    RankGuardExceededError,
    d_from_plumbing,
    lens_d,
    lens_d_all,
    lens_d_oracle,
)
from .plumbing import BrieskornTriple, PlumbingGraph, mubar, negdef_plumbing

EXIT_OK = 0
EXIT_CLAUSE_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_RANK_GUARD = 3

DEFAULT_CACHE = ".plumbcalc-cache.jsonl"


def _fmt(value) -> str:
    """Exact rational formatting: integers bare, otherwise num/den."""
    f = Fraction(value)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


# ---------------------------------------------------------------------------
# Cache


class ResultCache:
    """Append-only JSON-lines cache keyed by canonical request strings."""

    def __init__(self, path: Optional[str], enabled: bool = True):
        self.path = path or os.environ.get("PLUMBCALC_CACHE", DEFAULT_CACHE)
        self.enabled = enabled

    def lookup(self, key: str) -> Optional[dict]:
        if not self.enabled or not os.path.exists(self.path):
            return None
        hit = None
        with open(self.path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    entry = json.loads(line)
                except json.JSONDecodeError:
                    print(f"warning: skipping corrupt cache line in {self.path}", file=sys.stderr)
                    continue
                if entry.get("key") == key and entry.get("tool_version") == __version__:
                    hit = entry  # last write wins
        return hit

    def store(self, key: str, value: dict) -> None:
        if not self.enabled:
            return
        entry = {
            "key": key,
            "value": value,
            "tool_version": __version__,
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        }
        line = json.dumps(entry, sort_keys=True)
        with open(self.path, "a", encoding="utf-8") as fh:
            try:
                import fcntl

                fcntl.flock(fh.fileno(), fcntl.LOCK_EX)
            except (ImportError, OSError):
                pass
            fh.write(line + "\n")

    def get_or_compute(self, key: str, compute) -> dict:
        hit = self.lookup(key)
        if hit is not None:
            return hit["value"]
        value = compute()
        self.store(key, value)
        return value


def _canonical_key(command: str, **kwargs) -> str:
    return json.dumps({"command": command, **kwargs}, sort_keys=True)


# ---------------------------------------------------------------------------
# Commands


def _parse_triple(args) -> BrieskornTriple:
    try:
        return BrieskornTriple(*sorted((args.p, args.q, args.r)))
    except (NotCoprimeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_BAD_INPUT)


def cmd_d(args, cache: ResultCache) -> int:
    triple = _parse_triple(args)
    key = _canonical_key("d", triple=list(triple.as_tuple()))

    def compute() -> dict:
        try:
            res = d_from_plumbing(negdef_plumbing(triple), rank_guard=args.rank_guard)
        except RankGuardExceededError as exc:
            return {"error": "rank-guard", "message": str(exc)}
        return {"d": _fmt(res.value), "certificate": list(res.vector)}

    value = cache.get_or_compute(key, compute)
    if value.get("error") == "rank-guard":
        print(f"error: {value['message']}", file=sys.stderr)
        return EXIT_RANK_GUARD
    if args.json:
        print(json.dumps({"command": "d", "triple": list(triple.as_tuple()), **value}, sort_keys=True))
    else:
        print(value["d"])
    return EXIT_OK


def cmd_lens_d(args, cache: ResultCache) -> int:
    p, q = args.p, args.q
    try:
        if args.i is None or args.all:
            fn = lens_d_oracle if args.oracle else lens_d_all
            key = _canonical_key("lens-d-all", p=p, q=q % max(p, 1), oracle=bool(args.oracle))
            value = cache.get_or_compute(key, lambda: {"values": {str(i): _fmt(v) for i, v in sorted(fn(p, q).items())}})
            if args.json:
                print(json.dumps({"command": "lens-d", "p": p, "q": q, **value}, sort_keys=True))
            elif args.all:
                for i, v in value["values"].items():
                    print(f"{i}: {v}")
            else:
                # bare values, one per label: `lens-d 1 1` prints just 0
                for v in value["values"].values():
                    print(v)
        else:
            if args.oracle:
                print("error: --oracle reports all labels (its labeling is method-internal)", file=sys.stderr)
                return EXIT_BAD_INPUT
            key = _canonical_key("lens-d", p=p, q=q % max(p, 1), i=args.i)
            value = cache.get_or_compute(key, lambda: {"d": _fmt(lens_d(p, q, args.i))})
            if args.json:
                print(json.dumps({"command": "lens-d", "p": p, "q": q, "i": args.i, **value}, sort_keys=True))
            else:
                print(value["d"])
    except (NotCoprimeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    return EXIT_OK


def cmd_mubar(args, cache: ResultCache) -> int:
    if args.graph:
        try:
            with open(args.graph, "r", encoding="utf-8") as fh:
                G = PlumbingGraph.from_json(json.load(fh))
        except (OSError, ValueError, KeyError) as exc:
            print(f"error: cannot read graph file: {exc}", file=sys.stderr)
            return EXIT_BAD_INPUT
        key = _canonical_key("mubar-graph", weights=list(G.weights), edges=[list(e) for e in G.edges])
    elif args.p and args.q and args.r:
        triple = _parse_triple(args)
        G = negdef_plumbing(triple)
        key = _canonical_key("mubar", triple=list(triple.as_tuple()))
    else:
        print("error: give a triple or --graph FILE", file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        value = cache.get_or_compute(key, lambda: {"mubar": _fmt(mubar(G))})
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    if args.json:
        print(json.dumps({"command": "mubar", **value}, sort_keys=True))
    else:
        print(value["mubar"])
    return EXIT_OK


def _parse_families(spec: str) -> list[str]:
    spec = spec.strip().lower()
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        i0 = FAMILY_IDS.index(lo.strip())
        i1 = FAMILY_IDS.index(hi.strip())
        return list(FAMILY_IDS[i0 : i1 + 1])
    return [f.strip() for f in spec.split(",") if f.strip()]


def _parse_range(spec: str) -> list[int]:
    spec = spec.strip()
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in spec.split(",") if x.strip()]


def cmd_verify(args, cache: ResultCache) -> int:
    task = args.task
    reports = []
    failed = False
    try:
        families = _parse_families(args.families)
        ns = _parse_range(args.n)
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT

    try:
        if task == "thm1.2":
            for fam in families:
                for n in ns:
                    rep = verify_theorem_main(fam, n)
                    reports.append(rep)
                    status = "pass" if rep.passed else "FAIL"
                    print(f"thm1.2 ({fam}, n={n}): {status}")
                    if not rep.passed:
                        failed = True
                        for name, ok in rep.checks.items():
                            if not ok:
                                print(f"  failing clause: {name}", file=sys.stderr)
        elif task == "thm1.3":
            for fam in families:
                if fam not in ("i", "ii", "iii", "iv"):
                    continue
                for n in ns:
                    rep = verify_correction_bound(fam, n)
                    reports.append(rep)
                    status = "pass" if rep.passed else "FAIL"
                    print(f"thm1.3 ({fam}, n={n}): d = {rep.values['d_surgery']} >= {rep.values['bound']}: {status}")
                    if not rep.passed:
                        failed = True
                        for name, ok in rep.checks.items():
                            if not ok:
                                print(f"  failing clause: {name}", file=sys.stderr)
        elif task == "cor1.6":
            for fam in families:
                if fam not in ("i", "ii", "iii", "iv"):
                    continue
                for n in ns:
                    rep = verify_unbounded_gap(fam, n, rank_guard=args.rank_guard)
                    reports.append(rep)
                    status = "pass" if rep.passed else "FAIL"
                    print(
                        f"cor1.6 ({fam}, n={n}): minimal rank {rep.values['minimal_rank']}"
                        f" >= 4d = {4 * Fraction(rep.values['d'])}: {status}"
                    )
                    if not rep.passed:
                        failed = True
        elif task == "rmk1.4":
            for fam in families:
                rows = conjecture_scan(fam, ns, rank_guard=args.rank_guard)
                for row in rows:
                    mark = "match" if row.get("matches") else ("skip" if "status" in row else "DIFFERS")
                    print(
                        f"rmk1.4 ({fam}, n={row['n']}): predicted {row.get('predicted')}"
                        f" computed {row.get('computed', '-')} [{mark}] (conjecture)"
                    )
        elif task == "classify-e8":
            found = classify_e8_brieskorn(args.bound)
            for t in found:
                print(f"({t[0]},{t[1]},{t[2]})")
        else:
            print(f"error: unknown verify task {task!r}", file=sys.stderr)
            return EXIT_BAD_INPUT
    except RankGuardExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RANK_GUARD
    except (NotCoprimeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT

    if args.report and reports:
        write_reports(reports, args.report)
        print(f"report written: {args.report}")
    return EXIT_CLAUSE_FAILED if failed else EXIT_OK


# ---------------------------------------------------------------------------
# Parser


def _add_common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # registered on the main parser and again on every subparser (with
    # SUPPRESS defaults) so the flags work on either side of the subcommand
    kw = {"default": argparse.SUPPRESS} if suppress else {"default": False}
    parser.add_argument("--json", action="store_true", help="print machine-readable JSON", **kw)
    parser.add_argument("--no-cache", action="store_true", help="bypass the result cache", **kw)
    kw = {"default": argparse.SUPPRESS} if suppress else {"default": None}
    parser.add_argument("--cache-file", help="cache path (default $PLUMBCALC_CACHE)", **kw)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="plumbcalc",
        description="Exact invariants of plumbed 3-manifolds and integral lattices.",
    )
    _add_common(ap, suppress=False)
    sub = ap.add_subparsers(dest="command", required=True)

    d = sub.add_parser("d", help="correction term of a Brieskorn sphere")
    _add_common(d, suppress=True)
    d.add_argument("p", type=int)
    d.add_argument("q", type=int)
    d.add_argument("r", type=int)
    d.add_argument("--rank-guard", type=int, default=40)
    d.set_defaults(fn=cmd_d)

    ld = sub.add_parser("lens-d", help="correction terms of a lens space")
    _add_common(ld, suppress=True)
    ld.add_argument("p", type=int)
    ld.add_argument("q", type=int)
    ld.add_argument("i", type=int, nargs="?", default=None)
    ld.add_argument("--all", action="store_true", help="print all p labels")
    ld.add_argument("--oracle", action="store_true", help="use the plumbing oracle instead of the recursion")
    ld.set_defaults(fn=cmd_lens_d)

    mb = sub.add_parser("mubar", help="Neumann-Siebenmann invariant")
    _add_common(mb, suppress=True)
    mb.add_argument("p", type=int, nargs="?", default=None)
    mb.add_argument("q", type=int, nargs="?", default=None)
    mb.add_argument("r", type=int, nargs="?", default=None)
    mb.add_argument("--graph", default=None, help="JSON plumbing-graph file")
    mb.set_defaults(fn=cmd_mubar)

    vf = sub.add_parser("verify", help="batch verification tasks")
    _add_common(vf, suppress=True)
    vf.add_argument("task", choices=["thm1.2", "thm1.3", "cor1.6", "rmk1.4", "classify-e8"])
    vf.add_argument("--families", default="i..xii")
    vf.add_argument("--n", default="1..3")
    vf.add_argument("--bound", type=int, default=60, help="scan bound for classify-e8")
    vf.add_argument("--rank-guard", type=int, default=40)
    vf.add_argument("--report", default=None, help="write JSON-lines report here")
    vf.set_defaults(fn=cmd_verify)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cache = ResultCache(args.cache_file, enabled=not args.no_cache)
        return args.fn(args, cache)
    except SystemExit as exc:
        # argparse errors and internal bail-outs both surface as return codes
        return int(exc.code) if exc.code is not None else 0


if __name__ == "__main__":
    raise SystemExit(main())
