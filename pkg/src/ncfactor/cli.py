"""Command-line front end.

Subcommands: rank, minimize, factor, hankel, als, verify.  Input is an
inline expression or a file; output is text (default) or JSON carrying the
same mathematical content.  Identical invocations produce byte-identical
output.  The environment variable NCFACTOR_TRACE is an alias for --trace.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import als as als_mod
from . import factorizer, minimizer
from .algebra import Alphabet, DEFAULT_ALPHABET
from .errors import NcfactorError, ParseError
from .hankel import hankel_matrix, hankel_rank
from .parsing import format_poly, parse_poly


def _common(parser):
    parser.add_argument(
        "--alphabet",
        default=None,
        help="comma-separated letter names (default: x,y,z)",
    )
    parser.add_argument(
        "--format",
        choices=("text", "json"),
        default="text",
        dest="fmt",
        help="output format",
    )
    parser.add_argument("--trace", action="store_true", help="emit step traces")
    parser.add_argument(
        "--jobs", type=int, default=1, metavar="N", help="parallel ideal probes"
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ncfactor",
        description="Exact factorization of non-commutative polynomials over Q.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_rank = sub.add_parser("rank", help="rank of a polynomial (minimal system dimension)")
    _common(p_rank)
    p_rank.add_argument("expr")
    p_rank.add_argument(
        "--oracle-check",
        action="store_true",
        help="also compute the Hankel rank and require equality",
    )

    p_factor = sub.add_parser("factor", help="factor a polynomial into atoms")
    _common(p_factor)
    p_factor.add_argument("expr")
    p_factor.add_argument(
        "--enumerate-factorizations",
        action="store_true",
        help="list all factorizations reachable through distinct zero-block structures",
    )
    p_factor.add_argument(
        "--oracle-check",
        action="store_true",
        help="cross-check every rank in the certificate against the Hankel oracle",
    )

    p_min = sub.add_parser("minimize", help="minimize an admissible linear system")
    _common(p_min)
    src = p_min.add_mutually_exclusive_group(required=True)
    src.add_argument("expr", nargs="?", help="polynomial expression to build and minimize")
    src.add_argument("--als-file", help="JSON file holding the system to minimize")
    p_min.add_argument("--output", help="write the minimized system (JSON) to this file")

    p_hankel = sub.add_parser("hankel", help="print the Hankel matrix and its rank")
    _common(p_hankel)
    p_hankel.add_argument("expr")

    p_als = sub.add_parser("als", help="build a minimal system for an expression")
    _common(p_als)
    p_als.add_argument("expr")
    p_als.add_argument("--output", help="write the system (JSON) to this file")

    p_verify = sub.add_parser("verify", help="re-check a factorization certificate")
    _common(p_verify)
    p_verify.add_argument("certfile")

    return parser


def _alphabet(args) -> Alphabet:
    if args.alphabet:
        return Alphabet(name.strip() for name in args.alphabet.split(","))
    return DEFAULT_ALPHABET


def _trace_enabled(args) -> bool:
    env = os.environ.get("NCFACTOR_TRACE", "")
    return args.trace or env not in ("", "0")


def _emit(args, payload: dict, text_lines):
    if args.fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def cmd_rank(args) -> int:
    alphabet = _alphabet(args)
    poly = parse_poly(args.expr, alphabet)
    system = als_mod.from_poly(poly)
    payload = {"command": "rank", "input": format_poly(poly), "rank": system.n}
    lines = [f"input: {format_poly(poly)}", f"rank:  {system.n}"]
    code = 0
    if args.oracle_check:
        oracle = hankel_rank(poly)
        payload["hankel_rank"] = oracle
        payload["oracle_check"] = oracle == system.n
        lines.append(f"hankel rank: {oracle}")
        if oracle != system.n:
            lines.append("ORACLE MISMATCH")
            code = 1
    _emit(args, payload, lines)
    return code


def cmd_hankel(args) -> int:
    alphabet = _alphabet(args)
    poly = parse_poly(args.expr, alphabet)
    matrix = hankel_matrix(poly)
    from .parsing import format_word

    payload = {
        "command": "hankel",
        "input": format_poly(poly),
        "rows": [format_word(w, alphabet) if w else "1" for w in matrix.row_words],
        "cols": [format_word(w, alphabet) if w else "1" for w in matrix.col_words],
        "entries": [[str(x) for x in row] for row in matrix.entries],
        "rank": matrix.rank() if matrix.row_words else 0,
    }
    lines = [f"input: {format_poly(poly)}", matrix.render(), f"rank: {payload['rank']}"]
    _emit(args, payload, lines)
    return 0


def cmd_minimize(args) -> int:
    alphabet = _alphabet(args)
    if args.als_file:
        with open(args.als_file, "r", encoding="utf-8") as fh:
            system = als_mod.Als.from_json(fh.read())
    else:
        poly = parse_poly(args.expr, alphabet)
        system = als_mod.stacked_from_poly(poly)
    trace = [] if _trace_enabled(args) else None
    result = minimizer.minimize(system, trace=trace)
    solved = als_mod.solve(result)
    payload = {
        "command": "minimize",
        "input_dim": system.n,
        "dim": result.n,
        "polynomial": format_poly(solved),
        "als": result.to_dict(),
    }
    lines = [
        f"input dim: {system.n}",
        f"minimal dim: {result.n}",
        f"polynomial: {format_poly(solved)}",
    ]
    if result.n:
        lines.append(result.render())
    else:
        lines.append("(,,)   # zero element")
    if trace is not None:
        payload["trace"] = trace
        lines.append("trace:")
        lines.extend(f"  {event}" for event in trace)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(result.to_json() + "\n")
        lines.append(f"wrote {args.output}")
    _emit(args, payload, lines)
    return 0


def cmd_als(args) -> int:
    alphabet = _alphabet(args)
    poly = parse_poly(args.expr, alphabet)
    system = als_mod.from_poly(poly)
    payload = {
        "command": "als",
        "input": format_poly(poly),
        "dim": system.n,
        "als": system.to_dict(),
    }
    lines = [f"input: {format_poly(poly)}", f"dim: {system.n}"]
    if system.n:
        lines.append(system.render())
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(system.to_json() + "\n")
        lines.append(f"wrote {args.output}")
    _emit(args, payload, lines)
    return 0


def cmd_factor(args) -> int:
    alphabet = _alphabet(args)
    poly = parse_poly(args.expr, alphabet)
    trace = [] if _trace_enabled(args) else None
    cert = factorizer.factor(poly, jobs=args.jobs, trace=trace)
    payload = cert.to_dict()
    payload["command"] = "factor"
    lines = [f"input: {format_poly(poly)}", f"rank:  {cert.rank}", f"unit:  {cert.unit}"]
    lines.append("atoms:")
    for i, entry in enumerate(cert.atoms, start=1):
        caveat = "" if entry.status == factorizer.ATOM else f"  [{entry.status}]"
        lines.append(f"  {i}. {format_poly(entry.poly)}   rank {entry.rank}{caveat}")
    lines.append("ideal status:")
    for node, status in sorted(cert.ideal_status.items()):
        lines.append(f"  {node}: {status}")
    code = 0
    if cert.product_check:
        lines.append("VERIFIED product = input")
    else:  # pragma: no cover - factor() raises before this can happen
        lines.append("PRODUCT CHECK FAILED")
        code = 1
    if args.oracle_check:
        ok = hankel_rank(poly) == cert.rank and all(
            hankel_rank(e.poly) == e.rank for e in cert.atoms
        )
        payload["oracle_check"] = ok
        lines.append(f"oracle check: {'pass' if ok else 'FAIL'}")
        if not ok:
            code = 1
    if args.enumerate_factorizations:
        certs = factorizer.enumerate_factorizations(poly, jobs=args.jobs)
        payload["factorizations"] = [
            {
                "atoms": [str(e.poly) for e in c.atoms],
                "split_positions": list(c.split_positions),
            }
            for c in certs
        ]
        lines.append(f"factorizations ({len(certs)}):")
        for c in certs:
            atoms = " | ".join(str(e.poly) for e in c.atoms)
            lines.append(f"  splits {list(c.split_positions)}: {atoms}")
    if trace is not None:
        payload["trace"] = trace
        lines.append("trace:")
        lines.extend(f"  {event}" for event in trace)
    _emit(args, payload, lines)
    return code


def cmd_verify(args) -> int:
    with open(args.certfile, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    ok, problems = factorizer.verify_certificate(data)
    payload = {"command": "verify", "file": args.certfile, "ok": ok, "problems": problems}
    lines = [f"certificate: {args.certfile}"]
    lines.extend(f"  problem: {p}" for p in problems)
    lines.append("PASS" if ok else "FAIL")
    _emit(args, payload, lines)
    return 0 if ok else 1


_COMMANDS = {
    "rank": cmd_rank,
    "hankel": cmd_hankel,
    "minimize": cmd_minimize,
    "als": cmd_als,
    "factor": cmd_factor,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except (NcfactorError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
