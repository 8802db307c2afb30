"""Command-line pipeline over the library.

Subcommands: parse, build, enumerate, indicator, coeff, decide, profile,
falsify.  DIMACS comes from a path or '-' (stdin); outputs are JSON, CSV or
DIMACS-style 'v' lines and are byte-identical for identical inputs, flags
and seeds.  Exit codes: 0 success, 1 soft failure (e.g. UNSAT build),
2 falsifier findings, 10 SAT, 20 UNSAT-under-assumption, 30 resource cap,
64 usage error, 74 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .cnf import Formula, parse_dimacs, formula_to_json, sort_clauses, to_dimacs
from .coeffs import CoefficientQuery, decide_sat_bounded
from .descriptor import DEFAULT_LEN_CAP, build, profile_csv
from .errors import AnfSatError, ResourceCap
from .falsify import CLAIM_IDS, falsify
from .indicator import (
    factor_sequence,
    indicator_from_clauses,
    indicator_from_descriptor,
    indicator_from_factors,
)
from .solutions import list_solutions

EXIT_OK = 0
EXIT_SOFT_FAIL = 1
EXIT_FINDINGS = 2
EXIT_SAT = 10
EXIT_UNSAT_ASSUMED = 20
EXIT_CAPPED = 30
EXIT_USAGE = 64
EXIT_IO = 74


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse default exits 2; we use 64
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(EXIT_USAGE)


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        sys.stderr.write(f"cannot read {path}: {exc}\n")
        sys.exit(EXIT_IO)


def _write_output(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        sys.stderr.write(f"cannot write {path}: {exc}\n")
        sys.exit(EXIT_IO)


def _load_formula(path: str) -> Formula:
    text = _read_input(path)
    try:
        return parse_dimacs(text)
    except AnfSatError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        sys.exit(EXIT_SOFT_FAIL)


def _cmd_parse(args: argparse.Namespace) -> int:
    f = _load_formula(args.input)
    if args.emit == "json":
        _write_output(args.output, formula_to_json(f) + "\n")
    else:
        _write_output(args.output, to_dimacs(f))
    return EXIT_OK


def _cmd_build(args: argparse.Namespace) -> int:
    f = _load_formula(args.input)
    result = build(sort_clauses(f), cap=args.cap)
    if args.trace:
        _write_output(args.trace, profile_csv(result.trace))
    payload = {"status": result.status}
    if result.ok:
        assert result.descriptor is not None
        payload["descriptor"] = result.descriptor.to_json()
    if result.capped:
        payload["capped_at"] = list(result.capped_at or ())
    _write_output(args.output, json.dumps(payload, sort_keys=True) + "\n")
    if result.capped:
        return EXIT_CAPPED
    return EXIT_OK if result.ok else EXIT_SOFT_FAIL


def _cmd_enumerate(args: argparse.Namespace) -> int:
    f = _load_formula(args.input)
    result = build(sort_clauses(f), cap=args.cap)
    if result.capped:
        sys.stderr.write("build hit the length cap\n")
        return EXIT_CAPPED
    if result.unsat:
        _write_output(args.output, "s UNSATISFIABLE\n")
        return EXIT_OK
    assert result.descriptor is not None
    sols = list_solutions(
        result.descriptor,
        solution_cap=args.max_solutions,
        node_cap=args.max_nodes,
    )
    if args.emit == "json":
        payload = {
            "count": sols.sigma,
            "truncated": sols.truncated,
            "solutions": sols.to_json(),
        }
        _write_output(args.output, json.dumps(payload, sort_keys=True) + "\n")
    else:
        text = sols.to_dimacs_v_lines()
        text += f"c {sols.sigma} solutions" + (" (truncated)\n" if sols.truncated else "\n")
        _write_output(args.output, text)
    return EXIT_OK


def _cmd_indicator(args: argparse.Namespace) -> int:
    f = _load_formula(args.input)
    try:
        if args.form == "clauses":
            poly = indicator_from_clauses(f, args.mode)
        elif args.form == "descriptor":
            result = build(sort_clauses(f), cap=args.cap)
            if result.capped:
                return EXIT_CAPPED
            if result.unsat:
                _write_output(args.output, "0\n")
                return EXIT_OK
            assert result.descriptor is not None
            if args.mode != "gf2":
                sys.stderr.write("descriptor form is GF(2) only\n")
                return EXIT_SOFT_FAIL
            poly = indicator_from_descriptor(result.descriptor)
        else:
            fs = factor_sequence(sort_clauses(f))
            poly = indicator_from_factors(fs, args.mode)
    except ResourceCap as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_CAPPED
    _write_output(args.output, poly.to_text("x") + "\n")
    return EXIT_OK


def _cmd_coeff(args: argparse.Namespace) -> int:
    f = _load_formula(args.input)
    fs = factor_sequence(sort_clauses(f))
    if args.delta == "top":
        mask = ((1 << (f.n + 1)) - 1) & ~1
    else:
        bits = [b.strip() for b in args.delta.split(",")]
        if len(bits) != f.n or any(b not in ("0", "1") for b in bits):
            sys.stderr.write(
                f"--delta needs {f.n} comma-separated 0/1 entries or 'top'\n"
            )
            return EXIT_USAGE
        mask = 0
        for i, b in enumerate(bits, start=1):
            if b == "1":
                mask |= 1 << i
    query = CoefficientQuery.from_factor_sequence(
        fs, args.mode, frontier_cap=args.frontier_cap
    )
    try:
        value = query.coefficient(mask)
    except ResourceCap as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_CAPPED
    payload = {
        "delta": [(mask >> i) & 1 for i in range(1, f.n + 1)],
        "coefficient": value,
        "mode": args.mode,
        "work": {
            "queries": query.queries,
            "max_frontier": query.max_frontier(),
        },
    }
    _write_output(args.output, json.dumps(payload, sort_keys=True) + "\n")
    return EXIT_OK


def _cmd_decide(args: argparse.Namespace) -> int:
    f = _load_formula(args.input)
    try:
        decision = decide_sat_bounded(
            f, args.k, args.mode, frontier_cap=args.frontier_cap
        )
    except AnfSatError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_CAPPED
    verdict = decision.verdict
    if verdict.capped:
        _write_output(
            args.output,
            "s UNKNOWN (resource cap)\n"
            + json.dumps(decision.to_json(), sort_keys=True)
            + "\n",
        )
        return EXIT_CAPPED
    headline = (
        "s SATISFIABLE"
        if verdict.satisfiable
        else f"s UNSATISFIABLE (under #S<=2^{args.k} assumption)"
    )
    _write_output(
        args.output,
        headline + "\n" + json.dumps(decision.to_json(), sort_keys=True) + "\n",
    )
    return EXIT_SAT if verdict.satisfiable else EXIT_UNSAT_ASSUMED


def _cmd_profile(args: argparse.Namespace) -> int:
    f = _load_formula(args.input)
    result = build(sort_clauses(f), cap=args.cap)
    _write_output(args.output, profile_csv(result.trace))
    if result.capped:
        return EXIT_CAPPED
    return EXIT_OK


def _cmd_falsify(args: argparse.Namespace) -> int:
    claims = CLAIM_IDS if args.claims == "all" else tuple(args.claims.split(","))
    try:
        reports, stats = falsify(
            claims,
            count=args.count,
            n=args.n,
            ratio=args.ratio,
            seed=args.seed,
            report_dir=args.report_dir,
        )
    except ValueError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    payload = {
        "instances": stats.instances,
        "divergences": stats.divergences,
        "skipped": stats.skipped_capped,
        "per_claim": stats.per_claim,
        "reports": [r.to_json() for r in reports],
    }
    _write_output(args.output, json.dumps(payload, sort_keys=True) + "\n")
    return EXIT_FINDINGS if reports else EXIT_OK


def _build_parser() -> _Parser:
    parser = _Parser(prog="anf-sat-lab", description=__doc__)
    parser.add_argument("--threads", type=int, default=1, help="accepted for interface compatibility; computation is deterministic and single-threaded")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, needs_input: bool = True) -> None:
        if needs_input:
            p.add_argument("input", help="DIMACS CNF path, or '-' for stdin")
        p.add_argument("-o", "--output", default=None, help="output path (default stdout)")

    p = sub.add_parser("parse", help="validate DIMACS and emit JSON or normalized DIMACS")
    add_common(p)
    p.add_argument("--emit", choices=("json", "dimacs"), default="json")
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("build", help="build the descriptor of a formula")
    add_common(p)
    p.add_argument("--cap", type=_positive_int, default=DEFAULT_LEN_CAP)
    p.add_argument("--trace", default=None, help="write the profile CSV here")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("enumerate", help="list solutions via the prefix tree")
    add_common(p)
    p.add_argument("--cap", type=_positive_int, default=DEFAULT_LEN_CAP)
    p.add_argument("--max-solutions", type=_positive_int, default=None)
    p.add_argument("--max-nodes", type=_positive_int, default=None)
    p.add_argument("--emit", choices=("v", "json"), default="v")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("indicator", help="expand an indicator polynomial")
    add_common(p)
    p.add_argument("--mode", choices=("gf2", "int"), default="gf2")
    p.add_argument("--form", choices=("clauses", "descriptor", "factors"), default="clauses")
    p.add_argument("--cap", type=_positive_int, default=DEFAULT_LEN_CAP)
    p.set_defaults(func=_cmd_indicator)

    p = sub.add_parser("coeff", help="query one product coefficient")
    add_common(p)
    p.add_argument("--delta", default="top", help="comma-separated 0/1 vector or 'top'")
    p.add_argument("--mode", choices=("gf2", "int"), default="gf2")
    p.add_argument("--frontier-cap", type=_positive_int, default=1 << 22)
    p.set_defaults(func=_cmd_coeff)

    p = sub.add_parser("decide", help="bounded-solution satisfiability verdict")
    add_common(p)
    p.add_argument("--k", type=int, required=True, help="assume #solutions <= 2^k")
    p.add_argument("--mode", choices=("gf2", "int"), default="gf2")
    p.add_argument("--frontier-cap", type=_positive_int, default=1 << 22)
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("profile", help="build and emit the merge profile CSV")
    add_common(p)
    p.add_argument("--cap", type=_positive_int, default=DEFAULT_LEN_CAP)
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("falsify", help="hunt for counterexamples to monitored claims")
    add_common(p, needs_input=False)
    p.add_argument("--claims", default="all", help="'all' or comma-separated claim ids")
    p.add_argument("--count", type=_positive_int, default=500)
    p.add_argument("--n", type=_positive_int, default=12)
    p.add_argument("--ratio", type=float, default=4.26)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report-dir", default=None)
    p.set_defaults(func=_cmd_falsify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
