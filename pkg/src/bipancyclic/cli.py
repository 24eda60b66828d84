"""Command-line front end.

Exit codes: 0 success / property holds, 1 property fails or predicate not
applicable, 2 invalid input, 3 internal inconsistency (a failed theorem).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional, Sequence, TextIO

from . import census
from .errors import InvalidInput, TheoremViolation
from .extract import describe_indices, extract, require_member
from .graph import find_hamilton_cycle, format_edge_list, read_edge_list
from .oracle import (
    SecondAssertion,
    assess_second_assertion,
    es_predict,
    find_cycle_of_length,
    is_bipancyclic,
)

EXIT_OK, EXIT_FALSE, EXIT_INVALID, EXIT_THEOREM = 0, 1, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bipancyclic", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def file_cmd(name, help_):
        c = sub.add_parser(name, help=help_)
        c.add_argument("file")
        c.add_argument("--json", action="store_true")
        return c

    file_cmd("check", "report class membership")
    file_cmd("extract", "certified cycle of length 2n-2")
    c = file_cmd("pancyclic", "cycle lengths present")
    c.add_argument("--length", type=int)
    file_cmd("second-assertion", "omitted adjacent pair and bipancyclicity")

    def n_cmd(name, help_):
        c = sub.add_parser(name, help=help_)
        c.add_argument("--n", type=int, required=True)
        c.add_argument("--allow-large", action="store_true", help="lift the size cap")
        return c

    c = n_cmd("census", "enumerate class members")
    c.add_argument("--out", help="write one edge-list file per member here")
    c = n_cmd("matrix-census", "sweep constrained sign matrices")
    c.add_argument("--json", action="store_true")
    c = n_cmd("verify", "whole-class verification")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--json", action="store_true")
    c = sub.add_parser("gen", help="random class member as an edge list")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--seed", type=int, required=True)
    c.add_argument("--extra", type=int, default=0, help="random non-edges to add")
    c.add_argument("-o", "--output")
    return p


def _dump(obj, out: TextIO) -> None:
    out.write(json.dumps(obj) + "\n")


def _yn(flag: bool) -> str:
    return "true" if flag else "false"


def _cmd_check(args, out):
    g = read_edge_list(args.file)
    half_regular = g.is_half_regular()
    hamiltonian = find_hamilton_cycle(g) is not None
    member = half_regular and g.order > 8 and hamiltonian
    report = {
        "n": g.n,
        "size": g.size(),
        "half_regular": half_regular,
        "order_above_8": g.order > 8,
        "hamiltonian": hamiltonian,
        "member": member,
    }
    if args.json:
        _dump(report, out)
    else:
        for k, v in report.items():
            out.write(f"{k}: {_yn(v) if isinstance(v, bool) else v}\n")
    require_member(g)
    return EXIT_OK


def _cmd_extract(args, out):
    report = extract(read_edge_list(args.file))
    if args.json:
        _dump(report.to_json(), out)
    else:
        (sx, ix), (sy, iy) = report.omitted
        out.write(f"method: {report.method.value}\n")
        out.write(f"indices: {describe_indices(report)}\n")
        out.write(f"length: {report.witness.length}\n")
        out.write(f"cycle: {report.witness}\n")
        out.write(f"omitted: {sx}{ix} {sy}{iy}\n")
        out.write(f"omitted_adjacent: {_yn(report.omitted_adjacent)}\n")
    return EXIT_OK


def _cmd_pancyclic(args, out):
    g = read_edge_list(args.file)
    if args.length is not None:
        w = find_cycle_of_length(g, args.length)
        if args.json:
            _dump({"length": args.length, "present": w is not None,
                   "cycle": [[s, v] for s, v in w.labelled()] if w else None}, out)
        else:
            out.write(f"length {args.length}: {'present' if w else 'absent'}\n")
            if w:
                out.write(f"cycle: {w}\n")
        return EXIT_OK if w else EXIT_FALSE
    report = is_bipancyclic(g)
    prediction = es_predict(g)
    if args.json:
        _dump({**report.to_json(), "es_prediction": prediction.verdict.value,
               "es_reason": prediction.reason}, out)
    else:
        out.write(f"lengths_present: {' '.join(map(str, sorted(report.lengths_present)))}\n")
        out.write(f"is_bipancyclic: {_yn(report.is_bipancyclic)}\n")
        reason = f" ({prediction.reason})" if prediction.reason else ""
        out.write(f"es_prediction: {prediction.verdict.value}{reason}\n")
    if prediction.applies and not report.is_bipancyclic:
        raise TheoremViolation("size and hamiltonicity predict bipancyclicity, but a length is missing")
    return EXIT_OK if report.is_bipancyclic else EXIT_FALSE


def _cmd_second_assertion(args, out):
    report = assess_second_assertion(read_edge_list(args.file))
    if args.json:
        _dump(report.to_json(), out)
    else:
        if report.pair:
            (sx, ix), (sy, iy) = report.pair
            out.write(f"pair: {sx}{ix} {sy}{iy}\n")
            out.write(f"cycle: {report.witness}\n")
            out.write(f"subgraph_size: {report.subgraph_size}\n")
        else:
            out.write("pair: none\n")
        out.write(f"outcome: {report.outcome.value}\n")
    if report.outcome is SecondAssertion.REFUTED:
        raise TheoremViolation("omitting pair found but the graph is not bipancyclic")
    return EXIT_OK if report.outcome is SecondAssertion.CONFIRMED else EXIT_FALSE


def _cmd_census(args, out):
    census.check_class_n(args.n, args.allow_large)
    expected, method = census.independent_count(args.n)
    if args.out:
        count = census.write_members(args.n, args.out, args.allow_large)
    else:
        count = census.enumerate_class(args.n, args.allow_large).count
    out.write(f"n: {args.n}\nmembers: {count}\nindependent_count: {expected} ({method})\n")
    if count != expected:
        raise TheoremViolation(f"enumeration found {count} members, expected {expected}")
    return EXIT_OK


def _cmd_matrix_census(args, out):
    result = census.constrained_matrix_census(args.n, args.allow_large)
    if args.json:
        _dump(result.to_json(), out)
    else:
        out.write(f"n: {result.n}\nvectors: {result.vectors_checked}\n")
        out.write(f"candidates: {len(result.candidates)}\n")
        for c in result.candidates:
            signs = ",".join("+" if v > 0 else "-" for v in c.first_row)
            ext = f"i0={c.extraction[0]} k={c.extraction[1]}" if c.extraction else "failure"
            out.write(
                f"({signs}) line_sums_ok={_yn(c.column_sums_ok)} {ext} certified={_yn(c.certified)}\n"
            )
        out.write(f"theorem_violations: {result.theorem_violations}\n")
    if result.theorem_violations:
        raise TheoremViolation(f"{result.theorem_violations} candidates admit no (i0, k)")
    return EXIT_OK


def _cmd_gen(args, out):
    if args.extra:
        g = census.random_augmented(args.n, args.seed, args.extra)
    else:
        g = census.random_member(args.n, args.seed)
    if args.output:
        with open(args.output, "w", encoding="ascii", newline="") as f:
            f.write(format_edge_list(g))
    else:
        out.write(format_edge_list(g))
    return EXIT_OK


def _cmd_verify(args, out):
    if args.jobs < 1:
        raise InvalidInput("--jobs must be at least 1")
    summary = census.verify_theorem(args.n, args.jobs, args.allow_large)
    if args.json:
        _dump(summary.to_json(), out)
    else:
        out.write(f"n: {summary.n}\n")
        out.write(f"members: {summary.members}\n")
        out.write(f"independent_count: {summary.independent_count} ({summary.count_method})\n")
        for k, v in summary.methods.items():
            out.write(f"method {k}: {v}\n")
        out.write(f"witnesses_certified: {summary.witnesses_certified}\n")
        out.write(f"oracle_agreements: {summary.oracle_agreements}\n")
        for k, v in summary.second_assertion.items():
            out.write(f"second_assertion {k}: {v}\n")
        out.write(f"size_identity_ok: {summary.size_identity_ok}/{summary.pairs_found}\n")
        out.write(f"failures: {summary.failure_count}\n")
        for f in summary.failures:
            out.write(f"  member {f['member']}: {', '.join(f['reasons'])}\n")
    if not summary.ok:
        raise TheoremViolation(f"{summary.failure_count} members failed verification")
    return EXIT_OK


COMMANDS = {
    "check": _cmd_check,
    "extract": _cmd_extract,
    "pancyclic": _cmd_pancyclic,
    "second-assertion": _cmd_second_assertion,
    "census": _cmd_census,
    "matrix-census": _cmd_matrix_census,
    "gen": _cmd_gen,
    "verify": _cmd_verify,
}


def run(argv: Sequence[str], out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        args = _build_parser().parse_args(list(argv))
    except _UsageError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if args.verbose:
        logging.basicConfig(stream=err, level=logging.INFO, format="%(message)s")
    if getattr(args, "allow_large", False):
        err.write("warning: size cap lifted; this may run for a very long time\n")
    try:
        return COMMANDS[args.command](args, out)
    except TheoremViolation as exc:
        err.write(f"theorem violation: {exc}\n")
        return EXIT_THEOREM
    except InvalidInput as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID
    except OSError as exc:
        err.write(f"error: {exc.strerror or exc}: {exc.filename or ''}\n".replace(": \n", "\n"))
        return EXIT_INVALID


def main() -> None:
    sys.exit(run(sys.argv[1:]))
