"""Command-line front end: ``finring <command> [EXPR] [--json] [--cap N] [--seedfile PATH]``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .catalogue import verify_catalogue
from .expr import ExprError, eval_text
from .ring import FiniteRing, OrderCapError, RingError, order_cap
from .semidirect import enumerate_action_pairs
from .star import check_star_decomposition, classify, star_failure_reason
from .structure import analysis_report

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3

COMMANDS = ("analyze", "star", "classify", "cayley", "search-actions", "verify-paper")
# number of ring expressions each command takes
ARITY = {"analyze": 1, "star": 1, "classify": 1, "cayley": 1, "search-actions": 2, "verify-paper": 0}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="finring", description="Analyse finite rings given by small expressions.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("expr", nargs="*", metavar="EXPR",
                   help="ring expression, e.g. 'sdprod_alg(GF(2), GF(2))'")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--cap", type=int, metavar="N", help="largest ring order to build")
    p.add_argument("--seedfile", metavar="PATH",
                   help="read EXPR(s) from a file, one per non-blank line ('#' starts a comment)")
    return p


def read_seedfile(path: str) -> List[str]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return [ln.strip() for ln in lines if ln.strip() and not ln.strip().startswith("#")]


def format_table(R: FiniteRing, table, op: str) -> str:
    """Row label × column label grid, entries as element labels."""
    labels = list(R.labels)
    width = max(len(s) for s in labels + [op])
    head = " " * width + " | " + " ".join(f"{s:>{width}}" for s in labels)
    lines = [head, "-" * len(head)]
    for a in R.elements():
        cells = " ".join(f"{labels[int(table[a, b])]:>{width}}" for b in R.elements())
        lines.append(f"{labels[a]:>{width}} | {cells}")
    return "\n".join([op] + lines)


def parse_table(text: str) -> dict:
    """Inverse of :func:`format_table`: ``{(row, col): entry}`` keyed by labels."""
    lines = [ln for ln in text.splitlines() if "|" in ln]
    cols = lines[0].split("|", 1)[1].split()
    out = {}
    for ln in lines[1:]:
        row, cells = ln.split("|", 1)
        for col, cell in zip(cols, cells.split()):
            out[(row.strip(), col)] = cell
    return out


def cmd_cayley(R: FiniteRing, as_json: bool) -> tuple:
    if as_json:
        doc = {"ring": R.provenance, "labels": list(R.labels),
               "add": R.add.tolist(), "mul": R.mul.tolist(), "one": R.one}
        return EXIT_OK, json.dumps(doc)
    text = f"{R.provenance}\n\n" + format_table(R, R.add, "+") + "\n\n" + format_table(R, R.mul, "·")
    return EXIT_OK, text


def cmd_analyze(R: FiniteRing, as_json: bool) -> tuple:
    report = analysis_report(R)
    if as_json:
        return EXIT_OK, json.dumps(report)
    lines = [f"ring: {R.provenance}"]
    for key, value in report.items():
        if key == "ring":
            continue
        if key in ("maximal_ideals", "subfields"):
            value = ["{" + ", ".join(R.labels[a] for a in s) + "}" for s in value]
            value = ", ".join(value) if value else "none"
        lines.append(f"{key.replace('_', ' ')}: {value}")
    return EXIT_OK, "\n".join(lines)


def cmd_star(R: FiniteRing, as_json: bool) -> tuple:
    if R.one is None or R.order < 2:
        reason = "(★) is only considered for unital rings of order >= 2"
        w = None
    else:
        w = check_star_decomposition(R)
        reason = None if w is not None else star_failure_reason(R)
    if as_json:
        doc = {"ring": R.provenance, "star": w is not None}
        if w is not None:
            doc["M"] = list(w.M.members)
            doc["kappa"] = list(w.kappa)
            doc["section"] = list(w.section.map)
        else:
            doc["reason"] = reason
        return (EXIT_OK if w else EXIT_CHECK), json.dumps(doc)
    if w is None:
        return EXIT_CHECK, f"(★) fails: {reason}"
    Q = w.presentation.quotient
    section = ", ".join(f"{Q.labels[q]} -> {R.labels[w.section(q)]}" for q in Q.elements())
    return EXIT_OK, f"(★) holds: {w.describe()}\nsection: {section}"


def cmd_classify(R: FiniteRing, as_json: bool) -> tuple:
    if R.one is None or R.order < 2:
        raise RingError("classification needs a unital ring of order >= 2")
    summary = classify(R).summary()
    if as_json:
        return EXIT_OK, json.dumps(summary, ensure_ascii=False)
    lines = []
    for key, value in summary.items():
        if isinstance(value, dict):
            value = f"M = {{{', '.join(value['M'])}}}, κ = {{{', '.join(value['kappa'])}}}"
        lines.append(f"{key}: {value}")
    return EXIT_OK, "\n".join(lines)


def cmd_search_actions(B: FiniteRing, S: FiniteRing, as_json: bool) -> tuple:
    pairs = enumerate_action_pairs(B, S)
    summaries = []
    for spec in pairs:
        summaries.append({
            "lambda": {S.labels[s]: [B.labels[int(x)] for x in spec.lam[s]] for s in S.elements()},
            "rho": {S.labels[s]: [B.labels[int(x)] for x in spec.rho[s]] for s in S.elements()},
        })
    if as_json:
        return EXIT_OK, json.dumps({"B": B.provenance, "S": S.provenance,
                                    "count": len(pairs), "pairs": summaries}, ensure_ascii=False)
    lines = [f"{len(pairs)} action pair(s) for {B.provenance} ⋊ {S.provenance}"]
    for i, item in enumerate(summaries, 1):
        lines.append(f"pair {i}:")
        for name in ("lambda", "rho"):
            for s, images in item[name].items():
                lines.append(f"  {name}({s}) = [{', '.join(images)}]")
    return EXIT_OK, "\n".join(lines)


def cmd_verify_paper(as_json: bool) -> tuple:
    report = verify_catalogue()
    text = report.to_json() if as_json else report.format_table()
    return (EXIT_OK if report.ok else EXIT_CHECK), text


def _run(args) -> int:
    exprs = list(args.expr)
    if args.seedfile:
        exprs += read_seedfile(args.seedfile)
    need = ARITY[args.command]
    if len(exprs) != need:
        raise UsageError(f"{args.command} takes {need} expression(s), got {len(exprs)}")
    if args.command == "verify-paper":
        code, text = cmd_verify_paper(args.json)
    else:
        rings = [eval_text(e) for e in exprs]
        if args.command == "search-actions":
            code, text = cmd_search_actions(rings[0], rings[1], args.json)
        else:
            handler = {"analyze": cmd_analyze, "star": cmd_star,
                       "classify": cmd_classify, "cayley": cmd_cayley}[args.command]
            code, text = handler(rings[0], args.json)
    print(text)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.cap is not None and args.cap < 1:
            raise UsageError("--cap must be positive")
    except UsageError as exc:
        print(f"finring: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.cap is not None:
            with order_cap(args.cap):
                return _run(args)
        return _run(args)
    except UsageError as exc:
        print(f"finring: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ExprError as exc:
        print(f"finring: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OrderCapError, RingError, OSError, ValueError) as exc:
        print(f"finring: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
