"""Command line: check, enumerate, classify, semilattice.

Exit codes: 0 ok, 1 validation failure, 2 parse or usage error, 3 budget
exceeded, 4 an implication that must always hold was violated.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from .brace import check_weak_brace
from .core import CayleyTable, build_clifford, is_associative, von_neumann_inverses
from .correspondences import AffineStructure, GammaFunction, GoodSubsemigroup
from .errors import AlgebraError, BudgetExceeded, ImplicationViolation, NotClifford, ParseError
from .fileio import TableDocument, dumps_json, format_tables, read_semilattice_file, read_table_file
from .morphisms import map_label
from .search import DEFAULT_BUDGET, ROUTES, EnumerationReport, enumerate_route, isomorphism_classes
from .special import CLASS_FLAGS, classify, compose_semilattice, roundtrip_semilattice, spec_from_document

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_BUDGET, EXIT_IMPLICATION = range(5)

CHECK_KINDS = ("semigroup", "inverse", "clifford", "brace", "dual-brace")


class UsageError(Exception):
    pass


def _witness(table: CayleyTable, witness) -> str:
    return ", ".join(table.names[i] for i in witness)


def _op(doc: TableDocument, label: str | None, default: Sequence[str]) -> tuple[str, CayleyTable]:
    if label is not None:
        if label not in doc.ops:
            raise UsageError(f"no 'op {label}:' block in file")
        return label, doc.ops[label]
    for name in default:
        if name in doc.ops:
            return name, doc.ops[name]
    return next(iter(doc.ops.items()))


def _need(doc: TableDocument, *labels: str) -> list[CayleyTable]:
    missing = [lb for lb in labels if lb not in doc.ops]
    if missing:
        raise UsageError(f"file needs an 'op {missing[0]}:' block")
    return [doc.ops[lb] for lb in labels]


# --- check ---------------------------------------------------------------

def cmd_check(args) -> int:
    doc = read_table_file(args.path)
    kind = args.kind
    if kind in ("semigroup", "inverse", "clifford"):
        label, t = _op(doc, args.op, ("add", "mul"))
        try:
            if kind == "semigroup":
                v = is_associative(t)
                if not v:
                    print(f"{label} not associative, witness {_witness(t, v.witness)}")
                    return EXIT_INVALID
            elif kind == "inverse":
                von_neumann_inverses(t)
            else:
                build_clifford(von_neumann_inverses(t))
        except AlgebraError as exc:
            print(f"{label} not {kind}: {exc}, witness {_witness(t, exc.witness)}")
            return EXIT_INVALID
        article = {"semigroup": "a semigroup", "inverse": "an inverse semigroup",
                   "clifford": "a Clifford semigroup"}[kind]
        print(f"ok: {label} is {article}")
        return EXIT_OK
    add, mul = _need(doc, "add", "mul")
    try:
        b = check_weak_brace(add, mul)
    except ImplicationViolation:
        raise
    except AlgebraError as exc:
        print(f"not a weak brace: {exc}, witness {_witness(add, exc.witness)}")
        return EXIT_INVALID
    if kind == "dual-brace":
        try:
            build_clifford(b.mul)
        except NotClifford as exc:
            print(f"mul not Clifford, witness {_witness(mul, exc.witness)}")
            return EXIT_INVALID
        print("ok: dual weak brace")
        return EXIT_OK
    print("ok: weak brace")
    return EXIT_OK


# --- enumerate -----------------------------------------------------------

def _plural(k: int, word: str, plural: str | None = None) -> str:
    return f"{k} {word if k == 1 else (plural or word + 's')}"


def summary_line(report: EnumerationReport) -> str:
    k = len(report.results)
    d = report.dual_count
    if report.route == "gamma":
        return f"{_plural(k, 'Gamma function')} ({d} dual)"
    if report.route == "good":
        return f"{_plural(k, 'good inverse subsemigroup')} ({d} Clifford)"
    if report.route == "affine":
        return f"{_plural(k, 'affine structure')} ({d} dual)"
    return f"{_plural(k, 'brace')} ({d} dual)"


def _structure_fields(s, names) -> dict:
    if isinstance(s, GammaFunction):
        return {"gamma": {names[x]: map_label(s.images(x), names) for x in range(len(names))}}
    if isinstance(s, GoodSubsemigroup):
        return {"elements": [s.hol.label(u) for u in s], "kind": s.kind}
    if isinstance(s, AffineStructure):
        return {"diamond": s.diamond.named_rows()}
    return {}


def report_to_dict(report: EnumerationReport, classes=None) -> dict:
    names = report.carrier.names
    out = {
        "route": report.route,
        "carrier": {"elements": list(names), "table": report.carrier.named_rows()},
        "varied": report.varied,
        "complete": report.complete,
        "count": len(report.results),
        "dual": report.dual_count,
        "stats": {"nodes": report.stats.nodes, "pruned": report.stats.pruned},
        "results": [],
    }
    for f in report.results:
        item = {
            "add": f.brace.add.base.named_rows(),
            "mul": f.brace.mul.base.named_rows(),
            "dual": f.brace.mul_is_clifford,
        }
        item.update(_structure_fields(f.structure, names))
        out["results"].append(item)
    if classes is not None:
        out["classes"] = classes
    return out


def _result_line(report: EnumerationReport, i: int) -> str:
    f = report.results[i]
    names = report.carrier.names
    tag = "dual" if f.brace.mul_is_clifford else "not dual"
    s = f.structure
    if isinstance(s, GammaFunction):
        body = " ".join(f"{names[x]}->{map_label(s.images(x), names)}" for x in range(len(names)))
    elif isinstance(s, GoodSubsemigroup):
        body = "{" + ", ".join(s.hol.label(u) for u in s) + "}"
        tag = s.kind
    else:
        other = f.brace.add if report.varied == "add" else f.brace.mul
        body = " | ".join(" ".join(r) for r in other.base.named_rows())
    return f"[{i + 1}] {body} ({tag})"


def emit_tables(report: EnumerationReport) -> str:
    chunks = []
    names = report.carrier.names
    for i, f in enumerate(report.results, 1):
        ops = {"add": f.brace.add.base, "mul": f.brace.mul.base}
        if isinstance(f.structure, AffineStructure):
            ops = {"mul": f.brace.mul.base, "diamond": f.structure.diamond, "add": f.brace.add.base}
        comment = f"# {report.route} result {i} of {len(report.results)}"
        chunks.append(format_tables(names, [comment], **ops))
    return "\n".join(chunks)


def cmd_enumerate(args) -> int:
    doc = read_table_file(args.path)
    route = args.route
    if route in ("gamma", "good"):
        (table,) = _need(doc, "add")
    elif route == "affine":
        (table,) = _need(doc, "mul")
    else:
        (table,) = _need(doc, "add" if args.second == "mul" else "mul")
    report = enumerate_route(route, table, budget=args.budget, jobs=args.jobs, second=args.second)
    classes = isomorphism_classes(report.braces) if args.classes else None
    if args.emit == "json":
        sys.stdout.write(dumps_json(report_to_dict(report, classes)))
    elif args.emit == "tables":
        sys.stdout.write(emit_tables(report))
    else:
        print(summary_line(report))
        for i in range(len(report.results)):
            print(_result_line(report, i))
        if classes is not None:
            print(f"{_plural(len(classes), 'isomorphism class', 'isomorphism classes')}")
        if not report.complete:
            print("best-effort incomplete: budget reached before the search finished")
    logging.getLogger(__name__).info("nodes %d, pruned %d, %.3fs", report.stats.nodes,
                                     report.stats.pruned, report.stats.seconds)
    return EXIT_OK


# --- classify ------------------------------------------------------------

def cmd_classify(args) -> int:
    doc = read_table_file(args.path)
    add, mul = _need(doc, "add", "mul")
    try:
        b = check_weak_brace(add, mul)
    except ImplicationViolation:
        raise
    except AlgebraError as exc:
        print(f"weak: no ({exc}, witness {_witness(add, exc.witness)})")
        return EXIT_INVALID
    flags = classify(b)
    for name in CLASS_FLAGS:
        v = flags[name]
        if v:
            print(f"{name}: yes")
        else:
            print(f"{name}: no (witness {_witness(add, v.witness)})")
    return EXIT_OK


# --- semilattice ---------------------------------------------------------

def cmd_semilattice(args) -> int:
    spec = spec_from_document(read_semilattice_file(args.path))
    b = compose_semilattice(spec)
    if args.roundtrip:
        roundtrip_semilattice(b)
        print(f"round trip ok: {b.n} elements, {spec.Y.n} components")
    else:
        sys.stdout.write(format_tables(b.names, ["# strong semilattice"], add=b.add.base, mul=b.mul.base))
    return EXIT_OK


# --- entry point ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="weakbrace", description="Finite inverse semigroups and weak left braces.")
    p.add_argument("-v", "--verbose", action="store_true", help="log search statistics to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="validate a table file as a given structure")
    c.add_argument("path")
    c.add_argument("--as", dest="kind", choices=CHECK_KINDS, required=True)
    c.add_argument("--op", help="block to check for semigroup/inverse/clifford (default add, then mul)")
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("enumerate", help="enumerate all brace structures over a carrier")
    e.add_argument("path")
    e.add_argument("--route", choices=ROUTES, default="gamma")
    e.add_argument("--emit", choices=("summary", "tables", "json"), default="summary")
    e.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="node budget (default %(default)s)")
    e.add_argument("--jobs", type=int, default=1, help="worker processes")
    e.add_argument("--second", choices=("mul", "add"), default="mul",
                   help="oracle: operation to search for (the other one is read from the file)")
    e.add_argument("--classes", action="store_true", help="also report isomorphism classes")
    e.set_defaults(func=cmd_enumerate)

    k = sub.add_parser("classify", help="report the special classes a brace belongs to")
    k.add_argument("path")
    k.set_defaults(func=cmd_classify)

    s = sub.add_parser("semilattice", help="compose a strong semilattice of skew braces")
    s.add_argument("path")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--compose", action="store_true", help="emit the composed brace (default)")
    g.add_argument("--roundtrip", action="store_true", help="compose, decompose, recompose and compare")
    s.set_defaults(func=cmd_semilattice)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ImplicationViolation as exc:
        print(f"implication violated: {exc}", file=sys.stderr)
        return EXIT_IMPLICATION
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except AlgebraError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
