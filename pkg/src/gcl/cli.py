"""Command-line entry point.

Exit status is 0 on success, 1 when a queried rule is refuted and 2 on
usage, input or capacity errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import degeneracy, implication, oracle, sublattice
from .algebra import format_cnf, format_dnf, parse_constraints
from .context import DEFAULT_MAX_ATTRIBUTES, read_context, to_burmeister
from .errors import CapacityError, ParseError, UnknownNameError
from .lattice import GclStructure, build, to_dot, to_json

CAP_ENV = "GCL_MAX_ATTRIBUTES"


class UsageError(Exception):
    pass


def _default_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_MAX_ATTRIBUTES
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{CAP_ENV} must be an integer, got {raw!r}") from None


def _load(args) -> GclStructure:
    path = Path(args.context)
    if not path.is_file():
        raise UsageError(f"context file not found: {path}")
    cap = args.max_attributes if args.max_attributes is not None else _default_cap()
    ctx = read_context(path, args.format, max_attributes=cap, allow_reserved=args.allow_fictitious)
    if args.constraints:
        ctx = ctx.with_forbidden(parse_constraints(Path(args.constraints).read_text(), ctx.alphabet))
    return build(ctx)


def _braces(names) -> str:
    return "{" + ",".join(names) + "}"


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# ---------------------------------------------------------------------------
# subcommands


def cmd_build(args) -> int:
    gcl = _load(args)
    report = degeneracy.degeneracy_report(gcl)
    ctx = gcl.context
    if args.output == "json":
        doc = {
            "n_F": gcl.n_F,
            "rank": gcl.rank,
            "intent_exponent": gcl.intent_exponent,
            "classes": [list(c.members) for c in gcl.quotient.classes],
            "eta_representation": [format_dnf(e) for e in gcl.eta_atoms],
            "rho_representation": [format_cnf(r) for r in gcl.rho_atoms],
            "one_eta": format_dnf(gcl.one_eta),
            "zero_rho": format_cnf(gcl.zero_rho),
            "degenerate": report.degenerate,
        }
        _emit(args, json.dumps(doc, indent=2))
        return 0
    lines = [
        f"degenerate: {str(report.degenerate).lower()}",
        f"objects: {len(ctx.objects)}  attributes: {len(ctx.attributes)}",
        f"n_F: {gcl.n_F}  rank: {gcl.rank}  intent size: 2^{gcl.intent_exponent}",
        "classes:",
    ]
    lines += [f"  D{k + 1} = {_braces(c.members)}" for k, c in enumerate(gcl.quotient.classes)]
    lines.append("eta-representation:")
    lines += [f"  eta{k + 1} = {format_dnf(e)}" for k, e in enumerate(gcl.eta_atoms)]
    lines.append("rho-representation:")
    lines += [f"  rho{k + 1} = {format_cnf(r)}" for k, r in enumerate(gcl.rho_atoms)]
    lines.append(f"1_eta = {format_dnf(gcl.one_eta)}")
    lines.append(f"0_rho = {format_cnf(gcl.zero_rho)}")
    _emit(args, "\n".join(lines))
    return 0


def _concept_record(gcl: GclStructure, concept) -> dict:
    return {
        "mask": str(concept.mask),
        "extent": gcl.context.sort_objects(concept.extent),
        "eta_dnf": format_dnf(concept.eta),
        "rho_cnf": format_cnf(concept.rho),
    }


def cmd_concepts(args) -> int:
    gcl = _load(args)
    if args.mask is not None:
        concepts = [gcl.concept(args.mask)]
    elif args.extent is not None:
        concepts = [gcl.concept([g.strip() for g in args.extent.split(",") if g.strip()])]
    else:
        concepts = list(gcl.concepts())
    records = [_concept_record(gcl, c) for c in concepts]
    if args.output == "json":
        _emit(args, json.dumps(records, indent=2))
        return 0
    lines = []
    for r in records:
        lines.append(f"{r['mask']}  extent {_braces(r['extent'])}")
        lines.append(f"  eta = {r['eta_dnf']}")
        lines.append(f"  rho = {r['rho_cnf']}")
    _emit(args, "\n".join(lines))
    return 0


def _verdict_text(gcl: GclStructure, v: implication.ImplicationVerdict) -> str:
    if v.allowed:
        return f"ALLOWED ({v.t_class}, {v.informative_class})"
    members = gcl.quotient.classes[v.witness_class].members
    return f"REFUTED, witness class {_braces(members)}"


def _verdict_record(gcl: GclStructure, v: implication.ImplicationVerdict | None):
    if v is None:
        return None
    out = {"allowed": v.allowed, "t_class": v.t_class, "informative_class": v.informative_class}
    if not v.allowed:
        out["witness_minterm"] = v.witness
        out["witness_class"] = list(gcl.quotient.classes[v.witness_class].members)
    return out


def cmd_query(args) -> int:
    gcl = _load(args)
    if args.rules:
        results = implication.check_rules(gcl, Path(args.rules).read_text())
    elif args.rule:
        results = [implication.check_rule(gcl, args.rule)]
    else:
        raise UsageError("give a rule or --rules FILE")
    if args.output == "json":
        records = [
            {
                "rule": r.text,
                "holds": r.holds,
                "forward": _verdict_record(gcl, r.forward),
                "backward": _verdict_record(gcl, r.backward),
                "lhs_closure_dnf": format_dnf(gcl.closure(r.lhs)),
            }
            for r in results
        ]
        _emit(args, json.dumps(records, indent=2))
    else:
        lines = []
        for r in results:
            if len(results) > 1:
                lines.append(f"rule: {r.text}")
            if r.bidirectional:
                lines.append("ALLOWED (T1)" if r.holds else "REFUTED")
                lines.append(f"  forward: {_verdict_text(gcl, r.forward)}")
                lines.append(f"  backward: {_verdict_text(gcl, r.backward)}")
            else:
                lines.append(_verdict_text(gcl, r.forward))
            lines.append(f"  closure of LHS: {format_dnf(gcl.closure(r.lhs))}")
        _emit(args, "\n".join(lines))
    return 0 if all(r.holds for r in results) else 1


def _classical(args, concepts) -> int:
    gcl = _load(args)
    records = [c.as_dict(gcl) for c in concepts(gcl)]
    if args.output == "json":
        _emit(args, json.dumps(records, indent=2))
        return 0
    lines = []
    for r in records:
        tag = "  (appended)" if r["appended"] else ""
        lines.append(f"{_braces(r['extent'])}  {_braces(r['intent'])}{tag}")
    _emit(args, "\n".join(lines))
    return 0


def cmd_fcl(args) -> int:
    return _classical(args, sublattice.fcl_concepts)


def cmd_rsl(args) -> int:
    return _classical(args, sublattice.rsl_concepts)


def cmd_gintent(args) -> int:
    gcl = _load(args)
    fn = {
        "gfcl": sublattice.gfcl_intent,
        "grsl": sublattice.grsl_intent,
        "cgrsl": sublattice.cgrsl_intent,
    }[args.kind]
    gi = fn(gcl, args.mask)
    masks = sorted(gi.base, key=lambda m: m.bits)
    doc = {
        "kind": args.kind,
        "mask": args.mask,
        "complemented": gi.complemented,
        "extents": [str(m) for m in masks],
        "intent_count": len(masks),
        "log2_intent_size": gcl.intent_exponent,
    }
    if args.output == "json":
        _emit(args, json.dumps(doc, indent=2))
        return 0
    prefix = "M* minus the union of" if gi.complemented else "union of"
    lines = [f"{args.kind} intent of {args.mask}: {prefix} {len(masks)} general intents "
             f"(each of size 2^{gcl.intent_exponent})"]
    lines += [f"  [{m}]" for m in masks]
    _emit(args, "\n".join(lines))
    return 0


def cmd_degenerate(args) -> int:
    gcl = _load(args)
    r = degeneracy.degeneracy_report(gcl)
    doc = {"s1": r.s1, "s2": r.s2, "s3": r.s3, "s4": r.s4,
           "s2_method": r.s2_method, "consistent": r.consistent}
    if args.output == "json":
        _emit(args, json.dumps(doc, indent=2))
        return 0
    lines = [f"S{i}: {str(doc[f's{i}']).lower()}" for i in range(1, 5)]
    lines.append(f"S2 check: {r.s2_method}")
    lines.append(f"degenerate: {str(r.degenerate).lower()}")
    _emit(args, "\n".join(lines))
    return 0


def cmd_refcontext(args) -> int:
    gcl = _load(args)
    _emit(args, to_burmeister(degeneracy.referential_context(gcl)))
    return 0


def cmd_restrict(args) -> int:
    gcl = _load(args)
    keep = [m.strip() for m in args.keep.split(",") if m.strip()]
    _emit(args, to_burmeister(degeneracy.restrict(gcl.context, keep)))
    return 0


def cmd_oracle(args) -> int:
    gcl = _load(args)
    if gcl.alphabet.width > args.max_m:
        raise UsageError(f"|M|={gcl.alphabet.width} exceeds --max-m {args.max_m}")
    report = oracle.verify(gcl, seed=args.seed, pairs=args.pairs, max_width=args.max_m)
    if args.report:
        Path(args.report).write_text(report.to_json() + "\n")
    _emit(args, report.to_json() if args.output == "json" else report.summary())
    return 0


def cmd_export_dot(args) -> int:
    _emit(args, to_dot(_load(args)))
    return 0


def cmd_export_json(args) -> int:
    _emit(args, to_json(_load(args)))
    return 0


# ---------------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--context", "-c", required=True, help="context file (.cxt or .csv)")
    common.add_argument("--format", choices=["burmeister", "csv"], help="override format detection")
    common.add_argument("--max-attributes", type=int, help=f"attribute cap (default {DEFAULT_MAX_ATTRIBUTES}, env {CAP_ENV})")
    common.add_argument("--constraints", help="file of expressions naming impossible attribute combinations")
    common.add_argument("--allow-fictitious", action="store_true",
                        help="accept object names with the reserved _f prefix")
    common.add_argument("--output", choices=["text", "json"], default="text")
    common.add_argument("-o", "--out", help="write output to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="gcl", description="General concept lattice toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    add("build", cmd_build, "print the eta/rho representation")
    p = add("concepts", cmd_concepts, "list general concepts")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--mask", help="class mask, D1 leftmost (e.g. 11010)")
    group.add_argument("--extent", help="comma-separated object names")
    p = add("query", cmd_query, "decide implication rules")
    p.add_argument("rule", nargs="?", help="'LHS -> RHS' or 'LHS <-> RHS'")
    p.add_argument("--rules", help="file with one rule per line")
    add("fcl", cmd_fcl, "formal-concept lattice nodes")
    add("rsl", cmd_rsl, "rough-set lattice nodes")
    p = add("gintent", cmd_gintent, "generalized FCL/RSL intents")
    p.add_argument("--mask", required=True)
    p.add_argument("--kind", choices=["gfcl", "grsl", "cgrsl"], default="gfcl")
    add("degenerate", cmd_degenerate, "degeneracy flags S1-S4")
    add("refcontext", cmd_refcontext, "write the referential context (Burmeister)")
    p = add("restrict", cmd_restrict, "write the context restricted to some attributes")
    p.add_argument("--keep", required=True, help="comma-separated attribute names")
    p = add("oracle", cmd_oracle, "brute-force law verification for small |M|")
    p.add_argument("--max-m", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pairs", type=int, default=oracle.DEFAULT_PAIRS)
    p.add_argument("--report", help="also write the JSON report here")
    add("export-dot", cmd_export_dot, "Hasse diagram in DOT")
    add("export-json", cmd_export_json, "all concepts and edges as JSON")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (UsageError, ParseError, UnknownNameError, CapacityError, ValueError, OSError) as exc:
        print(f"gcl {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
