"""Acceptance gate: one check per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
"""

import sys

import numpy as np
import pytest

import gcl
from gcl.algebra import CONJUNCTION, DISJUNCTION, LiteralClause, irreducible_covers
from gcl.degeneracy import degeneracy_report, referential_context, restrict
from gcl.implication import T1, T2, allowable
from gcl.oracle import random_context, verify
from gcl.sublattice import fcl_concepts, rsl_concepts

from conftest import SAMPLE_PATH

# [G^+] as listed in the reference material for the sample context
LISTED_G_PLUS = [
    "a + b", "a + e", "a + ~c", "a + ~d", "b + c + ~d", "b + c + ~e", "b + d + ~e",
    "b + ~d + e", "~b + ~c", "~b + ~d", "~b + e", "c + ~d", "~c + d + ~e", "~d + e",
]


def _sample():
    return gcl.build(gcl.read_context(SAMPLE_PATH))


def _clauses(g, texts, mode):
    return {LiteralClause.parse(t, g.alphabet, mode).literals for t in texts}


def _found(g, target, mode):
    return {c.literals for c in irreducible_covers(g.quotient, target, mode)}


def ac1():
    g = _sample()
    classes = [set(c.members) for c in g.quotient.classes]
    shown = " ".join("{" + ",".join(sorted(c)) + "}" for c in classes)
    return g.n_F == 5 and classes == [{"1"}, {"2"}, {"3", "4"}, {"5"}, {"6"}], f"classes {shown}"


def ac2():
    g = _sample()
    ab = g.alphabet
    listed = ["a*~b*c*d*e", "a*~b*c*~d*~e", "~a*b*~c*~d*e", "a*~b*~c*~d*~e", "a*b*~c*~d*e"]
    expected = [ab.fn(t) for t in listed]
    same = list(g.eta_atoms) == expected and all(e.bits.bit_count() == 1 for e in expected)
    return same, f"atoms={[str(a) for a in g.eta_atoms]}"


def ac3a():
    g = _sample()
    got = _found(g, {"2"}, CONJUNCTION)
    ok = got == _clauses(g, ["c*~d", "c*~e"], CONJUNCTION)
    return ok, "[{2}^x] = {c*~d, c*~e}"


def ac3b():
    g = _sample()
    got = _found(g, {"2", "3", "4", "5", "6"}, DISJUNCTION)
    ok = got == _clauses(g, ["~d", "b + ~e", "~c + ~e"], DISJUNCTION)
    return ok, "[G\\{1}^+] = {~d, b + ~e, ~c + ~e}"


def ac3c():
    g = _sample()
    got = _found(g, g.context.objects, DISJUNCTION)
    listed = _clauses(g, LISTED_G_PLUS, DISJUNCTION)
    extra = sorted(str(LiteralClause(g.alphabet, lits, DISJUNCTION)) for lits in listed - got)
    missing = sorted(str(LiteralClause(g.alphabet, lits, DISJUNCTION)) for lits in got - listed)
    detail = f"computed {len(got)} vs listed {len(listed)}; listed-only={extra}; computed-only={missing}"
    return got == listed, detail


def ac4():
    g = _sample()
    ab = g.alphabet
    mask = g.extent_of(ab.fn("a*~e + c"))
    ok = (
        str(mask) == "11010"
        and g.quotient.objects_of(mask) == {"1", "2", "5"}
        and g.rho("11011") == ab.fn("a + ~b + c + d + ~e")
    )
    return ok, f"mask={mask}"


def ac5():
    g = _sample()
    f = g.alphabet.fn
    v = allowable(g, f("c"), f("a"))
    checks = [v.allowed and v.t_class == T2]
    checks.append(allowable(g, f("~e"), f("a + ~b*~d")).allowed)
    for x, y in (("d", "a*c*e"), ("b + c*d", "e")):
        for lhs, rhs in ((x, y), (y, x)):
            w = allowable(g, f(lhs), f(rhs))
            checks.append(w.allowed and w.t_class == T1)
    for lhs, rhs in (("c", "e"), ("e", "c")):
        w = allowable(g, f(lhs), f(rhs))
        valid = (
            not w.allowed
            and w.witness == g.class_minterms[w.witness_class]
            and f(lhs)(w.witness)
            and not f(rhs)(w.witness)
        )
        checks.append(valid)
    return all(checks), f"verdicts={checks}"


def ac6():
    g = _sample()
    fcl = {(c.extent, c.intent) for c in fcl_concepts(g)}
    rsl = {(c.extent, c.intent) for c in rsl_concepts(g)}
    G = frozenset(g.context.objects)
    ok = (
        (frozenset("1256"), frozenset("a")) in fcl
        and (frozenset("1256"), frozenset("acd")) in rsl
        and (frozenset("16"), frozenset("ae")) in fcl
        and frozenset("16") not in {e for e, _ in rsl}
        and (frozenset(), frozenset("abcde")) in fcl
        and (G, frozenset("abcde")) in rsl
    )
    return ok, f"{len(fcl)} FCL nodes, {len(rsl)} RSL nodes"


def ac7():
    g = _sample()
    ok = g.rank == 32 and g.intent_exponent == 27 and g.n_F == 5 and g.n_F + g.intent_exponent == g.rank
    return ok, f"rank={g.rank}, exponent={g.intent_exponent}, intents=2^{g.n_F}"


def ac8():
    g = gcl.build(restrict(gcl.read_context(SAMPLE_PATH), ["c", "e"]))
    r = degeneracy_report(g)
    mask = g.mask({"2", "5"})
    not_e = g.alphabet.fn("~e")
    ok = (
        g.n_F == 4
        and g.one_eta.is_one
        and (r.s1, r.s2, r.s3, r.s4) == (True, True, True, True)
        and g.eta(mask) == not_e == g.rho(mask)
    )
    return ok, f"n_F={g.n_F}, flags={(r.s1, r.s2, r.s3, r.s4)}"


def ac9():
    g = _sample()
    ref = referential_context(g)
    r = degeneracy_report(gcl.build(ref))
    added = len(ref.objects) - len(g.context.objects)
    return added == 27 and r.degenerate and r.consistent, f"added={added}, flags={(r.s1, r.s2, r.s3, r.s4)}"


def ac10():
    rng = np.random.default_rng(2024)
    violations = 0
    checked = 0
    degenerate_checked = 0
    for t in range(24):
        width = 1 + t % 3
        ctx = random_context(int(rng.integers(1, 9)), width, rng)
        g = gcl.build(ctx)
        violations += sum(verify(g).violation_counts.values())
        checked += 1
        ref = gcl.build(referential_context(g))
        report = verify(ref)
        violations += sum(report.violation_counts.values())
        degenerate_checked += report.pairs_checked > 0 and ref.n_F == ref.rank
    ok = violations == 0 and checked >= 20 and degenerate_checked == checked
    return ok, f"{checked} random + {degenerate_checked} degenerate contexts, {violations} violations"


CRITERIA = [
    ("AC1", "quotient of the sample context", ac1),
    ("AC2", "eta-representation minterms", ac2),
    ("AC3a", "irreducible conjunctions for {2}", ac3a),
    ("AC3b", "irreducible disjunctions for G\\{1}", ac3b),
    ("AC3c", "irreducible disjunctions for G equal the 14 listed", ac3c),
    ("AC4", "mask decoding and upper bound of 11011", ac4),
    ("AC5", "implication verdicts", ac5),
    ("AC6", "FCL/RSL recovery", ac6),
    ("AC7", "cardinality bookkeeping", ac7),
    ("AC8", "degenerate restriction to {c,e}", ac8),
    ("AC9", "referential context is degenerate", ac9),
    ("AC10", "oracle property suite", ac10),
]


def _line(cid, name, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] {cid} {name}: {detail}"


@pytest.mark.parametrize("cid, name, check", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(cid, name, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print("\n" + _line(cid, name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for cid, name, check in CRITERIA:
        ok, detail = check()
        failed += not ok
        print(_line(cid, name, ok, detail))
    sys.exit(1 if failed else 0)
