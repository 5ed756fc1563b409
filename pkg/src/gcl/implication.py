"""Deciding implications between generalized attributes under a context.

``mu1 -> mu2`` is allowed when every class having ``mu1`` also has ``mu2``,
which is the same as ``mu1 * 1_eta <= mu2 * 1_eta``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .algebra import AttrFn, product, total
from .errors import ParseError
from .lattice import GclStructure

T1, T2 = "T1", "T2"
TT, RII, RPII = "TT", "RII", "RPII"


@dataclass(frozen=True)
class ImplicationVerdict:
    """Outcome of checking one directed rule.

    For an allowed rule ``t_class`` and ``informative_class`` are set; for a
    refuted one ``witness`` is the minterm of a class that has the premise
    but not the conclusion, and ``witness_class`` its class index.
    """

    allowed: bool
    t_class: str | None = None
    informative_class: str | None = None
    witness: int | None = None
    witness_class: int | None = None


def informative_class(mu1: AttrFn, mu2: AttrFn) -> str:
    if mu1 <= mu2:
        return TT
    if mu2 < mu1:
        return RPII
    return RII


def allowable(gcl: GclStructure, mu1: AttrFn, mu2: AttrFn) -> ImplicationVerdict:
    if mu1.alphabet != gcl.alphabet or mu2.alphabet != gcl.alphabet:
        raise ValueError("attribute widths do not match the context")
    lhs = gcl.closure(mu1)
    rhs = gcl.closure(mu2)
    if lhs <= rhs:
        t_class = T1 if lhs == rhs else T2
        return ImplicationVerdict(True, t_class, informative_class(mu1, mu2))
    for k, i in enumerate(gcl.class_minterms):
        if lhs.bits >> i & 1 and not rhs.bits >> i & 1:
            return ImplicationVerdict(False, witness=i, witness_class=k)
    raise AssertionError("unreachable: lhs not below rhs yet no violating class")


def closure(gcl: GclStructure, mu: AttrFn, upper: bool = False) -> AttrFn:
    """Strongest consequent ``mu * 1_eta``; with ``upper`` the weakest premise ``mu + 0_rho``."""
    return gcl.coclosure(mu) if upper else gcl.closure(mu)


def equivalent(gcl: GclStructure, mu1: AttrFn, mu2: AttrFn) -> bool:
    return gcl.closure(mu1) == gcl.closure(mu2)


def _attrs(gcl: GclStructure, names: Iterable[str]) -> list[AttrFn]:
    return [gcl.alphabet.var(m) for m in set(names)]


def fcl_implication(gcl: GclStructure, premise: Iterable[str], conclusion: Iterable[str]) -> ImplicationVerdict:
    """``A -> B`` read as the product of ``A`` implying the product of ``B``."""
    ab = gcl.alphabet
    return allowable(gcl, product(_attrs(gcl, premise), ab), product(_attrs(gcl, conclusion), ab))


def rsl_implication(gcl: GclStructure, premise: Iterable[str], conclusion: Iterable[str]) -> ImplicationVerdict:
    """``A -> B`` read as the sum of ``A`` implying the sum of ``B``."""
    ab = gcl.alphabet
    return allowable(gcl, total(_attrs(gcl, premise), ab), total(_attrs(gcl, conclusion), ab))


# ---------------------------------------------------------------------------
# textual rules

_ARROW_RE = re.compile(r"<->|->")


@dataclass(frozen=True)
class RuleResult:
    text: str
    lhs: AttrFn
    rhs: AttrFn
    bidirectional: bool
    forward: ImplicationVerdict
    backward: ImplicationVerdict | None

    @property
    def holds(self) -> bool:
        if not self.bidirectional:
            return self.forward.allowed
        return self.forward.allowed and self.backward.allowed and self.forward.t_class == T1


def parse_rule(text: str) -> tuple[str, str, bool]:
    """Split ``"LHS -> RHS"`` or ``"LHS <-> RHS"`` into its sides."""
    arrows = list(_ARROW_RE.finditer(text))
    if len(arrows) != 1:
        raise ParseError(f"a rule needs exactly one '->' or '<->': {text!r}")
    arrow = arrows[0]
    lhs, rhs = text[:arrow.start()].strip(), text[arrow.end():].strip()
    if not lhs or not rhs:
        raise ParseError(f"empty side in rule {text!r}")
    return lhs, rhs, arrow.group() == "<->"


def check_rule(gcl: GclStructure, text: str) -> RuleResult:
    lhs_text, rhs_text, both = parse_rule(text)
    lhs = gcl.alphabet.fn(lhs_text)
    rhs = gcl.alphabet.fn(rhs_text)
    forward = allowable(gcl, lhs, rhs)
    backward = allowable(gcl, rhs, lhs) if both else None
    return RuleResult(text.strip(), lhs, rhs, both, forward, backward)


def check_rules(gcl: GclStructure, text: str) -> list[RuleResult]:
    """One result per non-blank, non-comment line, in input order."""
    results = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            results.append(check_rule(gcl, line))
        except ParseError as exc:
            raise ParseError(str(exc), line=lineno) from None
    return results
