"""Degenerate contexts, attribute restriction and the referential context."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .context import RESERVED_PREFIX, FormalContext
from .lattice import GclStructure

S2_EXHAUSTIVE_LIMIT = 20


@dataclass(frozen=True)
class DegeneracyReport:
    """The four equivalent characterisations of a degenerate context.

    s1: every admissible minterm is occupied (``n_F == rank``).
    s2: the two intent bounds coincide for every extent.
    s3: contextual truth is ``1`` and contextual falsity is ``0``.
    s4: every general intent is a single attribute.
    """

    s1: bool
    s2: bool
    s3: bool
    s4: bool
    s2_method: str

    @property
    def consistent(self) -> bool:
        return self.s1 == self.s2 == self.s3 == self.s4

    @property
    def degenerate(self) -> bool:
        return self.s1 and self.s2 and self.s3 and self.s4


def _bounds_coincide_everywhere(gcl: GclStructure) -> bool:
    # Walk the masks in Gray-code order so each step toggles one atom.
    full = gcl.alphabet.full
    atoms = [a.bits for a in gcl.eta_atoms]
    inside = 0
    outside = gcl.one_eta.bits
    prev = 0
    for step in range(1 << gcl.n_F):
        gray = step ^ (step >> 1)
        changed = gray ^ prev
        if changed:
            k = changed.bit_length() - 1
            inside ^= atoms[k]
            outside ^= atoms[k]
        prev = gray
        # upper bound = product of negated outside atoms = complement of their sum
        if inside != full & ~outside:
            return False
    return True


def degeneracy_report(gcl: GclStructure, exhaustive_limit: int = S2_EXHAUSTIVE_LIMIT) -> DegeneracyReport:
    """Evaluate S1-S4; S2 is checked on every mask when ``n_F <= exhaustive_limit``.

    Above the limit S2 is taken from S3 and ``s2_method`` says ``"inferred"``.
    """
    s1 = gcl.n_F == gcl.rank
    s3 = gcl.one_eta.is_one and gcl.zero_rho.is_zero
    s4 = gcl.intent_exponent == 0
    if gcl.n_F <= exhaustive_limit:
        s2, method = _bounds_coincide_everywhere(gcl), "exhaustive"
    else:
        s2, method = s3, "inferred"
    return DegeneracyReport(s1, s2, s3, s4, method)


def _project(row: int, picks: list[int]) -> int:
    return sum(1 << t for t, j in enumerate(picks) if row >> j & 1)


def restrict(ctx: FormalContext, keep: Iterable[str]) -> FormalContext:
    """Drop every attribute not in ``keep``; attribute order is preserved."""
    keep = set(keep)
    if not keep:
        raise ValueError("restriction must keep at least one attribute")
    for m in keep:
        ctx.attribute_index(m)
    picks = [j for j, m in enumerate(ctx.attributes) if m in keep]
    attributes = tuple(ctx.attributes[j] for j in picks)
    rows = tuple(_project(r, picks) for r in ctx.rows)
    forbidden = 0
    if ctx.forbidden:
        # a reduced combination is impossible only if all of its extensions were
        allowed = {_project(i, picks) for i in ctx.alphabet.allowed_minterms()}
        forbidden = sum(1 << i for i in range(1 << len(picks)) if i not in allowed)
    return FormalContext(ctx.objects, attributes, rows, forbidden, ctx.title, ctx.max_attributes)


def fictitious_name(minterm: int) -> str:
    return f"{RESERVED_PREFIX}{minterm}"


def referential_context(gcl: GclStructure) -> FormalContext:
    """Append one fictitious object per unoccupied admissible minterm.

    Fictitious objects are named ``_f<minterm index>`` and appended in
    ascending minterm order; the result is degenerate.
    """
    ctx = gcl.context
    clash = [g for g in ctx.objects if g.startswith(RESERVED_PREFIX)]
    if clash:
        raise ValueError(f"objects {clash} collide with the reserved prefix {RESERVED_PREFIX!r}")
    occupied = set(gcl.class_minterms)
    extra = [i for i in gcl.alphabet.allowed_minterms() if i not in occupied]
    return FormalContext(
        ctx.objects + tuple(fictitious_name(i) for i in extra),
        ctx.attributes,
        ctx.rows + tuple(extra),
        ctx.forbidden,
        ctx.title,
        ctx.max_attributes,
    )
