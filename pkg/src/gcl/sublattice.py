"""Formal-concept and rough-set concepts recovered inside the general lattice."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .algebra import AttrFn
from .context import box, common_attributes, common_objects, diamond
from .lattice import GclStructure, MaskLike
from .masks import ExtentMask

FCL = "fcl"
RSL = "rsl"


@dataclass(frozen=True)
class ClassicalConcept:
    extent: frozenset[str]
    intent: frozenset[str]
    kind: str
    appended: bool
    mask: ExtentMask

    def as_dict(self, gcl: GclStructure) -> dict:
        ctx = gcl.context
        return {
            "extent": ctx.sort_objects(self.extent),
            "intent": ctx.sort_attributes(self.intent),
            "kind": self.kind,
            "appended": self.appended,
        }


def _subset_masks(gcl: GclStructure, combine) -> dict[ExtentMask, frozenset[str]]:
    ctx = gcl.context
    found = {}
    for size in range(1, len(ctx.attributes) + 1):
        for group in combinations(ctx.attributes, size):
            extent = combine(ctx, group)
            found.setdefault(gcl.mask(extent), extent)
    return found


def fcl_concepts(gcl: GclStructure) -> list[ClassicalConcept]:
    """Concepts whose extents are intersections of attribute extents.

    ``G`` is added as an ``appended`` supremum when no attribute group
    produces it; its intent is computed as ``G^I`` all the same.
    """
    ctx = gcl.context
    extents = _subset_masks(gcl, common_objects)
    out = []
    for mask, extent in extents.items():
        intent = common_attributes(ctx, extent)
        if common_objects(ctx, intent) == extent:
            out.append(ClassicalConcept(extent, intent, FCL, False, mask))
    if gcl.top not in extents:
        extent = frozenset(ctx.objects)
        out.append(ClassicalConcept(extent, common_attributes(ctx, extent), FCL, True, gcl.top))
    out.sort(key=lambda c: c.mask.bits)
    return out


def rsl_concepts(gcl: GclStructure) -> list[ClassicalConcept]:
    """Concepts whose extents are unions of attribute extents, with an appended empty infimum."""
    ctx = gcl.context
    extents = _subset_masks(gcl, diamond)
    out = []
    for mask, extent in extents.items():
        intent = box(ctx, extent)
        if diamond(ctx, intent) == extent:
            out.append(ClassicalConcept(extent, intent, RSL, False, mask))
    if gcl.bottom not in extents:
        out.append(ClassicalConcept(frozenset(), box(ctx, ()), RSL, True, gcl.bottom))
    out.sort(key=lambda c: c.mask.bits)
    return out


def candidate_fcl_intent(gcl: GclStructure, mask: MaskLike) -> frozenset[str]:
    """Attributes appearing as unit clauses of the lower bound's prime CNF.

    A plain attribute ``m`` is a unit prime implicate of ``eta`` exactly when
    ``eta <= m``.
    """
    eta = gcl.eta(mask)
    if eta.is_zero:
        return frozenset(gcl.context.attributes)
    ab = gcl.alphabet
    return frozenset(m for m in ab.names if eta <= ab.var(m))


def candidate_rsl_intent(gcl: GclStructure, mask: MaskLike) -> frozenset[str]:
    """Attributes appearing as single-literal implicants of the upper bound (``m <= rho``)."""
    rho = gcl.rho(mask)
    ab = gcl.alphabet
    return frozenset(m for m in ab.names if ab.var(m) <= rho)


@dataclass(frozen=True)
class GeneralizedIntent:
    """A union of general intents, given by the masks of their extents.

    With ``complemented`` set it denotes everything in ``M*`` outside that union.
    """

    base: frozenset[ExtentMask]
    complemented: bool = False

    def contains(self, gcl: GclStructure, mu: AttrFn) -> bool:
        return (gcl.extent_of(mu) in self.base) != self.complemented

    def log2_intent_size(self, gcl: GclStructure) -> int:
        return gcl.intent_exponent

    def cardinality(self, gcl: GclStructure) -> int:
        inside = len(self.base) << gcl.intent_exponent
        return (1 << gcl.rank) - inside if self.complemented else inside


def _masks_between(low: ExtentMask, high: ExtentMask) -> frozenset[ExtentMask]:
    free = high.bits & ~low.bits
    out = set()
    sub = free
    while True:
        out.add(ExtentMask(low.bits | sub, low.width))
        if sub == 0:
            break
        sub = (sub - 1) & free
    return frozenset(out)


def gfcl_intent(gcl: GclStructure, mask: MaskLike) -> GeneralizedIntent:
    """Intents of every extent containing ``mask``."""
    mask = gcl.mask(mask)
    return GeneralizedIntent(_masks_between(mask, gcl.top))


def grsl_intent(gcl: GclStructure, mask: MaskLike) -> GeneralizedIntent:
    """Intents of every extent contained in ``mask``."""
    mask = gcl.mask(mask)
    return GeneralizedIntent(_masks_between(gcl.bottom, mask))


def cgrsl_intent(gcl: GclStructure, mask: MaskLike) -> GeneralizedIntent:
    """Everything except the intents of extents inside the complement of ``mask``."""
    mask = gcl.mask(mask)
    return GeneralizedIntent(_masks_between(gcl.bottom, ~mask), complemented=True)
