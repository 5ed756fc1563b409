"""The general concept lattice, built from one pass over the discernible classes.

Every general extent is a union of discernible classes, so it is fully
described by an :class:`~gcl.masks.ExtentMask`. Its intent is the interval of
generalized attributes between a lower bound (the sum of the class minterms
it contains) and an upper bound (the product of the negated minterms it does
not contain).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .algebra import Alphabet, AttrFn, format_cnf, format_dnf, product, total
from .context import ContextQuotient, FormalContext, quotient as make_quotient
from .errors import CapacityError
from .masks import ExtentMask, iter_bits

MAX_ENUMERATION_CLASSES = 24

MaskLike = Union[ExtentMask, str, int, Iterable[str]]


@dataclass(frozen=True)
class GeneralConcept:
    mask: ExtentMask
    extent: frozenset[str]
    eta: AttrFn
    rho: AttrFn


@dataclass(frozen=True)
class GclStructure:
    """The eta-representation of a context and everything derived from it.

    Attributes
    ----------
    eta_atoms
        One single-minterm function per discernible class, in class order.
    one_eta, zero_rho
        Contextual truth (sum of the atoms) and contextual falsity (its negation).
    rank
        ``2**|M|`` minus the number of forbidden minterms.
    """

    quotient: ContextQuotient
    eta_atoms: tuple[AttrFn, ...]
    one_eta: AttrFn
    zero_rho: AttrFn
    rank: int

    @property
    def n_F(self) -> int:
        return len(self.eta_atoms)

    @property
    def context(self) -> FormalContext:
        return self.quotient.context

    @property
    def alphabet(self) -> Alphabet:
        return self.quotient.alphabet

    @property
    def rho_atoms(self) -> tuple[AttrFn, ...]:
        return tuple(~e for e in self.eta_atoms)

    @property
    def class_minterms(self) -> tuple[int, ...]:
        return self.quotient.signatures

    @property
    def intent_exponent(self) -> int:
        """``log2`` of the number of generalized attributes in every general intent."""
        return self.rank - self.n_F

    def basis(self) -> list[int]:
        """Minterm indices of the atoms: occupied ones in class order, then the rest ascending."""
        occupied = list(self.class_minterms)
        seen = set(occupied)
        return occupied + [i for i in self.alphabet.allowed_minterms() if i not in seen]

    # -- masks --------------------------------------------------------------

    def mask(self, value: MaskLike) -> ExtentMask:
        """Coerce a mask string (class 1 leftmost), int, ExtentMask or object set."""
        if isinstance(value, ExtentMask):
            if value.width != self.n_F:
                raise ValueError(f"mask width {value.width} does not match n_F={self.n_F}")
            return value
        if isinstance(value, str):
            m = ExtentMask.from_string(value)
            if m.width != self.n_F:
                raise ValueError(f"mask {value!r} must have {self.n_F} bits")
            return m
        if isinstance(value, int):
            return ExtentMask(value, self.n_F)
        return self.quotient.mask_of(value)

    @property
    def top(self) -> ExtentMask:
        return ExtentMask.full(self.n_F)

    @property
    def bottom(self) -> ExtentMask:
        return ExtentMask.empty(self.n_F)

    # -- bounds -------------------------------------------------------------

    def eta(self, mask: MaskLike) -> AttrFn:
        """Lower bound of the intent: sum of the atoms selected by the mask."""
        mask = self.mask(mask)
        return total((self.eta_atoms[k] for k in mask), self.alphabet)

    def rho(self, mask: MaskLike) -> AttrFn:
        """Upper bound of the intent: product of the negated atoms not selected."""
        mask = self.mask(mask)
        return product((~self.eta_atoms[k] for k in ~mask), self.alphabet)

    def conjugate_holds(self, mask: MaskLike) -> bool:
        """Whether the lower bound of the complement is the negated upper bound."""
        mask = self.mask(mask)
        return self.eta(~mask) == ~self.rho(mask)

    def concept(self, mask: MaskLike) -> GeneralConcept:
        mask = self.mask(mask)
        return GeneralConcept(mask, self.quotient.objects_of(mask), self.eta(mask), self.rho(mask))

    def extent_of(self, mu: AttrFn) -> ExtentMask:
        """Mask of ``mu^R``: the classes whose minterm satisfies ``mu``."""
        if mu.alphabet != self.alphabet:
            raise ValueError("attribute is over a different alphabet")
        bits = 0
        for k, i in enumerate(self.class_minterms):
            if mu.bits >> i & 1:
                bits |= 1 << k
        return ExtentMask(bits, self.n_F)

    def closure(self, mu: AttrFn) -> AttrFn:
        """``mu * 1_eta``, the lower bound of the intent containing ``mu``."""
        return mu & self.one_eta

    def coclosure(self, mu: AttrFn) -> AttrFn:
        """``mu + 0_rho``, the upper bound of the intent containing ``mu``."""
        return mu | self.zero_rho

    def is_member(self, mask: MaskLike, mu: AttrFn) -> bool:
        """Whether ``mu`` lies in the general intent of ``mask``."""
        mask = self.mask(mask)
        return self.closure(mu) == self.eta(mask) and self.coclosure(mu) == self.rho(mask)

    # -- enumeration --------------------------------------------------------

    def _check_enumerable(self, limit: int) -> None:
        if self.n_F > limit:
            raise CapacityError(f"n_F={self.n_F} exceeds the enumeration cap of {limit}")

    def masks(self, limit: int = MAX_ENUMERATION_CLASSES) -> Iterator[ExtentMask]:
        self._check_enumerable(limit)
        for bits in range(1 << self.n_F):
            yield ExtentMask(bits, self.n_F)

    def concepts(self, limit: int = MAX_ENUMERATION_CLASSES) -> Iterator[GeneralConcept]:
        """All ``2**n_F`` general concepts, ordered by mask value."""
        for mask in self.masks(limit):
            yield self.concept(mask)

    def hasse_edges(self, limit: int = MAX_ENUMERATION_CLASSES) -> list[tuple[ExtentMask, ExtentMask]]:
        """Covering pairs: ``y`` is ``x`` with exactly one more class."""
        self._check_enumerable(limit)
        edges = []
        for x in range(1 << self.n_F):
            free = ((1 << self.n_F) - 1) & ~x
            for k in iter_bits(free):
                edges.append((ExtentMask(x, self.n_F), ExtentMask(x | 1 << k, self.n_F)))
        return edges


def build(source: ContextQuotient | FormalContext) -> GclStructure:
    """Read the eta-representation off the quotient in a single pass."""
    q = make_quotient(source) if isinstance(source, FormalContext) else source
    alphabet = q.alphabet
    atoms = []
    union = 0
    for cls in q.classes:
        if alphabet.forbidden >> cls.signature & 1:
            raise ValueError(f"class {cls.members} realises a forbidden minterm")
        atoms.append(alphabet.minterm(cls.signature))
        union |= 1 << cls.signature
    one_eta = AttrFn(alphabet, union)
    return GclStructure(q, tuple(atoms), one_eta, ~one_eta, alphabet.rank)


# ---------------------------------------------------------------------------
# export


def _extent_list(gcl: GclStructure, mask: ExtentMask) -> list[str]:
    return gcl.context.sort_objects(gcl.quotient.objects_of(mask))


def to_json(gcl: GclStructure, limit: int = MAX_ENUMERATION_CLASSES) -> str:
    nodes = [
        {
            "mask": str(c.mask),
            "extent": _extent_list(gcl, c.mask),
            "eta_dnf": format_dnf(c.eta),
            "rho_cnf": format_cnf(c.rho),
        }
        for c in gcl.concepts(limit)
    ]
    edges = [[str(x), str(y)] for x, y in gcl.hasse_edges(limit)]
    doc = {
        "attributes": list(gcl.context.attributes),
        "n_F": gcl.n_F,
        "rank": gcl.rank,
        "classes": [list(c.members) for c in gcl.quotient.classes],
        "nodes": nodes,
        "edges": edges,
    }
    return json.dumps(doc, indent=2)


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(gcl: GclStructure, limit: int = MAX_ENUMERATION_CLASSES) -> str:
    lines = ["digraph gcl {", "  rankdir=BT;", "  node [shape=box];"]
    for mask in gcl.masks(limit):
        label = "{" + ",".join(_extent_list(gcl, mask)) + "}"
        lines.append(f"  {_dot_quote(str(mask))} [label={_dot_quote(label)}];")
    for x, y in gcl.hasse_edges(limit):
        lines.append(f"  {_dot_quote(str(x))} -> {_dot_quote(str(y))};")
    lines.append("}")
    return "\n".join(lines) + "\n"
