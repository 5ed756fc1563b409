"""Formal contexts, their quotient into discernible classes, and the derivation operators."""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .algebra import IDENT_RE, Alphabet
from .errors import CapacityError, ParseError, UnknownNameError
from .masks import ExtentMask, iter_bits

DEFAULT_MAX_ATTRIBUTES = 20
RESERVED_PREFIX = "_f"


@dataclass(frozen=True)
class FormalContext:
    """Objects, attributes and the incidence relation between them.

    Each row is stored as an integer whose bit ``j`` says whether the object
    has attribute ``j``; that integer is also the index of the object's
    minterm in every truth table over :attr:`alphabet`.
    """

    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    rows: tuple[int, ...]
    forbidden: int = 0
    title: str = ""
    max_attributes: int = field(default=DEFAULT_MAX_ATTRIBUTES, compare=False)

    def __post_init__(self) -> None:
        for name in ("objects", "attributes", "rows"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if len(self.attributes) > self.max_attributes:
            raise CapacityError(
                f"{len(self.attributes)} attributes exceed the cap of {self.max_attributes}"
            )
        _check_unique(self.objects, "object")
        _check_unique(self.attributes, "attribute")
        for m in self.attributes:
            if not IDENT_RE.match(m):
                raise ValueError(f"attribute name {m!r} is not a valid identifier")
        if len(self.rows) != len(self.objects):
            raise ValueError(f"{len(self.objects)} objects but {len(self.rows)} rows")
        limit = 1 << len(self.attributes)
        for g, row in zip(self.objects, self.rows):
            if not 0 <= row < limit:
                raise ValueError(f"row of object {g!r} does not fit {len(self.attributes)} attributes")
            if self.forbidden >> row & 1:
                raise ValueError(f"object {g!r} realises a forbidden attribute combination")

    @classmethod
    def from_incidence(
        cls,
        objects: Sequence[str],
        attributes: Sequence[str],
        incidence,
        **kwargs,
    ) -> "FormalContext":
        """Build from a ``|G| x |M|`` boolean matrix (anything ``np.asarray`` accepts)."""
        matrix = np.asarray(incidence, dtype=bool).reshape(len(objects), len(attributes))
        weights = 1 << np.arange(len(attributes), dtype=object)
        rows = tuple(int(sum(w for w, x in zip(weights, r) if x)) for r in matrix)
        return cls(tuple(objects), tuple(attributes), rows, **kwargs)

    @classmethod
    def from_sets(cls, table: dict[str, Iterable[str]], attributes: Sequence[str], **kwargs):
        """Build from ``{object: attributes it has}`` preserving dict order."""
        index = {m: j for j, m in enumerate(attributes)}
        rows = []
        for g, have in table.items():
            try:
                rows.append(sum(1 << index[m] for m in set(have)))
            except KeyError as exc:
                raise UnknownNameError(f"unknown attribute {exc.args[0]!r}") from None
        return cls(tuple(table), tuple(attributes), tuple(rows), **kwargs)

    @property
    def incidence(self) -> np.ndarray:
        cols = np.arange(len(self.attributes))
        rows = np.array(self.rows, dtype=np.int64).reshape(-1, 1)
        return ((rows >> cols) & 1).astype(bool)

    @cached_property
    def alphabet(self) -> Alphabet:
        return Alphabet(self.attributes, self.forbidden)

    @cached_property
    def _object_index(self) -> dict[str, int]:
        return {g: i for i, g in enumerate(self.objects)}

    def object_index(self, g: str) -> int:
        try:
            return self._object_index[g]
        except KeyError:
            raise UnknownNameError(f"unknown object {g!r}") from None

    def attribute_index(self, m: str) -> int:
        return self.alphabet.index(m)

    @cached_property
    def columns(self) -> tuple[int, ...]:
        """``m^R`` for each attribute as a bit mask over object indices."""
        cols = [0] * len(self.attributes)
        for i, row in enumerate(self.rows):
            for j in iter_bits(row):
                cols[j] |= 1 << i
        return tuple(cols)

    @property
    def all_objects(self) -> int:
        return (1 << len(self.objects)) - 1

    def object_bits(self, names: Iterable[str]) -> int:
        return sum(1 << self.object_index(g) for g in set(names))

    def object_names(self, bits: int) -> frozenset[str]:
        return frozenset(self.objects[i] for i in iter_bits(bits))

    def attribute_names(self, bits: int) -> frozenset[str]:
        return frozenset(self.attributes[j] for j in iter_bits(bits))

    def sort_objects(self, names: Iterable[str]) -> list[str]:
        return sorted(names, key=self.object_index)

    def sort_attributes(self, names: Iterable[str]) -> list[str]:
        return sorted(names, key=self.attribute_index)

    def with_forbidden(self, forbidden: int) -> "FormalContext":
        return FormalContext(
            self.objects, self.attributes, self.rows, forbidden, self.title, self.max_attributes
        )


def _check_unique(names: Sequence[str], kind: str) -> None:
    seen = set()
    for name in names:
        if name in seen:
            raise ValueError(f"duplicate {kind} name {name!r}")
        seen.add(name)


# ---------------------------------------------------------------------------
# quotient


@dataclass(frozen=True)
class DiscernibleClass:
    members: tuple[str, ...]
    signature: int

    def has(self, attribute_index: int) -> bool:
        return bool(self.signature >> attribute_index & 1)


@dataclass(frozen=True)
class ContextQuotient:
    """Objects grouped by identical incidence rows, in order of first appearance."""

    context: FormalContext
    classes: tuple[DiscernibleClass, ...]
    class_of: dict[str, int] = field(compare=False, hash=False)

    @property
    def n_F(self) -> int:
        return len(self.classes)

    @property
    def alphabet(self) -> Alphabet:
        return self.context.alphabet

    @property
    def signatures(self) -> tuple[int, ...]:
        return tuple(c.signature for c in self.classes)

    def mask_of(self, objects: Iterable[str]) -> ExtentMask:
        """The class mask of an object set, which must be a union of whole classes."""
        objects = set(objects)
        bits = 0
        for g in objects:
            try:
                bits |= 1 << self.class_of[g]
            except KeyError:
                raise UnknownNameError(f"unknown object {g!r}") from None
        mask = ExtentMask(bits, self.n_F)
        if self.objects_of(mask) != objects:
            raise ValueError(f"{sorted(objects)} is not a union of discernible classes")
        return mask

    def objects_of(self, mask: ExtentMask) -> frozenset[str]:
        if mask.width != self.n_F:
            raise ValueError(f"mask width {mask.width} does not match n_F={self.n_F}")
        return frozenset(g for k in mask for g in self.classes[k].members)

    def object_bits_of(self, mask: ExtentMask) -> int:
        return self.context.object_bits(self.objects_of(mask))


def quotient(ctx: FormalContext) -> ContextQuotient:
    groups: dict[int, list[str]] = {}
    for g, row in zip(ctx.objects, ctx.rows):
        groups.setdefault(row, []).append(g)
    classes = tuple(DiscernibleClass(tuple(members), sig) for sig, members in groups.items())
    class_of = {g: k for k, c in enumerate(classes) for g in c.members}
    return ContextQuotient(ctx, classes, class_of)


# ---------------------------------------------------------------------------
# derivation operators


def object_derive(ctx: FormalContext, g: str) -> frozenset[str]:
    """``g^R``: the attributes of one object."""
    return ctx.attribute_names(ctx.rows[ctx.object_index(g)])


def attribute_derive(ctx: FormalContext, m: str) -> frozenset[str]:
    """``m^R``: the objects having one attribute."""
    return ctx.object_names(ctx.columns[ctx.attribute_index(m)])


def common_attributes(ctx: FormalContext, objects: Iterable[str]) -> frozenset[str]:
    """``X^I``: attributes shared by every object of ``X``."""
    x = ctx.object_bits(objects)
    return frozenset(m for m, col in zip(ctx.attributes, ctx.columns) if x & ~col == 0)


def common_objects(ctx: FormalContext, attributes: Iterable[str]) -> frozenset[str]:
    """``A^I`` for an attribute set: objects having every attribute of ``A``."""
    bits = ctx.all_objects
    for m in set(attributes):
        bits &= ctx.columns[ctx.attribute_index(m)]
    return ctx.object_names(bits)


def box(ctx: FormalContext, objects: Iterable[str]) -> frozenset[str]:
    """``X^box``: attributes held only by objects inside ``X``."""
    x = ctx.object_bits(objects)
    return frozenset(m for m, col in zip(ctx.attributes, ctx.columns) if col & ~x == 0)


def diamond(ctx: FormalContext, attributes: Iterable[str]) -> frozenset[str]:
    """``A^diamond``: objects having at least one attribute of ``A``."""
    bits = 0
    for m in set(attributes):
        bits |= ctx.columns[ctx.attribute_index(m)]
    return ctx.object_names(bits)


def derive(ctx: FormalContext, items: Iterable[str], op: str) -> frozenset[str]:
    """Dispatch to ``I`` (object set to shared attributes), ``box`` or ``diamond``."""
    ops = {"I": common_attributes, "box": box, "diamond": diamond}
    try:
        return ops[op](ctx, items)
    except KeyError:
        raise ValueError(f"unknown derivation operator {op!r}") from None


# ---------------------------------------------------------------------------
# file formats


def parse_context(
    source: str,
    format: str = "burmeister",
    *,
    max_attributes: int = DEFAULT_MAX_ATTRIBUTES,
    allow_reserved: bool = False,
) -> FormalContext:
    """Parse context text in Burmeister ``.cxt`` or CSV form.

    Object names starting with ``_f`` are reserved for fictitious objects and
    are rejected unless ``allow_reserved`` is set.
    """
    if format == "burmeister":
        ctx = _parse_burmeister(source, max_attributes)
    elif format == "csv":
        ctx = _parse_csv(source, max_attributes)
    else:
        raise ValueError(f"unknown context format {format!r}")
    if not allow_reserved:
        for g in ctx.objects:
            if g.startswith(RESERVED_PREFIX):
                raise ParseError(f"object name {g!r} uses the reserved prefix {RESERVED_PREFIX!r}")
    return ctx


def _is_count(text: str) -> bool:
    return text.strip().isdigit()


def _parse_burmeister(source: str, max_attributes: int) -> FormalContext:
    lines = source.splitlines()
    if not lines or lines[0].strip() != "B":
        raise ParseError("Burmeister file must start with a line 'B'", line=1)

    def body_after(start: int) -> list[tuple[int, str]]:
        return [(n + 1, s.strip()) for n, s in enumerate(lines) if n >= start and s.strip()]

    # The title line is optional; settle the ambiguity by the line count.
    candidates = []
    for title_lines in (1, 0):
        i = 1 + title_lines
        if i + 1 >= len(lines) or not (_is_count(lines[i]) and _is_count(lines[i + 1])):
            continue
        n_g, n_m = int(lines[i]), int(lines[i + 1])
        body = body_after(i + 2)
        if len(body) == 2 * n_g + n_m or (n_m == 0 and len(body) == n_g):
            candidates.append((title_lines, n_g, n_m, body))
    if not candidates:
        if len(lines) < 4 or not (_is_count(lines[2]) and _is_count(lines[3])):
            raise ParseError("expected object and attribute counts on lines 3 and 4", line=3)
        n_g, n_m = int(lines[2]), int(lines[3])
        got = len(body_after(4))
        raise ParseError(
            f"expected {2 * n_g + n_m} non-blank lines after the header for "
            f"{n_g} objects and {n_m} attributes, found {got}",
            line=len(lines),
        )
    title_lines, n_g, n_m, body = candidates[0]
    title = lines[1].strip() if title_lines else ""

    objects = [s for _, s in body[:n_g]]
    attributes = [s for _, s in body[n_g:n_g + n_m]]
    _names_or_error(objects, body[:n_g], "object")
    _names_or_error(attributes, body[n_g:n_g + n_m], "attribute")
    rows = []
    row_lines = body[n_g + n_m:] if n_m else [(None, "")] * n_g
    for lineno, text in row_lines:
        if len(text) != n_m:
            raise ParseError(f"row has {len(text)} cells, expected {n_m}", line=lineno)
        row = 0
        for j, ch in enumerate(text):
            if ch in "Xx":
                row |= 1 << j
            elif ch != ".":
                raise ParseError(f"invalid cell {ch!r}, expected 'X' or '.'", line=lineno, pos=j)
        rows.append(row)
    try:
        return FormalContext(tuple(objects), tuple(attributes), tuple(rows), title=title,
                             max_attributes=max_attributes)
    except CapacityError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _names_or_error(names: list[str], located: list[tuple[int, str]], kind: str) -> None:
    seen = set()
    for name, (lineno, _) in zip(names, located):
        if name in seen:
            raise ParseError(f"duplicate {kind} name {name!r}", line=lineno)
        if kind == "attribute" and not IDENT_RE.match(name):
            raise ParseError(f"attribute name {name!r} is not a valid identifier", line=lineno)
        seen.add(name)


def _parse_csv(source: str, max_attributes: int) -> FormalContext:
    reader = csv.reader(io.StringIO(source))
    records = [(n, [c.strip() for c in rec]) for n, rec in enumerate(reader, 1) if any(c.strip() for c in rec)]
    if not records:
        raise ParseError("empty CSV context", line=1)
    header_line, header = records[0]
    attributes = header[1:]
    _names_or_error(attributes, [(header_line, a) for a in attributes], "attribute")
    objects, rows = [], []
    seen = set()
    for lineno, rec in records[1:]:
        if len(rec) != len(header):
            raise ParseError(f"row has {len(rec)} fields, expected {len(header)}", line=lineno)
        name = rec[0]
        if not name:
            raise ParseError("empty object name", line=lineno)
        if name in seen:
            raise ParseError(f"duplicate object name {name!r}", line=lineno)
        seen.add(name)
        row = 0
        for j, cell in enumerate(rec[1:]):
            if cell == "1":
                row |= 1 << j
            elif cell != "0":
                raise ParseError(f"invalid cell {cell!r}, expected 1 or 0", line=lineno, pos=j + 1)
        objects.append(name)
        rows.append(row)
    try:
        return FormalContext(tuple(objects), tuple(attributes), tuple(rows),
                             max_attributes=max_attributes)
    except CapacityError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def detect_format(path: str | os.PathLike, text: str) -> str:
    suffix = Path(path).suffix.lower()
    if suffix == ".cxt":
        return "burmeister"
    if suffix == ".csv":
        return "csv"
    return "burmeister" if text.lstrip().startswith("B\n") or text.strip() == "B" else "csv"


def read_context(path: str | os.PathLike, format: str | None = None, **kwargs) -> FormalContext:
    text = Path(path).read_text()
    return parse_context(text, format or detect_format(path, text), **kwargs)


def to_burmeister(ctx: FormalContext) -> str:
    m = len(ctx.attributes)
    lines = ["B", ctx.title, str(len(ctx.objects)), str(m), ""]
    lines += ctx.objects
    lines += ctx.attributes
    lines += ["".join("X" if row >> j & 1 else "." for j in range(m)) for row in ctx.rows]
    return "\n".join(lines) + "\n"


def to_csv(ctx: FormalContext) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["", *ctx.attributes])
    for g, row in zip(ctx.objects, ctx.rows):
        writer.writerow([g, *("1" if row >> j & 1 else "0" for j in range(len(ctx.attributes)))])
    return out.getvalue()
