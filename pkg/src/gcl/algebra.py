"""Generalized attributes as Boolean functions over the attribute alphabet.

A generalized attribute is stored as its complete truth table: an integer
whose bit ``i`` is set when the function is true on assignment ``i``, where
attribute ``j`` of the alphabet supplies bit ``j`` of ``i``. Two attributes
are the same function exactly when their tables are equal, so the table is
the canonical form.

Expressions use ``+``/``|`` for disjunction, ``*``/``&`` (or juxtaposition
of parenthesized groups) for conjunction and ``~``/``!`` for negation:

>>> ab = Alphabet(("a", "b", "c"))
>>> f = ab.fn("a*~b + c")
>>> format_dnf(f)
'a*~b*~c + ~a*~b*c + a*~b*c + ~a*b*c + a*b*c'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from .errors import CapacityError, ParseError, UnknownNameError
from .masks import ExtentMask, iter_bits, popcount

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


# ---------------------------------------------------------------------------
# alphabet and truth functions


@dataclass(frozen=True)
class Alphabet:
    """The attribute names plus the minterms ruled out by intrinsic constraints.

    ``forbidden`` is a truth-table mask of assignments that cannot occur;
    every function over this alphabet is false on them and they do not count
    towards :attr:`rank`.
    """

    names: tuple[str, ...]
    forbidden: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate attribute names in {self.names}")
        if self.forbidden < 0 or self.forbidden >> self.size:
            raise ValueError("forbidden mask does not fit the alphabet")

    @property
    def width(self) -> int:
        return len(self.names)

    @property
    def size(self) -> int:
        """Number of total assignments, ``2**width``."""
        return 1 << len(self.names)

    @cached_property
    def full(self) -> int:
        return ((1 << self.size) - 1) & ~self.forbidden

    @property
    def rank(self) -> int:
        return self.size - popcount(self.forbidden)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: j for j, name in enumerate(self.names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownNameError(f"unknown attribute {name!r}") from None

    @cached_property
    def _var_tables(self) -> tuple[int, ...]:
        assignments = np.arange(self.size, dtype=np.int64)
        tables = []
        for j in range(self.width):
            column = ((assignments >> j) & 1).astype(bool)
            packed = np.packbits(column, bitorder="little").tobytes()
            tables.append(int.from_bytes(packed, "little") & self.full)
        return tuple(tables)

    def var(self, name: str) -> "AttrFn":
        return AttrFn(self, self._var_tables[self.index(name)])

    def literal(self, index: int, positive: bool = True) -> "AttrFn":
        table = self._var_tables[index]
        return AttrFn(self, table if positive else self.full & ~table)

    @property
    def zero(self) -> "AttrFn":
        return AttrFn(self, 0)

    @property
    def one(self) -> "AttrFn":
        return AttrFn(self, self.full)

    def minterm(self, i: int) -> "AttrFn":
        if not 0 <= i < self.size:
            raise ValueError(f"minterm {i} out of range")
        if self.forbidden >> i & 1:
            raise ValueError(f"minterm {i} is forbidden")
        return AttrFn(self, 1 << i)

    def allowed_minterms(self) -> list[int]:
        return list(iter_bits(self.full))

    def fn(self, text: str) -> "AttrFn":
        """Parse ``text`` and return its truth function."""
        return to_fn(parse_expr(text, self.names), self)

    def row(self, names: Iterable[str]) -> int:
        """Assignment index of the row where exactly ``names`` hold."""
        return sum(1 << self.index(n) for n in names)


@dataclass(frozen=True)
class AttrFn:
    """A truth function over an :class:`Alphabet`."""

    alphabet: Alphabet
    bits: int

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits & ~self.alphabet.full:
            raise ValueError("truth table has bits outside the allowed assignments")

    def _check(self, other: "AttrFn") -> None:
        if not isinstance(other, AttrFn):
            raise TypeError(f"expected AttrFn, got {type(other).__name__}")
        if other.alphabet != self.alphabet:
            raise ValueError(
                f"alphabet mismatch: {self.alphabet.names} vs {other.alphabet.names}"
            )

    def __and__(self, other: "AttrFn") -> "AttrFn":
        self._check(other)
        return AttrFn(self.alphabet, self.bits & other.bits)

    def __or__(self, other: "AttrFn") -> "AttrFn":
        self._check(other)
        return AttrFn(self.alphabet, self.bits | other.bits)

    def __invert__(self) -> "AttrFn":
        return AttrFn(self.alphabet, self.alphabet.full & ~self.bits)

    def __le__(self, other: "AttrFn") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other: "AttrFn") -> bool:
        return self <= other and self.bits != other.bits

    def __ge__(self, other: "AttrFn") -> bool:
        return other <= self

    def __gt__(self, other: "AttrFn") -> bool:
        return other < self

    def __call__(self, row: int | Iterable[str]) -> bool:
        return evaluate(self, row)

    @property
    def is_zero(self) -> bool:
        return self.bits == 0

    @property
    def is_one(self) -> bool:
        return self.bits == self.alphabet.full

    def minterms(self) -> list[int]:
        return list(iter_bits(self.bits))

    def __str__(self) -> str:
        return format_dnf(self)

    def __repr__(self) -> str:
        return f"AttrFn({format_dnf(self)!r})"


def conj(f: AttrFn, g: AttrFn) -> AttrFn:
    return f & g


def disj(f: AttrFn, g: AttrFn) -> AttrFn:
    return f | g


def neg(f: AttrFn) -> AttrFn:
    return ~f


def leq(f: AttrFn, g: AttrFn) -> bool:
    """The order on generalized attributes: ``f`` entails ``g``."""
    return f <= g


def product(fns: Iterable[AttrFn], alphabet: Alphabet) -> AttrFn:
    return reduce(conj, fns, alphabet.one)


def total(fns: Iterable[AttrFn], alphabet: Alphabet) -> AttrFn:
    return reduce(disj, fns, alphabet.zero)


def evaluate(fn: AttrFn, row: int | Iterable[str]) -> bool:
    """Truth value of ``fn`` on one assignment.

    ``row`` is either an assignment index or the collection of attribute
    names that hold.
    """
    if not isinstance(row, int):
        row = fn.alphabet.row(row)
    if not 0 <= row < fn.alphabet.size:
        raise ValueError(f"assignment {row} out of range")
    return bool(fn.bits >> row & 1)


# ---------------------------------------------------------------------------
# expression syntax


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Not:
    arg: "Expr"


@dataclass(frozen=True)
class And:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Or:
    left: "Expr"
    right: "Expr"


Expr = Union[Var, Const, Not, And, Or]

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<num>\d+)|(?P<op>[-+|*&~!()¬·]))"
)
_OPS = {
    "+": "or", "|": "or",
    "*": "and", "&": "and", "·": "and",
    "~": "not", "!": "not", "¬": "not",
    "(": "(", ")": ")",
}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.lastgroup is None or (m.lastgroup == "op" and m.group("op") == "-"):
            raise ParseError(f"unexpected character {text[pos]!r}", pos=pos)
        start = m.start(m.lastgroup)
        value = m.group(m.lastgroup)
        if m.lastgroup == "num":
            if value not in ("0", "1"):
                raise ParseError(f"only the constants 0 and 1 are allowed, got {value!r}", pos=start)
            tokens.append(("const", value, start))
        elif m.lastgroup == "ident":
            tokens.append(("ident", value, start))
        else:
            tokens.append((_OPS[value], value, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, names: Sequence[str] | None):
        self.tokens = _tokenize(text)
        self.i = 0
        self.names = None if names is None else set(names)

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def take(self, kind: str) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", pos=tok[2])
        self.i += 1
        return tok

    def parse(self) -> Expr:
        node = self.expr()
        self.take("end")
        return node

    def expr(self) -> Expr:
        node, _ = self.term()
        while self.peek() == "or":
            self.i += 1
            right, _ = self.term()
            node = Or(node, right)
        return node

    def term(self) -> tuple[Expr, bool]:
        node, grouped = self.factor()
        while True:
            kind = self.peek()
            if kind == "and":
                self.i += 1
            elif kind == "(" or (grouped and kind in ("ident", "const", "not")):
                pass  # juxtaposed parenthesized group
            else:
                return node, grouped
            right, grouped = self.factor()
            node = And(node, right)

    def factor(self) -> tuple[Expr, bool]:
        kind, value, pos = self.tokens[self.i]
        if kind == "not":
            self.i += 1
            arg, grouped = self.factor()
            return Not(arg), grouped
        if kind == "(":
            self.i += 1
            node = self.expr()
            self.take(")")
            return node, True
        if kind == "const":
            self.i += 1
            return Const(value == "1"), False
        if kind == "ident":
            self.i += 1
            if self.names is not None and value not in self.names:
                raise UnknownNameError(f"position {pos}: unknown attribute {value!r}")
            return Var(value), False
        what = "end of input" if kind == "end" else repr(value)
        raise ParseError(f"unexpected {what}", pos=pos)


def parse_expr(text: str, names: Sequence[str] | Alphabet | None = None) -> Expr:
    """Parse an attribute expression; ``not`` binds tighter than ``and``, ``and`` than ``or``.

    When ``names`` is given, every variable must be one of them.
    """
    if isinstance(names, Alphabet):
        names = names.names
    return _Parser(text, names).parse()


def to_fn(expr: Expr, alphabet: Alphabet) -> AttrFn:
    if isinstance(expr, Var):
        return alphabet.var(expr.name)
    if isinstance(expr, Const):
        return alphabet.one if expr.value else alphabet.zero
    if isinstance(expr, Not):
        return ~to_fn(expr.arg, alphabet)
    if isinstance(expr, And):
        return to_fn(expr.left, alphabet) & to_fn(expr.right, alphabet)
    if isinstance(expr, Or):
        return to_fn(expr.left, alphabet) | to_fn(expr.right, alphabet)
    raise TypeError(f"not an expression node: {expr!r}")


def format_expr(expr: Expr) -> str:
    """Render an AST so that :func:`parse_expr` gives back the same tree."""
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, Const):
        return "1" if expr.value else "0"
    if isinstance(expr, Not):
        inner = format_expr(expr.arg)
        return f"~({inner})" if isinstance(expr.arg, (And, Or)) else f"~{inner}"
    if isinstance(expr, And):
        left = format_expr(expr.left)
        right = format_expr(expr.right)
        if isinstance(expr.left, Or):
            left = f"({left})"
        if isinstance(expr.right, (Or, And)):
            right = f"({right})"
        return f"{left}*{right}"
    if isinstance(expr, Or):
        right = format_expr(expr.right)
        if isinstance(expr.right, Or):
            right = f"({right})"
        return f"{format_expr(expr.left)} + {right}"
    raise TypeError(f"not an expression node: {expr!r}")


def parse_constraints(text: str, alphabet: Alphabet) -> int:
    """Read a constraint declaration and return its forbidden-minterm mask.

    Each non-blank line not starting with ``#`` is an expression; every
    assignment on which it is true is declared impossible.
    """
    free = Alphabet(alphabet.names)
    forbidden = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            forbidden |= free.fn(line).bits
        except ParseError as exc:
            raise ParseError(str(exc), line=lineno) from None
    return forbidden


# ---------------------------------------------------------------------------
# normal forms and literal clauses

CONJUNCTION = "conjunction"
DISJUNCTION = "disjunction"


@dataclass(frozen=True)
class LiteralClause:
    """A conjunction or disjunction of signed attributes.

    ``literals`` holds ``(attribute index, positive)`` pairs sorted by index,
    at most one per attribute.
    """

    alphabet: Alphabet
    literals: tuple[tuple[int, bool], ...]
    mode: str

    def __post_init__(self) -> None:
        if self.mode not in (CONJUNCTION, DISJUNCTION):
            raise ValueError(f"unknown clause mode {self.mode!r}")
        lits = tuple(sorted(self.literals))
        indices = [j for j, _ in lits]
        if len(set(indices)) != len(indices):
            raise ValueError("an attribute may appear only once in a clause")
        object.__setattr__(self, "literals", lits)

    def __len__(self) -> int:
        return len(self.literals)

    def to_fn(self) -> AttrFn:
        fns = (self.alphabet.literal(j, pos) for j, pos in self.literals)
        if self.mode == CONJUNCTION:
            return product(fns, self.alphabet)
        return total(fns, self.alphabet)

    def _lit(self, j: int, positive: bool) -> str:
        return self.alphabet.names[j] if positive else "~" + self.alphabet.names[j]

    def __str__(self) -> str:
        parts = [self._lit(j, pos) for j, pos in self.literals]
        if self.mode == CONJUNCTION:
            return "*".join(parts) if parts else "1"
        return " + ".join(parts) if parts else "0"

    def sort_key(self) -> tuple:
        return (len(self.literals), tuple((j, not pos) for j, pos in self.literals))

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet, mode: str) -> "LiteralClause":
        """Read ``"a + ~b"`` or ``"a*~b"`` style clause text."""
        sep = "+" if mode == DISJUNCTION else "*"
        lits = []
        for part in text.split(sep):
            part = part.strip()
            positive = not part.startswith("~")
            lits.append((alphabet.index(part.lstrip("~").strip()), positive))
        return cls(alphabet, tuple(lits), mode)


def _minterm_clause(alphabet: Alphabet, i: int, mode: str) -> LiteralClause:
    if mode == CONJUNCTION:
        lits = tuple((j, bool(i >> j & 1)) for j in range(alphabet.width))
    else:
        lits = tuple((j, not i >> j & 1) for j in range(alphabet.width))
    return LiteralClause(alphabet, lits, mode)


def to_dnf(fn: AttrFn) -> list[LiteralClause]:
    """Full minterm expansion, ascending by minterm index."""
    return [_minterm_clause(fn.alphabet, i, CONJUNCTION) for i in iter_bits(fn.bits)]


def to_cnf(fn: AttrFn) -> list[LiteralClause]:
    """Full maxterm expansion over the allowed assignments where ``fn`` is false."""
    zeros = fn.alphabet.full & ~fn.bits
    return [_minterm_clause(fn.alphabet, i, DISJUNCTION) for i in iter_bits(zeros)]


def from_dnf(clauses: Iterable[LiteralClause], alphabet: Alphabet) -> AttrFn:
    return total((c.to_fn() for c in clauses), alphabet)


def from_cnf(clauses: Iterable[LiteralClause], alphabet: Alphabet) -> AttrFn:
    return product((c.to_fn() for c in clauses), alphabet)


def format_dnf(fn: AttrFn) -> str:
    terms = [str(c) for c in to_dnf(fn)]
    return " + ".join(terms) if terms else "0"


def format_cnf(fn: AttrFn) -> str:
    clauses = to_cnf(fn)
    if not clauses:
        return "1"
    return " * ".join(f"({c})" if len(c) > 1 else str(c) for c in clauses)


def format_clauses(clauses: Sequence[LiteralClause], mode: str) -> str:
    """Join clauses the way they combine: disjunctions by product, conjunctions by sum."""
    if not clauses:
        return "1" if mode == DISJUNCTION else "0"
    if mode == DISJUNCTION:
        return " * ".join(f"({c})" if len(c) > 1 else str(c) for c in clauses)
    return " + ".join(str(c) for c in clauses)


# ---------------------------------------------------------------------------
# irreducible clauses


def _literal_extents(signatures: Sequence[int], width: int) -> tuple[list[int], list[int]]:
    n = len(signatures)
    full = (1 << n) - 1
    pos = [0] * width
    for k, sig in enumerate(signatures):
        for j in range(width):
            if sig >> j & 1:
                pos[j] |= 1 << k
    return pos, [full ^ p for p in pos]


def clause_extent(clause: LiteralClause, signatures: Sequence[int]) -> int:
    """Class-level extent of ``clause`` as an integer mask over ``signatures``."""
    out = 0
    for k, sig in enumerate(signatures):
        hits = (bool(sig >> j & 1) == pos for j, pos in clause.literals)
        if (all(hits) if clause.mode == CONJUNCTION else any(hits)):
            out |= 1 << k
    return out


def irreducible_covers(quotient, target, mode: str = DISJUNCTION) -> list[LiteralClause]:
    """All irreducible clauses over the signed attributes whose extent is ``target``.

    A clause is irreducible when removing any one of its literals changes its
    extent. In disjunction mode the product of the returned clauses times the
    contextual truth gives the lower intent bound of ``target``; in
    conjunction mode their sum plus the contextual falsity gives the upper
    bound.

    Parameters
    ----------
    quotient : ContextQuotient
        Supplies the class signatures and the alphabet.
    target : ExtentMask or iterable of object names
        Must be a union of discernible classes.
    mode : {"disjunction", "conjunction"}

    Notes
    -----
    The search visits up to ``3**|M|`` literal combinations (pruned by extent
    monotonicity), so it is meant for small alphabets.
    """
    if mode not in (CONJUNCTION, DISJUNCTION):
        raise ValueError(f"unknown clause mode {mode!r}")
    if not isinstance(target, ExtentMask):
        target = quotient.mask_of(target)
    if target.width != quotient.n_F:
        raise ValueError(f"mask width {target.width} does not match n_F={quotient.n_F}")
    alphabet: Alphabet = quotient.alphabet
    width = alphabet.width
    if width > quotient.context.max_attributes:
        raise CapacityError(f"|M|={width} exceeds the attribute cap")
    pos_ext, neg_ext = _literal_extents([c.signature for c in quotient.classes], width)
    full = (1 << quotient.n_F) - 1
    goal = target.bits
    disjunctive = mode == DISJUNCTION

    def combine(acc: int, ext: int) -> int:
        return acc | ext if disjunctive else acc & ext

    def extent(lits: list[tuple[int, bool]]) -> int:
        acc = 0 if disjunctive else full
        for j, p in lits:
            acc = combine(acc, pos_ext[j] if p else neg_ext[j])
        return acc

    found: list[LiteralClause] = []

    def visit(j: int, lits: list[tuple[int, bool]], acc: int) -> None:
        if lits and acc == goal:
            if all(extent(lits[:i] + lits[i + 1:]) != goal for i in range(len(lits))):
                found.append(LiteralClause(alphabet, tuple(lits), mode))
            return  # any extension contains this clause and is reducible
        if j == width:
            return
        visit(j + 1, lits, acc)
        for p, ext in ((True, pos_ext[j]), (False, neg_ext[j])):
            nxt = combine(acc, ext)
            # disjunctions only grow and conjunctions only shrink
            if disjunctive and nxt & ~goal:
                continue
            if not disjunctive and goal & ~nxt:
                continue
            lits.append((j, p))
            visit(j + 1, lits, nxt)
            lits.pop()

    visit(0, [], 0 if disjunctive else full)
    found.sort(key=LiteralClause.sort_key)
    return found


def iter_functions(alphabet: Alphabet) -> Iterator[AttrFn]:
    """Every function over ``alphabet`` in ascending truth-table order."""
    allowed = alphabet.allowed_minterms()
    for code in range(1 << len(allowed)):
        bits = 0
        for t, i in enumerate(allowed):
            if code >> t & 1:
                bits |= 1 << i
        yield AttrFn(alphabet, bits)
