import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gcl.algebra import (
    CONJUNCTION,
    DISJUNCTION,
    Alphabet,
    And,
    AttrFn,
    Const,
    LiteralClause,
    Not,
    Or,
    Var,
    clause_extent,
    format_clauses,
    format_cnf,
    format_dnf,
    format_expr,
    from_cnf,
    from_dnf,
    irreducible_covers,
    leq,
    parse_constraints,
    parse_expr,
    to_cnf,
    to_dnf,
    to_fn,
)
from gcl.context import quotient
from gcl.errors import ParseError, UnknownNameError
from gcl.masks import ExtentMask

from conftest import small_contexts

ABC = Alphabet(("a", "b", "c"))


@pytest.mark.parametrize(
    "text, tree",
    [
        ("a", Var("a")),
        ("~a", Not(Var("a"))),
        ("a + b*c", Or(Var("a"), And(Var("b"), Var("c")))),
        ("a*b + c", Or(And(Var("a"), Var("b")), Var("c"))),
        ("~a*b", And(Not(Var("a")), Var("b"))),
        ("~(a + b)", Not(Or(Var("a"), Var("b")))),
        ("(a + b)(b + c)", And(Or(Var("a"), Var("b")), Or(Var("b"), Var("c")))),
        ("(a + b)c", And(Or(Var("a"), Var("b")), Var("c"))),
        ("a(b + c)", And(Var("a"), Or(Var("b"), Var("c")))),
        ("¬a · b", And(Not(Var("a")), Var("b"))),
        ("a | b & !c", Or(Var("a"), And(Var("b"), Not(Var("c"))))),
        ("1 + 0", Or(Const(True), Const(False))),
    ],
)
def test_parse_expr(text, tree):
    assert parse_expr(text) == tree


@pytest.mark.parametrize("text", ["", "a +", "(a", "a b", "a)", "2", "a - b", "a $ b"])
def test_parse_expr_errors(text):
    with pytest.raises(ParseError):
        parse_expr(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_expr("a + * b")
    assert info.value.pos == 4


def test_unknown_name():
    with pytest.raises(UnknownNameError):
        ABC.fn("a + z")


def _eval(expr, env):
    # direct recursive evaluation, independent of the truth-table code
    if isinstance(expr, Var):
        return env[expr.name]
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, Not):
        return not _eval(expr.arg, env)
    if isinstance(expr, And):
        return _eval(expr.left, env) and _eval(expr.right, env)
    return _eval(expr.left, env) or _eval(expr.right, env)


exprs = st.recursive(
    st.one_of(st.sampled_from([Var("a"), Var("b"), Var("c")]), st.builds(Const, st.booleans())),
    lambda sub: st.one_of(
        st.builds(Not, sub), st.builds(And, sub, sub), st.builds(Or, sub, sub)
    ),
    max_leaves=12,
)


@settings(max_examples=200, deadline=None)
@given(exprs)
def test_truth_table_matches_direct_evaluation(expr):
    fn = to_fn(expr, ABC)
    for row in range(8):
        env = {n: bool(row >> j & 1) for j, n in enumerate(ABC.names)}
        assert fn(row) == _eval(expr, env)


@settings(max_examples=200, deadline=None)
@given(exprs)
def test_format_expr_roundtrip(expr):
    assert parse_expr(format_expr(expr)) == expr


@settings(max_examples=200, deadline=None)
@given(exprs, exprs)
def test_homomorphism(x, y):
    fx, fy = to_fn(x, ABC), to_fn(y, ABC)
    assert to_fn(And(x, y), ABC) == fx & fy
    assert to_fn(Or(x, y), ABC) == fx | fy
    assert to_fn(Not(x), ABC) == ~fx


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 255))
def test_normal_form_roundtrip(bits):
    fn = AttrFn(ABC, bits)
    assert from_dnf(to_dnf(fn), ABC) == fn
    assert from_cnf(to_cnf(fn), ABC) == fn
    assert ABC.fn(format_dnf(fn)) == fn
    assert ABC.fn(format_cnf(fn)) == fn


def test_normal_form_text():
    fn = ABC.fn("a*~b")
    assert format_dnf(fn) == "a*~b*~c + a*~b*c"
    assert format_dnf(ABC.zero) == "0"
    assert format_cnf(ABC.one) == "1"
    assert len(to_cnf(fn)) == 6


def test_variable_truth_tables():
    # bit i of a variable's table is bit j of the assignment index
    assert ABC.var("a").bits == 0b10101010
    assert ABC.var("b").bits == 0b11001100
    assert ABC.var("c").bits == 0b11110000
    assert ABC.row({"a", "c"}) == 5
    assert ABC.var("a")({"a"}) and not ABC.var("b")({"a"})


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 255), st.integers(0, 255), st.integers(0, 255))
def test_leq_is_boolean_order(x, y, z):
    f, g, h = AttrFn(ABC, x), AttrFn(ABC, y), AttrFn(ABC, z)
    assert leq(f, f)
    assert leq(f, g) == (f & g == f) == (f | g == g)
    if leq(f, g) and leq(g, f):
        assert f == g
    if leq(f, g) and leq(g, h):
        assert leq(f, h)
    assert leq(ABC.zero, f) and leq(f, ABC.one)


def test_forbidden_minterms():
    ab = Alphabet(("a", "b"), forbidden=parse_constraints("a*b  # never both\n", Alphabet(("a", "b"))))
    assert ab.forbidden == 0b1000
    assert ab.rank == 3
    assert ab.fn("a*b").is_zero
    assert ab.fn("a + b").bits == 0b0110
    assert (~ab.var("a")).bits == 0b0101
    with pytest.raises(ValueError):
        AttrFn(ab, 0b1000)


def test_constraint_error_line():
    with pytest.raises(ParseError) as info:
        parse_constraints("a\n\na +\n", ABC)
    assert info.value.line == 3


def test_alphabet_mismatch():
    with pytest.raises(ValueError):
        ABC.var("a") & Alphabet(("a", "b")).var("a")


def test_literal_clause_text():
    c = LiteralClause.parse("~c + a", ABC, DISJUNCTION)
    assert str(c) == "a + ~c"
    assert c.to_fn() == ABC.fn("a + ~c")
    k = LiteralClause.parse("b*~a", ABC, CONJUNCTION)
    assert str(k) == "~a*b"
    assert format_clauses([c, k], DISJUNCTION) == "(a + ~c) * (~a*b)"
    assert format_clauses([], DISJUNCTION) == "1"
    assert format_clauses([], CONJUNCTION) == "0"
    with pytest.raises(ValueError):
        LiteralClause(ABC, ((0, True), (0, False)), DISJUNCTION)


def _brute_force_covers(ctx, target_objects, mode):
    """Every clause, object-level extents by row evaluation, irreducibility by definition."""
    width = len(ctx.attributes)

    def holds(lits, row):
        hits = [bool(row >> j & 1) == p for j, p in lits]
        return all(hits) if mode == CONJUNCTION else any(hits)

    def extent(lits):
        return frozenset(g for g, row in zip(ctx.objects, ctx.rows) if holds(lits, row))

    out = set()
    for signs in itertools.product((None, True, False), repeat=width):
        lits = [(j, p) for j, p in enumerate(signs) if p is not None]
        if not lits or extent(lits) != target_objects:
            continue
        if all(extent(lits[:i] + lits[i + 1:]) != target_objects for i in range(len(lits))):
            out.add(tuple(lits))
    return out


@settings(max_examples=60, deadline=None)
@given(small_contexts(max_attrs=4, max_objects=6), st.data())
def test_irreducible_covers_match_brute_force(c, data):
    q = quotient(c)
    bits = data.draw(st.integers(0, (1 << q.n_F) - 1))
    mask = ExtentMask(bits, q.n_F)
    target = q.objects_of(mask)
    for mode in (DISJUNCTION, CONJUNCTION):
        got = {cl.literals for cl in irreducible_covers(q, mask, mode)}
        assert got == _brute_force_covers(c, target, mode)


def test_irreducible_covers_accept_object_names(lat):
    q = lat.quotient
    by_names = irreducible_covers(q, {"2"}, CONJUNCTION)
    assert by_names == irreducible_covers(q, ExtentMask.from_string("01000"), CONJUNCTION)
    with pytest.raises(ValueError):
        irreducible_covers(q, {"3"})  # splits the class {3,4}


def test_listed_g_cover_contains_two_reducible_clauses(lat):
    from test_acceptance import LISTED_G_PLUS

    ab = lat.alphabet
    q = lat.quotient
    full = (1 << q.n_F) - 1
    sigs = [c.signature for c in q.classes]
    listed = [LiteralClause.parse(t, ab, DISJUNCTION) for t in LISTED_G_PLUS]
    assert all(clause_extent(c, sigs) == full for c in listed)
    computed = {c.literals for c in irreducible_covers(q, lat.top, DISJUNCTION)}
    assert computed < {c.literals for c in listed}
    # each extra clause keeps extent G after dropping the b literal
    for text, shorter in (("b + c + ~d", "c + ~d"), ("b + ~d + e", "~d + e")):
        assert LiteralClause.parse(text, ab, DISJUNCTION).literals not in computed
        assert clause_extent(LiteralClause.parse(shorter, ab, DISJUNCTION), sigs) == full
