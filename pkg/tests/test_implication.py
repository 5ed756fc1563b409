import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import gcl
from gcl.algebra import AttrFn
from gcl.errors import ParseError
from gcl.implication import (
    RII,
    RPII,
    T1,
    T2,
    TT,
    allowable,
    check_rule,
    check_rules,
    closure,
    equivalent,
    fcl_implication,
    informative_class,
    parse_rule,
    rsl_implication,
)

from conftest import small_contexts


def _objects(ctx, mu):
    return {g for g, row in zip(ctx.objects, ctx.rows) if mu(row)}


def test_examples(lat, ab):
    v = allowable(lat, ab.fn("c"), ab.fn("a"))
    assert v.allowed and v.t_class == T2 and v.informative_class == RII

    v = allowable(lat, ab.fn("~e"), ab.fn("a + ~b*~d"))
    assert v.allowed and v.t_class == T2

    for x, y in (("d", "a*c*e"), ("b + c*d", "e")):
        for lhs, rhs in ((x, y), (y, x)):
            v = allowable(lat, ab.fn(lhs), ab.fn(rhs))
            assert v.allowed and v.t_class == T1
        assert equivalent(lat, ab.fn(x), ab.fn(y))

    for lhs, rhs in (("c", "e"), ("e", "c")):
        v = allowable(lat, ab.fn(lhs), ab.fn(rhs))
        assert not v.allowed
        assert v.witness == lat.class_minterms[v.witness_class]
        assert ab.fn(lhs)(v.witness) and not ab.fn(rhs)(v.witness)


def test_refutation_witness_is_first_class(lat, ab):
    v = allowable(lat, ab.fn("c"), ab.fn("e"))
    assert v.witness_class == 1
    assert lat.quotient.classes[1].members == ("2",)


def test_informative_classes(ab):
    assert informative_class(ab.fn("a*b"), ab.fn("a")) == TT
    assert informative_class(ab.fn("a"), ab.fn("a*b")) == RPII
    assert informative_class(ab.fn("c"), ab.fn("a")) == RII


def test_closures(lat, ab):
    c = ab.fn("c")
    assert closure(lat, c) == ab.fn("a*~b*c*(d*e + ~d*~e)")
    assert closure(lat, c, upper=True) == c | lat.zero_rho


def test_classical_readings(lat):
    assert fcl_implication(lat, {"d"}, {"a", "c", "e"}).allowed
    assert not fcl_implication(lat, {"a"}, {"c"}).allowed
    assert rsl_implication(lat, {"d"}, {"c"}).allowed
    assert not rsl_implication(lat, {"a", "b"}, {"c"}).allowed


def test_parse_rule():
    assert parse_rule(" a*b -> c ") == ("a*b", "c", False)
    assert parse_rule("a <-> ~b") == ("a", "~b", True)
    for bad in ("a", "a -> b -> c", "-> b", "a <->"):
        with pytest.raises(ParseError):
            parse_rule(bad)


def test_check_rules_batch(lat):
    text = "# header\nc -> a\n\nc -> e\nb + c*d <-> e\nc <-> a   # T2 only\n"
    results = check_rules(lat, text)
    assert [r.holds for r in results] == [True, False, True, False]
    assert results[2].backward.t_class == T1
    with pytest.raises(ParseError) as info:
        check_rules(lat, "c -> a\nc ->\n")
    assert info.value.line == 2


def test_check_rule_unknown_attribute(lat):
    with pytest.raises(ValueError):
        check_rule(lat, "z -> a")


pairs = st.tuples(small_contexts(max_attrs=3, max_objects=6), st.integers(0, 255), st.integers(0, 255))


@settings(max_examples=200, deadline=None)
@given(pairs)
def test_master_formula(case):
    c, x, y = case
    g = gcl.build(c)
    full = g.alphabet.full
    mu1, mu2 = AttrFn(g.alphabet, x & full), AttrFn(g.alphabet, y & full)
    v = allowable(g, mu1, mu2)
    # ground truth from rows
    o1, o2 = _objects(c, mu1), _objects(c, mu2)
    assert v.allowed == (o1 <= o2)
    assert v.allowed == (g.coclosure(mu1) <= g.coclosure(mu2))
    if v.allowed:
        assert v.t_class == (T1 if o1 == o2 else T2)
        assert (v.informative_class == TT) == (mu1 <= mu2)
        if v.informative_class == RPII:
            assert mu2 < mu1
        # decomposition through the product
        meet = mu1 & mu2
        assert allowable(g, mu1, meet).allowed and meet <= mu1
        if v.informative_class != TT:
            assert meet < mu1
    else:
        assert v.witness in g.class_minterms
        assert mu1(v.witness) and not mu2(v.witness)
    if mu1 <= mu2:
        assert v.allowed
