"""Parser, printer and derived-connective expansion."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_godel
from manyval.algebra import godel_chain
from manyval.entail import value_vector
from manyval.errors import ParseError
from manyval.formula import (
    And, Bot, Delta, FTImp, GImp, GNeg, Iff, Inv, LukImp, Or, TableApp, Top,
    Var, expand_derived, parse, parse_formula_set, print_formula, subst,
    variables,
)
from manyval.terms import tilde_table_conn


def test_parse_examples():
    assert parse("~p -> q") == GImp(Inv(Var("p")), Var("q"))
    assert parse("D(p <-> ~p)") == Delta(Iff(Var("p"), Inv(Var("p"))))
    assert parse("!(p & 0)") == GNeg(And(Var("p"), Bot()))


def test_parse_precedence_and_associativity():
    p, q, r = Var("p"), Var("q"), Var("r")
    assert parse("p & q | r") == Or(And(p, q), r)
    assert parse("p | q -> r") == GImp(Or(p, q), r)
    assert parse("p -> q -> r") == GImp(p, GImp(q, r))
    assert parse("p =>L q -> r") == LukImp(p, GImp(q, r))
    assert parse("p <-> q <-> r") == Iff(Iff(p, q), r)
    assert parse("~p & q") == And(Inv(p), q)
    assert parse("D p & q") == And(Delta(p), q)
    assert parse("p =>F q") == FTImp(p, q)
    assert parse("1 -> 0") == GImp(Top(), Bot())


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as err:
        parse("p & ")
    assert err.value.position == 4
    with pytest.raises(ParseError) as err:
        parse("p $ q")
    assert err.value.position == 2
    with pytest.raises(ParseError) as err:
        parse("(p & q")
    assert err.value.position >= 6


def test_parse_formula_set():
    assert parse_formula_set("") == []
    assert parse_formula_set("p, q & r") == [Var("p"), And(Var("q"), Var("r"))]


def test_table_connective_round_trip():
    conn = tilde_table_conn(4, 2)
    f = TableApp(conn, And(Var("p"), Var("q")))
    text = print_formula(f)
    assert text == "inv2_4(p & q)"
    assert parse(text, connectives={conn.name: conn}) == f


def test_round_trip_seeded():
    rng = random.Random(7)
    for _ in range(300):
        f = random_godel(rng, depth=4, names=["p", "q", "r"])
        assert parse(print_formula(f)) == f


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_round_trip_hypothesis(data):
    names = ["p", "q", "r"]
    leaf = st.one_of(
        st.sampled_from([Var(n) for n in names]),
        st.just(Bot()), st.just(Top()))
    formulas = st.recursive(
        leaf,
        lambda sub: st.one_of(
            st.tuples(sub, sub).map(lambda ab: And(*ab)),
            st.tuples(sub, sub).map(lambda ab: Or(*ab)),
            st.tuples(sub, sub).map(lambda ab: GImp(*ab)),
            st.tuples(sub, sub).map(lambda ab: LukImp(*ab)),
            st.tuples(sub, sub).map(lambda ab: FTImp(*ab)),
            st.tuples(sub, sub).map(lambda ab: Iff(*ab)),
            sub.map(Inv), sub.map(GNeg), sub.map(Delta)),
        max_leaves=25)
    f = data.draw(formulas)
    assert parse(print_formula(f)) == f


def test_expand_derived_examples():
    p = Var("p")
    assert expand_derived(GNeg(p)) == GImp(p, Bot())
    assert expand_derived(Delta(p)) == GImp(Inv(p), Bot())
    assert expand_derived(Top()) == GImp(Bot(), Bot())


def test_expand_derived_reaches_core():
    rng = random.Random(3)
    core = (Var, Bot, And, GImp, Inv)
    for _ in range(200):
        f = random_godel(rng, depth=4)
        g = expand_derived(f)
        stack, seen = [g], set()
        while stack:
            node = stack.pop()
            if id(node) in seen:
                continue
            seen.add(id(node))
            assert isinstance(node, core), node
            for attr in ("left", "right", "arg"):
                child = getattr(node, attr, None)
                if child is not None:
                    stack.append(child)


def test_expand_derived_preserves_value():
    rng = random.Random(11)
    names = ["p", "q"]
    for _ in range(200):
        f = random_godel(rng, depth=4, names=names)
        g = expand_derived(f)
        for n in (2, 3, 4, 5):
            chain = godel_chain(n)
            assert value_vector(f, chain, names) == value_vector(g, chain, names)


def test_expand_derived_preserves_value_exhaustive_small():
    # every depth<=2 one-variable formula over the full godel signature
    names = ["p"]
    leafs = [Var("p"), Bot(), Top()]
    layer1 = leafs + [u(a) for u in (Inv, GNeg, Delta) for a in leafs] + \
        [b(a, c) for b in (And, Or, GImp, Iff) for a in leafs for c in leafs]
    for f in layer1:
        g = expand_derived(f)
        for n in (2, 3, 4, 5):
            chain = godel_chain(n)
            assert value_vector(f, chain, names) == value_vector(g, chain, names)


def test_variables_and_subst():
    f = parse("p & (q -> ~p)")
    assert variables(f) == {"p", "q"}
    g = subst(f, {"p": Var("x")})
    assert variables(g) == {"x", "q"}
    assert print_formula(g) == "x & (q -> ~x)"
