"""Term builders, translations and characterizers, checked exhaustively
against the operation tables they claim to compute."""

import itertools
import random

import pytest

from conftest import random_ft, random_godel
from manyval.algebra import ft_chain, godel_chain, mv_chain
from manyval.entail import evaluate, value_vector
from manyval.errors import InputError
from manyval.formula import Delta, Iff, Inv, TableApp, Var, parse
from manyval.terms import (
    axiom_builders, consistency_godel, consistency_luk, delta_set_translation,
    discriminator_term, find_single_value_characterizer, ft_hash, ft_star,
    ft_term, godel_from_mv_terms, luk3_term, luk4_term,
    single_value_characterizer, star_translation, tilde_imp, tilde_table_conn,
    tuple_characterizer,
)

X, Y, Z = Var("x"), Var("y"), Var("z")


def test_luk3_term_table():
    c3 = godel_chain(3)
    for a, b in itertools.product(c3.carrier, repeat=2):
        assert evaluate(luk3_term(X, Y), c3, {"x": a, "y": b}) == c3.luk_implies(a, b)
    assert evaluate(luk3_term(X, Y), c3, {"x": 1, "y": 1}) == c3.top


def test_luk3_term_diverges_on_5_chain():
    # outside the 3-chain the term and the Lukasiewicz table part ways:
    # at (3/4, 1/4) the term evaluates to 1/4 while the table gives 1/2
    c5 = godel_chain(5)
    assert evaluate(luk3_term(X, Y), c5, {"x": 3, "y": 1}) == 1
    assert c5.luk_implies(3, 1) == 2


def test_luk4_term_table():
    c4 = godel_chain(4)
    for a, b in itertools.product(c4.carrier, repeat=2):
        assert evaluate(luk4_term(X, Y), c4, {"x": a, "y": b}) == c4.luk_implies(a, b)
    assert evaluate(luk4_term(X, Y), c4, {"x": 0, "y": 2}) == c4.top
    assert evaluate(luk4_term(X, Y), c4, {"x": 3, "y": 0}) == 0


def test_godel_from_mv_terms():
    imp_t, neg_t = godel_from_mv_terms(X, Y)
    for n in range(2, 8):
        c = mv_chain(n + 1)
        for a, b in itertools.product(c.carrier, repeat=2):
            assert evaluate(imp_t, c, {"x": a, "y": b}) == c.godel_implies(a, b)
        for a in c.carrier:
            assert evaluate(neg_t, c, {"x": a, "y": 0}) == c.godel_neg(a)
    c3 = mv_chain(3)
    assert evaluate(imp_t, c3, {"x": 2, "y": 1}) == 1 == c3.godel_implies(2, 1)
    assert evaluate(neg_t, c3, {"x": 0, "y": 0}) == c3.top


def test_discriminator_term():
    t = discriminator_term(X, Y, Z)
    for n in range(3, 9):
        c = godel_chain(n)
        for a, b, d in itertools.product(c.carrier, repeat=3):
            expected = d if a == b else a
            assert evaluate(t, c, {"x": a, "y": b, "z": d}) == expected


def test_ft_term_matches_table():
    for n in range(3, 7):
        c = godel_chain(n)
        for a, b in itertools.product(c.carrier, repeat=2):
            assert evaluate(ft_term(X, Y), c, {"x": a, "y": b}) == c.ft_implies(a, b)


def test_star_value_laws_exhaustive():
    p = Var("p")
    for m in range(2, 10):
        c = godel_chain(m)
        for v in c.carrier:
            s1 = evaluate(star_translation(1, p), c, {"p": v})
            s2 = evaluate(star_translation(2, p), c, {"p": v})
            s3 = evaluate(star_translation(3, p), c, {"p": v})
            assert (2 * v > c.top) == (s1 == c.top)
            assert (2 * v >= c.top) == (s2 == c.top)
            assert (v > 0) == (s3 == c.top)


def test_star_examples():
    c3 = godel_chain(3)
    p = Var("p")
    assert evaluate(star_translation(1, p), c3, {"p": 1}) == 0
    assert evaluate(star_translation(2, p), c3, {"p": 1}) == c3.top
    assert evaluate(star_translation(3, parse("0")), c3, {}) == 0
    with pytest.raises(InputError):
        star_translation(4, p)


def test_delta_set_translation():
    assert delta_set_translation([]) == []
    p, q = Var("p"), Var("q")
    assert delta_set_translation([p]) == [Delta(p)]
    assert delta_set_translation([p, q]) == [Delta(p), Delta(q)]


def test_ft_star_examples():
    p = Var("p")
    assert ft_star(p) == p
    assert str(ft_star(parse("p =>F q"))) == "D(p -> q) & (~p | q)"
    assert str(ft_hash(parse("0"))) == "0"


def test_ft_round_trip_hash_then_star():
    # phi^{#*} is semantically phi on the involutive Godel chains
    rng = random.Random(5)
    names = ["p", "q"]
    for _ in range(80):
        f = random_godel(rng, depth=3, names=names)
        g = ft_star(ft_hash(f))
        for n in (3, 4, 5):
            c = godel_chain(n)
            assert value_vector(f, c, names) == value_vector(g, c, names)


def test_ft_round_trip_star_then_hash():
    # psi^{*#} is semantically psi on the FT chains
    rng = random.Random(6)
    names = ["p", "q"]
    for _ in range(80):
        f = random_ft(rng, depth=3, names=names)
        g = ft_hash(ft_star(f))
        for n in (3, 4, 5):
            c = ft_chain(n)
            assert value_vector(f, c, names) == value_vector(g, c, names)


def test_tuple_characterizer():
    for n in (2, 3, 4, 5):
        c = godel_chain(n)
        phi = tuple_characterizer(n)
        names = [f"p{i}" for i in range(n)]
        for t in itertools.product(c.carrier, repeat=n):
            v = evaluate(phi, c, dict(zip(names, t)))
            expected = c.top if t == tuple(range(n)) else 0
            assert v == expected, (n, t, v)


def test_single_value_characterizers():
    for n in (3, 4, 5):
        c = godel_chain(n)
        for a in range(1, n):
            f = single_value_characterizer(n, a)
            got = value_vector(f, c, ["p"])
            assert got == tuple(c.top if v == a else 0 for v in c.carrier)
    # the paper's fixpoint formula is used verbatim
    assert single_value_characterizer(5, 2) == Delta(Iff(Var("p"), Inv(Var("p"))))
    assert value_vector(single_value_characterizer(3, 2), godel_chain(3), ["p"]) \
        == (0, 0, 2)


def test_single_value_characterizer_fails_beyond_five():
    with pytest.raises(InputError):
        single_value_characterizer(6, 1)
    # bounded negative synthesis: nothing up to depth 5 on the 6-chain
    assert find_single_value_characterizer(6, 1, depth=5) is None
    assert find_single_value_characterizer(6, 2, depth=5) is None


def test_tilde_table_conn():
    conn = tilde_table_conn(4, 2)
    c = mv_chain(5)
    table = conn.table_for(5)
    assert table == (4, 4, 0, 0, 0)
    assert evaluate(TableApp(conn, Var("p")), c, {"p": 0}) == 4
    assert evaluate(TableApp(conn, Var("p")), c, {"p": 2}) == 0
    top_only = tilde_table_conn(4, 4).table_for(5)
    assert top_only == (4, 4, 4, 4, 0)
    # restriction to a divisor subchain keeps the rational threshold
    assert tilde_table_conn(4, 2).table_for(3) == (2, 0, 0)
    imp = tilde_imp(4, 2, Var("x"), Var("y"))
    assert evaluate(imp, c, {"x": 1, "y": 0}) == 4
    assert evaluate(imp, c, {"x": 3, "y": 1}) == 1


def test_axiom_builders():
    from manyval.entail import check_valid
    from manyval.algebra import matrix

    schemas = axiom_builders()
    gv3 = matrix((godel_chain(3), 2))
    gv4 = matrix((godel_chain(4), 3))
    assert check_valid(gv3, schemas["A_G3"].instance()).holds
    assert not check_valid(matrix((godel_chain(4), 3)),
                           schemas["A_G3"].instance()).holds
    assert check_valid(gv4, schemas["NFP"].instance()).holds
    assert not check_valid(gv3, schemas["NFP"].instance()).holds
    for name in ("A1", "A2", "A3", "A4a", "A4b", "A5", "A6", "A7",
                 "INV1", "INV2", "INV3", "DELTA1", "DELTA2", "DELTA5"):
        for n in (2, 3, 4, 5, 6):
            m = matrix((godel_chain(n), n - 1))
            assert check_valid(m, schemas[name].instance()).holds, (name, n)
    with pytest.raises(InputError):
        schemas["A6"](Var("p"), Var("q"))


def test_consistency_ops():
    c5 = godel_chain(5)
    p = Var("p")
    circ = consistency_godel(p)
    assert evaluate(circ, c5, {"p": 4}) == 4
    assert evaluate(circ, c5, {"p": 2}) == 0
    assert evaluate(circ, c5, {"p": 0}) == 4
    luk = consistency_luk(2, 1, p)
    c3 = mv_chain(3)
    assert evaluate(luk, c3, {"p": 1}) == 0      # min(x,~x) = 1/2 >= 1/2
    assert evaluate(luk, c3, {"p": 2}) == 2      # consistent value
