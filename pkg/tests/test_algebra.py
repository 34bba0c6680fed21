"""Chain operations, subuniverses and product matrices against
independent oracles."""

import itertools

import pytest

from manyval.algebra import (
    Kind, ProductMatrix, chain_embeddings, enumerate_mv_subchains,
    enumerate_subuniverses, ft_chain, generate_subuniverse, godel_chain,
    matrix, mv_chain,
)
from manyval.errors import InputError


def test_godel_implies_examples():
    c5 = godel_chain(5)
    assert c5.godel_implies(2, 4) == 4
    assert c5.godel_implies(4, 2) == 2
    assert godel_chain(3).godel_implies(2, 0) == 0


def test_godel_implies_residuation_law():
    for n in range(2, 9):
        c = godel_chain(n)
        for a, b in itertools.product(c.carrier, repeat=2):
            assert (c.godel_implies(a, b) == c.top) == (a <= b)
            assert c.meet(a, b) == min(a, b)
            assert c.join(a, b) == max(a, b)


def test_involution_examples_and_laws():
    assert godel_chain(5).involution(1) == 3
    assert godel_chain(3).involution(1) == 1
    assert godel_chain(4).involution(0) == 3
    for n in range(2, 9):
        c = godel_chain(n)
        vals = [c.involution(a) for a in c.carrier]
        assert sorted(vals) == list(c.carrier)            # bijection
        assert vals == sorted(vals, reverse=True)         # order reversing
        assert all(c.involution(c.involution(a)) == a for a in c.carrier)


def test_delta_examples():
    c5 = godel_chain(5)
    assert c5.delta(4) == 4
    assert c5.delta(3) == 0
    assert godel_chain(2).delta(1) == 1
    for n in range(2, 9):
        c = godel_chain(n)
        assert all(c.delta(a) in (0, c.top) for a in c.carrier)


def test_luk_implies_examples():
    c3 = mv_chain(3)
    assert c3.luk_implies(2, 1) == 1
    assert c3.luk_implies(1, 2) == 2
    assert mv_chain(4).luk_implies(3, 1) == 1
    # direct formula oracle
    for n in range(2, 8):
        c = mv_chain(n)
        for a, b in itertools.product(c.carrier, repeat=2):
            assert c.luk_implies(a, b) == min(c.top, c.top - a + b)


def test_ft_implies_examples():
    c5 = godel_chain(5)
    assert c5.ft_implies(1, 3) == 3
    assert c5.ft_implies(3, 1) == 0
    assert c5.ft_implies(0, 0) == 4


def test_index_range_errors():
    c = godel_chain(3)
    with pytest.raises(InputError):
        c.godel_implies(3, 0)
    with pytest.raises(InputError):
        c.involution(-1)


def _closure_oracle(chain, seeds):
    # independent fixpoint iteration straight from the operation tables
    current = set(seeds) | {0, chain.top}
    while True:
        new = set(current)
        for a in current:
            new |= {chain.involution(a), chain.delta(a), chain.godel_neg(a)}
            for b in current:
                new |= {chain.meet(a, b), chain.join(a, b),
                        chain.godel_implies(a, b)}
        if new == current:
            return tuple(sorted(current))
        current = new


def test_generate_subuniverse_examples():
    c5 = godel_chain(5)
    assert generate_subuniverse(c5, [1]).members == (0, 1, 3, 4)
    assert generate_subuniverse(c5, []).members == (0, 4)
    assert generate_subuniverse(c5, [2]).members == (0, 2, 4)


def test_generate_subuniverse_matches_oracle():
    for n in (3, 4, 5, 6, 7):
        c = godel_chain(n)
        for seeds in itertools.chain.from_iterable(
                itertools.combinations(c.carrier, k) for k in range(3)):
            assert generate_subuniverse(c, seeds).members == _closure_oracle(c, seeds)


def _symmetric_subsets_oracle(chain):
    # brute force over all subsets: symmetric, contains endpoints, closed
    out = []
    n = chain.size
    for bits in itertools.product([0, 1], repeat=n):
        members = {a for a in chain.carrier if bits[a]}
        if 0 not in members or chain.top not in members:
            continue
        if any(chain.involution(a) not in members for a in members):
            continue
        out.append(tuple(sorted(members)))
    return sorted(out, key=lambda m: (len(m), m))


def test_enumerate_subuniverses_counts_and_oracle():
    assert len(enumerate_subuniverses(godel_chain(5))) == 4
    assert [s.size for s in enumerate_subuniverses(godel_chain(5))] == [2, 3, 4, 5]
    assert len(enumerate_subuniverses(godel_chain(2))) == 1
    assert len(enumerate_subuniverses(godel_chain(7))) == 8
    for n in (2, 3, 4, 5, 6, 7):
        c = godel_chain(n)
        got = [s.members for s in enumerate_subuniverses(c)]
        assert got == _symmetric_subsets_oracle(c)
        # closure idempotence: each member set is its own closure
        for s in enumerate_subuniverses(c):
            assert generate_subuniverse(c, s.members).members == s.members


def test_enumerate_subuniverses_wrong_kind():
    with pytest.raises(InputError):
        enumerate_subuniverses(mv_chain(4))


def test_enumerate_mv_subchains():
    assert [c.size for c in enumerate_mv_subchains(4)] == [2, 3, 5]
    assert [c.size for c in enumerate_mv_subchains(1)] == [2]
    assert [c.size for c in enumerate_mv_subchains(15)] == [2, 4, 6, 16]
    with pytest.raises(InputError):
        enumerate_mv_subchains(0)


def test_product_matrix_designation_and_normalization():
    m = matrix((godel_chain(3), 1), (godel_chain(4), 1))
    assert m.designated((1, 2))
    assert not m.designated((0, 2))
    norm = m.normalized()
    assert [c.size for c, _ in norm.components] == [4, 3]
    assert norm.is_catalog_normalized()
    assert str(norm) == "GV4~[>=1]xGV3~[>=1]"
    with pytest.raises(InputError):
        matrix((godel_chain(3), 3))
    with pytest.raises(InputError):
        ProductMatrix(())


def test_chain_serialization_forms():
    assert str(godel_chain(5)) == "GV5~"
    assert str(mv_chain(4)) == "LV4"
    assert str(ft_chain(5)) == "FT5"
    assert str(matrix((godel_chain(5), 2))) == "GV5~[>=2]"
    assert str(matrix((mv_chain(4), 1))) == "LV4[>=1]"


def test_chain_embeddings_basics():
    # fixpoints block odd-into-even embeddings
    assert chain_embeddings(godel_chain(3), godel_chain(4)) == ()
    maps = chain_embeddings(godel_chain(3), godel_chain(5))
    assert maps == ((0, 2, 4),)
    # MV embeddings exist exactly for divisor chains and are equal-spaced
    assert chain_embeddings(mv_chain(3), mv_chain(5)) == ((0, 2, 4),)
    assert chain_embeddings(mv_chain(3), mv_chain(4)) == ()
    assert chain_embeddings(mv_chain(4), mv_chain(16)) == ((0, 5, 10, 15),)
    # kinds never mix
    assert chain_embeddings(godel_chain(3), mv_chain(5)) == ()


def test_godel_embeddings_preserve_all_ops():
    sub, sup = godel_chain(4), godel_chain(6)
    maps = chain_embeddings(sub, sup)
    assert maps == ((0, 1, 4, 5), (0, 2, 3, 5))
    for h in maps:
        for a, b in itertools.product(sub.carrier, repeat=2):
            assert h[sub.godel_implies(a, b)] == sup.godel_implies(h[a], h[b])
            assert h[sub.meet(a, b)] == sup.meet(h[a], h[b])
        for a in sub.carrier:
            assert h[sub.involution(a)] == sup.involution(h[a])
            assert h[sub.delta(a)] == sup.delta(h[a])
