"""Derived-connective term builders, signature translations and
value characterizers.

Everything here returns plain formulas; the semantic claims each builder
makes (a term computing a truth table, a translation preserving
designation) are verified exhaustively by the test suite rather than
trusted structurally.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .algebra import ChainAlgebra, godel_chain
from .errors import InputError
from .formula import (
    And, Bot, Delta, Formula, FTImp, GImp, GNeg, Iff, Inv, LukImp, Or,
    TableApp, TableConn, Top, Var, expand_derived, variables,
)


def conj(fs: Sequence[Formula]) -> Formula:
    """Right-folded conjunction; the empty conjunction is top."""
    if not fs:
        return Top()
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = And(f, out)
    return out


def disj(fs: Sequence[Formula]) -> Formula:
    """Right-folded disjunction; the empty disjunction is bottom."""
    if not fs:
        return Bot()
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = Or(f, out)
    return out


# -- Lukasiewicz implication as a Godel-side term ----------------------------

def luk3_term(x: Formula, y: Formula) -> Formula:
    """(x -> y) | (~x | y): the 3-valued Lukasiewicz implication on GV3~."""
    return Or(GImp(x, y), Or(Inv(x), y))


def luk4_term(x: Formula, y: Formula) -> Formula:
    """~x | [D(~x -> x) & ~D x & !!y & x] | (x -> y): the 4-valued
    Lukasiewicz implication on GV4~ (middle disjunct is the four-way
    conjunction)."""
    middle = And(Delta(GImp(Inv(x), x)),
                 And(Inv(Delta(x)), And(GNeg(GNeg(y)), x)))
    return Or(Inv(x), Or(middle, GImp(x, y)))


def godel_from_mv_terms(x: Formula, y: Formula) -> tuple[Formula, Formula]:
    """Godel implication and negation as MV-signature terms:
    x ->G y = D(x =>L y) | y  and  !G x = D ~x."""
    return Or(Delta(LukImp(x, y)), y), Delta(Inv(x))


def discriminator_term(x: Formula, y: Formula, z: Formula) -> Formula:
    """(D(x <-> y) & z) | (!D(x <-> y) & x): z when x = y, else x."""
    eq = Delta(Iff(x, y))
    return Or(And(eq, z), And(GNeg(eq), x))


def ft_term(x: Formula, y: Formula) -> Formula:
    """The falsity-tolerant implication as a Godel-side term:
    D(x -> y) & (~x | y)."""
    return And(Delta(GImp(x, y)), Or(Inv(x), y))


# -- standard-algebra translations -------------------------------------------

@dataclass(frozen=True)
class Translation:
    """A named formula-to-formula mapping between signatures."""

    name: str
    source: str
    target: str
    fn: Callable[[Formula], Formula]

    def __call__(self, f: Formula) -> Formula:
        return self.fn(f)

    def on_set(self, fs: Iterable[Formula]) -> list[Formula]:
        return [self.fn(f) for f in fs]


def star_translation(which: int, f: Formula) -> Formula:
    """The three top-level designation shifts between order filters:

    *1: (~f -> f) & !D(f <-> ~f)   value 1 iff f's value is  > 1/2
    *2: ~f -> f                    value 1 iff f's value is >= 1/2
    *3: !!f                        value 1 iff f's value is  > 0
    """
    if which == 1:
        return And(GImp(Inv(f), f), GNeg(Delta(Iff(f, Inv(f)))))
    if which == 2:
        return GImp(Inv(f), f)
    if which == 3:
        return GNeg(GNeg(f))
    raise InputError(f"star translation must be 1, 2 or 3, got {which}")


def delta_set_translation(gamma: Iterable[Formula]) -> list[Formula]:
    """Elementwise D."""
    return [Delta(f) for f in gamma]


def ft_star(f: Formula) -> Formula:
    """Homomorphic translation of an FT-signature formula (&, |, ~, =>F, 0)
    into the Godel-with-involution signature; =>F becomes
    D(a -> b) & (~a | b)."""
    return _ft_star(f, {})


def _ft_star(f: Formula, memo: dict[int, Formula]) -> Formula:
    key = id(f)
    if key in memo:
        return memo[key]
    match f:
        case Var(_) | Bot() | Top():
            out = f
        case Inv(a):
            out = Inv(_ft_star(a, memo))
        case And(a, b):
            out = And(_ft_star(a, memo), _ft_star(b, memo))
        case Or(a, b):
            out = Or(_ft_star(a, memo), _ft_star(b, memo))
        case FTImp(a, b):
            sa, sb = _ft_star(a, memo), _ft_star(b, memo)
            out = And(Delta(GImp(sa, sb)), Or(Inv(sa), sb))
        case _:
            raise InputError(f"ft_star input must be in the FT signature: {f}")
    memo[key] = out
    return out


def _ft_delta(a: Formula) -> Formula:
    # delta inside the FT signature: ~0 =>F a
    return FTImp(Inv(Bot()), a)


def ft_hash(f: Formula) -> Formula:
    """Homomorphic translation of a Godel-with-involution formula into the
    FT signature with bottom; a ->G b becomes ~D~(a =>F b) | b, where
    D c abbreviates ~0 =>F c.  Derived connectives are unfolded first."""
    return _ft_hash(expand_derived(f), {})


def _ft_hash(f: Formula, memo: dict[int, Formula]) -> Formula:
    key = id(f)
    if key in memo:
        return memo[key]
    match f:
        case Var(_) | Bot():
            out = f
        case Inv(a):
            out = Inv(_ft_hash(a, memo))
        case And(a, b):
            out = And(_ft_hash(a, memo), _ft_hash(b, memo))
        case GImp(a, b):
            ha, hb = _ft_hash(a, memo), _ft_hash(b, memo)
            out = Or(Inv(_ft_delta(Inv(FTImp(ha, hb)))), hb)
        case _:
            raise InputError(f"ft_hash expects a core Godel-signature formula: {f}")
    memo[key] = out
    return out


TRANSLATIONS = {
    "star1": Translation("star1", "GV~", "GV~", lambda f: star_translation(1, f)),
    "star2": Translation("star2", "GV~", "GV~", lambda f: star_translation(2, f)),
    "star3": Translation("star3", "GV~", "GV~", lambda f: star_translation(3, f)),
    "delta": Translation("delta", "GV~", "GV~", Delta),
    "ft-star": Translation("ft-star", "FT", "GV~", ft_star),
    "ft-hash": Translation("ft-hash", "GV~", "FT", ft_hash),
}


# -- Boolean-valued value detectors ------------------------------------------
#
# Each of these evaluates to 0 or top under every evaluation, which makes
# them combine by | and & like classical predicates on the value of p.

def is_positive(p: Formula) -> Formula:
    """Value top iff e(p) > 0."""
    return GNeg(GNeg(p))


def is_top(p: Formula) -> Formula:
    return Delta(p)


def is_at_most_half(p: Formula) -> Formula:
    """Value top iff e(p) <= 1/2 (p below its own involution)."""
    return Delta(GImp(p, Inv(p)))


def is_at_least_half(p: Formula) -> Formula:
    return Delta(GImp(Inv(p), p))


def is_fixpoint(p: Formula) -> Formula:
    """Value top iff e(p) = 1/2."""
    return Delta(Iff(p, Inv(p)))


def strictly_less(p: Formula, q: Formula) -> Formula:
    """Value top iff e(p) < e(q)."""
    return GNeg(Delta(GImp(q, p)))


# -- tuple and single-value characterizers ------------------------------------

def tuple_characterizer(n: int) -> Formula:
    """A formula over p0..p{n-1} whose value on the n-element chain is top
    exactly when e(pi) = i/(n-1) for every i, and 0 otherwise.

    Construction: pin both endpoints, force the tuple strictly increasing
    (n strictly increasing values in an n-chain leave only the identity),
    and pin the involution symmetry.  Every conjunct is Boolean-valued.
    """
    if n < 2:
        raise InputError(f"need n >= 2, got {n}")
    ps = [Var(f"p{i}") for i in range(n)]
    parts: list[Formula] = [Delta(GNeg(ps[0])), Delta(ps[n - 1])]
    parts += [GNeg(Delta(GImp(ps[i + 1], ps[i]))) for i in range(n - 1)]
    parts += [Delta(Iff(ps[i], Inv(ps[n - 1 - i]))) for i in range(n)]
    return conj(parts)


def _unary_term_pool(chain: ChainAlgebra, depth: int) -> dict[tuple[int, ...], Formula]:
    """All value vectors realized by one-variable Godel-side terms up to
    the given constructor depth, with a smallest realizing term each."""
    from .entail import evaluate  # local import to avoid a cycle

    p = Var("p")
    seed = [p, Bot(), Top()]
    pool: dict[tuple[int, ...], Formula] = {}
    frontier: list[Formula] = []
    for f in seed:
        vec = tuple(evaluate(f, chain, {"p": a}) for a in chain.carrier)
        if vec not in pool:
            pool[vec] = f
            frontier.append(f)
    for _ in range(depth):
        new_frontier: list[Formula] = []
        candidates: list[Formula] = []
        known = list(pool.items())
        for f in frontier:
            candidates += [Inv(f), GNeg(f), Delta(f)]
            for _, g in known:
                candidates += [And(f, g), Or(f, g), GImp(f, g), GImp(g, f)]
        for f in candidates:
            vec = tuple(evaluate(f, chain, {"p": a}) for a in chain.carrier)
            if vec not in pool:
                pool[vec] = f
                new_frontier.append(f)
        if not new_frontier:
            break
        frontier = new_frontier
    return pool


def single_value_characterizer(n: int, a: int, depth: int = 6) -> Formula:
    """A one-variable formula with value top iff e(p) = a on the n-element
    Godel chain with involution, and 0 otherwise.

    The construction only exists for n <= 5 (for larger chains the two
    generated subalgebras around distinct small values are isomorphic, so
    no term can tell the values apart).  The fixpoint characterizer is the
    classic D(p <-> ~p); everything else is found by bounded synthesis and
    verified exhaustively before being returned.
    """
    if n > 5:
        raise InputError("single-value characterizers exist only for n <= 5")
    chain = godel_chain(n)
    chain.check(a)
    if a == 0:
        raise InputError("value 0 is not characterized (a != 0 required)")
    if 2 * a == chain.top:
        return is_fixpoint(Var("p"))
    target = tuple(chain.top if x == a else 0 for x in chain.carrier)
    pool = _unary_term_pool(chain, depth)
    if target not in pool:
        raise InputError(f"no characterizer found for value {a} on {chain}")
    return pool[target]


def find_single_value_characterizer(n: int, a: int, depth: int) -> Formula | None:
    """Bounded synthesis probe used to document the negative cases (n > 5):
    returns a verified characterizer or None if none exists up to depth."""
    chain = godel_chain(n)
    chain.check(a)
    target = tuple(chain.top if x == a else 0 for x in chain.carrier)
    return _unary_term_pool(chain, depth).get(target)


# -- table connectives --------------------------------------------------------

def tilde_table_conn(n: int, i: int) -> TableConn:
    """The unary connective on the (n+1)-valued Lukasiewicz chain that maps
    values >= i/n to 0 and everything below to top.  Stored by its rational
    threshold so it restricts to divisor subchains the way the defining
    McNaughton term does."""
    if not 1 <= i <= n:
        raise InputError(f"need 1 <= i <= n, got i={i}, n={n}")
    return TableConn(f"inv{i}_{n}", 1, Fraction(i, n))


def tilde_imp(n: int, i: int, x: Formula, y: Formula) -> Formula:
    """The derived implication x => y := inv{i}_{n}(x) | y."""
    return Or(TableApp(tilde_table_conn(n, i), x), y)


# -- axiom schemas -------------------------------------------------------------

@dataclass(frozen=True)
class Schema:
    """An axiom schema: instantiate with formulas, or take a fresh-variable
    instance for validity testing."""

    name: str
    arity: int
    build: Callable[..., Formula]

    def __call__(self, *args: Formula) -> Formula:
        if len(args) != self.arity:
            raise InputError(f"{self.name} takes {self.arity} formulas")
        return self.build(*args)

    def instance(self) -> Formula:
        return self.build(*(Var(f"x{i}") for i in range(self.arity)))


def _chain_axiom(n: int) -> Schema:
    def build(*fs: Formula) -> Formula:
        return disj([GImp(fs[i], fs[i + 1]) for i in range(n)])
    return Schema(f"A_G{n}", n + 1, build)


def axiom_builders() -> dict[str, Schema]:
    """The named schemas used for semantic validity checks (never for
    proof search): the base axioms, the involution and delta axioms, the
    chain-size axioms A_G2..A_G8, and the no-fixpoint axiom."""
    schemas = [
        Schema("A1", 3, lambda a, b, c: GImp(GImp(a, b), GImp(GImp(b, c), GImp(a, c)))),
        Schema("A2", 2, lambda a, b: GImp(And(a, b), a)),
        Schema("A3", 2, lambda a, b: GImp(And(a, b), And(b, a))),
        Schema("A4a", 3, lambda a, b, c: GImp(GImp(a, GImp(b, c)), GImp(And(a, b), c))),
        Schema("A4b", 3, lambda a, b, c: GImp(GImp(And(a, b), c), GImp(a, GImp(b, c)))),
        Schema("A5", 3, lambda a, b, c: GImp(GImp(GImp(a, b), c), GImp(GImp(GImp(b, a), c), c))),
        Schema("A6", 1, lambda a: GImp(Bot(), a)),
        Schema("A7", 1, lambda a: GImp(a, And(a, a))),
        Schema("INV1", 1, lambda a: Iff(Inv(Inv(a)), a)),
        Schema("INV2", 1, lambda a: GImp(GNeg(a), Inv(a))),
        Schema("INV3", 2, lambda a, b: GImp(Delta(GImp(a, b)), Delta(GImp(Inv(b), Inv(a))))),
        Schema("DELTA1", 1, lambda a: Or(Delta(a), GNeg(Delta(a)))),
        Schema("DELTA2", 2, lambda a, b: GImp(Delta(Or(a, b)), Or(Delta(a), Delta(b)))),
        Schema("DELTA5", 2, lambda a, b: GImp(Delta(GImp(a, b)), GImp(Delta(a), Delta(b)))),
        Schema("NFP", 1, lambda a: Inv(Delta(Iff(a, Inv(a))))),
    ]
    out = {s.name: s for s in schemas}
    for n in range(2, 9):
        s = _chain_axiom(n)
        out[s.name] = s
    return out


# -- consistency operators ------------------------------------------------------

def consistency_godel(f: Formula) -> Formula:
    """The Godel-side consistency operator D(!f | f)."""
    return Delta(Or(GNeg(f), f))


def consistency_luk(n: int, i: int, f: Formula) -> Formula:
    """The Lukasiewicz-side consistency operator inv{i}_{n}(f & ~f)."""
    return TableApp(tilde_table_conn(n, i), And(f, Inv(f)))
