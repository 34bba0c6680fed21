"""Finite chain algebras, order filters, product matrices and subuniverses.

Elements of an n-element chain are the integer indices 0..n-1; index i
denotes the rational i/(n-1).  All operations are total functions on
indices and every comparison is an integer comparison, so results are
exact.  Every value here is immutable after construction and every
operation is a pure function, hence safe for concurrent readers.

A chain carries *all* operation tables (Godel, Lukasiewicz, falsity-
tolerant) regardless of its kind; the kind only selects which formula
signature may be evaluated against it.  This is what lets one carrier
serve term-equivalence tests between signatures.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import InputError


class Kind(Enum):
    """Which signature a chain answers to."""

    GODEL_INV = "GV~"   # Godel chain with involution: &, |, ->, !, ~, D
    MV = "LV"           # Lukasiewicz (MV) chain: &, |, =>L, ~, D
    FT = "FT"           # falsity-tolerant chain: &, |, =>F, ~


@dataclass(frozen=True, order=True)
class ChainAlgebra:
    """A finite linearly ordered algebra on indices 0..size-1."""

    kind: Kind
    size: int

    def __post_init__(self) -> None:
        if self.size < 2:
            raise InputError(f"chain needs at least 2 elements, got {self.size}")

    # -- carrier ----------------------------------------------------------

    @property
    def top(self) -> int:
        return self.size - 1

    @property
    def carrier(self) -> range:
        return range(self.size)

    def check(self, a: int) -> int:
        if not 0 <= a < self.size:
            raise InputError(f"index {a} out of range for {self}")
        return a

    def value(self, a: int) -> Fraction:
        """The rational a/(size-1) denoted by index a."""
        return Fraction(self.check(a), self.size - 1)

    # -- truth functions ---------------------------------------------------

    def meet(self, a: int, b: int) -> int:
        return min(self.check(a), self.check(b))

    def join(self, a: int, b: int) -> int:
        return max(self.check(a), self.check(b))

    def godel_implies(self, a: int, b: int) -> int:
        """Residuum of min: top if a <= b, else b."""
        return self.top if self.check(a) <= self.check(b) else b

    def godel_neg(self, a: int) -> int:
        """Pseudo-complement: a -> 0."""
        return self.godel_implies(a, 0)

    def involution(self, a: int) -> int:
        """The order-reversing involution (size-1) - a."""
        return self.top - self.check(a)

    def delta(self, a: int) -> int:
        """Projection onto {0, top}: top exactly at the top element."""
        return self.top if self.check(a) == self.top else 0

    def luk_implies(self, a: int, b: int) -> int:
        """min(top, top - a + b).  Exposed on every chain for
        term-equivalence tests; it is the native implication of MV chains."""
        return min(self.top, self.top - self.check(a) + self.check(b))

    def ft_implies(self, a: int, b: int) -> int:
        """max(involution(a), b) when a <= b, else 0."""
        if self.check(a) <= self.check(b):
            return max(self.involution(a), b)
        return 0

    # -- presentation ------------------------------------------------------

    def __str__(self) -> str:
        if self.kind is Kind.GODEL_INV:
            return f"GV{self.size}~"
        if self.kind is Kind.MV:
            return f"LV{self.size}"
        return f"FT{self.size}"


def godel_chain(size: int) -> ChainAlgebra:
    return ChainAlgebra(Kind.GODEL_INV, size)


def mv_chain(size: int) -> ChainAlgebra:
    return ChainAlgebra(Kind.MV, size)


def ft_chain(size: int) -> ChainAlgebra:
    return ChainAlgebra(Kind.FT, size)


@dataclass(frozen=True, order=True)
class OrderFilter:
    """Principal upward-closed set {a : a >= threshold} of a chain.

    Finite chains only need principal filters; 0 < threshold <= size-1 so
    the bottom element is never designated and the filter never empties.
    """

    threshold: int

    def __post_init__(self) -> None:
        if self.threshold < 1:
            raise InputError(f"filter threshold must be positive, got {self.threshold}")

    def member(self, a: int) -> bool:
        return a >= self.threshold

    def __str__(self) -> str:
        return f"[>={self.threshold}]"


Component = tuple[ChainAlgebra, OrderFilter]


def component(chain: ChainAlgebra, threshold: int) -> Component:
    if not 1 <= threshold <= chain.top:
        raise InputError(f"threshold {threshold} out of range for {chain}")
    return (chain, OrderFilter(threshold))


@dataclass(frozen=True)
class ProductMatrix:
    """A finite product of chain components, each with a principal filter.

    The matrix's filter is the cartesian product of the component
    filters: a tuple of indices is designated iff every coordinate is.
    A single-component product stands in for a plain chain matrix.
    """

    components: tuple[Component, ...]

    def __post_init__(self) -> None:
        if not self.components:
            raise InputError("a product matrix needs at least one component")
        for chain, filt in self.components:
            if filt.threshold > chain.top:
                raise InputError(f"threshold {filt.threshold} out of range for {chain}")

    @property
    def arity(self) -> int:
        return len(self.components)

    def designated(self, value: tuple[int, ...]) -> bool:
        if len(value) != self.arity:
            raise InputError(f"value arity {len(value)} != matrix arity {self.arity}")
        return all(f.member(v) for (_, f), v in zip(self.components, value))

    def normalized(self) -> "ProductMatrix":
        """Canonical component order: (chain size, threshold) descending.

        Isomorphic catalog entries become equal after normalization.
        """
        key = lambda c: (c[0].size, c[1].threshold, c[0].kind.value)
        return ProductMatrix(tuple(sorted(self.components, key=key, reverse=True)))

    def is_catalog_normalized(self) -> bool:
        return self == self.normalized() and len(set(self.components)) == self.arity

    def __str__(self) -> str:
        return "x".join(f"{c}{f}" for c, f in self.components)


def matrix(*parts: tuple[ChainAlgebra, int]) -> ProductMatrix:
    """Build a product matrix from (chain, threshold) pairs."""
    return ProductMatrix(tuple(component(c, t) for c, t in parts))


# -- subuniverses ----------------------------------------------------------

@dataclass(frozen=True)
class Subuniverse:
    """A subset of a chain closed under all of its operations."""

    parent: ChainAlgebra
    members: tuple[int, ...]

    def contains(self, a: int) -> bool:
        return a in self.members

    @property
    def size(self) -> int:
        return len(self.members)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.members)) + "}<=" + str(self.parent)


def _ops_for(chain: ChainAlgebra) -> tuple[tuple[str, ...], tuple[str, ...]]:
    # closure is taken under the chain's own signature
    if chain.kind is Kind.GODEL_INV:
        return ("involution", "delta", "godel_neg"), ("meet", "join", "godel_implies")
    if chain.kind is Kind.MV:
        return ("involution",), ("luk_implies",)
    return ("involution",), ("meet", "join", "ft_implies")


def generate_subuniverse(chain: ChainAlgebra, seeds: Iterable[int]) -> Subuniverse:
    """Least superset of seeds and the constants closed under the chain ops.

    Chains are locally finite, so the fixpoint iteration terminates.
    """
    current = {chain.check(s) for s in seeds} | {0, chain.top}
    unary, binary = _ops_for(chain)
    changed = True
    while changed:
        changed = False
        frozen = list(current)
        for name in unary:
            op = getattr(chain, name)
            for a in frozen:
                v = op(a)
                if v not in current:
                    current.add(v)
                    changed = True
        for name in binary:
            op = getattr(chain, name)
            for a in frozen:
                for b in frozen:
                    v = op(a, b)
                    if v not in current:
                        current.add(v)
                        changed = True
    return Subuniverse(chain, tuple(sorted(current)))


def enumerate_subuniverses(chain: ChainAlgebra) -> list[Subuniverse]:
    """All subuniverses of a Godel-with-involution chain.

    These are exactly the involution-symmetric subsets containing bottom
    and top: one removes pairs {a, ~a} of non-extremal elements (for odd
    chains the fixpoint forms a removable singleton pair).
    """
    if chain.kind is not Kind.GODEL_INV:
        raise InputError("subuniverse enumeration is defined for GV~ chains")
    n = chain.size
    pairs = []
    seen: set[int] = set()
    for a in range(1, n - 1):
        if a not in seen:
            pairs.append(frozenset({a, chain.involution(a)}))
            seen |= {a, chain.involution(a)}
    out = []
    for keep in itertools.product([False, True], repeat=len(pairs)):
        members = {0, chain.top}
        for flag, pair in zip(keep, pairs):
            if flag:
                members |= pair
        out.append(Subuniverse(chain, tuple(sorted(members))))
    out.sort(key=lambda s: (s.size, s.members))
    return out


def enumerate_mv_subchains(n: int) -> list[ChainAlgebra]:
    """The MV subchains of the (n+1)-element Lukasiewicz chain:
    one (d+1)-element chain per divisor d of n."""
    if n < 1:
        raise InputError(f"need n >= 1, got {n}")
    return [mv_chain(d + 1) for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def chain_embeddings(sub: ChainAlgebra, sup: ChainAlgebra) -> tuple[tuple[int, ...], ...]:
    """All injections sub -> sup preserving every operation of sub's kind.

    Returned as index tuples (image of 0, image of 1, ...).  Kinds must
    match.  Exhaustive verification over all argument pairs; chains are
    small enough that this is cheap, and it avoids trusting any structural
    shortcut.
    """
    if sub.kind is not sup.kind:
        return ()
    unary, binary = _ops_for(sub)
    found = []
    inner = range(1, sup.top)
    for mid in itertools.combinations(inner, sub.size - 2):
        h = (0,) + mid + (sup.top,)
        ok = True
        for name in unary:
            f, g = getattr(sub, name), getattr(sup, name)
            if any(h[f(a)] != g(h[a]) for a in sub.carrier):
                ok = False
                break
        if ok:
            for name in binary:
                f, g = getattr(sub, name), getattr(sup, name)
                if any(h[f(a, b)] != g(h[a], h[b])
                       for a in sub.carrier for b in sub.carrier):
                    ok = False
                    break
        if ok:
            found.append(h)
    return tuple(found)


def iter_assignments(sizes: Iterable[int]) -> Iterator[tuple[int, ...]]:
    """Lexicographic odometer over the given per-slot domain sizes."""
    return itertools.product(*(range(s) for s in sizes))
