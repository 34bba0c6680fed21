"""Evaluation and decision of consequence relations.

Deciders work by exhaustive evaluation over all assignments, enumerated
lexicographically over the sorted variable names (and, on products,
component-minor within each variable), so the first counterexample found
is the least one and output is deterministic.  Every decider refuses to
exceed its step budget up front rather than truncating silently.

The standard-algebra relations (order-filter matrices over the unit
interval) are decided for finite premise sets by reduction to a symmetric
grid: values of a k-variable formula lie in the involution-closed set
generated by the variable values together with {0, 1/2, 1}, and any such
configuration, plus a designation threshold, order-embeds into the odd
chain with 2k+5 elements.  Grid counterexamples are genuine ones and vice
versa, so each relation class becomes a finite family of grid matrices.
"""

from __future__ import annotations

import itertools
import math
import multiprocessing
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Mapping, Sequence

from .algebra import ChainAlgebra, Component, Kind, ProductMatrix, godel_chain, matrix
from .errors import BudgetExceededError, InputError, UnsupportedConnectiveError
from .formula import (
    And, Bot, Delta, Formula, FTImp, GImp, GNeg, Iff, Inv, LukImp, Or,
    TableApp, Top, Var, variables_of,
)
from .terms import conj

DEFAULT_BUDGET = 10**8

Element = int | tuple[int, ...]
Assignment = dict[str, Element]


_ALLOWED = {
    Kind.GODEL_INV: (Var, Bot, Top, And, Or, GImp, GNeg, Inv, Delta, Iff, TableApp),
    Kind.MV: (Var, Bot, Top, And, Or, LukImp, Inv, Delta, TableApp),
    Kind.FT: (Var, Bot, And, Or, Inv, FTImp, TableApp),
}


def check_signature(f: Formula, kind: Kind) -> None:
    """Reject formulas whose connectives fall outside the chain's signature."""
    stack = [f]
    seen: set[int] = set()
    allowed = _ALLOWED[kind]
    while stack:
        g = stack.pop()
        if id(g) in seen:
            continue
        seen.add(id(g))
        if not isinstance(g, allowed):
            raise UnsupportedConnectiveError(
                f"{type(g).__name__} is not in the {kind.value} signature")
        stack.extend(_children(g))


def _children(f: Formula) -> tuple[Formula, ...]:
    match f:
        case Var(_) | Bot() | Top():
            return ()
        case Inv(a) | GNeg(a) | Delta(a) | TableApp(_, a):
            return (a,)
        case And(a, b) | Or(a, b) | GImp(a, b) | LukImp(a, b) | FTImp(a, b) | Iff(a, b):
            return (a, b)
    raise InputError(f"not a formula: {f!r}")


def evaluate(f: Formula, algebra: ChainAlgebra | ProductMatrix,
             e: Assignment) -> Element:
    """Compositional truth value of f under e; componentwise on products."""
    if isinstance(algebra, ProductMatrix):
        comps = algebra.components
        return tuple(
            _eval_chain(f, chain, {v: _coord(e[v], c, algebra.arity) for v in e})
            for c, (chain, _) in enumerate(comps)
        )
    return _eval_chain(f, algebra, e)


def _coord(value: Element, c: int, arity: int) -> int:
    if not isinstance(value, tuple) or len(value) != arity:
        raise InputError(f"product assignment values must be {arity}-tuples")
    return value[c]


def _eval_chain(f: Formula, chain: ChainAlgebra, e: Mapping[str, int]) -> int:
    check_signature(f, chain.kind)
    return _ev(f, chain, e, {})


def _ev(f: Formula, chain: ChainAlgebra, e: Mapping[str, int],
        memo: dict[int, int]) -> int:
    # memo on node identity: translated formulas are heavily shared DAGs
    key = id(f)
    if key in memo:
        return memo[key]
    match f:
        case Var(name):
            if name not in e:
                raise InputError(f"assignment misses variable {name}")
            v = chain.check(e[name])
        case Bot():
            v = 0
        case Top():
            v = chain.top
        case And(a, b):
            v = min(_ev(a, chain, e, memo), _ev(b, chain, e, memo))
        case Or(a, b):
            v = max(_ev(a, chain, e, memo), _ev(b, chain, e, memo))
        case GImp(a, b):
            v = chain.godel_implies(_ev(a, chain, e, memo), _ev(b, chain, e, memo))
        case LukImp(a, b):
            v = chain.luk_implies(_ev(a, chain, e, memo), _ev(b, chain, e, memo))
        case FTImp(a, b):
            v = chain.ft_implies(_ev(a, chain, e, memo), _ev(b, chain, e, memo))
        case Iff(a, b):
            va, vb = _ev(a, chain, e, memo), _ev(b, chain, e, memo)
            v = min(chain.godel_implies(va, vb), chain.godel_implies(vb, va))
        case Inv(a):
            v = chain.involution(_ev(a, chain, e, memo))
        case GNeg(a):
            v = chain.godel_neg(_ev(a, chain, e, memo))
        case Delta(a):
            v = chain.delta(_ev(a, chain, e, memo))
        case TableApp(c, a):
            v = c.table_for(chain.size)[_ev(a, chain, e, memo)]
        case _:
            raise InputError(f"not a formula: {f!r}")
    memo[key] = v
    return v


# -- compiled evaluation (the inner loop of the brute-force scan) -------------

def compile_on_chain(f: Formula, chain: ChainAlgebra,
                     pos: Mapping[str, int]) -> Callable[[Sequence[int]], int]:
    """Compile f to a closure over a flat assignment tuple; pos maps each
    variable to its slot index.  Same semantics as evaluate(), and the two
    check each other whenever a counterexample is re-verified.

    Shared subtrees are evaluated once per assignment: the formula is
    flattened (by node identity) into a postorder sequence of register
    operations, so the DAGs produced by signature translations stay cheap
    even when their tree size explodes.
    """
    order: list[Formula] = []
    index: dict[int, int] = {}
    stack: list[tuple[Formula, bool]] = [(f, False)]
    while stack:
        g, expanded = stack.pop()
        if id(g) in index:
            continue
        if expanded:
            index[id(g)] = len(order)
            order.append(g)
        else:
            stack.append((g, True))
            stack.extend((c, False) for c in _children(g))

    top = chain.top
    ops: list[Callable[[Sequence[int], list[int]], None]] = []
    for k, g in enumerate(order):
        ops.append(_node_op(g, chain, top, pos, index, k))
    root = index[id(f)]
    nvals = len(order)

    def fn(t: Sequence[int]) -> int:
        vals = [0] * nvals
        for op in ops:
            op(t, vals)
        return vals[root]
    return fn


def _node_op(g: Formula, chain: ChainAlgebra, top: int,
             pos: Mapping[str, int], index: Mapping[int, int], k: int):
    match g:
        case Var(name):
            i = pos[name]
            return lambda t, vals: vals.__setitem__(k, t[i])
        case Bot():
            return lambda t, vals: vals.__setitem__(k, 0)
        case Top():
            return lambda t, vals: vals.__setitem__(k, top)
        case And(a, b):
            i, j = index[id(a)], index[id(b)]
            return lambda t, vals: vals.__setitem__(k, min(vals[i], vals[j]))
        case Or(a, b):
            i, j = index[id(a)], index[id(b)]
            return lambda t, vals: vals.__setitem__(k, max(vals[i], vals[j]))
        case GImp(a, b):
            i, j = index[id(a)], index[id(b)]
            return lambda t, vals: vals.__setitem__(
                k, top if vals[i] <= vals[j] else vals[j])
        case LukImp(a, b):
            i, j = index[id(a)], index[id(b)]
            return lambda t, vals: vals.__setitem__(
                k, min(top, top - vals[i] + vals[j]))
        case FTImp(a, b):
            i, j = index[id(a)], index[id(b)]

            def ft(t, vals, i=i, j=j, k=k):
                va, vb = vals[i], vals[j]
                vals[k] = (max(top - va, vb) if va <= vb else 0)
            return ft
        case Iff(a, b):
            i, j = index[id(a)], index[id(b)]

            def iff(t, vals, i=i, j=j, k=k):
                va, vb = vals[i], vals[j]
                vals[k] = min(top if va <= vb else vb, top if vb <= va else va)
            return iff
        case Inv(a):
            i = index[id(a)]
            return lambda t, vals: vals.__setitem__(k, top - vals[i])
        case GNeg(a):
            i = index[id(a)]
            return lambda t, vals: vals.__setitem__(k, top if vals[i] == 0 else 0)
        case Delta(a):
            i = index[id(a)]
            return lambda t, vals: vals.__setitem__(k, top if vals[i] == top else 0)
        case TableApp(c, a):
            i = index[id(a)]
            table = c.table_for(chain.size)
            return lambda t, vals: vals.__setitem__(k, table[vals[i]])
    raise InputError(f"not a formula: {g!r}")


# -- verdicts ------------------------------------------------------------------

@dataclass
class EntailmentVerdict:
    """Outcome of a consequence query.

    A failing verdict is self-certifying: re-evaluating the premises and
    conclusion at ``counterexample`` on ``matrix`` refutes the query.  On
    products the counterexample maps each variable to its tuple of
    component values; values_trace lists the value of every premise and of
    the conclusion under the counterexample.
    """

    holds: bool
    relation: str = "matrix"
    counterexample: Assignment | None = None
    values_trace: list[tuple[str, Element]] | None = None
    matrix: ProductMatrix | None = None
    steps: int = 0
    complete: bool = True

    def __bool__(self) -> bool:
        return self.holds


class StandardFilterClass(Enum):
    """The decidable designation classes of the standard algebra.

    EXACT_1 is plain validity-preservation; OPEN_POS and OPEN_NEG stand
    for the whole band of thresholds strictly between 1/2 and 1 (resp. 0
    and 1/2), which collapse to one logic each, and are decided as their
    finitary companions; AT_HALF, ABOVE_HALF and ABOVE_ZERO pin the three
    remaining filters.
    """

    EXACT_1 = "exact-1"
    OPEN_POS = "open-pos"
    AT_HALF = "at-half"
    ABOVE_HALF = "above-half"
    OPEN_NEG = "open-neg"
    ABOVE_ZERO = "above-zero"

    @classmethod
    def from_name(cls, name: str) -> "StandardFilterClass":
        for member in cls:
            if member.value == name:
                return member
        raise InputError(f"unknown filter class {name!r}")


def grid_size(var_count: int) -> int:
    """Symmetric grid large enough for every order configuration of the
    variable values, their involutions, {0, 1/2, 1} and one threshold."""
    return 2 * var_count + 5


def grid_thresholds(cls: StandardFilterClass, m: int) -> list[int]:
    """Grid filter thresholds consistent with the class on the m-chain."""
    mid = (m - 1) // 2
    if cls is StandardFilterClass.EXACT_1:
        return [m - 1]
    if cls is StandardFilterClass.ABOVE_HALF:
        return [mid + 1]
    if cls is StandardFilterClass.AT_HALF:
        return [mid]
    if cls is StandardFilterClass.ABOVE_ZERO:
        return [1]
    if cls is StandardFilterClass.OPEN_POS:
        return list(range(mid + 1, m - 1))
    return list(range(1, mid))


# -- the brute-force scan -------------------------------------------------------

def _slot_layout(mat: ProductMatrix, names: Sequence[str]):
    """Flat slots are variable-major, component-minor; slot (i, c) holds
    variable i's value on component c."""
    arity = mat.arity
    sizes = []
    for _ in names:
        sizes.extend(chain.size for chain, _ in mat.components)
    positions = [
        {name: i * arity + c for i, name in enumerate(names)}
        for c in range(arity)
    ]
    return sizes, positions


def _compile_query(mat: ProductMatrix, gamma: Sequence[Formula], phi: Formula,
                   names: Sequence[str]):
    """Per-component compiled premises/conclusion and filter thresholds."""
    _, positions = _slot_layout(mat, names)
    per_comp = []
    for c, (chain, filt) in enumerate(mat.components):
        prem = [compile_on_chain(g, chain, positions[c]) for g in gamma]
        concl = compile_on_chain(phi, chain, positions[c])
        per_comp.append((prem, concl, filt.threshold))
    return per_comp


def _scan(per_comp, sizes, first_lo: int, first_hi: int):
    """Find the first refuting flat assignment with slot 0 in [lo, hi)."""
    if not sizes:
        rows = [()]
    else:
        rows = itertools.product(range(first_lo, first_hi),
                                 *(range(s) for s in sizes[1:]))
    for t in rows:
        designated = True
        for prem, _, thr in per_comp:
            if any(p(t) < thr for p in prem):
                designated = False
                break
        if not designated:
            continue
        for _, concl, thr in per_comp:
            if concl(t) < thr:
                return t
    return None


def _scan_task(args):
    mat, gamma, phi, names, lo, hi = args
    sizes, _ = _slot_layout(mat, names)
    per_comp = _compile_query(mat, gamma, phi, names)
    return _scan(per_comp, sizes, lo, hi)


def _lex_position(flat: Sequence[int], sizes: Sequence[int]) -> int:
    pos = 0
    for v, s in zip(flat, sizes):
        pos = pos * s + v
    return pos


def _budget_check(cost: int, budget: int) -> None:
    if cost > budget:
        raise BudgetExceededError(cost, budget)


def _verdict_from_flat(mat: ProductMatrix, gamma: Sequence[Formula], phi: Formula,
                       names: Sequence[str], flat: tuple[int, ...] | None,
                       total: int, sizes: Sequence[int],
                       relation: str) -> EntailmentVerdict:
    if flat is None:
        return EntailmentVerdict(True, relation=relation, matrix=mat, steps=total)
    arity = mat.arity
    assignment: Assignment = {}
    for i, name in enumerate(names):
        coords = tuple(flat[i * arity + c] for c in range(arity))
        assignment[name] = coords if arity > 1 else coords[0]
    trace = [(str(g), evaluate(g, mat if arity > 1 else mat.components[0][0],
                               assignment)) for g in (*gamma, phi)]
    return EntailmentVerdict(
        False, relation=relation, counterexample=assignment,
        values_trace=trace, matrix=mat,
        steps=_lex_position(flat, sizes) + 1)


def entails_matrix(mat: ProductMatrix, gamma: Iterable[Formula], phi: Formula,
                   budget: int = DEFAULT_BUDGET, workers: int = 1,
                   relation: str = "matrix") -> EntailmentVerdict:
    """Brute-force decision of the matrix consequence: every assignment
    designating all of gamma must designate phi.  The reported
    counterexample is the lexicographically least one regardless of the
    worker count."""
    gamma = list(gamma)
    for chain, _ in mat.components:
        for g in (*gamma, phi):
            check_signature(g, chain.kind)
    names = variables_of([*gamma, phi])
    sizes, _ = _slot_layout(mat, names)
    total = math.prod(sizes) if sizes else 1
    _budget_check(total * (len(gamma) + 1), budget)

    if workers > 1 and sizes and sizes[0] >= 2 and total >= 4096:
        first = sizes[0]
        nblocks = min(workers, first)
        bounds = [(first * b // nblocks, first * (b + 1) // nblocks)
                  for b in range(nblocks)]
        ctx = multiprocessing.get_context()
        with ctx.Pool(nblocks) as pool:
            hits = pool.map(_scan_task,
                            [(mat, gamma, phi, names, lo, hi) for lo, hi in bounds])
        found = min((h for h in hits if h is not None), default=None)
    else:
        per_comp = _compile_query(mat, gamma, phi, names)
        found = _scan(per_comp, sizes, 0, sizes[0] if sizes else 1)
    return _verdict_from_flat(mat, gamma, phi, names, found, total, sizes, relation)


def check_valid(mat: ProductMatrix, phi: Formula,
                budget: int = DEFAULT_BUDGET) -> EntailmentVerdict:
    """Validity = entailment from no premises."""
    return entails_matrix(mat, [], phi, budget=budget, relation="validity")


def entails_family(mats: Sequence[ProductMatrix], gamma: Iterable[Formula],
                   phi: Formula, budget: int = DEFAULT_BUDGET,
                   workers: int = 1) -> EntailmentVerdict:
    """Consequence of a family of matrices: the intersection of the member
    relations.  The first member to refute supplies the counterexample."""
    if not mats:
        raise InputError("a matrix family must be nonempty")
    gamma = list(gamma)
    steps = 0
    for mat in mats:
        v = entails_matrix(mat, gamma, phi, budget=budget, workers=workers,
                           relation="family")
        steps += v.steps
        if not v.holds:
            v.steps = steps
            return v
    return EntailmentVerdict(True, relation="family", steps=steps)


def entails_product_def(components: ProductMatrix | Iterable[Component],
                        gamma: Iterable[Formula], phi: Formula,
                        budget: int = DEFAULT_BUDGET) -> EntailmentVerdict:
    """The product consequence by its literal definition: over every tuple
    of independent component evaluations, joint designation of the
    premises forces designation of the conclusion in every component.

    Kept as a deliberately separate implementation: it must agree with
    entails_matrix on the assembled product, and the pair is used as a
    cross-check.
    """
    if isinstance(components, ProductMatrix):
        mat = components
    else:
        mat = ProductMatrix(tuple(components))
    gamma = list(gamma)
    for chain, _ in mat.components:
        for g in (*gamma, phi):
            check_signature(g, chain.kind)
    names = variables_of([*gamma, phi])
    k = len(names)
    spaces = [chain.size ** k for chain, _ in mat.components]
    total = math.prod(spaces)
    _budget_check(total * (len(gamma) + 1) * mat.arity, budget)

    per_comp_assignments = [
        list(itertools.product(chain.carrier, repeat=k))
        for chain, _ in mat.components
    ]
    steps = 0
    for choice in itertools.product(*(range(s) for s in spaces)):
        steps += 1
        evals = [dict(zip(names, per_comp_assignments[c][choice[c]]))
                 for c in range(mat.arity)]
        jointly = all(
            _ev(g, chain, evals[c], {}) >= filt.threshold
            for c, (chain, filt) in enumerate(mat.components)
            for g in gamma
        )
        if not jointly:
            continue
        for c, (chain, filt) in enumerate(mat.components):
            if _ev(phi, chain, evals[c], {}) < filt.threshold:
                assignment: Assignment = {
                    name: tuple(evals[cc][name] for cc in range(mat.arity))
                    for name in names
                }
                trace = [(str(g), evaluate(g, mat, assignment))
                         for g in (*gamma, phi)]
                return EntailmentVerdict(
                    False, relation="product-def", counterexample=assignment,
                    values_trace=trace, matrix=mat, steps=steps)
    return EntailmentVerdict(True, relation="product-def", matrix=mat, steps=steps)


def entails_degree_preserving(n: int, gamma: Iterable[Formula], phi: Formula,
                              budget: int = DEFAULT_BUDGET) -> EntailmentVerdict:
    """The degree-preserving consequence over the n-element chain, decided
    two ways that must agree: validity of (conjunction of gamma) -> phi,
    and direct min-preservation (every evaluation gives phi at least the
    minimum of the premises; the empty minimum is top)."""
    gamma = list(gamma)
    chain = godel_chain(n)
    bridge = GImp(conj(gamma), phi) if gamma else phi
    top_matrix = matrix((chain, chain.top))
    via_bridge = check_valid(top_matrix, bridge, budget=budget)

    names = variables_of([*gamma, phi])
    total = chain.size ** len(names)
    _budget_check(total * (len(gamma) + 1), budget)
    pos = {name: i for i, name in enumerate(names)}
    prem = [compile_on_chain(g, chain, pos) for g in gamma]
    concl = compile_on_chain(phi, chain, pos)
    found = None
    steps = 0
    for t in itertools.product(chain.carrier, repeat=len(names)):
        steps += 1
        floor = min((p(t) for p in prem), default=chain.top)
        if concl(t) < floor:
            found = t
            break
    if (found is None) != via_bridge.holds:
        raise RuntimeError(
            "internal error: degree-preserving bridge and min-preservation disagree")
    if found is None:
        return EntailmentVerdict(True, relation="degree-preserving", steps=steps)
    assignment = dict(zip(names, found))
    trace = [(str(g), evaluate(g, chain, assignment)) for g in (*gamma, phi)]
    return EntailmentVerdict(
        False, relation="degree-preserving", counterexample=assignment,
        values_trace=trace, matrix=matrix((chain, 1)), steps=steps)


def decide_standard(cls: StandardFilterClass, gamma: Iterable[Formula],
                    phi: Formula, budget: int = DEFAULT_BUDGET,
                    workers: int = 1) -> EntailmentVerdict:
    """Decide the finitary standard-algebra consequence of the given
    designation class by grid reduction.  Every threshold consistent with
    the class is checked; a failure at any of them refutes the class."""
    gamma = list(gamma)
    names = variables_of([*gamma, phi])
    m = grid_size(len(names))
    chain = godel_chain(m)
    thresholds = grid_thresholds(cls, m)
    per_run = (chain.size ** len(names)) * (len(gamma) + 1)
    _budget_check(per_run * len(thresholds), budget)
    label = f"standard:{cls.value}"
    if cls in (StandardFilterClass.OPEN_POS, StandardFilterClass.OPEN_NEG):
        label += " (finitary companion)"
    steps = 0
    for t in thresholds:
        v = entails_matrix(matrix((chain, t)), gamma, phi,
                           budget=budget, workers=workers, relation=label)
        steps += v.steps
        if not v.holds:
            v.steps = steps
            return v
    return EntailmentVerdict(True, relation=label, steps=steps)


def value_vector(f: Formula, chain: ChainAlgebra,
                 names: Sequence[str]) -> tuple[int, ...]:
    """f's value at every assignment of the named variables, enumerated
    lexicographically.  Compiled once; the workhorse of exhaustive
    table-identity checks."""
    check_signature(f, chain.kind)
    pos = {name: i for i, name in enumerate(names)}
    fn = compile_on_chain(f, chain, pos)
    return tuple(fn(t) for t in itertools.product(chain.carrier, repeat=len(names)))


def semantically_equal(f: Formula, g: Formula, chain: ChainAlgebra) -> bool:
    """Exhaustive value-for-value agreement on the chain."""
    names = variables_of([f, g])
    return value_vector(f, chain, names) == value_vector(g, chain, names)


def verify_counterexample(mat: ProductMatrix, gamma: Iterable[Formula],
                          phi: Formula, e: Assignment) -> bool:
    """Re-evaluate a counterexample: True iff it refutes the query."""
    algebra: ChainAlgebra | ProductMatrix
    algebra = mat if mat.arity > 1 else mat.components[0][0]
    for g in gamma:
        if not _designated(mat, evaluate(g, algebra, e)):
            return False
    return not _designated(mat, evaluate(phi, algebra, e))


def _designated(mat: ProductMatrix, value: Element) -> bool:
    if isinstance(value, tuple):
        return mat.designated(value)
    return mat.designated((value,))
