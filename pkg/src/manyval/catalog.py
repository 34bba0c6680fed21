"""Named logics, catalog enumeration and submatrix certificates.

Extension certificates.  A logic defined by matrix N is included in the
logic of matrix M (so M's logic *extends* N's) whenever M embeds into N
as a submatrix.  For products the certificate is a relation R between
M-components and N-components, total on both sides, with a
designation-preserving and -reflecting chain embedding for every related
pair.  Soundness: given component evaluations of M that designate the
premises with component i0 failing the conclusion, pick for every
N-component j a related M-component r(j) (biased to i0 where possible)
and push its evaluation through the embedding; all premises stay
designated, and any j related to i0 fails the conclusion because
designation is reflected.  Totality on the M side guarantees such a j
exists; totality on the N side makes every pushed tuple complete.

Certificates cover the chain signature of the matrices' kind; on MV
chains every embedding preserves rational values (it is the unique
equal-spacing map), so value-threshold table connectives transport too.

Whether the submatrix criterion is complete for inclusion is open here:
pairs certified in neither direction are reported as unknown, never
guessed.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import (
    Component, Kind, ProductMatrix, chain_embeddings, component,
    enumerate_subuniverses, ft_chain, godel_chain, matrix, mv_chain,
)
from .entail import (
    DEFAULT_BUDGET, EntailmentVerdict, entails_family, entails_matrix,
)
from .errors import InputError, UnknownLogicError
from .formula import Bot, Formula

# -- logic descriptors --------------------------------------------------------


@dataclass(frozen=True)
class LogicDescriptor:
    """A named or enumerated logic: a nonempty family of product matrices
    interpreted as the intersection of their consequence relations."""

    family: tuple[ProductMatrix, ...]
    side: Kind
    name: str | None = None
    n: int | None = None
    i: int | None = None
    thresholds: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if not self.family:
            raise InputError("a logic needs a nonempty matrix family")

    @property
    def single(self) -> ProductMatrix:
        if len(self.family) != 1:
            raise InputError(f"{self} is a proper family, not a single matrix")
        return self.family[0]

    def entails(self, gamma: Iterable[Formula], phi: Formula,
                budget: int = DEFAULT_BUDGET, workers: int = 1) -> EntailmentVerdict:
        return entails_family(self.family, gamma, phi, budget=budget,
                              workers=workers)

    def __str__(self) -> str:
        body = " + ".join(str(m) for m in self.family)
        return f"{self.name}={body}" if self.name else body


def _descriptor(mat: ProductMatrix, side: Kind, name: str | None = None,
                **kw) -> LogicDescriptor:
    return LogicDescriptor((mat.normalized(),), side, name=name, **kw)


def _gv_single(n: int, t: int, name: str | None = None) -> LogicDescriptor:
    return _descriptor(matrix((godel_chain(n), t)), Kind.GODEL_INV, name, n=n)


_CANONICAL_GODEL = {}


def _canonical_godel_names() -> dict[ProductMatrix, str]:
    if not _CANONICAL_GODEL:
        j3 = matrix((godel_chain(3), 1))
        j4 = matrix((godel_chain(4), 1))
        cpl = matrix((godel_chain(2), 1))
        _CANONICAL_GODEL[cpl.normalized()] = "CPL"
        _CANONICAL_GODEL[j3.normalized()] = "J3"
        _CANONICAL_GODEL[j4.normalized()] = "J4"
        _CANONICAL_GODEL[ProductMatrix(j3.components + j4.components).normalized()] = "J3xJ4"
        _CANONICAL_GODEL[ProductMatrix(cpl.components + j3.components).normalized()] = "J2xJ3"
    return _CANONICAL_GODEL


def named(name: str) -> LogicDescriptor:
    """Resolve a logic name.

    Known names: CPL, J2, J3, J4, J2xJ3, J3xJ4, G<=N~ (the
    degree-preserving N-valued family), L(N,I) (the (N+1)-valued
    Lukasiewicz chain with filter at I/N), FTN (the N-valued
    falsity-tolerant matrix with everything above 0 designated), and
    LexpN (the minimal explosive extension family over the N-chain).
    """
    name = name.strip()
    if name in ("CPL", "J2"):
        return _gv_single(2, 1, "CPL" if name == "CPL" else "J2")
    if name == "J3":
        return _gv_single(3, 1, "J3")
    if name == "J4":
        return _gv_single(4, 1, "J4")
    if name == "J3xJ4":
        m = ProductMatrix((*matrix((godel_chain(3), 1)).components,
                           *matrix((godel_chain(4), 1)).components))
        return _descriptor(m, Kind.GODEL_INV, "J3xJ4", n=5)
    if name == "J2xJ3":
        m = ProductMatrix((*matrix((godel_chain(2), 1)).components,
                           *matrix((godel_chain(3), 1)).components))
        return _descriptor(m, Kind.GODEL_INV, "J2xJ3", n=5)
    if m := re.fullmatch(r"G<=(\d+)~", name):
        n = int(m.group(1))
        chain = godel_chain(n)
        fam = tuple(matrix((chain, t)) for t in range(1, n))
        return LogicDescriptor(fam, Kind.GODEL_INV, name=name, n=n)
    if m := re.fullmatch(r"L\((\d+),(\d+)\)", name):
        n, i = int(m.group(1)), int(m.group(2))
        if not 1 <= i <= n:
            raise UnknownLogicError(f"L({n},{i}) needs 1 <= i <= n")
        return _descriptor(matrix((mv_chain(n + 1), i)), Kind.MV, name, n=n, i=i)
    if m := re.fullmatch(r"FT(\d+)", name):
        n = int(m.group(1))
        return _descriptor(matrix((ft_chain(n), 1)), Kind.FT, name, n=n)
    if m := re.fullmatch(r"Lexp(\d+)", name):
        return build_L_exp(int(m.group(1)))
    raise UnknownLogicError(f"unknown logic name {name!r}")


# -- product-matrix logics over one chain --------------------------------------

def build_LT(n: int, thresholds: Iterable[int]) -> LogicDescriptor:
    """The product-matrix logic over the n-element chain with one component
    per threshold in T."""
    ts = sorted(set(thresholds))
    chain = godel_chain(n)
    if not ts:
        raise InputError("threshold set must be nonempty")
    for t in ts:
        if not 1 <= t <= chain.top:
            raise InputError(f"threshold {t} out of range for {chain}")
    mat = matrix(*((chain, t) for t in ts))
    return LogicDescriptor((mat.normalized(),), Kind.GODEL_INV,
                           name=None, n=n, thresholds=tuple(ts))


def lt_characterization(n: int, thresholds: Sequence[int],
                        gamma: Iterable[Formula], phi: Formula,
                        budget: int = DEFAULT_BUDGET) -> bool:
    """The decomposition the product logic satisfies: gamma yields phi iff
    either gamma forces bottom at the largest threshold, or phi follows at
    every threshold separately."""
    gamma = list(gamma)
    ts = sorted(set(thresholds))
    chain = godel_chain(n)
    if entails_matrix(matrix((chain, ts[-1])), gamma, Bot(), budget=budget).holds:
        return True
    return all(entails_matrix(matrix((chain, t)), gamma, phi, budget=budget).holds
               for t in ts)


def build_L_exp(n: int) -> LogicDescriptor:
    """The minimal extension of the degree-preserving n-valued logic that
    validates the explosion rule for the involution: one product matrix
    over the thresholds up to the first one above 1/2, plus the single
    matrices strictly above it."""
    chain = godel_chain(n)
    i = (n - 1) // 2 + 1  # first index with i/(n-1) > 1/2
    product = matrix(*((chain, t) for t in range(1, i + 1))).normalized()
    singles = tuple(matrix((chain, t)) for t in range(n - 1, i, -1))
    return LogicDescriptor((product, *singles), Kind.GODEL_INV,
                           name=f"Lexp{n}", n=n, i=i)


def lexp_characterization(n: int, gamma: Iterable[Formula], phi: Formula,
                          budget: int = DEFAULT_BUDGET) -> bool:
    """gamma yields phi in the explosive closure iff gamma forces bottom at
    the first threshold above 1/2, or phi follows degree-preservingly."""
    from .entail import entails_degree_preserving
    gamma = list(gamma)
    chain = godel_chain(n)
    i = (n - 1) // 2 + 1
    if entails_matrix(matrix((chain, i)), gamma, Bot(), budget=budget).holds:
        return True
    return entails_degree_preserving(n, gamma, phi, budget=budget).holds


# -- submatrix certificates -----------------------------------------------------

@dataclass(frozen=True)
class Embedding:
    """Certificate that ``sub`` is a submatrix of ``sup``: for every related
    component pair, a chain embedding preserving all operations with
    designation preserved and reflected.  Existence certifies that the
    consequence relation of sup is contained in that of sub."""

    sub: ProductMatrix
    sup: ProductMatrix
    pairs: tuple[tuple[int, int, tuple[int, ...]], ...]  # (sub idx, sup idx, map)

    def check(self) -> bool:
        """Re-verify the certificate from scratch."""
        covered_sub = set()
        covered_sup = set()
        for si, ji, h in self.pairs:
            sc, sf = self.sub.components[si]
            jc, jf = self.sup.components[ji]
            if h not in chain_embeddings(sc, jc):
                return False
            if not _designation_ok(h, sf.threshold, jf.threshold):
                return False
            covered_sub.add(si)
            covered_sup.add(ji)
        return (covered_sub == set(range(self.sub.arity))
                and covered_sup == set(range(self.sup.arity)))


def _designation_ok(h: Sequence[int], sub_thr: int, sup_thr: int) -> bool:
    # preserved and reflected: h(a) designated iff a designated
    return all((h[a] >= sup_thr) == (a >= sub_thr) for a in range(len(h)))


def component_embedding(sub: Component, sup: Component) -> tuple[int, ...] | None:
    """First operation-preserving injection with designation preserved and
    reflected, or None."""
    (sc, sf), (jc, jf) = sub, sup
    for h in chain_embeddings(sc, jc):
        if _designation_ok(h, sf.threshold, jf.threshold):
            return h
    return None


def submatrix_embedding(sub: ProductMatrix, sup: ProductMatrix) -> Embedding | None:
    """Search for a submatrix certificate of sub inside sup.

    Collects every embeddable component pair; the certificate exists iff
    the relation is total on both sides.  Identity on equal matrices."""
    pairs = []
    covered_sub = set()
    covered_sup = set()
    for si, sc in enumerate(sub.components):
        for ji, jc in enumerate(sup.components):
            h = component_embedding(sc, jc)
            if h is not None:
                pairs.append((si, ji, h))
                covered_sub.add(si)
                covered_sup.add(ji)
    if covered_sub != set(range(sub.arity)) or covered_sup != set(range(sup.arity)):
        return None
    return Embedding(sub, sup, tuple(pairs))


# -- catalog indexes -------------------------------------------------------------

@dataclass
class CatalogIndex:
    """Deduplicated catalog of product-matrix logics over one parameter,
    with lazily computed extension edges.

    edge (a, b) present means entry b's logic extends entry a's, certified
    by a submatrix embedding of b into a.  Absent edges are unknown, not
    refuted.
    """

    side: Kind
    n: int
    i: int | None
    entries: list[LogicDescriptor]
    _edge_cache: dict[tuple[int, int], Embedding | None] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)

    def index_of(self, entry: LogicDescriptor | ProductMatrix) -> int:
        mat = entry.single if isinstance(entry, LogicDescriptor) else entry
        mat = mat.normalized()
        for k, e in enumerate(self.entries):
            if e.single == mat:
                return k
        raise InputError(f"{mat} is not a catalog entry")

    def embedding(self, a: int, b: int) -> Embedding | None:
        """Certificate that entry b extends entry a (b into a), memoized."""
        key = (a, b)
        if key not in self._edge_cache:
            self._edge_cache[key] = submatrix_embedding(
                self.entries[b].single, self.entries[a].single)
        return self._edge_cache[key]

    def extensions_of(self, a: int) -> list[int]:
        """All entries with a certified extension edge from entry a."""
        return [b for b in range(len(self.entries))
                if b != a and self.embedding(a, b) is not None]

    def edges(self) -> list[tuple[int, int, Embedding]]:
        out = []
        for a in range(len(self.entries)):
            for b in self.extensions_of(a):
                out.append((a, b, self.embedding(a, b)))
        return out


def enumerate_godel_catalog(n: int, max_components: int = 3) -> CatalogIndex:
    """All normalized products (no repeated component) of subuniverse
    chains of the n-element involutive Godel chain with per-component
    order filters, up to the component bound."""
    if max_components < 1:
        raise InputError(f"max_components must be >= 1, got {max_components}")
    sizes = sorted({s.size for s in enumerate_subuniverses(godel_chain(n))},
                   reverse=True)
    comps: list[Component] = []
    for size in sizes:
        chain = godel_chain(size)
        comps.extend(component(chain, t) for t in range(size - 1, 0, -1))
    names = _canonical_godel_names()
    entries = []
    for k in range(1, max_components + 1):
        for combo in itertools.combinations(comps, k):
            mat = ProductMatrix(combo).normalized()
            entries.append(LogicDescriptor(
                (mat,), Kind.GODEL_INV, name=names.get(mat), n=n))
    return CatalogIndex(Kind.GODEL_INV, n, None, entries)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def luk_threshold(n: int, i: int, d: int) -> int:
    """Index where the filter at i/n starts on the (d+1)-element subchain."""
    return -(-i * d // n)


def _critical_ok(ds: Sequence[int]) -> bool:
    # condition (3): at most one member is a multiple of another member
    multiples = [a for a in ds if any(b != a and a % b == 0 for b in ds)]
    return len(multiples) <= 1


def enumerate_luk_catalog(n: int, i: int) -> CatalogIndex:
    """Products of distinct divisor chains of the (n+1)-valued Lukasiewicz
    chain satisfying the critical-product conditions, each carrying the
    power filter at i/n intersected with the product."""
    if not 1 <= i <= n:
        raise InputError(f"need 1 <= i <= n, got i={i}, n={n}")
    divs = _divisors(n)
    entries = []
    for k in range(1, len(divs) + 1):
        for ds in itertools.combinations(divs, k):
            if not _critical_ok(ds):
                continue
            mat = matrix(*((mv_chain(d + 1), luk_threshold(n, i, d))
                           for d in ds)).normalized()
            name = None
            if len(ds) == 1:
                name = f"L({ds[0]},{luk_threshold(n, i, ds[0])})"
            entries.append(LogicDescriptor((mat,), Kind.MV, name=name, n=n, i=i))
    return CatalogIndex(Kind.MV, n, i, entries)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(math.isqrt(p)) + 1))


def compute_X(n: int, i: int) -> list[int]:
    """Primes p dividing n whose induced filter on the (p+1)-element chain
    starts at or below 1/2."""
    if not 1 <= i <= n:
        raise InputError(f"need 1 <= i <= n, got i={i}, n={n}")
    return [p for p in _divisors(n)
            if _is_prime(p) and 2 * luk_threshold(n, i, p) <= p]


def build_x_product(n: int, i: int, primes: Iterable[int]) -> LogicDescriptor:
    """The saturated product matrix over a finite subset of X."""
    ps = sorted(set(primes))
    if not ps:
        raise InputError("need a nonempty set of primes")
    x = compute_X(n, i)
    for p in ps:
        if p not in x:
            raise InputError(f"{p} is not in X({n},{i}) = {x}")
    mat = matrix(*((mv_chain(p + 1), luk_threshold(n, i, p)) for p in ps))
    return LogicDescriptor((mat.normalized(),), Kind.MV, n=n, i=i,
                           thresholds=tuple(luk_threshold(n, i, p) for p in ps))
