"""
Lattice-theoretic operations on finite orthomodular lattices.

Sasaki projections, commutation, the center and central covers, complements
and perspectivity, direct decomposition by central elements, the modularity
detectors and diagnostics for the w_a / w_a* maps attached to an element.
Functions take a ``FiniteOml`` and element indices; names are resolved by the
callers that deal with user input.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .exceptions import CrossCheckError, HypothesisViolationError, PreconditionError
from .lattice import CongruencePartition, FiniteOml, IntervalAlgebra, interval
from .models import MapDiagnosticsReport, ModularityReport

logger = logging.getLogger(__name__)


def sasaki(L: FiniteOml, a: int, x: int) -> int:
    """Sasaki projection of x onto a: a & (~a | x)."""
    return L.meet(a, L.join(L.neg(a), x))


def commutes(L: FiniteOml, a: int, b: int) -> bool:
    """Whether a = (a | b) & (a | ~b)."""
    return L.meet(L.join(a, b), L.join(a, L.neg(b))) == a


def is_central(L: FiniteOml, z: int) -> bool:
    """Whether every a decomposes as (a & z) | (a & ~z)."""
    nz = L.neg(z)
    return all(L.join(L.meet(a, z), L.meet(a, nz)) == a for a in L.elements)


@lru_cache(maxsize=128)
def _center(L: FiniteOml) -> Tuple[int, ...]:
    members = tuple(z for z in L.elements if is_central(L, z))
    by_commutation = tuple(z for z in L.elements if all(commutes(L, a, z) for a in L.elements))
    if members != by_commutation:
        raise CrossCheckError(
            f"decomposition test gives {members}, commutation test gives {by_commutation}",
            "center",
        )
    inside = set(members)
    for x in members:
        if L.neg(x) not in inside:
            raise CrossCheckError(f"center of {L.name} is not closed under ~", "center")
        for y in members:
            if L.meet(x, y) not in inside or L.join(x, y) not in inside:
                raise CrossCheckError(f"center of {L.name} is not a sublattice", "center")
            for z in members:
                if L.meet(x, L.join(y, z)) != L.join(L.meet(x, y), L.meet(x, z)):
                    raise CrossCheckError(f"center of {L.name} is not distributive", "center")
    logger.debug(f"center({L.name}) has {len(members)} elements")
    return members


def center(L: FiniteOml) -> List[int]:
    """
    The center Z(L), checked to be a Boolean subalgebra.

    Membership is computed twice (decomposition test and commutation with
    every element) and the two answers must coincide.

    Raises:
        CrossCheckError: If the two membership tests disagree or the result
            is not a Boolean subalgebra
    """
    return list(_center(L))


@lru_cache(maxsize=128)
def _central_covers(L: FiniteOml) -> Tuple[int, ...]:
    members = _center(L)
    return tuple(L.meet_all(z for z in members if L.le(a, z)) for a in L.elements)


def central_cover(L: FiniteOml, a: int) -> int:
    """e(a): the least central element above a."""
    return _central_covers(L)[a]


def dual_central_cover(L: FiniteOml, a: int) -> int:
    """e_d(a) = ~e(~a): the greatest central element below a."""
    value = L.neg(central_cover(L, L.neg(a)))
    below = L.join_all(z for z in _center(L) if L.le(z, a))
    if value != below:
        raise CrossCheckError(
            f"~e(~{L.name_of(a)}) = {L.name_of(value)} but the largest central element below "
            f"is {L.name_of(below)}",
            "dual_central_cover",
        )
    return value


def is_complement(L: FiniteOml, a: int, c: int) -> bool:
    return L.join(a, c) == L.top and L.meet(a, c) == L.bottom


def complements(L: FiniteOml, a: int) -> List[int]:
    """All complements of a, by brute force."""
    return [c for c in L.elements if is_complement(L, a, c)]


def complements_via_c(L: FiniteOml, a: int, x: int) -> int:
    """
    c_a(x) = (x & ~(x & a)) | ~(x | a), always a complement of a.

    Raises:
        CrossCheckError: If the returned value is not a complement of a
    """
    value = L.join(L.meet(x, L.neg(L.meet(x, a))), L.neg(L.join(x, a)))
    if not is_complement(L, a, value):
        raise CrossCheckError(
            f"c_{L.name_of(a)}({L.name_of(x)}) = {L.name_of(value)} is not a complement",
            "complements_via_c",
        )
    return value


def perspective(L: FiniteOml, a: int, b: int) -> Optional[int]:
    """
    Smallest common complement of a and b, or None.

    The search over common complements is cross-checked against the
    criterion "some x has a | x = b | x and a & x = b & x", whose c_a(x) is
    then a common complement as well.

    Raises:
        CrossCheckError: If the two tests disagree
    """
    common = next(
        (c for c in L.elements if is_complement(L, a, c) and is_complement(L, b, c)), None
    )
    balanced = next(
        (
            x
            for x in L.elements
            if L.join(a, x) == L.join(b, x) and L.meet(a, x) == L.meet(b, x)
        ),
        None,
    )
    if (common is None) != (balanced is None):
        raise CrossCheckError(
            f"common complement search and balancing criterion disagree on "
            f"({L.name_of(a)}, {L.name_of(b)})",
            "perspective",
        )
    if balanced is not None:
        c = complements_via_c(L, a, balanced)
        if not is_complement(L, b, c):
            raise CrossCheckError(
                f"c_a({L.name_of(balanced)}) is not a complement of {L.name_of(b)}", "perspective"
            )
    return common


@lru_cache(maxsize=64)
def _perspectivity_table(L: FiniteOml) -> Dict[Tuple[int, int], Optional[int]]:
    table: Dict[Tuple[int, int], Optional[int]] = {}
    for a in L.elements:
        for b in L.elements:
            if b < a:
                table[(a, b)] = table[(b, a)]
            else:
                table[(a, b)] = perspective(L, a, b)
    return table


def perspectivity_table(L: FiniteOml) -> Dict[Tuple[int, int], Optional[int]]:
    """Smallest common complement for every ordered pair of elements."""
    return dict(_perspectivity_table(L))


def are_perspective(L: FiniteOml, a: int, b: int) -> bool:
    return _perspectivity_table(L)[(a, b)] is not None


# ---------------------------------------------------------------------------
# Direct decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FactorDecomposition:
    """
    The decomposition of L by a central element z.

    ``projection[x]`` is the index of x & z in ``factor`` (this is the
    isomorphism from the quotient by ``congruence`` onto [0,z]), and
    ``embedding[x]`` the pair (x & z, x & ~z) of indices in ``factor`` and
    ``cofactor``.
    """

    parent: FiniteOml
    z: int
    congruence: CongruencePartition
    factor: IntervalAlgebra
    cofactor: IntervalAlgebra
    projection: Tuple[int, ...]
    embedding: Tuple[Tuple[int, int], ...]

    def quotient_map(self) -> Dict[int, int]:
        """Block number of the congruence -> element of the factor."""
        return {b: self.projection[block[0]] for b, block in enumerate(self.congruence.blocks)}


def factor_congruence(L: FiniteOml, z: int) -> CongruencePartition:
    """theta_z: x ~ y iff x & z = y & z."""
    return CongruencePartition.from_labels(L, [L.meet(x, z) for x in L.elements])


def factor_decompose(L: FiniteOml, z: int) -> FactorDecomposition:
    """
    Split L along a central element z.

    Args:
        L: The lattice
        z: A central element

    Returns:
        FactorDecomposition with theta_z, the isomorphism of the quotient onto
        [0,z] and the embedding of L into [0,z] x [0,~z]

    Raises:
        PreconditionError: If z is not central
        CrossCheckError: If the computed maps fail to be isomorphisms
    """
    if z not in _center(L):
        raise PreconditionError(f"{L.name_of(z)} is not central in {L.name}", "factor_decompose")
    nz = L.neg(z)
    theta = factor_congruence(L, z)
    if not theta.is_compatible():
        raise CrossCheckError(f"theta_{L.name_of(z)} is not a congruence", "factor_decompose")
    upper = interval(L, z)
    lower = interval(L, nz)
    projection = tuple(upper.from_parent(L.meet(x, z)) for x in L.elements)
    embedding = tuple(
        (upper.from_parent(L.meet(x, z)), lower.from_parent(L.meet(x, nz))) for x in L.elements
    )
    decomposition = FactorDecomposition(L, z, theta, upper, lower, projection, embedding)

    images = decomposition.quotient_map()
    if sorted(images.values()) != list(upper.lattice.elements):
        raise CrossCheckError("quotient map is not a bijection onto [0,z]", "factor_decompose")
    if len(set(embedding)) != L.size or L.size != upper.lattice.size * lower.lattice.size:
        raise CrossCheckError("embedding into the product is not a bijection", "factor_decompose")
    F = upper.lattice
    for x in L.elements:
        if projection[L.neg(x)] != F.neg(projection[x]):
            raise CrossCheckError("quotient map does not preserve ~", "factor_decompose")
        for y in L.elements:
            if projection[L.meet(x, y)] != F.meet(projection[x], projection[y]):
                raise CrossCheckError("quotient map does not preserve &", "factor_decompose")
            if projection[L.join(x, y)] != F.join(projection[x], projection[y]):
                raise CrossCheckError("quotient map does not preserve |", "factor_decompose")
    return decomposition


def is_directly_indecomposable(L: FiniteOml) -> bool:
    """
    Whether L is nontrivial with center {0, 1}.

    Cross-checked against "e(a) = 1 for every a != 0" and against the
    absence of a central element giving a decomposition into two nontrivial
    factors.
    """
    if L.size < 2:
        return False
    members = _center(L)
    by_center = set(members) == {L.bottom, L.top}
    by_cover = all(central_cover(L, a) == L.top for a in L.elements if a != L.bottom)
    nontrivial = [z for z in members if z not in (L.bottom, L.top)]
    splits = [factor_decompose(L, z) for z in nontrivial]
    by_factors = not any(d.factor.lattice.size > 1 and d.cofactor.lattice.size > 1 for d in splits)
    if not by_center == by_cover == by_factors:
        raise CrossCheckError(
            f"center={by_center}, covers={by_cover}, factors={by_factors} on {L.name}",
            "is_directly_indecomposable",
        )
    return by_center


def find_isomorphism(L1: FiniteOml, L2: FiniteOml) -> Optional[Tuple[int, ...]]:
    """
    An order and orthocomplement preserving bijection L1 -> L2, if one exists.

    Plain backtracking, pruned by up/down-set sizes; meant for lattices of a
    few dozen elements.
    """
    if L1.size != L2.size:
        return None

    def profile(L: FiniteOml, x: int) -> Tuple[int, int]:
        return len(L.down_set(x)), len(L.up_set(x))

    p1 = [profile(L1, x) for x in L1.elements]
    p2 = [profile(L2, y) for y in L2.elements]
    if sorted(p1) != sorted(p2):
        return None
    order = sorted(L1.elements, key=lambda x: (p1[x], x))
    mapping: Dict[int, int] = {}
    used: Set[int] = set()

    def consistent(x: int, y: int) -> bool:
        for u, v in mapping.items():
            if L1.le(x, u) != L2.le(y, v) or L1.le(u, x) != L2.le(v, y):
                return False
        nx = L1.neg(x)
        if nx == x:
            return L2.neg(y) == y
        if nx in mapping and mapping[nx] != L2.neg(y):
            return False
        return True

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        x = order[k]
        for y in L2.elements:
            if y in used or p2[y] != p1[x] or not consistent(x, y):
                continue
            mapping[x] = y
            used.add(y)
            if extend(k + 1):
                return True
            del mapping[x]
            used.discard(y)
        return False

    if not extend(0):
        return None
    return tuple(mapping[x] for x in L1.elements)


# ---------------------------------------------------------------------------
# Modularity
# ---------------------------------------------------------------------------


def _modular_law_witness(L: FiniteOml) -> Optional[Tuple[int, int, int]]:
    for a in L.elements:
        for b in L.elements:
            ab = L.meet(a, b)
            for x in L.elements:
                xb = L.meet(x, b)
                if L.join(xb, ab) != L.meet(L.join(xb, a), b):
                    return a, b, x
    return None


def _pentagon(L: FiniteOml) -> Optional[Tuple[int, int, int, int, int]]:
    for x in L.elements:
        for y in L.elements:
            if not L.lt(x, y):
                continue
            for z in L.elements:
                if L.join(x, z) == L.join(y, z) and L.meet(x, z) == L.meet(y, z):
                    return L.meet(x, z), x, y, z, L.join(x, z)
    return None


def _perspective_chain(L: FiniteOml) -> Optional[Tuple[int, int, int]]:
    table = _perspectivity_table(L)
    for x in L.elements:
        for y in L.elements:
            if L.lt(x, y):
                c = table[(x, y)]
                if c is not None:
                    return x, y, c
    return None


def modularity_suite(L: FiniteOml) -> ModularityReport:
    """
    Three independent detectors of non-modularity.

    A violation of (x & b) | (a & b) = ((x & b) | a) & b, a pentagon
    sublattice and a pair x < y of perspective elements are searched
    separately; either all three exist or none does.

    Raises:
        CrossCheckError: If the detectors disagree
    """
    witness = _modular_law_witness(L)
    n5 = _pentagon(L)
    chain = _perspective_chain(L)
    found = [witness is not None, n5 is not None, chain is not None]
    if len(set(found)) != 1:
        logger.warning(f"modularity detectors disagree on {L.name}: {found}")
        raise CrossCheckError(f"modularity detectors disagree on {L.name}: {found}", "modularity")

    def named(items: Optional[Sequence[int]]) -> Optional[List[str]]:
        return [L.name_of(i) for i in items] if items is not None else None

    return ModularityReport(
        is_modular=witness is None,
        witness=named(witness),
        n5=named(n5),
        perspective_pair=named(chain),
    )


# ---------------------------------------------------------------------------
# Maps attached to an element
# ---------------------------------------------------------------------------


def _first_order_violation(L: FiniteOml, f: Sequence[int]) -> Optional[Tuple[int, int]]:
    for x in L.elements:
        for y in L.elements:
            if L.le(x, y) and not L.le(f[x], f[y]):
                return x, y
    return None


def _is_order_isomorphism(
    L: FiniteOml, f: Sequence[int], domain: Sequence[int], codomain: Sequence[int]
) -> bool:
    image = [f[x] for x in domain]
    if sorted(image) != sorted(codomain) or len(set(image)) != len(image):
        return False
    return all(L.le(x, y) == L.le(f[x], f[y]) for x in domain for y in domain)


def map_diagnostics(
    L: FiniteOml,
    a: int,
    w: Optional[Sequence[int]] = None,
    wstar: Optional[Sequence[int]] = None,
    claim_hypotheses: bool = False,
) -> MapDiagnosticsReport:
    """
    Diagnose unary tables w_a and w_a* attached to a nonzero element a.

    For w_a, the relative-complement law on [0,a] and its Sasaki form on all
    of L are evaluated independently and compared. When both tables are
    given, the hypotheses w_a w_a* = id, w_a* w_a = mu_a (both maps
    order-preserving) are checked, together with their conclusions: w_a* is
    an order isomorphism onto [0,a], w_a restricted to [0,a] is an order
    isomorphism onto L, and w_a*(a) = a exactly when a = 1.

    Args:
        L: The lattice
        a: A nonzero element
        w: Table of w_a over the whole carrier (only [0,a] matters for the
            relative-complement laws)
        wstar: Table of w_a*
        claim_hypotheses: Treat the tables as claimed to satisfy the order
            hypotheses; a non-monotone table is then an error

    Raises:
        PreconditionError: If a = 0 or a table has the wrong length or range
        HypothesisViolationError: If hypotheses are claimed and a table is not
            order-preserving
    """
    if a == L.bottom:
        raise PreconditionError("a must be nonzero", "map_diagnostics")
    for label, table in (("w", w), ("wstar", wstar)):
        if table is not None and (
            len(table) != L.size or any(not 0 <= v < L.size for v in table)
        ):
            raise PreconditionError(
                f"{label} must map each of the {L.size} elements into L", "map_diagnostics"
            )

    below = L.down_set(a)
    report: Dict[str, Optional[bool]] = {}
    if w is not None:
        relative = all(w[L.meet(L.neg(x), a)] == L.neg(w[x]) for x in below)
        sasaki_form = all(
            w[sasaki(L, a, L.neg(x))] == L.neg(w[L.meet(x, a)]) for x in L.elements
        )
        report["preserves_relative_complements"] = relative
        report["sasaki_complement_law"] = sasaki_form
        report["relative_complement_equivalence"] = relative == sasaki_form

    if w is not None and wstar is not None:
        violation = None
        for table in (w, wstar):
            violation = violation or _first_order_violation(L, table)
        if claim_hypotheses and violation is not None:
            x, y = violation
            raise HypothesisViolationError(
                "maps claimed to satisfy the order hypotheses are not order-preserving",
                (L.name_of(x), L.name_of(y)),
            )
        hypotheses = (
            violation is None
            and all(w[wstar[x]] == x for x in L.elements)
            and all(wstar[w[x]] == sasaki(L, a, x) for x in L.elements)
        )
        report["hypotheses_hold"] = hypotheses
        report["wstar_order_isomorphism"] = _is_order_isomorphism(L, wstar, list(L.elements), below)
        report["w_restricted_isomorphism"] = _is_order_isomorphism(L, w, below, list(L.elements))
        report["wstar_fixes_a"] = wstar[a] == a
        if hypotheses and report["wstar_fixes_a"] != (a == L.top):
            raise CrossCheckError("w_a*(a) = a must hold exactly when a = 1", "map_diagnostics")

    return MapDiagnosticsReport(a=L.name_of(a), a_is_top=a == L.top, **report)


# ---------------------------------------------------------------------------
# Congruences
# ---------------------------------------------------------------------------


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[max(rx, ry)] = min(rx, ry)
        return True


def congruence_from_pairs(
    L: FiniteOml,
    pairs: Iterable[Tuple[int, int]],
    unary: Sequence[Callable[[int], int]] = (),
) -> CongruencePartition:
    """
    The smallest congruence identifying every given pair.

    Compatibility is with &, |, ~ and the extra unary operations; each newly
    merged pair pushes its translates until nothing changes.
    """
    uf = _UnionFind(L.size)
    work: List[Tuple[int, int]] = []
    for x, y in pairs:
        if uf.union(x, y):
            work.append((x, y))
    while work:
        x, y = work.pop()
        images = [(L.neg(x), L.neg(y))] + [(u(x), u(y)) for u in unary]
        for c in L.elements:
            images.append((L.meet(x, c), L.meet(y, c)))
            images.append((L.join(x, c), L.join(y, c)))
        for p, q in images:
            if uf.union(p, q):
                work.append((p, q))
    return CongruencePartition.from_labels(L, [uf.find(x) for x in L.elements])


def join_congruences(
    first: CongruencePartition, second: CongruencePartition
) -> CongruencePartition:
    """Smallest partition coarser than both (the join in the congruence lattice)."""
    L = first.parent
    uf = _UnionFind(L.size)
    for partition in (first, second):
        for block in partition.blocks:
            for x in block[1:]:
                uf.union(block[0], x)
    return CongruencePartition.from_labels(L, [uf.find(x) for x in L.elements])


def internal_dimension_audit(L: FiniteOml) -> Dict[str, bool]:
    """
    Laws of the internal dimension function with w0 taken as the central cover.

    Keys: ``faithful`` (w0(x) = 0 iff x = 0), ``join`` (w0(x | y) =
    w0(x) | w0(y)), ``idempotent``, ``meet_absorption`` (w0(x & w0(y)) =
    w0(x) & w0(y)) and ``indicator`` (w0 is the 0/1 indicator, so equal w0
    values mean "both zero or both nonzero"; true exactly on directly
    indecomposable lattices).
    """
    e = _central_covers(L)
    r = L.elements
    audit = {
        "faithful": all((e[x] == L.bottom) == (x == L.bottom) for x in r),
        "join": all(e[L.join(x, y)] == L.join(e[x], e[y]) for x in r for y in r),
        "idempotent": all(e[e[x]] == e[x] for x in r),
        "meet_absorption": all(e[L.meet(x, e[y])] == L.meet(e[x], e[y]) for x in r for y in r),
        "indicator": all(e[x] == (L.bottom if x == L.bottom else L.top) for x in r),
    }
    logger.debug(f"internal dimension audit on {L.name}: {audit}")
    return audit
