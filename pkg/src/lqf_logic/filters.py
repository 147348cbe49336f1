"""
Filters and congruences of finite orthomodular lattices.

e_d is the dual central cover throughout. An OML-filter is an upward closed,
meet-closed, perspectivity-closed subset; an LQF-filter is additionally
closed under e_d. On a finite lattice every filter is principal, so
enumeration runs over the up-sets [a, 1].
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Sequence

from .core import (
    are_perspective,
    center,
    congruence_from_pairs,
    dual_central_cover,
    join_congruences,
)
from .exceptions import CrossCheckError
from .lattice import CongruencePartition, Element, FiniteOml, subalgebra
from .models import (
    CenterCorrespondenceReport,
    CepReport,
    ClosureDiscrepancy,
    FilterClassification,
    FilterCongruenceReport,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FilterSet:
    """A subset of a lattice, usually a filter."""

    parent: FiniteOml
    members: FrozenSet[int]

    @classmethod
    def of(cls, L: FiniteOml, items: Iterable[Element]) -> "FilterSet":
        return cls(L, frozenset(L.index(x) for x in items))

    def __contains__(self, x: object) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)

    @property
    def is_proper(self) -> bool:
        return self.parent.bottom not in self.members

    @property
    def names(self) -> List[str]:
        return [self.parent.name_of(x) for x in sorted(self.members)]

    @property
    def generator(self) -> int:
        """The meet of the members (the least element when the set is a filter)."""
        return self.parent.meet_all(self.members)


def _ed_table(L: FiniteOml) -> List[int]:
    return [dual_central_cover(L, x) for x in L.elements]


def _increasing(L: FiniteOml, S: FrozenSet[int]) -> bool:
    return bool(S) and all(y in S for x in S for y in L.up_set(x))


def _meet_closed(L: FiniteOml, S: FrozenSet[int]) -> bool:
    return all(L.meet(x, y) in S for x in S for y in S)


def _perspective_closed(L: FiniteOml, S: FrozenSet[int]) -> bool:
    return all(y in S for x in S for y in L.elements if are_perspective(L, x, y))


def _ed_closed(L: FiniteOml, S: FrozenSet[int], ed: Sequence[int]) -> bool:
    return all(ed[x] in S for x in S)


def is_lqf_filter(L: FiniteOml, S: FrozenSet[int]) -> bool:
    ed = _ed_table(L)
    return (
        _increasing(L, S)
        and _meet_closed(L, S)
        and _perspective_closed(L, S)
        and _ed_closed(L, S, ed)
    )


def is_oml_filter(L: FiniteOml, S: FrozenSet[int]) -> bool:
    return _increasing(L, S) and _meet_closed(L, S) and _perspective_closed(L, S)


def enumerate_oml_filters(L: FiniteOml) -> List[FilterSet]:
    """OML-filters of L, ordered by their least element."""
    ups = (frozenset(L.up_set(a)) for a in L.elements)
    return [FilterSet(L, S) for S in ups if is_oml_filter(L, S)]


def enumerate_lqf_filters(L: FiniteOml) -> List[FilterSet]:
    """LQF-filters of L, ordered by their least element."""
    ups = (frozenset(L.up_set(a)) for a in L.elements)
    return [FilterSet(L, S) for S in ups if is_lqf_filter(L, S)]


def generate_filter(L: FiniteOml, generators: Iterable[Element]) -> FilterSet:
    """
    The LQF-filter generated by a subset: [e_d(m), 1] with m the meet of the subset.

    The empty meet is 1, so the empty subset generates {1}.
    """
    m = L.meet_all(L.index(g) for g in generators)
    return FilterSet(L, frozenset(L.up_set(dual_central_cover(L, m))))


def generate_filter_brute(L: FiniteOml, generators: Iterable[Element]) -> FilterSet:
    """Intersection of all LQF-filters containing the subset."""
    wanted = {L.index(g) for g in generators}
    members = frozenset(L.elements)
    for F in enumerate_lqf_filters(L):
        if wanted <= F.members:
            members &= F.members
    return FilterSet(L, members)


def generated_is_proper(L: FiniteOml, generators: Sequence[Element]) -> bool:
    """Whether every finite sub-collection has a nonzero e_d of its meet."""
    items = [L.index(g) for g in generators]
    for k in range(len(items) + 1):
        for subset in itertools.combinations(items, k):
            if dual_central_cover(L, L.meet_all(subset)) == L.bottom:
                return False
    return True


def _is_maximal_boolean_filter(L: FiniteOml, S: FrozenSet[int]) -> bool:
    zs = center(L)
    inside = [z for z in zs if z in S]
    if L.bottom in inside or not inside:
        return False
    return all(z in S or L.neg(z) in S for z in zs)


def classify_filter(L: FiniteOml, subset: Iterable[Element]) -> FilterClassification:
    """
    Compute the closure flags of a subset independently.

    Maximality is decided three ways for proper LQF-filters: the criterion
    "x in F or ~e_d(x) in F for every x", inclusion-maximality among proper
    LQF-filters, and maximality of F meet Z(L) among Boolean filters of Z(L).

    Raises:
        CrossCheckError: If the three maximality verdicts disagree
    """
    S = frozenset(L.index(x) for x in subset)
    ed = _ed_table(L)
    increasing = _increasing(L, S)
    meet_closed = _meet_closed(L, S)
    perspective_closed = _perspective_closed(L, S)
    ed_closed = _ed_closed(L, S, ed)
    proper = L.bottom not in S
    oml = increasing and meet_closed and perspective_closed
    lqf = oml and ed_closed
    candidate = lqf and proper
    by_criterion = candidate and all(x in S or L.neg(ed[x]) in S for x in L.elements)
    by_inclusion = candidate and not any(
        F.is_proper and S < F.members for F in enumerate_lqf_filters(L)
    )
    by_center = candidate and _is_maximal_boolean_filter(L, S)
    if not by_criterion == by_inclusion == by_center:
        logger.warning(
            f"maximality disagreement on {sorted(S)} in {L.name}: "
            f"{by_criterion}, {by_inclusion}, {by_center}"
        )
        raise CrossCheckError(
            f"maximality tests disagree on {[L.name_of(x) for x in sorted(S)]}", "classify_filter"
        )
    return FilterClassification(
        members=[L.name_of(x) for x in sorted(S)],
        increasing=increasing,
        meet_closed=meet_closed,
        perspective_closed=perspective_closed,
        ed_closed=ed_closed,
        proper=proper,
        is_oml_filter=oml,
        is_lqf_filter=lqf,
        maximal=by_criterion,
        maximal_by_inclusion=by_inclusion,
        maximal_by_center=by_center,
    )


def closure_discrepancies(L: FiniteOml) -> List[ClosureDiscrepancy]:
    """Principal up-sets closed under exactly one of e_d and perspectivity."""
    ed = _ed_table(L)
    found = []
    for a in L.elements:
        S = frozenset(L.up_set(a))
        by_ed = _ed_closed(L, S, ed)
        by_perspectivity = _perspective_closed(L, S)
        if by_ed != by_perspectivity:
            found.append(
                ClosureDiscrepancy(
                    generator=L.name_of(a), ed_closed=by_ed, perspective_closed=by_perspectivity
                )
            )
    return found


# ---------------------------------------------------------------------------
# Congruences
# ---------------------------------------------------------------------------


def _set_partitions(n: int) -> Iterator[List[int]]:
    """Restricted growth strings of length n."""
    labels = [0] * n

    def grow(i: int, top: int) -> Iterator[List[int]]:
        if i == n:
            yield list(labels)
            return
        for label in range(top + 2):
            labels[i] = label
            yield from grow(i + 1, max(top, label))

    if n == 0:
        yield []
        return
    yield from grow(1, 0)


def enumerate_congruences(L: FiniteOml, raw_limit: int = 8) -> List[CongruencePartition]:
    """
    Congruences compatible with &, |, ~ and e_d.

    Built as joins of principal congruences. For lattices with at most
    ``raw_limit`` elements the result is compared with a scan of every
    partition of the carrier.

    Raises:
        CrossCheckError: If the two enumerations differ
    """
    ed = _ed_table(L)
    unary: List[Callable[[int], int]] = [ed.__getitem__]
    principal = {
        congruence_from_pairs(L, [(a, b)], unary)
        for a, b in itertools.combinations(L.elements, 2)
    }
    diagonal = CongruencePartition.from_labels(L, list(L.elements))
    found = {diagonal}
    frontier = [diagonal]
    while frontier:
        current = frontier.pop()
        for theta in principal:
            joined = join_congruences(current, theta)
            if joined not in found:
                found.add(joined)
                frontier.append(joined)
    result = sorted(found, key=lambda c: (-len(c.blocks), c.blocks))
    if L.size <= raw_limit:
        raw = {
            CongruencePartition.from_labels(L, labels)
            for labels in _set_partitions(L.size)
        }
        compatible = {c for c in raw if c.is_compatible(unary)}
        if compatible != found:
            raise CrossCheckError(
                f"{len(found)} congruences by principal joins, {len(compatible)} by partition scan",
                "enumerate_congruences",
            )
    logger.debug(f"{L.name}: {len(result)} congruences")
    return result


def filter_of_congruence(theta: CongruencePartition) -> FilterSet:
    """F_theta = {x : x is related to 1}."""
    L = theta.parent
    labels = theta.block_of
    return FilterSet(L, frozenset(x for x in L.elements if labels[x] == labels[L.top]))


def congruence_of_filter(F: FilterSet) -> CongruencePartition:
    """theta_F = {(x, y) : x R y in F}, as a partition."""
    L = F.parent

    def related(x: int, y: int) -> bool:
        return L.join(L.meet(x, y), L.meet(L.neg(x), L.neg(y))) in F.members

    labels = [min(x for x in L.elements if related(x, y)) for y in L.elements]
    return CongruencePartition.from_labels(L, labels)


def _describe(theta: CongruencePartition) -> str:
    L = theta.parent
    return "|".join("{" + ",".join(L.name_of(x) for x in block) + "}" for block in theta.blocks)


def filter_congruence_maps(L: FiniteOml) -> FilterCongruenceReport:
    """
    Verify that theta -> F_theta and F -> theta_F are inverse, monotone bijections.

    Congruences are those compatible with e_d as an extra unary operation.
    """
    congruences = enumerate_congruences(L)
    filters = enumerate_lqf_filters(L)
    to_filter = {theta: filter_of_congruence(theta) for theta in congruences}
    to_congruence = {F.members: congruence_of_filter(F) for F in filters}
    filter_sets = {F.members for F in filters}
    bijective = (
        len(congruences) == len(filters)
        and all(to_filter[theta].members in filter_sets for theta in congruences)
        and all(to_congruence[to_filter[theta].members] == theta for theta in congruences)
        and all(to_filter[to_congruence[F.members]].members == F.members for F in filters)
    )
    order_preserving = all(
        first.refines(second) == (to_filter[first].members <= to_filter[second].members)
        for first in congruences
        for second in congruences
    )
    pairs = [
        [_describe(theta), L.name_of(to_filter[theta].generator)] for theta in congruences
    ]
    logger.info(
        f"{L.name}: {len(congruences)} congruences, {len(filters)} LQF-filters, "
        f"bijective={bijective}"
    )
    return FilterCongruenceReport(
        lattice=L.name,
        congruences=len(congruences),
        filters=len(filters),
        bijective=bijective,
        order_preserving=order_preserving,
        pairs=pairs,
    )


def center_correspondence(L: FiniteOml) -> CenterCorrespondenceReport:
    """
    Verify G -> F_LQF(G) from Boolean filters of Z(L) onto LQF-filters of L.

    The inverse is F -> F meet Z(L).
    """
    zs = center(L)
    boolean_filters = [frozenset(c for c in zs if L.le(z, c)) for z in zs]
    lqf_filters = [F.members for F in enumerate_lqf_filters(L)]
    image: Dict[FrozenSet[int], FrozenSet[int]] = {
        G: generate_filter(L, G).members for G in boolean_filters
    }
    back = {F: frozenset(F & set(zs)) for F in lqf_filters}
    bijective = (
        len(set(image.values())) == len(boolean_filters)
        and set(image.values()) == set(lqf_filters)
        and all(back[image[G]] == G for G in boolean_filters)
    )
    order_preserving = all(
        (G1 <= G2) == (image[G1] <= image[G2]) for G1 in boolean_filters for G2 in boolean_filters
    ) and all((F1 <= F2) == (back[F1] <= back[F2]) for F1 in lqf_filters for F2 in lqf_filters)
    recovers = all(generate_filter(L, back[F]).members == F for F in lqf_filters)
    return CenterCorrespondenceReport(
        lattice=L.name,
        boolean_filters=len(boolean_filters),
        lqf_filters=len(lqf_filters),
        bijective=bijective,
        order_preserving=order_preserving,
        recovers_filters=recovers,
    )


def cep_probe(A: FiniteOml, generators: Iterable[Element]) -> CepReport:
    """
    Check F = B meet generate_filter_A(F) for every e_d-closed filter F of B.

    B is the sub-OML of A generated by the given elements and closed under
    A's e_d.
    """
    ed = _ed_table(A)
    B, inclusion = subalgebra(A, generators, unary=[ed.__getitem__], name=f"sub({A.name})")
    carrier = set(inclusion)
    failures: List[str] = []
    checked = 0
    for b in B.elements:
        F = frozenset(inclusion[y] for y in B.up_set(b))
        if not all(ed[x] in F for x in F):
            continue
        checked += 1
        extended = generate_filter(A, F).members
        if frozenset(extended & carrier) != F:
            failures.append(A.name_of(inclusion[b]))
    return CepReport(
        ambient=A.name,
        subalgebra=[A.name_of(x) for x in inclusion],
        filters_checked=checked,
        failures=failures,
    )

