"""
Finite-model services.

Countermodel search over the catalog, the two-variable decision procedure
through a finite free algebra, uniqueness of w0 on directly indecomposable
lattices, the propagation refuter showing that no finite LQF-algebra is
nontrivial, and semantic audits of the calculus.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .calculus import AXIOMS, Step
from .conditions import LQF_CONDITIONS, check_conditions
from .core import center, central_cover, dual_central_cover, is_directly_indecomposable
from .exceptions import PreconditionError, UnsupportedQueryError
from .lattice import FiniteOml, boolean, closure, interval, mo, product, subalgebra
from .models import (
    CountermodelResult,
    Decide2Result,
    RefutationTrace,
    TraceEntry,
    W0UniquenessReport,
)
from .terms import (
    ONE,
    Equation,
    Join,
    Meet,
    Neg,
    Structure,
    Term,
    central_surrogate,
    decode_valuation,
    enumerate_term_classes,
    eval_term,
    find_counter_valuation,
    named_valuation,
    parse,
    parse_equation,
    uses_w,
    value_vector,
    variables,
)

logger = logging.getLogger(__name__)

DISCRIMINATOR = parse("(x & ~ed(R(x, y))) | (z & ed(R(x, y)))")


def _as_equation(eq: Union[Equation, str]) -> Equation:
    return parse_equation(eq) if isinstance(eq, str) else eq


# ---------------------------------------------------------------------------
# Countermodels
# ---------------------------------------------------------------------------


def countermodel(eq: Union[Equation, str], lattices: Sequence[FiniteOml]) -> CountermodelResult:
    """
    First (lattice, valuation) falsifying an OML equation.

    Lattices are searched in the given order and valuations in lexicographic
    order, so the witness is deterministic.
    """
    equation = _as_equation(eq)
    scope = [L.name for L in lattices]
    for L in lattices:
        counter = find_counter_valuation(L, equation)
        if counter is not None:
            logger.info(f"countermodel for {equation} in {L.name}")
            return CountermodelResult(
                found=True, lattice=L.name, valuation=named_valuation(L, counter), scope=scope
            )
    logger.info(f"no countermodel for {equation} in {len(scope)} lattices")
    return CountermodelResult(found=False, scope=scope)


# ---------------------------------------------------------------------------
# Two-generated free algebra
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FreeAlgebra2:
    """
    The subalgebra of an ambient lattice generated by two elements.

    ``generators`` are indices in ``algebra``; ``inclusion`` maps algebra
    indices to ambient indices.
    """

    ambient: FiniteOml
    algebra: FiniteOml
    inclusion: Tuple[int, ...]
    generators: Tuple[int, int]

    @property
    def size(self) -> int:
        return self.algebra.size


@lru_cache(maxsize=1)
def free_algebra2() -> FreeAlgebra2:
    """
    Sweep generator pairs g1 < g2 of product(boolean(4), mo(2)) by index.

    The pair whose closure is largest wins; the sweep stops as soon as a
    pair generates the whole ambient algebra.
    """
    ambient = product(boolean(4), mo(2))
    best: Tuple[int, int, int] = (0, ambient.bottom, ambient.top)
    for g1, g2 in itertools.combinations(ambient.elements, 2):
        size = len(closure(ambient, [g1, g2], limit=ambient.size))
        if size > best[0]:
            best = (size, g1, g2)
            logger.debug(f"free algebra sweep: ({g1}, {g2}) generates {size} elements")
        if size == ambient.size:
            break
    _, g1, g2 = best
    algebra, inclusion = subalgebra(ambient, [g1, g2], name="F2")
    position = {x: i for i, x in enumerate(inclusion)}
    logger.info(f"free algebra on two generators: {algebra.size} elements")
    return FreeAlgebra2(ambient, algebra, inclusion, (position[g1], position[g2]))


def decide2(eq: Union[Equation, str]) -> Decide2Result:
    """
    Decide an OML equation in at most two variables.

    The equation is evaluated at the generator images first, then under every
    valuation in the free algebra.

    Raises:
        UnsupportedQueryError: If eq has more than two variables or uses w/w*
    """
    equation = _as_equation(eq)
    names = variables(equation)
    if len(names) > 2:
        raise UnsupportedQueryError(
            f"decide2 handles at most 2 variables, got {len(names)} ({', '.join(names)})"
        )
    if uses_w(equation):
        raise UnsupportedQueryError("decide2 handles the orthomodular signature only")
    F = free_algebra2()
    A = F.algebra
    generator_names = [A.name_of(g) for g in F.generators]
    at_generators = dict(zip(names, F.generators))
    counter: Optional[Dict[str, int]] = None
    if eval_term(equation.lhs, A, at_generators) != eval_term(equation.rhs, A, at_generators):
        counter = at_generators
    else:
        counter = find_counter_valuation(A, equation, names)
    result = Decide2Result(
        valid=counter is None,
        countervaluation=named_valuation(A, counter) if counter is not None else {},
        free_algebra_size=A.size,
        generators=generator_names,
    )
    logger.info(f"decide2 {equation}: {'valid' if result.valid else 'invalid'}")
    return result


def decide2_cross_validation(lattices: Sequence[FiniteOml], max_depth: int = 3) -> List[str]:
    """
    Check that decide2 and countermodel search agree on shallow equations.

    Every term of depth <= max_depth in x, y is shown, by induction on depth,
    to take in each lattice the same values as the representative of its
    free-algebra class. Any mismatch is an equation decide2 calls valid that
    has a countermodel.

    Returns:
        Descriptions of disagreements (empty when the two agree)
    """
    F = free_algebra2()
    A = F.algebra
    classes = enumerate_term_classes(A, {"x": F.generators[0], "y": F.generators[1]}, max_depth)
    rep = {c.value: c for c in classes}
    names = ["x", "y"]

    def vector(t: Term) -> List[int]:
        return [v for L in lattices for v in value_vector(t, L, names)]

    offsets: List[Tuple[FiniteOml, int, int]] = []
    start = 0
    for L in lattices:
        offsets.append((L, start, start + L.size ** 2))
        start += L.size ** 2

    def combine(op: str, left: List[int], right: Optional[List[int]] = None) -> List[int]:
        out: List[int] = []
        for L, lo, hi in offsets:
            if op == "neg":
                out.extend(L.neg_table[v] for v in left[lo:hi])
                continue
            table = L.meet_table if op == "meet" else L.join_table
            assert right is not None
            out.extend(table[a][b] for a, b in zip(left[lo:hi], right[lo:hi]))
        return out

    vectors = {c.value: vector(c.term) for c in classes}
    base = [c for c in classes if c.depth < max_depth]
    disagreements: List[str] = []
    checked = 0
    for a in base:
        candidates: List[Tuple[Term, int, List[int]]] = [
            (Neg(a.term), A.neg(a.value), combine("neg", vectors[a.value]))
        ]
        for b in base:
            candidates.append(
                (
                    Meet(a.term, b.term),
                    A.meet(a.value, b.value),
                    combine("meet", vectors[a.value], vectors[b.value]),
                )
            )
            candidates.append(
                (
                    Join(a.term, b.term),
                    A.join(a.value, b.value),
                    combine("join", vectors[a.value], vectors[b.value]),
                )
            )
        for term, value, vec in candidates:
            checked += 1
            if vec != vectors[value]:
                disagreements.append(f"{term} = {rep[value].term}")
    logger.info(
        f"decide2 cross-validation: {len(classes)} classes, {checked} equations, "
        f"{len(disagreements)} disagreements"
    )
    return disagreements


# ---------------------------------------------------------------------------
# w0 on directly indecomposable lattices
# ---------------------------------------------------------------------------


def _w0_admissible(L: FiniteOml) -> List[List[bool]]:
    """admissible[x][v]: whether w0(x) = v is compatible with the three w0 laws."""
    table = []
    for x in L.elements:
        row = []
        for v in L.elements:
            ok = L.le(x, v) and all(
                L.join(L.meet(y, v), L.meet(y, L.neg(v))) == y for y in L.elements
            )
            if x == L.bottom:
                ok = ok and v == L.bottom
            row.append(ok)
        table.append(row)
    return table


def w0_uniqueness(L: FiniteOml, exhaustive_limit: int = 6) -> W0UniquenessReport:
    """
    Count unary tables satisfying w(0) = 0, x <= w(x) and y = (y & w(x)) | (y & ~w(x)).

    Lattices up to ``exhaustive_limit`` elements are searched over all
    |L|^|L| tables; larger ones by propagating the per-element constraints,
    which all concern a single argument.

    Raises:
        PreconditionError: If L is not directly indecomposable
    """
    if not is_directly_indecomposable(L):
        raise PreconditionError(f"{L.name} is not directly indecomposable", "w0_uniqueness")
    admissible = _w0_admissible(L)
    indicator = [L.bottom if x == L.bottom else L.top for x in L.elements]
    satisfying: List[Tuple[int, ...]] = []
    if L.size <= exhaustive_limit:
        mode = "exhaustive"
        checked = 0
        for table in itertools.product(L.elements, repeat=L.size):
            checked += 1
            if all(admissible[x][v] for x, v in enumerate(table)):
                satisfying.append(table)
    else:
        mode = "propagation"
        options = [[v for v in L.elements if admissible[x][v]] for x in L.elements]
        checked = 1
        for opts in options:
            checked *= len(opts)
        satisfying = [tuple(t) for t in itertools.product(*options)]
    if not satisfying:
        raise PreconditionError(f"no table satisfies the w0 laws on {L.name}", "w0_uniqueness")
    unique = satisfying[0]
    logger.info(f"w0 on {L.name}: {len(satisfying)} of {checked} tables ({mode})")
    return W0UniquenessReport(
        lattice=L.name,
        mode=mode,
        tables_checked=checked,
        satisfying=len(satisfying),
        table=[L.name_of(v) for v in unique],
        is_indicator=list(unique) == indicator,
    )


# ---------------------------------------------------------------------------
# Refuter
# ---------------------------------------------------------------------------


def _indecomposable_factor(L: FiniteOml) -> Tuple[FiniteOml, Optional[int]]:
    """L itself if directly indecomposable, else [0, z] for the first atom z of Z(L)."""
    if is_directly_indecomposable(L):
        return L, None
    members = center(L)
    atoms = [
        z
        for z in members
        if z != L.bottom and not any(L.lt(L.bottom, c) and L.lt(c, z) for c in members)
    ]
    z = atoms[0]
    return interval(L, z).lattice, z


def refute_finite_lqf(L: FiniteOml) -> RefutationTrace:
    """
    Show that no w, w* tables on a nontrivial finite lattice satisfy LQF1-LQF12.

    The argument runs on a directly indecomposable factor F: w0 is forced to
    the indicator, LQF10 then asks for w0*(1) outside {0, 1}, and for |F| > 2
    the maps w*_z are order isomorphisms onto [0, z], which an atom of F
    cannot accommodate.

    Raises:
        PreconditionError: If L has a single element
    """
    if L.size < 2:
        raise PreconditionError(
            "trivial algebra: the one-element structure satisfies LQF1-LQF12", "refute_finite_lqf"
        )
    entries: List[TraceEntry] = []

    def note(claim: str, cites: Sequence[str], contradiction: bool = False) -> None:
        entries.append(
            TraceEntry(
                step=len(entries) + 1, claim=claim, cites=list(cites), contradiction=contradiction
            )
        )

    F, z = _indecomposable_factor(L)
    if z is None:
        note(f"{L.name} is directly indecomposable: Z(L) = {{0, 1}}", ["center"])
    else:
        note(
            f"{L.name_of(z)} is a central atom of {L.name}; the factor F = [0, {L.name_of(z)}] "
            f"is directly indecomposable and LQF-algebras are closed under factors",
            ["center", "factor decomposition"],
        )
    report = w0_uniqueness(F)
    note(
        "w0 on F is the indicator: w0(0) = 0 and w0(x) = 1 for x != 0 "
        f"({report.satisfying} of {report.tables_checked} tables, {report.mode})",
        ["LQF1", "LQF2", "LQF3", "uniqueness of w0"],
    )
    if F.size == 2:
        note(
            "LQF10 needs w0(c) = w0(~c) for c = w0*(1), so c and ~c are both nonzero; "
            "F = {0, 1} has no such element",
            ["LQF10"],
            contradiction=True,
        )
        return RefutationTrace(
            lattice=L.name, size=L.size, factor=list(F.names), entries=entries
        )
    note("LQF10 forces w0*(1) outside {0, 1}", ["LQF10"])
    note(
        "for z != 0, w0(z) = 1, so w_z(w*_z(x)) = x and w*_z(w_z(x)) = mu_z(x); "
        "w_z and w*_z are monotone, hence w*_z is an order isomorphism of F onto [0, z]",
        ["LQF4", "LQF5", "LQF8", "LQF9", "Sasaki fixed points"],
    )
    note(
        "for 0 < z < 1: 0 < w*_z(z) < w*_z(1) = z",
        ["order isomorphism onto [0, z]"],
    )
    a = F.atoms()[0]
    note(
        f"F is finite, so it has an atom a = {F.name_of(a)}; nothing lies strictly between "
        f"0 and a, contradicting 0 < w*_a(a) < a",
        ["finiteness"],
        contradiction=True,
    )
    logger.info(f"refuted finite LQF structure on {L.name} ({len(entries)} steps)")
    return RefutationTrace(lattice=L.name, size=L.size, factor=list(F.names), entries=entries)


# ---------------------------------------------------------------------------
# Semantic audits
# ---------------------------------------------------------------------------


def axiom_soundness(S: Structure, axiom_ids: Sequence[str]) -> Dict[str, bool]:
    """
    Evaluate axiom schemas with their metavariables read as variables.

    A schema that evaluates to 1 this way evaluates to 1 on every instance.
    """
    results: Dict[str, bool] = {}
    for axiom_id in axiom_ids:
        pattern = AXIOMS[axiom_id].pattern
        results[axiom_id] = find_counter_valuation(S, Equation(pattern, ONE)) is None
    return results


def dt_audit(
    step: Step, theory: Sequence[Term], lattices: Sequence[FiniteOml]
) -> CountermodelResult:
    """
    Look for a valuation making the theory 1 but a deduction step's term not 1.

    Structures are the central surrogates of the given lattices, so ``ed`` is
    the dual central cover.
    """
    names = sorted({v for t in list(theory) + [step.term] for v in variables(t)})
    scope = [L.name for L in lattices]
    for L in lattices:
        S = central_surrogate(L)
        count = L.size ** len(names)
        ok = [True] * count
        for t in theory:
            for i, value in enumerate(value_vector(t, S, names)):
                ok[i] = ok[i] and value == L.top
        conclusion = value_vector(step.term, S, names)
        for i in range(count):
            if ok[i] and conclusion[i] != L.top:
                valuation = decode_valuation(S, names, i)
                return CountermodelResult(
                    found=True,
                    lattice=L.name,
                    valuation=named_valuation(L, valuation),
                    scope=scope,
                )
    return CountermodelResult(found=False, scope=scope)


def discriminator_check(L: FiniteOml) -> Optional[Tuple[str, str, str]]:
    """
    First triple where (x & ~ed(xRy)) | (z & ed(xRy)) is not the discriminator.

    Expected value: z when x = y, x otherwise.
    """
    S = central_surrogate(L)
    values = value_vector(DISCRIMINATOR, S, ["x", "y", "z"])
    for i, (x, y, z) in enumerate(itertools.product(L.elements, repeat=3)):
        expected = z if x == y else x
        if values[i] != expected:
            return L.name_of(x), L.name_of(y), L.name_of(z)
    return None


def rule_preservation(L: FiniteOml) -> Dict[str, bool]:
    """
    DS and N preserve the value 1 on the central surrogate of L.

    DS: t = 1 and ~t | s = 1 give s = 1. N: t = 1 gives ed(t) = 1.
    """
    S = central_surrogate(L)
    top = L.top
    ds = all(
        s == top
        for t in L.elements
        for s in L.elements
        if t == top and L.join(L.neg(t), s) == top
    )
    n = S.base.neg(S.w(L.bottom, L.neg(top))) == top
    return {"DS": ds, "N": n}


def surrogate_w0_laws(L: FiniteOml) -> bool:
    """Whether the central cover satisfies LQF1-LQF3 as w0."""
    return check_conditions(central_surrogate(L), LQF_CONDITIONS[:3]).ok


def ed_laws(L: FiniteOml) -> Dict[str, bool]:
    """Idempotence, monotonicity and meet preservation of the dual central cover."""
    ed = [dual_central_cover(L, x) for x in L.elements]
    pairs = list(itertools.product(L.elements, repeat=2))
    return {
        "idempotent": all(ed[ed[x]] == ed[x] for x in L.elements),
        "monotone": all(L.le(ed[x], ed[y]) for x, y in pairs if L.le(x, y)),
        "meet": all(ed[L.meet(x, y)] == L.meet(ed[x], ed[y]) for x, y in pairs),
        "below": all(L.le(ed[x], x) for x in L.elements),
        "central_cover_dual": all(
            ed[x] == L.neg(central_cover(L, L.neg(x))) for x in L.elements
        ),
    }

