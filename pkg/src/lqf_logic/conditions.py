"""
Equational conditions on expanded structures.

LQF1-LQF12 and the type III list III1-III10 are stored as chains of terms;
an inequality u <= v is evaluated as the equation u = u & v. A chain
t1 = t2 = t3 is split into the parts t1 = t2 and t1 = t3, which is also how
the calculus states them as axioms A14-A29.
"""

import itertools
import logging
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .calculus import AXIOMS
from .core import is_central
from .lattice import FiniteOml, boolean
from .models import AlignmentReport, ConditionReport
from .terms import (
    Equation,
    ExpandedStructure,
    Join,
    Meet,
    Neg,
    Term,
    find_counter_valuation,
    named_valuation,
    parse,
    print_term,
    rel,
    rename,
    variables,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Condition:
    """One numbered condition: a chain of equal terms or a single inequality."""

    id: str
    chain: Tuple[Term, ...]
    inequality: bool = False

    @property
    def statement(self) -> str:
        joiner = " <= " if self.inequality else " = "
        return joiner.join(print_term(t) for t in self.chain)

    @property
    def variables(self) -> List[str]:
        return sorted({name for t in self.chain for name in variables(t)})

    def equations(self, form: str = "meet") -> List[Equation]:
        """
        The parts of the condition as equations.

        Args:
            form: For inequalities, "meet" gives u = u & v and "join" gives
                u | v = v; equations ignore it
        """
        first = self.chain[0]
        if not self.inequality:
            return [Equation(first, other) for other in self.chain[1:]]
        upper = self.chain[1]
        if form == "join":
            return [Equation(Join(first, upper), upper)]
        return [Equation(first, Meet(first, upper))]


def _eq(condition_id: str, *texts: str) -> Condition:
    return Condition(condition_id, tuple(parse(t) for t in texts))


def _le(condition_id: str, lower: str, upper: str) -> Condition:
    return Condition(condition_id, (parse(lower), parse(upper)), inequality=True)


_W_ABSORPTION = ("w(x, y & w0(z))", "w(x & w0(z), y & w0(z))", "w(x, y) & w0(z)")
_WSTAR_ABSORPTION = ("w*(x, y & w0(z))", "w*(x & w0(z), y & w0(z))", "w*(x, y) & w0(z)")

LQF_CONDITIONS: Tuple[Condition, ...] = (
    _eq("LQF1", "w0(0)", "0"),
    _le("LQF2", "x", "w0(x)"),
    _eq("LQF3", "y", "(y & w0(x)) | (y & ~w0(x))"),
    _le("LQF4", "w(z, x & y)", "w(z, y)"),
    _le("LQF5", "w0(z) & w*(z, x & y)", "w*(z, x)"),
    _eq(
        "LQF6",
        "w0*(z) & z",
        "w0*(z) & w*(z, z)",
        "(~w0(~z) & w0*(z)) | (w0(~z) & w0(w0*(z) & z))",
    ),
    _eq("LQF7", "w0*(z) | z", "w0*(z) | w*(z, z)", "w0(w0*(z) | z)"),
    _le("LQF8", "w0(z)", "R(w(z, w*(z, x)), x)"),
    _le("LQF9", "w0(z)", "R(w*(z, w(z, x)), mu(z, x))"),
    _eq("LQF10", "w0(w0*(1))", "w0(~w0*(1))"),
    _eq("LQF11", *_W_ABSORPTION),
    _eq("LQF12", *_WSTAR_ABSORPTION),
)

III_CONDITIONS: Tuple[Condition, ...] = (
    _eq("III1", "w0(0)", "0"),
    _le("III2", "x", "w0(x)"),
    _eq("III3", "y", "(y & w0(x)) | (y & ~w0(x))"),
    _le("III4", "w(z, x & y)", "w(z, x)"),
    _le("III5", "w0(z) & w*(z, x & y)", "w*(z, x)"),
    _eq(
        "III6",
        "w0*(z) & z",
        "w0*(z) & w*(z, z)",
        "(~w0(~z) & w0*(z)) | (w0(~z) & w0(w0*(z) & z))",
    ),
    _eq("III7", "w0*(z) | z", "w0*(z) | w*(z, z)", "w0(w0*(z) | z)"),
    _le("III8", "w0(z)", "R(w(z, w*(z, x)), x)"),
    _le("III9", "w0(z)", "R(w*(z, w(z, x)), mu(z, x))"),
    _eq("III10", "w0(w0*(1))", "w0(~w0*(1))"),
)

# Consequences of III1-III10 on type III factors, checked on their own.
III_SUPPLEMENTARY: Tuple[Condition, ...] = (
    _eq("III-W", *_W_ABSORPTION),
    _eq("III-W*", *_WSTAR_ABSORPTION),
)

SHARED_INDICES = (1, 2, 3, 5, 6, 7, 8, 9, 10)

CONDITIONS_BY_ID: Dict[str, Condition] = {
    c.id: c for c in LQF_CONDITIONS + III_CONDITIONS + III_SUPPLEMENTARY
}


def check_conditions(S: ExpandedStructure, conditions: Sequence[Condition]) -> ConditionReport:
    """
    Evaluate conditions in order and stop at the first failing part.

    The witness is the lexicographically first counter-valuation over the
    variables of the whole condition.
    """
    for condition in conditions:
        names = condition.variables
        for part, equation in enumerate(condition.equations(), start=1):
            counter = find_counter_valuation(S, equation, names)
            if counter is not None:
                return ConditionReport(
                    ok=False,
                    failed=condition.id,
                    part=part,
                    witness=named_valuation(S, counter),
                )
    return ConditionReport(ok=True)


def check_lqf_axioms(S: ExpandedStructure) -> ConditionReport:
    """Check LQF1-LQF12 on a candidate structure."""
    report = check_conditions(S, LQF_CONDITIONS)
    logger.info(f"LQF check on {S.name}: {'pass' if report.ok else report.failed}")
    return report


def check_iii_conditions(S: ExpandedStructure) -> ConditionReport:
    """
    Check III1-III10, then validate the absorption equations separately.

    The supplementary reports never affect ``ok``.
    """
    report = check_conditions(S, III_CONDITIONS)
    report.supplementary = [check_conditions(S, (c,)) for c in III_SUPPLEMENTARY]
    logger.info(f"III check on {S.name}: {'pass' if report.ok else report.failed}")
    return report


def _first_shared(report: ConditionReport, S: ExpandedStructure, family: str) -> Optional[str]:
    if report.failed_index in SHARED_INDICES:
        return report.failed
    if report.ok:
        return None
    # The report stopped at a condition outside the shared list; keep going past it.
    shared = [CONDITIONS_BY_ID[f"{family}{i}"] for i in SHARED_INDICES]
    return check_conditions(S, shared).failed


def alignment(S: ExpandedStructure) -> AlignmentReport:
    """Compare the first failures of the LQF and III lists on shared conditions."""
    lqf = check_lqf_axioms(S)
    iii = check_iii_conditions(S)
    return AlignmentReport(
        lqf=lqf,
        iii=iii,
        shared_lqf=_first_shared(lqf, S, "LQF"),
        shared_iii=_first_shared(iii, S, "III"),
    )


def random_structure(L: FiniteOml, rng: random.Random) -> ExpandedStructure:
    """Uniformly random w and w* tables over L."""
    n = L.size
    w = [[rng.randrange(n) for _ in range(n)] for _ in range(n)]
    wstar = [[rng.randrange(n) for _ in range(n)] for _ in range(n)]
    return ExpandedStructure.from_tables(L, w, wstar)


def two_element_oracle(family: str = "LQF") -> Dict[str, int]:
    """
    Run every pair of binary tables on the two-element Boolean algebra.

    Returns:
        Number of table pairs per first failing condition id; a "pass" key
        appears only if some pair satisfies the whole list
    """
    conditions = LQF_CONDITIONS if family == "LQF" else III_CONDITIONS
    L = boolean(1)
    tables = list(itertools.product(range(2), repeat=4))
    counts: Dict[str, int] = {}
    for w_flat in tables:
        w = [w_flat[0:2], w_flat[2:4]]
        for wstar_flat in tables:
            wstar = [wstar_flat[0:2], wstar_flat[2:4]]
            report = check_conditions(ExpandedStructure.from_tables(L, w, wstar), conditions)
            key = report.failed or "pass"
            counts[key] = counts.get(key, 0) + 1
    logger.debug(f"two-element oracle ({family}): {counts}")
    return counts


def derived_consequences(S: ExpandedStructure) -> Dict[str, bool]:
    """
    Facts every LQF-algebra satisfies, evaluated as diagnostics on S.

    ``ed`` is read inside S itself, as ~w(0, ~t).
    """
    L = S.base
    n = L.size
    elems = list(L.elements)
    w0 = [S.w(L.bottom, x) for x in elems]
    ed = [L.neg(w0[L.neg(x)]) for x in elems]
    rel_table = [[L.join(L.meet(a, b), L.meet(L.neg(a), L.neg(b))) for b in elems] for a in elems]

    def ed_compatible(table: Tuple[Tuple[int, ...], ...]) -> bool:
        for x1, x2 in itertools.product(elems, repeat=2):
            ex = ed[rel_table[x1][x2]]
            for y1, y2 in itertools.product(elems, repeat=2):
                guard = L.meet(ex, ed[rel_table[y1][y2]])
                if not L.le(guard, rel_table[table[x1][y1]][table[x2][y2]]):
                    return False
        return True

    strict = all(
        L.lt(L.bottom, S.wstar(z, z)) and L.lt(S.wstar(z, z), z)
        for z in elems
        if z not in (L.bottom, L.top) and w0[z] == L.top
    )
    return {
        "w0_top": w0[L.top] == L.top,
        "w0star_bottom": S.wstar(L.bottom, L.bottom) == L.bottom,
        "w0_central": all(is_central(L, w0[x]) for x in elems),
        "w_monotone": all(
            L.le(S.w(z, x), S.w(z, y))
            for z in range(n)
            for x in elems
            for y in elems
            if L.le(x, y)
        ),
        "wstar_strict_bounds": strict,
        "w_ed_compatible": ed_compatible(S.w_table),
        "wstar_ed_compatible": ed_compatible(S.wstar_table),
    }


# ---------------------------------------------------------------------------
# Schema alignment
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SchemaMatch:
    """Where an axiom schema of the calculus appears among the LQF conditions."""

    axiom: str
    condition: Optional[str]
    part: Optional[int] = None
    form: Optional[str] = None


def canonical(t: Term) -> Term:
    """Sort the operands of every & and | by their printed form."""
    if isinstance(t, (Meet, Join)):
        left, right = canonical(t.left), canonical(t.right)
        if print_term(right) < print_term(left):
            left, right = right, left
        return type(t)(left, right)
    if isinstance(t, Neg):
        return Neg(canonical(t.arg))
    children = t.children()
    if children:
        return type(t)(*(canonical(c) for c in children))  # type: ignore[call-arg]
    return t


def _same_up_to_renaming(pattern: Term, target: Term) -> bool:
    source, goal = variables(pattern), variables(target)
    if len(source) != len(goal):
        return False
    wanted = canonical(target)
    for image in itertools.permutations(goal):
        if canonical(rename(pattern, dict(zip(source, image)))) == wanted:
            return True
    return False


def schema_alignment(axiom_ids: Optional[Sequence[str]] = None) -> List[SchemaMatch]:
    """
    Locate each of A14-A29 as R(u, v) for one part (u, v) of an LQF condition.

    Parts are compared up to renaming of variables and commutativity of & and
    |. Inequalities are tried in meet form and in join form.
    """
    ids = list(axiom_ids) if axiom_ids is not None else [f"A{i}" for i in range(14, 30)]
    matches: List[SchemaMatch] = []
    for axiom_id in ids:
        pattern = AXIOMS[axiom_id].pattern
        found = SchemaMatch(axiom_id, None)
        for condition in LQF_CONDITIONS:
            forms = ("meet", "join") if condition.inequality else ("equation",)
            for form in forms:
                for part, eq in enumerate(condition.equations(form), start=1):
                    if _same_up_to_renaming(pattern, rel(eq.lhs, eq.rhs)):
                        found = SchemaMatch(axiom_id, condition.id, part, form)
                        break
                if found.condition:
                    break
            if found.condition:
                break
        matches.append(found)
    return matches
