"""
The LQF term language.

Terms are immutable trees over 0, 1, ~, &, |, w and w*. The surface syntax
adds the macros R, ed, w0, w0*, mu, which are expanded while parsing, so the
rest of the library only ever sees the core constructors. Terms are evaluated
in finite lattices and in expanded structures carrying w and w* tables.
"""

import itertools
import logging
import random
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import pyparsing as pp

from .core import central_cover, sasaki
from .exceptions import (
    LatticeStructureError,
    PreconditionError,
    SignatureError,
    TermSyntaxError,
    ValuationError,
)
from .lattice import Element, FiniteOml, lattice_from_document
from .models import LatticeDocument

logger = logging.getLogger(__name__)


class Term:
    """Base class of term trees."""

    __slots__ = ()

    def children(self) -> Tuple["Term", ...]:
        return ()

    def __str__(self) -> str:
        return print_term(self)


@dataclass(frozen=True)
class Zero(Term):
    pass


@dataclass(frozen=True)
class One(Term):
    pass


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Neg(Term):
    arg: Term

    def children(self) -> Tuple[Term, ...]:
        return (self.arg,)


@dataclass(frozen=True)
class Meet(Term):
    left: Term
    right: Term

    def children(self) -> Tuple[Term, ...]:
        return (self.left, self.right)


@dataclass(frozen=True)
class Join(Term):
    left: Term
    right: Term

    def children(self) -> Tuple[Term, ...]:
        return (self.left, self.right)


@dataclass(frozen=True)
class W(Term):
    left: Term
    right: Term

    def children(self) -> Tuple[Term, ...]:
        return (self.left, self.right)


@dataclass(frozen=True)
class Wstar(Term):
    left: Term
    right: Term

    def children(self) -> Tuple[Term, ...]:
        return (self.left, self.right)


ZERO = Zero()
ONE = One()


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term

    def __str__(self) -> str:
        return f"{print_term(self.lhs)} = {print_term(self.rhs)}"


# ---------------------------------------------------------------------------
# Macros
# ---------------------------------------------------------------------------


def rel(t: Term, s: Term) -> Term:
    """t R s = (t & s) | (~t & ~s)."""
    return Join(Meet(t, s), Meet(Neg(t), Neg(s)))


def ed(t: Term) -> Term:
    """e_d(t) = ~w(0, ~t)."""
    return Neg(W(ZERO, Neg(t)))


def mu(z: Term, x: Term) -> Term:
    """Sasaki projection z & (~z | x)."""
    return Meet(z, Join(Neg(z), x))


def w0(t: Term) -> Term:
    return W(ZERO, t)


def w0star(t: Term) -> Term:
    return Wstar(ZERO, t)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def _fold(cls: Callable[[Term, Term], Term]) -> Callable[[pp.ParseResults], Term]:
    def action(tokens: pp.ParseResults) -> Term:
        items = list(tokens)
        result = items[0]
        for item in items[1:]:
            result = cls(result, item)
        return result

    return action


def _build_term_grammar() -> pp.ParserElement:
    expr = pp.Forward()
    lp, rp, comma = pp.Suppress("("), pp.Suppress(")"), pp.Suppress(",")

    def call(keyword: str, arity: int, build: Callable[..., Term]) -> pp.ParserElement:
        args = expr
        for _ in range(arity - 1):
            args = args + comma + expr
        rule = pp.Suppress(pp.Literal(keyword)) + lp + args + rp
        return rule.set_parse_action(lambda t: build(*t))

    calls = (
        call("w0*", 1, w0star)
        | call("w0", 1, w0)
        | call("w*", 2, Wstar)
        | call("w", 2, W)
        | call("R", 2, rel)
        | call("ed", 1, ed)
        | call("mu", 2, mu)
    )
    zero = pp.Literal("0").set_parse_action(lambda: ZERO)
    one = pp.Literal("1").set_parse_action(lambda: ONE)
    ident = pp.Regex(r"[A-Za-z_][A-Za-z0-9_]*").set_parse_action(lambda t: Var(t[0]))
    atom = calls | zero | one | ident | (lp + expr + rp)

    negation = pp.Forward()
    negation <<= (pp.Suppress("~") + negation).set_parse_action(lambda t: Neg(t[0])) | atom
    conjunction = (negation + pp.ZeroOrMore(pp.Suppress("&") + negation)).set_parse_action(
        _fold(Meet)
    )
    disjunction = (conjunction + pp.ZeroOrMore(pp.Suppress("|") + conjunction)).set_parse_action(
        _fold(Join)
    )
    expr <<= disjunction
    expr.set_name("term")
    return expr


_TERM_GRAMMAR = _build_term_grammar()


def parse(text: str) -> Term:
    """
    Parse a term, expanding R, ed, w0, w0* and mu.

    Raises:
        TermSyntaxError: With the failing position
    """
    try:
        result = _TERM_GRAMMAR.parse_string(text, parse_all=True)
    except pp.ParseException as e:
        raise TermSyntaxError(f"Cannot parse term {text!r}: {e.msg}", position=e.loc, text=text)
    term = result[0]
    assert isinstance(term, Term)
    return term


def parse_equation(text: str) -> Equation:
    """Parse ``lhs = rhs``."""
    if text.count("=") != 1:
        raise TermSyntaxError(
            f"An equation needs exactly one '=': {text!r}",
            position=text.find("=") if "=" in text else len(text),
            text=text,
        )
    lhs, rhs = text.split("=")
    offset = len(lhs) + 1
    try:
        right = parse(rhs)
    except TermSyntaxError as e:
        raise TermSyntaxError(
            e.message, position=None if e.position is None else e.position + offset, text=text
        )
    return Equation(parse(lhs), right)


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

_JOIN, _MEET, _NEG, _ATOM = 1, 2, 3, 4


def _render(t: Term) -> Tuple[str, int]:
    if isinstance(t, Zero):
        return "0", _ATOM
    if isinstance(t, One):
        return "1", _ATOM
    if isinstance(t, Var):
        return t.name, _ATOM
    if isinstance(t, Neg):
        return "~" + _wrap(t.arg, _NEG), _NEG
    if isinstance(t, Meet):
        return f"{_wrap(t.left, _MEET)} & {_wrap(t.right, _NEG)}", _MEET
    if isinstance(t, Join):
        return f"{_wrap(t.left, _JOIN)} | {_wrap(t.right, _MEET)}", _JOIN
    if isinstance(t, (W, Wstar)):
        star = "*" if isinstance(t, Wstar) else ""
        if isinstance(t.left, Zero):
            return f"w0{star}({print_term(t.right)})", _ATOM
        return f"w{star}({print_term(t.left)}, {print_term(t.right)})", _ATOM
    raise TypeError(f"Not a term: {t!r}")


def _wrap(t: Term, needed: int) -> str:
    text, precedence = _render(t)
    return text if precedence >= needed else f"({text})"


def print_term(t: Term) -> str:
    """Render a term; w(0, x) and w*(0, x) print as w0(x) and w0*(x)."""
    return _render(t)[0]


# ---------------------------------------------------------------------------
# Structure of terms
# ---------------------------------------------------------------------------


def subterms(t: Term) -> Iterator[Term]:
    yield t
    for child in t.children():
        yield from subterms(child)


def variables(t: Union[Term, Equation]) -> List[str]:
    """Sorted variable names."""
    if isinstance(t, Equation):
        return sorted(set(variables(t.lhs)) | set(variables(t.rhs)))
    return sorted({s.name for s in subterms(t) if isinstance(s, Var)})


def complexity(t: Term) -> int:
    """Number of nodes."""
    return sum(1 for _ in subterms(t))


def depth(t: Term) -> int:
    return 1 + max((depth(c) for c in t.children()), default=-1)


def uses_w(t: Union[Term, Equation]) -> bool:
    if isinstance(t, Equation):
        return uses_w(t.lhs) or uses_w(t.rhs)
    return any(isinstance(s, (W, Wstar)) for s in subterms(t))


def substitute(t: Term, mapping: Mapping[str, Term]) -> Term:
    """Simultaneous substitution of terms for variables."""
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, Neg):
        return Neg(substitute(t.arg, mapping))
    if isinstance(t, (Meet, Join, W, Wstar)):
        return type(t)(substitute(t.left, mapping), substitute(t.right, mapping))
    return t


def rename(t: Term, mapping: Mapping[str, str]) -> Term:
    return substitute(t, {old: Var(new) for old, new in mapping.items()})


# ---------------------------------------------------------------------------
# Expanded structures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExpandedStructure:
    """A finite lattice with candidate tables for w and w*; no axioms assumed."""

    base: FiniteOml
    w_table: Tuple[Tuple[int, ...], ...]
    wstar_table: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = self.base.size
        for label, table in (("w", self.w_table), ("wstar", self.wstar_table)):
            if len(table) != n or any(len(row) != n for row in table):
                raise LatticeStructureError(f"{label} must be a {n}x{n} table")
            if any(not 0 <= v < n for row in table for v in row):
                raise LatticeStructureError(f"{label} has entries outside the carrier")

    @classmethod
    def from_tables(
        cls,
        base: FiniteOml,
        w: Sequence[Sequence[int]],
        wstar: Sequence[Sequence[int]],
    ) -> "ExpandedStructure":
        return cls(base, tuple(tuple(r) for r in w), tuple(tuple(r) for r in wstar))

    @classmethod
    def from_document(cls, doc: LatticeDocument) -> "ExpandedStructure":
        if doc.w is None or doc.wstar is None:
            raise LatticeStructureError("An expanded structure needs both 'w' and 'wstar' tables")
        return cls.from_tables(lattice_from_document(doc), doc.w, doc.wstar)

    @property
    def name(self) -> str:
        return self.base.name

    def w(self, z: int, x: int) -> int:
        return self.w_table[z][x]

    def wstar(self, z: int, x: int) -> int:
        return self.wstar_table[z][x]

    def to_document(self) -> LatticeDocument:
        return self.base.to_document(self.w_table, self.wstar_table)


Structure = Union[FiniteOml, ExpandedStructure]


def base_of(S: Structure) -> FiniteOml:
    return S.base if isinstance(S, ExpandedStructure) else S


def central_surrogate(L: FiniteOml) -> ExpandedStructure:
    """
    Expansion of L in which w(z, x) is the central cover of x for every z.

    Only the w0 row carries meaning: with it ``ed(t)`` evaluates to the dual
    central cover. w*(z, x) is the Sasaki projection of x onto z.
    """
    covers = [central_cover(L, x) for x in L.elements]
    w = [list(covers) for _ in L.elements]
    wstar = [[sasaki(L, z, x) for x in L.elements] for z in L.elements]
    return ExpandedStructure.from_tables(L, w, wstar)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


Valuation = Dict[str, int]


def resolve_valuation(S: Structure, valuation: Mapping[str, Element]) -> Valuation:
    """Turn element names or indices into indices."""
    L = base_of(S)
    resolved: Valuation = {}
    for name, element in valuation.items():
        try:
            resolved[name] = L.index(element)
        except PreconditionError:
            raise ValuationError(f"{element!r} is not an element of {L.name}", name)
    return resolved


def _check_signature(t: Union[Term, Equation], S: Structure) -> None:
    if uses_w(t) and not isinstance(S, ExpandedStructure):
        raise SignatureError(f"term uses w or w* but {base_of(S).name} has no such tables")


def eval_term(t: Term, S: Structure, valuation: Mapping[str, int]) -> int:
    """
    Value of a term under a valuation.

    Raises:
        SignatureError: If t uses w or w* and S is a bare lattice
        ValuationError: If a variable of t is unbound
    """
    _check_signature(t, S)
    L = base_of(S)
    memo: Dict[Term, int] = {}

    def go(u: Term) -> int:
        if u in memo:
            return memo[u]
        if isinstance(u, Zero):
            value = L.bottom
        elif isinstance(u, One):
            value = L.top
        elif isinstance(u, Var):
            if u.name not in valuation:
                raise ValuationError("unbound variable", u.name)
            value = valuation[u.name]
        elif isinstance(u, Neg):
            value = L.neg(go(u.arg))
        elif isinstance(u, Meet):
            value = L.meet(go(u.left), go(u.right))
        elif isinstance(u, Join):
            value = L.join(go(u.left), go(u.right))
        elif isinstance(u, W):
            assert isinstance(S, ExpandedStructure)
            value = S.w(go(u.left), go(u.right))
        elif isinstance(u, Wstar):
            assert isinstance(S, ExpandedStructure)
            value = S.wstar(go(u.left), go(u.right))
        else:
            raise TypeError(f"Not a term: {u!r}")
        memo[u] = value
        return value

    return go(t)


def valuations(S: Structure, names: Sequence[str]) -> Iterator[Valuation]:
    """All valuations of the given variables, lexicographic in element index."""
    for values in itertools.product(base_of(S).elements, repeat=len(names)):
        yield dict(zip(names, values))


def value_vector(t: Term, S: Structure, names: Sequence[str]) -> List[int]:
    """
    Values of t under every valuation of ``names``, lexicographic order.

    Computed bottom-up one table lookup per subterm and valuation.
    """
    _check_signature(t, S)
    L = base_of(S)
    n = L.size
    count = n ** len(names)
    positions = {name: i for i, name in enumerate(names)}
    memo: Dict[Term, List[int]] = {}

    def go(u: Term) -> List[int]:
        if u in memo:
            return memo[u]
        if isinstance(u, Zero):
            vec = [L.bottom] * count
        elif isinstance(u, One):
            vec = [L.top] * count
        elif isinstance(u, Var):
            if u.name not in positions:
                raise ValuationError("unbound variable", u.name)
            stride = n ** (len(names) - 1 - positions[u.name])
            vec = [(k // stride) % n for k in range(count)]
        elif isinstance(u, Neg):
            neg = L.neg_table
            vec = [neg[v] for v in go(u.arg)]
        else:
            left, right = go(u.left), go(u.right)  # type: ignore[attr-defined]
            if isinstance(u, Meet):
                table = L.meet_table
            elif isinstance(u, Join):
                table = L.join_table
            elif isinstance(u, W):
                table = S.w_table  # type: ignore[union-attr]
            else:
                table = S.wstar_table  # type: ignore[union-attr]
            vec = [table[a][b] for a, b in zip(left, right)]
        memo[u] = vec
        return vec

    return go(t)


def decode_valuation(S: Structure, names: Sequence[str], position: int) -> Valuation:
    """Inverse of the lexicographic numbering used by ``value_vector``."""
    n = base_of(S).size
    result: Valuation = {}
    for name in reversed(names):
        result[name] = position % n
        position //= n
    return {name: result[name] for name in names}


def find_counter_valuation(
    S: Structure, eq: Equation, names: Optional[Sequence[str]] = None
) -> Optional[Valuation]:
    """
    The lexicographically first valuation falsifying eq, or None.

    Args:
        S: Lattice or expanded structure
        eq: The equation
        names: Variables to quantify over (default: those of eq, sorted)
    """
    names = list(names) if names is not None else variables(eq)
    left = value_vector(eq.lhs, S, names)
    right = value_vector(eq.rhs, S, names)
    for position, (a, b) in enumerate(zip(left, right)):
        if a != b:
            return decode_valuation(S, names, position)
    return None


def holds(S: Structure, eq: Union[Equation, str]) -> bool:
    """Whether eq holds under every valuation in S."""
    if isinstance(eq, str):
        eq = parse_equation(eq)
    return find_counter_valuation(S, eq) is None


def named_valuation(S: Structure, valuation: Mapping[str, int]) -> Dict[str, str]:
    L = base_of(S)
    return {name: L.name_of(v) for name, v in sorted(valuation.items())}


# ---------------------------------------------------------------------------
# Generation
# ---------------------------------------------------------------------------


def random_term(
    rng: random.Random,
    names: Sequence[str],
    max_depth: int,
    with_w: bool = False,
) -> Term:
    """A random term of depth at most ``max_depth`` over the given variables."""
    leaves: List[Callable[[], Term]] = [lambda: ZERO, lambda: ONE]
    leaves += [(lambda n=n: Var(n)) for n in names]
    if max_depth <= 0 or rng.random() < 0.25:
        return rng.choice(leaves)()
    ops = ["neg", "meet", "join"] + (["w", "wstar"] if with_w else [])
    op = rng.choice(ops)
    if op == "neg":
        return Neg(random_term(rng, names, max_depth - 1, with_w))
    left = random_term(rng, names, max_depth - 1, with_w)
    right = random_term(rng, names, max_depth - 1, with_w)
    return {"meet": Meet, "join": Join, "w": W, "wstar": Wstar}[op](left, right)


@dataclass(frozen=True)
class TermClass:
    """A term together with its value at the generators of a test algebra."""

    term: Term
    value: int
    depth: int


def enumerate_term_classes(
    S: FiniteOml,
    generators: Mapping[str, int],
    max_depth: int,
) -> List[TermClass]:
    """
    OML terms over the generator names up to ``max_depth``, one per value.

    Terms are grown level by level from 0, 1 and the variables using ~, &
    and |; a new term is kept only when its value at the generators is new.
    The first (smallest depth, then construction order) representative wins.
    """
    classes: List[TermClass] = []
    seen: Dict[int, TermClass] = {}

    def offer(term: Term, value: int, d: int) -> None:
        if value not in seen:
            item = TermClass(term, value, d)
            seen[value] = item
            classes.append(item)

    offer(ZERO, S.bottom, 0)
    offer(ONE, S.top, 0)
    for name in sorted(generators):
        offer(Var(name), generators[name], 0)
    for d in range(1, max_depth + 1):
        previous = list(classes)
        for c in previous:
            if c.depth == d - 1:
                offer(Neg(c.term), S.neg(c.value), d)
        for a in previous:
            for b in previous:
                if max(a.depth, b.depth) != d - 1:
                    continue
                offer(Meet(a.term, b.term), S.meet(a.value, b.value), d)
                offer(Join(a.term, b.term), S.join(a.value, b.value), d)
        logger.debug(f"term classes up to depth {d}: {len(classes)}")
    return classes
