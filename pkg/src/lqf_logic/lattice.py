"""
Finite orthomodular lattices.

This module holds the table-based lattice type used by every other module,
the law checker, the standard builders (Boolean algebras, MO_n, products,
horizontal sums, intervals, generated subalgebras) and the JSON bridge.
Elements are dense integer indices; meet and join tables are computed once at
construction.
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import pyparsing as pp
from pydantic import ValidationError

from .exceptions import LatticeStructureError, LQFFileError, PreconditionError
from .models import LatticeDocument, ValidationReport

logger = logging.getLogger(__name__)

Element = Union[int, str]
Table = Tuple[Tuple[int, ...], ...]

LAW_ORDER = (
    "poset",
    "bounds",
    "lattice",
    "involution",
    "de_morgan",
    "complement",
    "orthomodular",
)


class FiniteOml:
    """
    A finite orthomodular lattice given by its order and orthocomplement tables.

    Instances are immutable. Construction validates the tables; builders that
    already know their result is an orthomodular lattice pass ``check=False``
    together with precomputed meet/join tables.
    """

    def __init__(
        self,
        names: Sequence[str],
        leq: Sequence[Sequence[bool]],
        neg: Sequence[int],
        bottom: int,
        top: int,
        name: str = "L",
        meet: Optional[Sequence[Sequence[int]]] = None,
        join: Optional[Sequence[Sequence[int]]] = None,
        check: bool = True,
    ) -> None:
        _check_shapes(names, leq, neg, bottom, top)
        if meet is None or join is None or check:
            report, meet, join = _verify_tables(names, leq, neg, bottom, top)
            if not report.ok:
                raise LatticeStructureError(
                    f"'{name}' is not an orthomodular lattice: {report.detail}", law=report.law
                )
        assert meet is not None and join is not None
        self.name = name
        self.names: Tuple[str, ...] = tuple(names)
        self.size = len(self.names)
        self.leq_table: Tuple[Tuple[bool, ...], ...] = tuple(
            tuple(bool(v) for v in row) for row in leq
        )
        self.neg_table: Tuple[int, ...] = tuple(int(v) for v in neg)
        self.meet_table: Table = tuple(tuple(row) for row in meet)
        self.join_table: Table = tuple(tuple(row) for row in join)
        self.bottom = int(bottom)
        self.top = int(top)
        self._index: Dict[str, int] = {n: i for i, n in enumerate(self.names)}

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"FiniteOml(name={self.name!r}, size={self.size})"

    @property
    def elements(self) -> range:
        return range(self.size)

    def index(self, element: Element) -> int:
        """Resolve an element given by index or by name."""
        if isinstance(element, bool):
            raise PreconditionError(f"{element!r} is not an element of {self.name}", "lookup")
        if isinstance(element, int):
            if 0 <= element < self.size:
                return element
        elif element in self._index:
            return self._index[element]
        raise PreconditionError(f"{element!r} is not an element of {self.name}", "lookup")

    def name_of(self, i: int) -> str:
        return self.names[i]

    def le(self, a: int, b: int) -> bool:
        return self.leq_table[a][b]

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.leq_table[a][b]

    def meet(self, a: int, b: int) -> int:
        return self.meet_table[a][b]

    def join(self, a: int, b: int) -> int:
        return self.join_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def meet_all(self, items: Iterable[int]) -> int:
        """Meet of a finite family; the empty meet is the top."""
        result = self.top
        for x in items:
            result = self.meet_table[result][x]
        return result

    def join_all(self, items: Iterable[int]) -> int:
        """Join of a finite family; the empty join is the bottom."""
        result = self.bottom
        for x in items:
            result = self.join_table[result][x]
        return result

    def atoms(self) -> List[int]:
        """Elements covering the bottom."""
        return [
            x
            for x in self.elements
            if x != self.bottom
            and not any(self.lt(self.bottom, y) and self.lt(y, x) for y in self.elements)
        ]

    def up_set(self, a: int) -> List[int]:
        return [x for x in self.elements if self.leq_table[a][x]]

    def down_set(self, a: int) -> List[int]:
        return [x for x in self.elements if self.leq_table[x][a]]

    def same_tables(self, other: "FiniteOml") -> bool:
        """Index-wise equality of all tables (names ignored)."""
        return (
            self.leq_table == other.leq_table
            and self.neg_table == other.neg_table
            and self.bottom == other.bottom
            and self.top == other.top
        )

    def to_document(
        self,
        w: Optional[Sequence[Sequence[int]]] = None,
        wstar: Optional[Sequence[Sequence[int]]] = None,
    ) -> LatticeDocument:
        """Lattice JSON document for this structure."""
        return LatticeDocument(
            name=self.name,
            elements=list(self.names),
            leq=[list(row) for row in self.leq_table],
            neg=list(self.neg_table),
            bottom=self.bottom,
            top=self.top,
            w=[list(row) for row in w] if w is not None else None,
            wstar=[list(row) for row in wstar] if wstar is not None else None,
        )


@dataclass(frozen=True)
class IntervalAlgebra:
    """The interval [0, a] of a parent lattice with relative complement x -> ~x & a."""

    parent: FiniteOml
    a: int
    lattice: FiniteOml
    embedding: Tuple[int, ...]

    def to_parent(self, x: int) -> int:
        return self.embedding[x]

    def from_parent(self, x: int) -> int:
        try:
            return self.embedding.index(x)
        except ValueError:
            raise PreconditionError(
                f"{self.parent.name_of(x)} is not below {self.parent.name_of(self.a)}", "interval"
            )


@dataclass(frozen=True)
class CongruencePartition:
    """A partition of a lattice carrier, meant to be compatible with the operations."""

    parent: FiniteOml
    blocks: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_labels(cls, parent: FiniteOml, labels: Sequence[int]) -> "CongruencePartition":
        """Build a partition from a block label per element, normalizing block order."""
        groups: Dict[int, List[int]] = {}
        for x, label in enumerate(labels):
            groups.setdefault(label, []).append(x)
        blocks = sorted(tuple(sorted(g)) for g in groups.values())
        return cls(parent, tuple(blocks))

    @property
    def block_of(self) -> Tuple[int, ...]:
        labels = [0] * self.parent.size
        for b, block in enumerate(self.blocks):
            for x in block:
                labels[x] = b
        return tuple(labels)

    def related(self, x: int, y: int) -> bool:
        labels = self.block_of
        return labels[x] == labels[y]

    def is_diagonal(self) -> bool:
        return all(len(block) == 1 for block in self.blocks)

    def is_total(self) -> bool:
        return len(self.blocks) == 1

    def refines(self, other: "CongruencePartition") -> bool:
        """Whether every block of self lies inside a block of other."""
        labels = other.block_of
        return all(len({labels[x] for x in block}) == 1 for block in self.blocks)

    def is_compatible(self, unary: Sequence[Callable[[int], int]] = ()) -> bool:
        """Compatibility with meet, join, negation and any extra unary operations."""
        L = self.parent
        labels = self.block_of
        for block in self.blocks:
            for x in block[1:]:
                y = block[0]
                if labels[L.neg(x)] != labels[L.neg(y)]:
                    return False
                if any(labels[u(x)] != labels[u(y)] for u in unary):
                    return False
                for c in L.elements:
                    if labels[L.meet(x, c)] != labels[L.meet(y, c)]:
                        return False
                    if labels[L.join(x, c)] != labels[L.join(y, c)]:
                        return False
        return True

    def quotient(self) -> FiniteOml:
        """The quotient lattice, elements named after block representatives."""
        L = self.parent
        labels = self.block_of
        k = len(self.blocks)
        reps = [block[0] for block in self.blocks]
        names = ["[" + L.name_of(r) + "]" for r in reps]
        meet = [[labels[L.meet(reps[i], reps[j])] for j in range(k)] for i in range(k)]
        join = [[labels[L.join(reps[i], reps[j])] for j in range(k)] for i in range(k)]
        leq = [[meet[i][j] == i for j in range(k)] for i in range(k)]
        neg = [labels[L.neg(r)] for r in reps]
        return FiniteOml(
            names,
            leq,
            neg,
            labels[L.bottom],
            labels[L.top],
            name=f"{L.name}/~",
            meet=meet,
            join=join,
            check=False,
        )


# ---------------------------------------------------------------------------
# Law checking
# ---------------------------------------------------------------------------


def _check_shapes(
    names: Sequence[str],
    leq: Sequence[Sequence[bool]],
    neg: Sequence[int],
    bottom: int,
    top: int,
) -> None:
    n = len(names)
    if n == 0:
        raise LatticeStructureError("A lattice needs at least one element")
    if len(set(names)) != n:
        raise LatticeStructureError("Element names must be unique")
    if len(leq) != n or any(len(row) != n for row in leq):
        raise LatticeStructureError(f"leq must be a {n}x{n} table")
    if len(neg) != n:
        raise LatticeStructureError(f"neg must have {n} entries, got {len(neg)}")
    for i, v in enumerate(neg):
        if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
            raise LatticeStructureError(f"neg[{i}] = {v!r} is not an element index")
    for label, v in (("bottom", bottom), ("top", top)):
        if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
            raise LatticeStructureError(f"{label} = {v!r} is not an element index")


def _fail(law: str, names: Sequence[str], witness: Sequence[int], detail: str) -> ValidationReport:
    return ValidationReport(
        ok=False, law=law, witness=[names[i] for i in witness], detail=detail
    )


def _verify_tables(
    names: Sequence[str],
    leq: Sequence[Sequence[bool]],
    neg: Sequence[int],
    bottom: int,
    top: int,
) -> Tuple[ValidationReport, Optional[List[List[int]]], Optional[List[List[int]]]]:
    n = len(names)
    r = range(n)
    le = [[bool(leq[i][j]) for j in r] for i in r]

    # poset
    for x in r:
        if not le[x][x]:
            return _fail("poset", names, (x,), f"{names[x]} <= {names[x]} fails"), None, None
    for x in r:
        for y in r:
            if x != y and le[x][y] and le[y][x]:
                return _fail("poset", names, (x, y), "antisymmetry fails"), None, None
    up = [{y for y in r if le[x][y]} for x in r]
    for x in r:
        for y in sorted(up[x]):
            extra = up[y] - up[x]
            if extra:
                z = min(extra)
                detail = f"{names[x]} <= {names[y]} <= {names[z]} but not {names[x]} <= {names[z]}"
                return _fail("poset", names, (x, y, z), detail), None, None

    # bounds
    for x in r:
        if not (le[bottom][x] and le[x][top]):
            detail = f"{names[x]} lies outside [{names[bottom]}, {names[top]}]"
            return _fail("bounds", names, (x,), detail), None, None

    # lattice
    down_mask = [sum(1 << y for y in r if le[y][x]) for x in r]
    up_mask = [sum(1 << y for y in r if le[x][y]) for x in r]
    by_down = {m: x for x, m in enumerate(down_mask)}
    by_up = {m: x for x, m in enumerate(up_mask)}
    meet = [[0] * n for _ in r]
    join = [[0] * n for _ in r]
    for x in r:
        for y in r:
            m = by_down.get(down_mask[x] & down_mask[y])
            j = by_up.get(up_mask[x] & up_mask[y])
            if m is None or j is None:
                detail = f"{names[x]} and {names[y]} have no {'meet' if m is None else 'join'}"
                return _fail("lattice", names, (x, y), detail), None, None
            meet[x][y] = m
            join[x][y] = j

    # involution
    for x in r:
        if neg[neg[x]] != x:
            return _fail("involution", names, (x,), f"~~{names[x]} != {names[x]}"), meet, join
    for x in r:
        for y in r:
            if le[x][y] and not le[neg[y]][neg[x]]:
                detail = f"{names[x]} <= {names[y]} but not ~{names[y]} <= ~{names[x]}"
                return _fail("involution", names, (x, y), detail), meet, join

    # De Morgan
    for x in r:
        for y in r:
            if neg[join[x][y]] != meet[neg[x]][neg[y]]:
                detail = f"~({names[x]} | {names[y]}) != ~{names[x]} & ~{names[y]}"
                return _fail("de_morgan", names, (x, y), detail), meet, join

    # x & ~x = 0
    for x in r:
        if meet[x][neg[x]] != bottom:
            detail = f"{names[x]} & ~{names[x]} != {names[bottom]}"
            return _fail("complement", names, (x,), detail), meet, join

    # orthomodular law
    for x in r:
        for y in r:
            xy = join[x][y]
            if join[x][meet[neg[x]][xy]] != xy:
                lhs = f"{names[x]} | (~{names[x]} & ({names[x]} | {names[y]}))"
                detail = f"{lhs} != {names[x]} | {names[y]}"
                return _fail("orthomodular", names, (x, y), detail), meet, join

    return ValidationReport(ok=True, detail=f"{n} elements, all laws hold"), meet, join


def verify_oml(candidate: Union[LatticeDocument, FiniteOml, Dict[str, Any]]) -> ValidationReport:
    """
    Check order and orthocomplement tables against the orthomodular lattice laws.

    Laws are checked in the fixed order of ``LAW_ORDER``; the first failure
    is reported with its lexicographically smallest witness.

    Args:
        candidate: A lattice document, a raw dict in the lattice JSON format,
            or an already built lattice

    Returns:
        ValidationReport naming the first failing law, or ok

    Raises:
        LatticeStructureError: If the tables are malformed (shape, index range)
    """
    if isinstance(candidate, FiniteOml):
        doc = candidate.to_document()
    elif isinstance(candidate, dict):
        try:
            doc = LatticeDocument(**candidate)
        except ValidationError as e:
            raise LatticeStructureError(f"Malformed lattice document: {e.errors()[0]['msg']}")
    else:
        doc = candidate
    _check_shapes(doc.elements, doc.leq, doc.neg, doc.bottom, doc.top)
    report, _, _ = _verify_tables(doc.elements, doc.leq, doc.neg, doc.bottom, doc.top)
    if report.ok:
        logger.debug(f"verify_oml: {doc.name or 'lattice'} passes")
    else:
        logger.debug(f"verify_oml: {doc.name or 'lattice'} fails {report.law} at {report.witness}")
    return report


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------


def _atom_letter(i: int) -> str:
    if i < 26:
        return chr(ord("a") + i)
    return f"a{i}"


def boolean(k: int) -> FiniteOml:
    """The Boolean algebra with k atoms (2^k elements); boolean(0) is the one-element algebra."""
    if k < 0:
        raise PreconditionError("k must be non-negative", "boolean")
    n = 1 << k
    full = n - 1

    def name(mask: int) -> str:
        if mask == 0:
            return "0"
        if mask == full:
            return "1"
        return "".join(_atom_letter(i) for i in range(k) if mask >> i & 1)

    r = range(n)
    return FiniteOml(
        [name(m) for m in r],
        [[(i & j) == i for j in r] for i in r],
        [full ^ i for i in r],
        0,
        full,
        name=f"boolean({k})",
        meet=[[i & j for j in r] for i in r],
        join=[[i | j for j in r] for i in r],
        check=False,
    )


def mo(n: int) -> FiniteOml:
    """MO_n: bottom, top and n pairs of mutually incomparable atoms x, x'."""
    if n < 1:
        raise PreconditionError("n must be at least 1", "mo")
    size = 2 * n + 2
    top = size - 1
    names = ["0"]
    for i in range(n):
        letter = _atom_letter(i)
        names += [letter, letter + "'"]
    names.append("1")
    r = range(size)

    def meet(x: int, y: int) -> int:
        if x == y or y == top:
            return x
        if x == top:
            return y
        return 0

    def join(x: int, y: int) -> int:
        if x == y or y == 0:
            return x
        if x == 0:
            return y
        return top

    neg = [top] + [i + 1 if i % 2 == 1 else i - 1 for i in range(1, size - 1)] + [0]
    return FiniteOml(
        names,
        [[meet(x, y) == x for y in r] for x in r],
        neg,
        0,
        top,
        name=f"mo({n})",
        meet=[[meet(x, y) for y in r] for x in r],
        join=[[join(x, y) for y in r] for x in r],
        check=False,
    )


def product(L1: FiniteOml, L2: FiniteOml) -> FiniteOml:
    """Direct product, element (x, y) at index x * |L2| + y."""
    n2 = L2.size
    pairs = [(x, y) for x in L1.elements for y in L2.elements]

    def idx(x: int, y: int) -> int:
        return x * n2 + y

    return FiniteOml(
        [f"({L1.name_of(x)},{L2.name_of(y)})" for x, y in pairs],
        [[L1.le(p[0], q[0]) and L2.le(p[1], q[1]) for q in pairs] for p in pairs],
        [idx(L1.neg(x), L2.neg(y)) for x, y in pairs],
        idx(L1.bottom, L2.bottom),
        idx(L1.top, L2.top),
        name=f"product({L1.name},{L2.name})",
        meet=[[idx(L1.meet(p[0], q[0]), L2.meet(p[1], q[1])) for q in pairs] for p in pairs],
        join=[[idx(L1.join(p[0], q[0]), L2.join(p[1], q[1])) for q in pairs] for p in pairs],
        check=False,
    )


def horizontal_sum(L1: FiniteOml, L2: FiniteOml) -> FiniteOml:
    """
    Paste two lattices along their bounds.

    Non-bound elements of different summands are incomparable, meet to 0 and
    join to 1; order and orthocomplement are inherited summand-wise.
    """
    for L in (L1, L2):
        if L.size < 2:
            raise PreconditionError(
                f"{L.name} is trivial; summands need distinct bounds", "horizontal_sum"
            )
    inner1 = [x for x in L1.elements if x not in (L1.bottom, L1.top)]
    inner2 = [x for x in L2.elements if x not in (L2.bottom, L2.top)]
    size = 2 + len(inner1) + len(inner2)
    top = size - 1
    # (summand, parent index) per new index; summand 0 marks a bound
    origin: List[Tuple[int, int]] = [(0, 0)]
    origin += [(1, x) for x in inner1]
    origin += [(2, x) for x in inner2]
    origin.append((0, 1))
    back = {o: i for i, o in enumerate(origin)}

    taken = {"0", "1"} | {L1.name_of(x) for x in inner1}
    names = ["0"] + [L1.name_of(x) for x in inner1]
    for x in inner2:
        candidate = L2.name_of(x)
        while candidate in taken:
            candidate += "_2"
        taken.add(candidate)
        names.append(candidate)
    names.append("1")

    def lift(side: int, L: FiniteOml, v: int) -> int:
        if v == L.bottom:
            return 0
        if v == L.top:
            return top
        return back[(side, v)]

    summands = {1: L1, 2: L2}

    def op(x: int, y: int, is_meet: bool) -> int:
        if x == y:
            return x
        for a, b in ((x, y), (y, x)):
            if a == 0:
                return 0 if is_meet else b
            if a == top:
                return b if is_meet else top
        (sx, px), (sy, py) = origin[x], origin[y]
        if sx != sy:
            return 0 if is_meet else top
        L = summands[sx]
        v = L.meet(px, py) if is_meet else L.join(px, py)
        return lift(sx, L, v)

    def neg(x: int) -> int:
        sx, px = origin[x]
        if sx == 0:
            return 0 if x == top else top
        L = summands[sx]
        return lift(sx, L, L.neg(px))

    r = range(size)
    meet = [[op(x, y, True) for y in r] for x in r]
    join = [[op(x, y, False) for y in r] for x in r]
    return FiniteOml(
        names,
        [[meet[x][y] == x for y in r] for x in r],
        [neg(x) for x in r],
        0,
        top,
        name=f"horizontal_sum({L1.name},{L2.name})",
        meet=meet,
        join=join,
        check=False,
    )


def interval(L: FiniteOml, a: Element) -> IntervalAlgebra:
    """The interval [0, a] with relative complement x -> ~x & a."""
    ai = L.index(a)
    carrier = L.down_set(ai)
    pos = {x: i for i, x in enumerate(carrier)}
    r = range(len(carrier))
    lattice = FiniteOml(
        [L.name_of(x) for x in carrier],
        [[L.le(carrier[i], carrier[j]) for j in r] for i in r],
        [pos[L.meet(L.neg(x), ai)] for x in carrier],
        pos[L.bottom],
        pos[ai],
        name=f"interval({L.name},{L.name_of(ai)})",
        meet=[[pos[L.meet(carrier[i], carrier[j])] for j in r] for i in r],
        join=[[pos[L.join(carrier[i], carrier[j])] for j in r] for i in r],
        check=False,
    )
    return IntervalAlgebra(L, ai, lattice, tuple(carrier))


def closure(
    L: FiniteOml,
    generators: Iterable[int],
    unary: Sequence[Callable[[int], int]] = (),
    limit: Optional[int] = None,
) -> List[int]:
    """
    Close a subset under meet, join, negation and extra unary operations.

    Args:
        L: Ambient lattice
        generators: Element indices to start from
        unary: Extra unary operations the subset must be closed under
        limit: Stop early once the closure reaches this many elements

    Returns:
        Sorted element indices of the closure (always contains the bounds)
    """
    seen = {L.bottom, L.top}
    order: List[int] = [L.bottom, L.top]
    work: List[int] = []
    for g in list(generators) + [L.bottom, L.top]:
        if g not in seen:
            seen.add(g)
            order.append(g)
        work.append(g)
    while work:
        x = work.pop()
        candidates = [L.neg(x)] + [u(x) for u in unary]
        for y in list(order):
            candidates.append(L.meet(x, y))
            candidates.append(L.join(x, y))
        for c in candidates:
            if c not in seen:
                seen.add(c)
                order.append(c)
                work.append(c)
        if limit is not None and len(seen) >= limit:
            break
    return sorted(seen)


def subalgebra(
    L: FiniteOml,
    generators: Iterable[Element],
    unary: Sequence[Callable[[int], int]] = (),
    name: Optional[str] = None,
) -> Tuple[FiniteOml, Tuple[int, ...]]:
    """
    The sub-orthomodular lattice generated by a subset.

    Returns:
        The subalgebra (element names inherited) and its inclusion map
    """
    gens = [L.index(g) for g in generators]
    carrier = closure(L, gens, unary)
    pos = {x: i for i, x in enumerate(carrier)}
    r = range(len(carrier))
    sub = FiniteOml(
        [L.name_of(x) for x in carrier],
        [[L.le(carrier[i], carrier[j]) for j in r] for i in r],
        [pos[L.neg(x)] for x in carrier],
        pos[L.bottom],
        pos[L.top],
        name=name or f"sub({L.name})",
        meet=[[pos[L.meet(carrier[i], carrier[j])] for j in r] for i in r],
        join=[[pos[L.join(carrier[i], carrier[j])] for j in r] for i in r],
        check=False,
    )
    return sub, tuple(carrier)


# ---------------------------------------------------------------------------
# Build expressions
# ---------------------------------------------------------------------------


def _build_grammar() -> pp.ParserElement:
    expr = pp.Forward()
    ident = pp.Word(pp.alphas, pp.alphanums + "_")
    number = pp.pyparsing_common.integer
    quoted = pp.QuotedString('"')
    args = pp.Group(pp.Optional(pp.delimited_list(expr)))
    call = pp.Group(ident("op") + pp.Suppress("(") + args("args") + pp.Suppress(")"))
    expr <<= call | number | quoted
    return expr


_BUILD_GRAMMAR = _build_grammar()


def _evaluate_build(node: Any) -> Any:
    if not isinstance(node, pp.ParseResults):
        return node
    op = node["op"]
    args = [_evaluate_build(a) for a in node["args"]]
    builders: Dict[str, Callable[..., Any]] = {
        "boolean": boolean,
        "mo": mo,
        "product": product,
        "horizontal_sum": horizontal_sum,
        "interval": lambda L, a: interval(L, a).lattice,
    }
    if op not in builders:
        raise LatticeStructureError(f"Unknown builder '{op}'")
    try:
        return builders[op](*args)
    except TypeError as e:
        raise LatticeStructureError(f"Bad arguments to {op}: {e}")


def build(spec: str) -> FiniteOml:
    """
    Build a lattice from an expression such as ``product(boolean(1),mo(2))``.

    Builders: boolean(k), mo(n), product(L1, L2), horizontal_sum(L1, L2) and
    interval(L, a) where a is an element index or a double-quoted name.
    """
    try:
        parsed = _BUILD_GRAMMAR.parse_string(spec, parse_all=True)
    except pp.ParseException as e:
        raise LatticeStructureError(f"Cannot parse build expression {spec!r} at column {e.col}")
    result = _evaluate_build(parsed[0])
    if not isinstance(result, FiniteOml):
        raise LatticeStructureError(f"{spec!r} does not denote a lattice")
    return result


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def read_json(path: Union[str, Path]) -> Any:
    """Read a JSON file, reporting decode errors with their line."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise LQFFileError(f"Cannot read file: {e.strerror or e}", str(path))
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        where = f"line {e.lineno}, column {e.colno}"
        raise LQFFileError(f"Malformed JSON at {where}: {e.msg}", str(path))


def load_document(path: Union[str, Path]) -> LatticeDocument:
    """Load and validate a lattice JSON document."""
    data = read_json(path)
    try:
        return LatticeDocument.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"])
        raise LQFFileError(f"Invalid lattice document at '{where}': {first['msg']}", str(path))


def lattice_from_document(doc: LatticeDocument) -> FiniteOml:
    """Build (and validate) the lattice described by a document."""
    return FiniteOml(doc.elements, doc.leq, doc.neg, doc.bottom, doc.top, name=doc.name or "L")
