"""
Hilbert-style calculus for LQF terms.

Axiom schemas A0a, A0b, A1..A33, the rules DS (from t and ~t | s infer s)
and N (from t infer ed(t)), proof objects, a deterministic checker, a library
of derived rules (COR-1..COR-6, COR-8..COR-11) that expand to primitive
fragments, and the admissible deduction step.
"""

import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from pydantic import ValidationError

from .exceptions import (
    LQFFileError,
    PreconditionError,
    ProofFormatError,
    ShapeMismatchError,
    TermSyntaxError,
)
from .lattice import read_json
from .models import (
    BadStep,
    FailureReason,
    JustificationDocument,
    ProofDocument,
    StepDocument,
    Verdict,
)
from .terms import (
    ONE,
    Join,
    Meet,
    Neg,
    Term,
    Var,
    W,
    Zero,
    ed,
    parse,
    print_term,
    rel,
    substitute,
    variables,
)

logger = logging.getLogger(__name__)

METAVARIABLES = ("t", "s", "r", "x", "y", "z")

_SCHEMA_TEXT: Dict[str, str] = {
    "A0a": "R(t | ~t, 1)",
    "A0b": "R(t & ~t, 0)",
    "A1": "R(t, t)",
    "A2": "~R(t, s) | (~R(s, r) | R(t, r))",
    "A3": "~R(t, s) | R(~t, ~s)",
    "A4": "~R(t, s) | R(t & r, s & r)",
    "A5": "R(t & s, s & t)",
    "A6": "R(t & (s & r), (t & s) & r)",
    "A7": "R(t & (t | s), t)",
    "A8": "R(~t & t, (~t & t) & s)",
    "A9": "R(t, ~~t)",
    "A10": "R(~(t | s), ~t & ~s)",
    "A11": "R(t | (~t & (t | s)), t | s)",
    "A12": "R(R(t, s), R(s, t))",
    "A13": "~R(t, s) | (~t | s)",
    "A14": "R(w0(0), 0)",
    "A15": "R(x, x & w0(x))",
    "A16": "R(y, (y & w0(x)) | (y & ~w0(x)))",
    "A17": "R(w(z, x & y) | w(z, y), w(z, y))",
    "A18": "R((w0(z) & w*(z, x & y)) | w*(z, y), w*(z, y))",
    "A19": "R(w0*(z) & z, w0*(z) & w*(z, z))",
    "A20": "R(w0*(z) & z, (~w0(~z) & w0*(z)) | (w0(~z) & w0(w0*(z) & z)))",
    "A21": "R(w0*(z) | z, w0*(z) | w*(z, z))",
    "A22": "R(w0*(z) | z, w0(w0*(z) | z))",
    "A23": "R(w0(z), w0(z) & R(w(z, w*(z, x)), x))",
    "A24": "R(w0(z), w0(z) & R(w*(z, w(z, x)), mu(z, x)))",
    "A25": "R(w0(w0*(1)), w0(~w0*(1)))",
    "A26": "R(w(x, y & w0(z)), w(x & w0(z), y & w0(z)))",
    "A27": "R(w(x, y & w0(z)), w(x, y) & w0(z))",
    "A28": "R(w*(x, y & w0(z)), w*(x & w0(z), y & w0(z)))",
    "A29": "R(w*(x, y & w0(z)), w*(x, y) & w0(z))",
    "A30": "~ed(R(t, s)) | R(w(r, t), w(r, s))",
    "A31": "~ed(R(t, s)) | R(w(t, r), w(s, r))",
    "A32": "~ed(R(t, s)) | R(w*(r, t), w*(r, s))",
    "A33": "~ed(R(t, s)) | R(w*(t, r), w*(s, r))",
}


@dataclass(frozen=True)
class AxiomSchema:
    id: str
    pattern: Term

    @property
    def metavariables(self) -> List[str]:
        return variables(self.pattern)


AXIOMS: Dict[str, AxiomSchema] = {
    axiom_id: AxiomSchema(axiom_id, parse(text)) for axiom_id, text in _SCHEMA_TEXT.items()
}
OML_AXIOMS = ("A0a", "A0b") + tuple(f"A{i}" for i in range(1, 14))
LQF_AXIOMS = tuple(f"A{i}" for i in range(14, 34))


def instantiate_axiom(axiom_id: str, subst: Mapping[str, Union[Term, str]]) -> Term:
    """
    Replace the metavariables of a schema.

    Raises:
        PreconditionError: If the id is unknown or a metavariable is unbound
    """
    if axiom_id not in AXIOMS:
        raise PreconditionError(f"unknown axiom '{axiom_id}'", "instantiate_axiom")
    schema = AXIOMS[axiom_id]
    terms = {k: parse(v) if isinstance(v, str) else v for k, v in subst.items()}
    missing = [m for m in schema.metavariables if m not in terms]
    if missing:
        raise PreconditionError(
            f"{axiom_id} needs a binding for {', '.join(missing)}", "instantiate_axiom"
        )
    return substitute(schema.pattern, terms)


def match(
    pattern: Term, term: Term, binding: Optional[Dict[str, Term]] = None
) -> Optional[Dict[str, Term]]:
    """
    First-order matching of a schema against a term.

    Metavariables bind whole subtrees; a repeated metavariable must bind equal
    subtrees. Returns the binding or None.
    """
    binding = {} if binding is None else binding
    if isinstance(pattern, Var):
        bound = binding.get(pattern.name)
        if bound is None:
            binding[pattern.name] = term
            return binding
        return binding if bound == term else None
    if type(pattern) is not type(term):
        return None
    for p, t in zip(pattern.children(), term.children()):
        if match(p, t, binding) is None:
            return None
    return binding


def match_rel(term: Term) -> Optional[Tuple[Term, Term]]:
    """(t, s) when term is t R s."""
    binding = match(rel(Var("t"), Var("s")), term)
    if binding is None:
        return None
    return binding["t"], binding["s"]


# ---------------------------------------------------------------------------
# Proofs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Step:
    """
    One proof step. Step and hypothesis references are 1-based.

    ``kind`` is one of axiom, hyp, ds, n, macro, dt; only the fields of that
    kind are meaningful.
    """

    term: Term
    kind: str
    axiom: Optional[str] = None
    subst: Optional[Tuple[Tuple[str, Term], ...]] = None
    index: Optional[int] = None
    minor: Optional[int] = None
    major: Optional[int] = None
    premise: Optional[int] = None
    rule: Optional[str] = None
    inputs: Tuple[int, ...] = ()
    params: Tuple[Tuple[str, Term], ...] = ()
    hypothesis: Optional[Term] = None
    subproof: Optional["Proof"] = None

    @classmethod
    def by_axiom(
        cls, term: Term, axiom_id: str, subst: Optional[Mapping[str, Term]] = None
    ) -> "Step":
        frozen = tuple(sorted(subst.items())) if subst else None
        return cls(term, "axiom", axiom=axiom_id, subst=frozen)

    @classmethod
    def by_hyp(cls, term: Term, index: int) -> "Step":
        return cls(term, "hyp", index=index)

    @classmethod
    def by_ds(cls, term: Term, minor: int, major: int) -> "Step":
        return cls(term, "ds", minor=minor, major=major)

    @classmethod
    def by_n(cls, term: Term, premise: int) -> "Step":
        return cls(term, "n", premise=premise)

    @classmethod
    def by_macro(
        cls,
        term: Term,
        rule: str,
        inputs: Sequence[int] = (),
        params: Optional[Mapping[str, Term]] = None,
    ) -> "Step":
        frozen = tuple(sorted((params or {}).items()))
        return cls(term, "macro", rule=rule, inputs=tuple(inputs), params=frozen)

    @classmethod
    def by_dt(cls, term: Term, hypothesis: Term, subproof: "Proof") -> "Step":
        return cls(term, "dt", hypothesis=hypothesis, subproof=subproof)

    def references(self) -> List[int]:
        if self.kind == "ds":
            return [self.minor or 0, self.major or 0]
        if self.kind == "n":
            return [self.premise or 0]
        if self.kind == "macro":
            return list(self.inputs)
        return []

    def renumbered(self, mapping: Mapping[int, int]) -> "Step":
        """The same step with references translated through ``mapping``."""
        if self.kind == "ds":
            return replace(self, minor=mapping[self.minor or 0], major=mapping[self.major or 0])
        if self.kind == "n":
            return replace(self, premise=mapping[self.premise or 0])
        if self.kind == "macro":
            return replace(self, inputs=tuple(mapping[i] for i in self.inputs))
        return self


@dataclass(frozen=True)
class Proof:
    theory: Tuple[Term, ...] = ()
    steps: Tuple[Step, ...] = field(default_factory=tuple)

    @property
    def conclusion(self) -> Optional[Term]:
        return self.steps[-1].term if self.steps else None

    def __len__(self) -> int:
        return len(self.steps)


# ---------------------------------------------------------------------------
# Checking
# ---------------------------------------------------------------------------


def _bad(index: int, reason: FailureReason, detail: str) -> Verdict:
    return Verdict(ok=False, first_bad_step=BadStep(index=index, reason=reason, detail=detail))


def _check_step(proof: Proof, i: int, step: Step, strict: bool) -> Optional[Verdict]:
    for ref in step.references():
        if not 1 <= ref < i:
            return _bad(i, FailureReason.FORWARD_REFERENCE, f"step {i} cites step {ref}")

    def term_at(k: int) -> Term:
        return proof.steps[k - 1].term

    if step.kind == "axiom":
        schema = AXIOMS.get(step.axiom or "")
        if schema is None:
            return _bad(i, FailureReason.UNKNOWN_AXIOM, f"no axiom named '{step.axiom}'")
        if step.subst is not None:
            try:
                expected = instantiate_axiom(schema.id, dict(step.subst))
            except PreconditionError as e:
                return _bad(i, FailureReason.SUBSTITUTION_MISMATCH, e.message)
            if expected != step.term:
                return _bad(
                    i,
                    FailureReason.SUBSTITUTION_MISMATCH,
                    f"{schema.id} under the given substitution is {print_term(expected)}",
                )
        elif match(schema.pattern, step.term) is None:
            return _bad(i, FailureReason.NOT_AXIOM_INSTANCE, f"not an instance of {schema.id}")
        return None

    if step.kind == "hyp":
        k = step.index or 0
        if not 1 <= k <= len(proof.theory) or proof.theory[k - 1] != step.term:
            return _bad(i, FailureReason.HYPOTHESIS_MISMATCH, f"hypothesis {k} does not match")
        return None

    if step.kind == "ds":
        minor, major = term_at(step.minor or 0), term_at(step.major or 0)
        if not (
            isinstance(major, Join) and major.left == Neg(minor) and major.right == step.term
        ):
            return _bad(
                i,
                FailureReason.DS_SHAPE_MISMATCH,
                f"step {step.major} is not ~(step {step.minor}) | {print_term(step.term)}",
            )
        return None

    if step.kind == "n":
        if step.term != ed(term_at(step.premise or 0)):
            return _bad(i, FailureReason.N_SHAPE_MISMATCH, f"term is not ed(step {step.premise})")
        return None

    if step.kind == "macro":
        try:
            fragment = derived_rule(
                step.rule or "", [term_at(k) for k in step.inputs], dict(step.params)
            )
        except (ShapeMismatchError, PreconditionError) as e:
            return _bad(i, FailureReason.MACRO_MISMATCH, e.message)
        inner = check_proof(fragment, strict=True)
        if not inner.ok or fragment.conclusion != step.term:
            return _bad(
                i,
                FailureReason.MACRO_MISMATCH,
                f"{step.rule} does not derive {print_term(step.term)}",
            )
        return None

    if step.kind == "dt":
        if strict:
            return _bad(i, FailureReason.DT_IN_STRICT_MODE, "deduction steps need --lax")
        sub = step.subproof
        hyp = step.hypothesis
        if sub is None or hyp is None or sub.theory != proof.theory + (hyp,):
            detail = "sub-proof theory must be T plus the hypothesis"
            return _bad(i, FailureReason.DT_MISMATCH, detail)
        if not check_proof(sub, strict=False).ok or sub.conclusion is None:
            return _bad(i, FailureReason.DT_MISMATCH, "sub-proof does not check")
        if step.term != Join(Neg(ed(hyp)), sub.conclusion):
            return _bad(i, FailureReason.DT_MISMATCH, "term is not ~ed(s) | t")
        return None

    raise ProofFormatError(f"unknown justification kind '{step.kind}'", "kind")


def check_proof(proof: Proof, strict: bool = True) -> Verdict:
    """
    Check every step in order and report the first bad one.

    Axiom steps are matched against their schema (or compared with the
    instance under an explicit substitution), hypothesis steps against the
    theory, DS and N steps syntactically, macro steps by expanding and
    re-checking their fragment, and deduction steps only when ``strict`` is
    false.

    Returns:
        Verdict; ``conclusion`` holds the printed last term when ok
    """
    if not proof.steps:
        raise ProofFormatError("a proof needs at least one step", "steps")
    for i, step in enumerate(proof.steps, start=1):
        failure = _check_step(proof, i, step, strict)
        if failure is not None:
            logger.debug(f"proof rejected at step {i}: {failure.first_bad_step}")
            return failure
    conclusion = proof.conclusion
    assert conclusion is not None
    return Verdict(ok=True, conclusion=print_term(conclusion))


# ---------------------------------------------------------------------------
# Derived rules
# ---------------------------------------------------------------------------

DERIVED_RULES = (
    "COR-1",
    "COR-2",
    "COR-3",
    "COR-4",
    "COR-5",
    "COR-6",
    "COR-8",
    "COR-9",
    "COR-10",
    "COR-11",
)


class _Builder:
    """Accumulates primitive steps; references are returned 1-based."""

    def __init__(self, theory: Sequence[Term]) -> None:
        self.theory = tuple(theory)
        self.steps: List[Step] = [Step.by_hyp(t, k) for k, t in enumerate(self.theory, start=1)]

    def add(self, step: Step) -> int:
        self.steps.append(step)
        return len(self.steps)

    def term(self, k: int) -> Term:
        return self.steps[k - 1].term

    def axiom(self, axiom_id: str, **subst: Term) -> int:
        return self.add(Step.by_axiom(instantiate_axiom(axiom_id, subst), axiom_id))

    def ds(self, minor: int, major: int) -> int:
        major_term = self.term(major)
        assert isinstance(major_term, Join)
        return self.add(Step.by_ds(major_term.right, minor, major))

    def n(self, premise: int) -> int:
        return self.add(Step.by_n(ed(self.term(premise)), premise))

    def proof(self) -> Proof:
        return Proof(self.theory, tuple(self.steps))


def _excluded_middle(b: _Builder, t: Term) -> int:
    """Primitive steps ending in t | ~t; returns the last index."""
    not_t = Neg(t)
    s1 = b.axiom("A9", t=t)
    s2 = b.axiom("A13", t=t, s=Neg(not_t))
    s3 = b.ds(s1, s2)
    s4 = b.axiom("A0a", t=not_t)
    s5 = b.axiom("A13", t=b.term(s3), s=ONE)
    s6 = b.ds(s4, s5)
    one = b.ds(s3, s6)
    lem = Join(t, not_t)
    s8 = b.axiom("A0a", t=t)
    s9 = b.axiom("A12", t=lem, s=ONE)
    s10 = b.axiom("A13", t=rel(lem, ONE), s=rel(ONE, lem))
    s11 = b.ds(s9, s10)
    s12 = b.ds(s8, s11)
    s13 = b.axiom("A13", t=ONE, s=lem)
    s14 = b.ds(s12, s13)
    return b.ds(one, s14)


def _require_rel(rule_id: str, term: Term) -> Tuple[Term, Term]:
    pair = match_rel(term)
    if pair is None:
        raise ShapeMismatchError(
            f"expected a step of shape R(t, s), got {print_term(term)}", rule_id
        )
    return pair


def derived_rule(
    rule_id: str,
    inputs: Sequence[Term],
    params: Optional[Mapping[str, Term]] = None,
) -> Proof:
    """
    Primitive fragment for a derived rule.

    The fragment's theory is the list of input terms (its first steps cite
    them as hypotheses 1, 2, ...); its last term is the rule's conclusion.

    Args:
        rule_id: One of ``DERIVED_RULES``
        inputs: Terms of the cited steps
        params: Extra terms; ``t`` for COR-1/COR-2, ``r`` for COR-8..COR-11

    Raises:
        ShapeMismatchError: If the inputs do not have the shape the rule needs
        PreconditionError: If the rule is unknown
    """
    params = dict(params or {})
    if rule_id not in DERIVED_RULES:
        raise PreconditionError(f"unknown derived rule '{rule_id}'", "derived_rule")
    expected_inputs = {"COR-1": 0, "COR-2": 0, "COR-4": 2, "COR-6": 2}.get(rule_id, 1)
    if len(inputs) != expected_inputs:
        raise ShapeMismatchError(
            f"expects {expected_inputs} input step(s), got {len(inputs)}", rule_id
        )
    b = _Builder(inputs)

    if rule_id in ("COR-1", "COR-2"):
        if "t" not in params:
            raise ShapeMismatchError("needs the parameter t", rule_id)
        t = params["t"]
        lem_step = _excluded_middle(b, t)
        if rule_id == "COR-2":
            lem = b.term(lem_step)
            s2 = b.axiom("A0a", t=t)
            s3 = b.axiom("A13", t=lem, s=ONE)
            s4 = b.ds(s2, s3)
            b.ds(lem_step, s4)
        return b.proof()

    if rule_id == "COR-3":
        t, s = _require_rel(rule_id, inputs[0])
        s2 = b.axiom("A12", t=t, s=s)
        s3 = b.axiom("A13", t=rel(t, s), s=rel(s, t))
        s4 = b.ds(s2, s3)
        b.ds(1, s4)
        return b.proof()

    if rule_id == "COR-4":
        t, s = _require_rel(rule_id, inputs[0])
        s_again, r = _require_rel(rule_id, inputs[1])
        if s_again != s:
            raise ShapeMismatchError(
                f"middle terms differ: {print_term(s)} vs {print_term(s_again)}", rule_id
            )
        s3 = b.axiom("A2", t=t, s=s, r=r)
        s4 = b.ds(1, s3)
        b.ds(2, s4)
        return b.proof()

    if rule_id == "COR-5":
        t, s = _require_rel(rule_id, inputs[0])
        s2 = b.axiom("A3", t=t, s=s)
        b.ds(1, s2)
        return b.proof()

    if rule_id == "COR-6":
        t, s = _require_rel(rule_id, inputs[0])
        second = inputs[1]
        if not isinstance(second, Meet) or second.left != t:
            raise ShapeMismatchError(f"second input must be {print_term(t)} & r", rule_id)
        r = second.right
        s3 = b.axiom("A4", t=t, s=s, r=r)
        s4 = b.ds(1, s3)
        s5 = b.axiom("A13", t=Meet(t, r), s=Meet(s, r))
        s6 = b.ds(s4, s5)
        b.ds(2, s6)
        return b.proof()

    # COR-8 .. COR-11
    t, s = _require_rel(rule_id, inputs[0])
    if "r" not in params:
        raise ShapeMismatchError("needs the parameter r", rule_id)
    axiom_id = {"COR-8": "A30", "COR-9": "A31", "COR-10": "A32", "COR-11": "A33"}[rule_id]
    s2 = b.n(1)
    s3 = b.axiom(axiom_id, t=t, s=s, r=params["r"])
    b.ds(s2, s3)
    return b.proof()


def expand_macros(proof: Proof) -> Proof:
    """
    Inline every macro step as its primitive fragment.

    Fragment hypotheses become references to the cited steps; later
    references are renumbered. Deduction sub-proofs are expanded as well.

    Raises:
        ShapeMismatchError: If a macro cannot be expanded
        ProofFormatError: If a macro step's term differs from its fragment's
            conclusion
    """
    out: List[Step] = []
    position: Dict[int, int] = {}
    for i, step in enumerate(proof.steps, start=1):
        if step.kind != "macro":
            if step.kind == "dt" and step.subproof is not None:
                step = replace(step, subproof=expand_macros(step.subproof))
            out.append(step.renumbered(position))
            position[i] = len(out)
            continue
        inputs = [position[k] for k in step.inputs]
        cited = [out[k - 1].term for k in inputs]
        fragment = derived_rule(step.rule or "", cited, dict(step.params))
        if fragment.conclusion != step.term:
            raise ProofFormatError(
                f"step {i}: {step.rule} derives {print_term(fragment.conclusion or ONE)}, "
                f"not {print_term(step.term)}",
                "term",
            )
        local: Dict[int, int] = {}
        for j, inner in enumerate(fragment.steps, start=1):
            if inner.kind == "hyp":
                local[j] = inputs[(inner.index or 1) - 1]
            else:
                out.append(inner.renumbered(local))
                local[j] = len(out)
        position[i] = local[len(fragment.steps)]
    return Proof(proof.theory, tuple(out))


def deduction_step(theory: Sequence[Term], s: Term, proof: Proof) -> Step:
    """
    A DT step asserting ~ed(s) | t from a proof of t from theory plus s.

    Raises:
        PreconditionError: If the proof is not from theory plus s or does
            not check
    """
    if proof.theory != tuple(theory) + (s,):
        raise PreconditionError("the proof must be from the theory extended by s", "deduction_step")
    verdict = check_proof(proof, strict=False)
    if not verdict.ok:
        bad = verdict.first_bad_step
        raise PreconditionError(
            f"supplied proof fails at step {bad.index if bad else 0}",
            "deduction_step",
        )
    conclusion = proof.conclusion
    assert conclusion is not None
    return Step.by_dt(Join(Neg(ed(s)), conclusion), s, proof)


def is_deduction_term(term: Term) -> Optional[Tuple[Term, Term]]:
    """(s, t) when term is ~ed(s) | t."""
    if isinstance(term, Join) and isinstance(term.left, Neg):
        inner = term.left.arg
        if (
            isinstance(inner, Neg)
            and isinstance(inner.arg, W)
            and isinstance(inner.arg.left, Zero)
            and isinstance(inner.arg.right, Neg)
        ):
            return inner.arg.right.arg, term.right
    return None


# ---------------------------------------------------------------------------
# Documents
# ---------------------------------------------------------------------------


def _parse_field(text: str, where: str) -> Term:
    try:
        return parse(text)
    except TermSyntaxError as e:
        raise ProofFormatError(e.message, where)


def proof_from_document(doc: ProofDocument) -> Proof:
    """
    Build a proof from its JSON document.

    Raises:
        ProofFormatError: If a term does not parse
    """
    theory = tuple(_parse_field(t, f"theory[{k}]") for k, t in enumerate(doc.theory, start=1))
    steps: List[Step] = []
    for i, sd in enumerate(doc.steps, start=1):
        where = f"steps[{i}]"
        term = _parse_field(sd.term, f"{where}.term")
        j = sd.just
        if j.kind == "axiom":
            subst = (
                {k: _parse_field(v, f"{where}.just.subst.{k}") for k, v in j.subst.items()}
                if j.subst is not None
                else None
            )
            steps.append(Step.by_axiom(term, j.id or "", subst))
        elif j.kind == "hyp":
            steps.append(Step.by_hyp(term, j.index or 0))
        elif j.kind == "ds":
            steps.append(Step.by_ds(term, j.minor or 0, j.major or 0))
        elif j.kind == "n":
            steps.append(Step.by_n(term, j.premise or 0))
        elif j.kind == "macro":
            params = {k: _parse_field(v, f"{where}.just.params.{k}") for k, v in j.params.items()}
            steps.append(Step.by_macro(term, j.rule or "", j.inputs, params))
        else:
            assert j.hypothesis is not None and j.proof is not None
            hypothesis = _parse_field(j.hypothesis, f"{where}.just.hypothesis")
            steps.append(Step.by_dt(term, hypothesis, proof_from_document(j.proof)))
    return Proof(theory, tuple(steps))


def proof_to_document(proof: Proof) -> ProofDocument:
    steps: List[StepDocument] = []
    for step in proof.steps:
        fields: Dict[str, object] = {"kind": step.kind}
        if step.kind == "axiom":
            fields["id"] = step.axiom
            if step.subst is not None:
                fields["subst"] = {k: print_term(v) for k, v in step.subst}
        elif step.kind == "hyp":
            fields["index"] = step.index
        elif step.kind == "ds":
            fields.update(minor=step.minor, major=step.major)
        elif step.kind == "n":
            fields["premise"] = step.premise
        elif step.kind == "macro":
            fields.update(
                rule=step.rule,
                inputs=list(step.inputs),
                params={k: print_term(v) for k, v in step.params},
            )
        else:
            assert step.hypothesis is not None and step.subproof is not None
            fields.update(
                hypothesis=print_term(step.hypothesis), proof=proof_to_document(step.subproof)
            )
        steps.append(
            StepDocument(
                term=print_term(step.term),
                just=JustificationDocument(**fields),  # type: ignore[arg-type]
            )
        )
    return ProofDocument(theory=[print_term(t) for t in proof.theory], steps=steps)


def load_proof(path: Union[str, Path]) -> Proof:
    """
    Read a proof JSON file.

    Raises:
        LQFFileError: If the file is missing, not JSON or not a proof document
        ProofFormatError: If a term does not parse
    """
    data = read_json(path)
    try:
        doc = ProofDocument.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"])
        raise LQFFileError(f"Invalid proof document at '{where}': {first['msg']}", str(path))
    return proof_from_document(doc)
