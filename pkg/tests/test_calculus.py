"""
Tests for the proof calculus: checking, derived rules and deduction steps.
"""

from dataclasses import replace

import pytest

from lqf_logic.calculus import (
    AXIOMS,
    DERIVED_RULES,
    LQF_AXIOMS,
    OML_AXIOMS,
    Proof,
    Step,
    check_proof,
    deduction_step,
    derived_rule,
    expand_macros,
    instantiate_axiom,
    is_deduction_term,
    load_proof,
    match_rel,
    proof_from_document,
    proof_to_document,
)
from lqf_logic.exceptions import (
    LQFFileError,
    PreconditionError,
    ProofFormatError,
    ShapeMismatchError,
)
from lqf_logic.models import FailureReason
from lqf_logic.terms import ONE, Join, Neg, Var, ed, parse, print_term

COR_FIXTURES = [
    "cor1",
    "cor2",
    "cor3",
    "cor4",
    "cor5",
    "cor6",
    "cor8",
    "cor9",
    "cor10",
    "cor11",
    "macros",
]


def bad_step(verdict):
    assert not verdict.ok
    assert verdict.first_bad_step is not None
    return verdict.first_bad_step


class TestAxioms:
    """Test the axiom table."""

    def test_axiom_ids(self):
        """A0a, A0b and A1..A33."""
        assert len(AXIOMS) == 35
        assert len(OML_AXIOMS) + len(LQF_AXIOMS) == 35

    def test_instantiate(self):
        """Metavariables are replaced by terms or term strings."""
        term = instantiate_axiom("A3", {"t": "a", "s": parse("b & c")})

        assert term == parse("~R(a, b & c) | R(~a, ~(b & c))")

    def test_instantiate_unbound(self):
        """All metavariables need a binding."""
        with pytest.raises(PreconditionError):
            instantiate_axiom("A2", {"t": "a"})
        with pytest.raises(PreconditionError):
            instantiate_axiom("A99", {})

    def test_match_rel(self):
        """R(t, s) is recognised after expansion."""
        assert match_rel(parse("R(a, b & c)")) == (Var("a"), parse("b & c"))
        assert match_rel(parse("a | b")) is None


class TestCheckProof:
    """Test the proof checker on the derived-rule fixtures."""

    @pytest.mark.parametrize("name", COR_FIXTURES)
    def test_fixture_checks(self, fixtures_dir, name):
        """Every fixture is a strict proof."""
        verdict = check_proof(load_proof(fixtures_dir / f"{name}.proof.json"), strict=True)

        assert verdict.ok
        assert verdict.first_bad_step is None

    def test_conclusions(self, fixtures_dir):
        """The verdict carries the printed last term."""
        expected = {
            "cor1": "a | ~a",
            "cor2": "1",
            "cor6": "b & c",
            "cor3": print_term(parse("R(b, a)")),
        }
        for name, conclusion in expected.items():
            verdict = check_proof(load_proof(fixtures_dir / f"{name}.proof.json"))
            assert verdict.conclusion == conclusion

    def test_cor2_with_step_removed(self, fixtures_dir):
        """Dropping step 4 and citing step 3 instead breaks the DS shape at step 4."""
        proof = load_proof(fixtures_dir / "cor2.proof.json")
        mutated = Proof(proof.theory, proof.steps[:3] + (Step.by_ds(ONE, 1, 3),))

        bad = bad_step(check_proof(mutated))

        assert bad.index == 4
        assert bad.reason == FailureReason.DS_SHAPE_MISMATCH

    def test_cor2_without_renumbering(self, fixtures_dir):
        """Dropping step 4 and keeping the citation leaves a forward reference."""
        proof = load_proof(fixtures_dir / "cor2.proof.json")
        mutated = Proof(proof.theory, proof.steps[:3] + proof.steps[4:])

        bad = bad_step(check_proof(mutated))

        assert bad.index == 4
        assert bad.reason == FailureReason.FORWARD_REFERENCE

    def test_not_an_instance(self):
        """R(a, b) is not an instance of R(t, t)."""
        proof = Proof((), (Step.by_axiom(parse("R(a, b)"), "A1"),))

        assert bad_step(check_proof(proof)).reason == FailureReason.NOT_AXIOM_INSTANCE

    def test_unknown_axiom(self):
        """Axiom ids are looked up."""
        proof = Proof((), (Step.by_axiom(parse("R(a, a)"), "A99"),))

        assert bad_step(check_proof(proof)).reason == FailureReason.UNKNOWN_AXIOM

    def test_substitution_mismatch(self):
        """An explicit substitution must produce the step's term."""
        step = Step.by_axiom(parse("R(a, a)"), "A1", {"t": Var("b")})

        assert bad_step(check_proof(Proof((), (step,)))).reason == (
            FailureReason.SUBSTITUTION_MISMATCH
        )

    def test_hypothesis_mismatch(self):
        """Hypothesis steps must repeat the theory."""
        proof = Proof((parse("a"),), (Step.by_hyp(parse("b"), 1),))

        assert bad_step(check_proof(proof)).reason == FailureReason.HYPOTHESIS_MISMATCH

    def test_n_rule(self):
        """N infers ed(t) from t and nothing else."""
        a = parse("a")
        good = Proof((a,), (Step.by_hyp(a, 1), Step.by_n(ed(a), 1)))
        bad = Proof((a,), (Step.by_hyp(a, 1), Step.by_n(Neg(a), 1)))

        assert check_proof(good).ok
        assert bad_step(check_proof(bad)).reason == FailureReason.N_SHAPE_MISMATCH

    def test_macro_mismatch(self):
        """A macro step must state its rule's conclusion."""
        a = parse("R(a, b)")
        proof = Proof((a,), (Step.by_hyp(a, 1), Step.by_macro(parse("R(a, c)"), "COR-3", [1])))

        bad = bad_step(check_proof(proof))

        assert bad.index == 2
        assert bad.reason == FailureReason.MACRO_MISMATCH

    def test_empty_proof(self):
        """A proof needs a step."""
        with pytest.raises(ProofFormatError):
            check_proof(Proof((), ()))


def load_fixture(fixtures_dir, name):
    return load_proof(fixtures_dir / f"{name}.proof.json")


def without_step(proof, k):
    """Drop step k and leave later citations as they are."""
    return Proof(proof.theory, proof.steps[: k - 1] + proof.steps[k:])


def with_step(proof, k, **changes):
    steps = list(proof.steps)
    steps[k - 1] = replace(steps[k - 1], **changes)
    return Proof(proof.theory, tuple(steps))


def negated_at(proof, k):
    return with_step(proof, k, term=Neg(proof.steps[k - 1].term))


class TestMutations:
    """Test that single-step mutations of the fixtures are rejected at the right step."""

    @pytest.mark.parametrize(
        "name, k, index",
        [
            ("cor1", 3, 5),
            ("cor2", 2, 3),
            ("cor3", 2, 3),
            ("cor4", 1, 3),
            ("cor5", 1, 2),
            ("cor5", 2, 2),
            ("cor6", 5, 5),
            ("cor8", 2, 3),
            ("cor10", 1, 1),
        ],
    )
    def test_deleted_step(self, fixtures_dir, name, k, index):
        """The first step citing a shifted index fails."""
        mutated = without_step(load_fixture(fixtures_dir, name), k)

        bad = bad_step(check_proof(mutated))

        assert bad.index == index
        assert bad.reason == FailureReason.FORWARD_REFERENCE

    @pytest.mark.parametrize(
        "name, k, reason",
        [
            ("cor1", 3, FailureReason.DS_SHAPE_MISMATCH),
            ("cor1", 5, FailureReason.NOT_AXIOM_INSTANCE),
            ("cor2", 1, FailureReason.MACRO_MISMATCH),
            ("cor4", 2, FailureReason.HYPOTHESIS_MISMATCH),
            ("cor6", 7, FailureReason.DS_SHAPE_MISMATCH),
            ("cor9", 2, FailureReason.N_SHAPE_MISMATCH),
            ("cor10", 4, FailureReason.DS_SHAPE_MISMATCH),
            ("cor11", 3, FailureReason.NOT_AXIOM_INSTANCE),
        ],
    )
    def test_negated_term(self, fixtures_dir, name, k, reason):
        """Replacing t by ~t breaks exactly the altered step."""
        mutated = negated_at(load_fixture(fixtures_dir, name), k)

        bad = bad_step(check_proof(mutated))

        assert bad.index == k
        assert bad.reason == reason

    @pytest.mark.parametrize(
        "name, k, axiom_id, reason",
        [
            ("cor1", 1, "A1", FailureReason.NOT_AXIOM_INSTANCE),
            ("cor4", 3, "A3", FailureReason.NOT_AXIOM_INSTANCE),
            ("cor5", 2, "A4", FailureReason.NOT_AXIOM_INSTANCE),
            ("cor10", 3, "A99", FailureReason.UNKNOWN_AXIOM),
        ],
    )
    def test_wrong_axiom(self, fixtures_dir, name, k, axiom_id, reason):
        """A step cited under another schema is rejected where it stands."""
        mutated = with_step(load_fixture(fixtures_dir, name), k, axiom=axiom_id)

        bad = bad_step(check_proof(mutated))

        assert bad.index == k
        assert bad.reason == reason

    @pytest.mark.parametrize(
        "name, k, changes, reason",
        [
            ("cor1", 7, {"minor": 4}, FailureReason.DS_SHAPE_MISMATCH),
            ("cor3", 5, {"major": 5}, FailureReason.FORWARD_REFERENCE),
            ("cor4", 4, {"minor": 2}, FailureReason.DS_SHAPE_MISMATCH),
            ("cor8", 2, {"premise": 2}, FailureReason.FORWARD_REFERENCE),
            ("cor9", 4, {"minor": 1}, FailureReason.DS_SHAPE_MISMATCH),
            ("cor11", 1, {"index": 2}, FailureReason.HYPOTHESIS_MISMATCH),
        ],
    )
    def test_wrong_citation(self, fixtures_dir, name, k, changes, reason):
        """A step citing the wrong step or hypothesis is rejected where it stands."""
        mutated = with_step(load_fixture(fixtures_dir, name), k, **changes)

        bad = bad_step(check_proof(mutated))

        assert bad.index == k
        assert bad.reason == reason


class TestDeduction:
    """Test deduction steps in strict and lax mode."""

    def test_strict_rejects_dt(self, fixtures_dir):
        """Strict mode rejects deduction steps."""
        proof = load_proof(fixtures_dir / "dt.proof.json")

        bad = bad_step(check_proof(proof, strict=True))

        assert bad.index == 1
        assert bad.reason == FailureReason.DT_IN_STRICT_MODE

    def test_lax_accepts_dt(self, fixtures_dir):
        """Lax mode audits the sub-proof."""
        verdict = check_proof(load_proof(fixtures_dir / "dt.proof.json"), strict=False)

        assert verdict.ok

    def test_deduction_step(self):
        """From a proof of t from T + s, assert ~ed(s) | t."""
        a = parse("a")
        sub = Proof((a,), (Step.by_hyp(a, 1),))
        step = deduction_step((), a, sub)

        assert step.term == Join(Neg(ed(a)), a)
        assert is_deduction_term(step.term) == (a, a)
        assert check_proof(Proof((), (step,)), strict=False).ok

    def test_deduction_step_wrong_theory(self):
        """The sub-proof must extend the theory by s."""
        a, b = parse("a"), parse("b")
        sub = Proof((b,), (Step.by_hyp(b, 1),))

        with pytest.raises(PreconditionError):
            deduction_step((), a, sub)


class TestDerivedRules:
    """Test derived-rule expansion."""

    def test_every_rule_expands(self):
        """Each rule gives a checkable primitive fragment."""
        inputs = {
            "COR-1": ([], {"t": parse("a")}),
            "COR-2": ([], {"t": parse("a")}),
            "COR-3": ([parse("R(a, b)")], {}),
            "COR-4": ([parse("R(a, b)"), parse("R(b, c)")], {}),
            "COR-5": ([parse("R(a, b)")], {}),
            "COR-6": ([parse("R(a, b)"), parse("a & c")], {}),
            "COR-8": ([parse("R(a, b)")], {"r": parse("c")}),
            "COR-9": ([parse("R(a, b)")], {"r": parse("c")}),
            "COR-10": ([parse("R(a, b)")], {"r": parse("c")}),
            "COR-11": ([parse("R(a, b)")], {"r": parse("c")}),
        }
        assert set(inputs) == set(DERIVED_RULES)
        for rule_id, (terms, params) in inputs.items():
            fragment = derived_rule(rule_id, terms, params)
            assert check_proof(fragment).ok, rule_id

    def test_conclusions(self):
        """Rules conclude what they state."""
        assert derived_rule("COR-2", [], {"t": parse("a")}).conclusion == ONE
        assert derived_rule("COR-5", [parse("R(a, b)")]).conclusion == parse("R(~a, ~b)")
        assert derived_rule(
            "COR-9", [parse("R(a, b)")], {"r": parse("c")}
        ).conclusion == parse("R(w(a, c), w(b, c))")

    def test_shape_errors(self):
        """Inputs of the wrong shape are rejected."""
        with pytest.raises(ShapeMismatchError):
            derived_rule("COR-3", [parse("a & b")])
        with pytest.raises(ShapeMismatchError):
            derived_rule("COR-4", [parse("R(a, b)"), parse("R(c, d)")])
        with pytest.raises(ShapeMismatchError):
            derived_rule("COR-1", [])
        with pytest.raises(ShapeMismatchError):
            derived_rule("COR-5", [])

    def test_unknown_rule(self):
        """COR-7 has no expansion."""
        with pytest.raises(PreconditionError):
            derived_rule("COR-7", [parse("R(a, b)")])

    def test_expand_macros(self, fixtures_dir):
        """Expansion leaves a primitive proof with the same conclusion."""
        proof = load_proof(fixtures_dir / "macros.proof.json")
        expanded = expand_macros(proof)

        assert all(step.kind != "macro" for step in expanded.steps)
        assert expanded.conclusion == proof.conclusion
        assert check_proof(expanded).ok

    def test_expand_cor2(self, fixtures_dir):
        """The COR-1 macro inside the COR-2 fixture expands to 15 steps."""
        proof = load_proof(fixtures_dir / "cor2.proof.json")
        expanded = expand_macros(proof)

        assert len(expanded) == 15 + 4
        assert check_proof(expanded).ok


class TestProofDocuments:
    """Test the JSON form of proofs."""

    def test_bad_term(self, fixtures_dir):
        """Unparseable terms are format errors."""
        with pytest.raises(ProofFormatError):
            load_proof(fixtures_dir / "bad-term.proof.json")

    def test_missing_file(self, tmp_path):
        """Missing files are file errors."""
        with pytest.raises(LQFFileError):
            load_proof(tmp_path / "absent.proof.json")

    def test_invalid_justification(self, tmp_path):
        """A DS step without its premises is rejected."""
        path = tmp_path / "bad.proof.json"
        path.write_text(
            '{"steps": [{"term": "a", "just": {"kind": "ds", "minor": 1}}]}', encoding="utf-8"
        )
        with pytest.raises(LQFFileError):
            load_proof(path)

    def test_document_round_trip(self, fixtures_dir):
        """Rendering and re-reading a proof keeps it intact."""
        proof = load_proof(fixtures_dir / "macros.proof.json")

        assert proof_from_document(proof_to_document(proof)) == proof
