"""
Tests for the LQF and type III condition lists on expanded structures.
"""

import random

import pytest

from lqf_logic.catalog import resolve_structure
from lqf_logic.conditions import (
    III_CONDITIONS,
    LQF_CONDITIONS,
    alignment,
    check_iii_conditions,
    check_lqf_axioms,
    derived_consequences,
    random_structure,
    schema_alignment,
    two_element_oracle,
)
from lqf_logic.exceptions import LatticeStructureError
from lqf_logic.terms import Equation, ExpandedStructure, Meet, Var, central_surrogate, parse


@pytest.fixture
def constant_mo2(fixtures_dir) -> ExpandedStructure:
    """MO2 with w and w* constantly 0."""
    return resolve_structure(fixtures_dir / "mo2-constant.structure.json")


class TestConditionLists:
    """Test the condition tables."""

    def test_sizes(self):
        """Twelve LQF conditions and ten III conditions."""
        assert [c.id for c in LQF_CONDITIONS] == [f"LQF{i}" for i in range(1, 13)]
        assert [c.id for c in III_CONDITIONS] == [f"III{i}" for i in range(1, 11)]

    def test_inequality_meet_form(self):
        """x <= w0(x) is checked as x = x & w0(x)."""
        lqf2 = LQF_CONDITIONS[1]
        x = Var("x")

        assert lqf2.inequality
        assert lqf2.statement == "x <= w0(x)"
        assert lqf2.equations() == [Equation(x, Meet(x, parse("w0(x)")))]

    def test_chains_split(self):
        """A three-term chain gives two equations."""
        lqf6 = LQF_CONDITIONS[5]

        assert len(lqf6.equations()) == 2
        assert lqf6.variables == ["z"]


class TestChecks:
    """Test checking structures against the lists."""

    def test_constant_tables_fail_lqf2(self, constant_mo2):
        """The first element above 0 breaks x <= w0(x)."""
        report = check_lqf_axioms(constant_mo2)

        assert not report.ok
        assert report.failed == "LQF2"
        assert report.part == 1
        assert report.witness == {"x": "a"}

    def test_constant_tables_fail_iii2(self, constant_mo2):
        """The III list fails at the same place."""
        report = check_iii_conditions(constant_mo2)

        assert report.failed == "III2"
        assert report.witness == {"x": "a"}
        assert len(report.supplementary) == 2

    def test_alignment(self, constant_mo2):
        """Both lists stop at the same shared condition."""
        report = alignment(constant_mo2)

        assert report.shared_lqf == "LQF2"
        assert report.shared_iii == "III2"
        assert report.agree

    def test_random_structures_align(self, mo2):
        """Shared conditions fail in step on random tables."""
        rng = random.Random(7)
        for _ in range(20):
            assert alignment(random_structure(mo2, rng)).agree

    def test_two_element_algebra_has_no_model(self):
        """No pair of tables on {0, 1} satisfies LQF1-LQF12."""
        counts = two_element_oracle("LQF")

        assert "pass" not in counts
        assert sum(counts.values()) == 256

    def test_bad_table_shape(self, mo2):
        """Tables must be square over the carrier."""
        with pytest.raises(LatticeStructureError):
            ExpandedStructure.from_tables(mo2, [[0]], [[0]])


class TestSchemaAlignment:
    """Test locating axiom schemas among the conditions."""

    def test_equation_and_inequality(self):
        """A14 is LQF1 and A15 is LQF2 in meet form."""
        first, second = schema_alignment(["A14", "A15"])

        assert (first.condition, first.part, first.form) == ("LQF1", 1, "equation")
        assert (second.condition, second.form) == ("LQF2", "meet")


class TestDerivedConsequences:
    """Test the consequence diagnostics."""

    def test_central_surrogate(self, mo2):
        """The central cover satisfies the w0 facts; Sasaki tables fix z, so the bounds fail."""
        facts = derived_consequences(central_surrogate(mo2))

        assert facts["w0_top"]
        assert facts["w0star_bottom"]
        assert facts["w0_central"]
        assert facts["w_monotone"]
        assert not facts["wstar_strict_bounds"]

    def test_document_round_trip(self, constant_mo2):
        """Expanded structures render their tables."""
        doc = constant_mo2.to_document()

        assert doc.w == [[0] * 6 for _ in range(6)]
        again = ExpandedStructure.from_document(doc)
        assert again.base.same_tables(constant_mo2.base)
        assert again.wstar_table == constant_mo2.wstar_table
