"""
Tests for the lattice operations: center, covers, perspectivity and decomposition.
"""

import pytest

from lqf_logic.core import (
    are_perspective,
    center,
    central_cover,
    commutes,
    complements,
    complements_via_c,
    congruence_from_pairs,
    dual_central_cover,
    factor_decompose,
    find_isomorphism,
    internal_dimension_audit,
    is_central,
    is_directly_indecomposable,
    join_congruences,
    map_diagnostics,
    modularity_suite,
    perspective,
    perspectivity_table,
    sasaki,
)
from lqf_logic.exceptions import HypothesisViolationError, PreconditionError
from lqf_logic.lattice import boolean, horizontal_sum, mo


class TestCenter:
    """Test the center and central covers."""

    def test_boolean_is_its_own_center(self, b2):
        """Every element of a Boolean algebra is central."""
        assert center(b2) == [0, 1, 2, 3]

    def test_mo2_center_is_trivial(self, mo2):
        """MO2 has only the bounds in its center."""
        assert center(mo2) == [0, 5]
        assert not is_central(mo2, mo2.index("a"))

    def test_product_center(self, b1_mo2):
        """The center of a product is the product of the centers."""
        assert center(b1_mo2) == [0, 5, 6, 11]

    def test_central_cover(self, mo2, b1_mo2):
        """e(a) is the least central element above a."""
        assert central_cover(mo2, mo2.index("a")) == mo2.top
        assert central_cover(mo2, mo2.bottom) == mo2.bottom
        assert central_cover(b1_mo2, b1_mo2.index("(0,a)")) == b1_mo2.index("(0,1)")

    def test_dual_central_cover(self, mo2, b1_mo2):
        """e_d(a) is the greatest central element below a."""
        assert dual_central_cover(mo2, mo2.index("a")) == mo2.bottom
        assert dual_central_cover(mo2, mo2.top) == mo2.top
        assert dual_central_cover(b1_mo2, b1_mo2.index("(1,a)")) == b1_mo2.index("(1,0)")


class TestElementRelations:
    """Test commutation, Sasaki projection, complements and perspectivity."""

    def test_commutes(self, mo2):
        """a commutes with its complement but not with b."""
        a = mo2.index("a")

        assert commutes(mo2, a, mo2.index("a'"))
        assert not commutes(mo2, a, mo2.index("b"))

    def test_sasaki(self, mo2):
        """Projecting b onto a gives a in MO2."""
        a = mo2.index("a")

        assert sasaki(mo2, a, mo2.index("b")) == a
        assert sasaki(mo2, a, mo2.bottom) == mo2.bottom

    def test_complements(self, mo2):
        """Every other atom complements a."""
        assert complements(mo2, mo2.index("a")) == [2, 3, 4]

    def test_complements_via_c(self, mo2):
        """c_a(x) is a complement of a for every x."""
        a = mo2.index("a")
        for x in mo2.elements:
            assert complements_via_c(mo2, a, x) in complements(mo2, a)

    def test_perspective_in_mo2(self, mo2):
        """a and a' share the complement b."""
        assert perspective(mo2, 1, 2) == 3
        assert perspective(mo2, 1, 3) == 2
        assert are_perspective(mo2, 1, 4)

    def test_perspectivity_table(self, mo2):
        """The table agrees with pairwise lookups."""
        table = perspectivity_table(mo2)

        assert table[(1, 2)] == 3
        assert all(table[(a, b)] == perspective(mo2, a, b) for a, b in table)

    def test_not_perspective_in_boolean(self, b2):
        """Complements are unique in a Boolean algebra."""
        assert perspective(b2, 1, 2) is None
        assert not are_perspective(b2, 1, 2)


class TestDecomposition:
    """Test factor decomposition and direct indecomposability."""

    def test_factor_decompose(self, b2):
        """Splitting boolean(2) at a gives two two-element factors."""
        decomposition = factor_decompose(b2, b2.index("a"))

        assert decomposition.factor.lattice.size == 2
        assert decomposition.cofactor.lattice.size == 2
        assert decomposition.projection == (0, 1, 0, 1)
        assert decomposition.congruence.blocks == ((0, 2), (1, 3))

    def test_factor_decompose_needs_central(self, mo2):
        """Non-central elements are rejected."""
        with pytest.raises(PreconditionError):
            factor_decompose(mo2, mo2.index("a"))

    def test_indecomposable(self, mo2, b2, b1_mo2):
        """Only lattices with center {0, 1} are directly indecomposable."""
        assert is_directly_indecomposable(mo2)
        assert is_directly_indecomposable(boolean(1))
        assert not is_directly_indecomposable(b2)
        assert not is_directly_indecomposable(b1_mo2)
        assert not is_directly_indecomposable(boolean(0))

    def test_internal_dimension_audit(self, mo2, b2):
        """The central cover is the indicator exactly on indecomposable lattices."""
        assert internal_dimension_audit(mo2)["indicator"]
        audit = internal_dimension_audit(b2)

        assert not audit["indicator"]
        assert audit["faithful"]
        assert audit["join"]


class TestIsomorphism:
    """Test the isomorphism search."""

    def test_mo1_is_boolean2(self, b2):
        """MO1 and boolean(2) are the same algebra."""
        assert find_isomorphism(mo(1), b2) is not None

    def test_pasted_boolean_pair_is_mo2(self, mo2):
        """Two four-element algebras pasted together give MO2."""
        assert find_isomorphism(mo2, horizontal_sum(boolean(2), boolean(2))) is not None

    def test_no_isomorphism(self, mo2, b1_mo2):
        """Different sizes or shapes are not isomorphic."""
        assert find_isomorphism(mo2, b1_mo2) is None
        assert find_isomorphism(boolean(3), mo(3)) is None


class TestModularity:
    """Test the three non-modularity detectors."""

    def test_mo2_is_modular(self, mo2):
        """MO2 satisfies the modular law."""
        report = modularity_suite(mo2)

        assert report.is_modular
        assert report.n5 is None
        assert report.perspective_pair is None

    def test_pasted_boolean_algebras_are_not_modular(self):
        """An atom and a coatom of boolean(3) share a complement from the other block."""
        report = modularity_suite(horizontal_sum(boolean(3), boolean(2)))

        assert not report.is_modular
        assert report.witness is not None
        assert report.n5 is not None
        assert report.perspective_pair is not None


class TestMapDiagnostics:
    """Test diagnostics of the w_a and w_a* tables."""

    def test_identity_maps_at_top(self):
        """Identity tables at a = 1 satisfy every hypothesis."""
        L = boolean(1)
        report = map_diagnostics(L, L.top, w=[0, 1], wstar=[0, 1])

        assert report.a_is_top
        assert report.preserves_relative_complements
        assert report.relative_complement_equivalence
        assert report.hypotheses_hold
        assert report.wstar_order_isomorphism
        assert report.wstar_fixes_a

    def test_zero_is_rejected(self, mo2):
        """The maps are attached to nonzero elements."""
        with pytest.raises(PreconditionError):
            map_diagnostics(mo2, mo2.bottom)

    def test_table_length(self, mo2):
        """Tables must cover the carrier."""
        with pytest.raises(PreconditionError):
            map_diagnostics(mo2, 1, w=[0, 1])

    def test_claimed_hypotheses_violated(self):
        """A decreasing table claimed monotone is an error."""
        L = boolean(1)

        with pytest.raises(HypothesisViolationError):
            map_diagnostics(L, L.top, w=[1, 0], wstar=[0, 1], claim_hypotheses=True)


class TestCongruences:
    """Test congruence generation."""

    def test_principal_congruence_in_boolean(self, b2):
        """Identifying 0 with a collapses b with 1."""
        theta = congruence_from_pairs(b2, [(0, 1)])

        assert theta.blocks == ((0, 1), (2, 3))

    def test_mo2_is_simple(self, mo2):
        """Any identification in MO2 collapses everything."""
        assert congruence_from_pairs(mo2, [(0, 1)]).is_total()

    def test_join(self, b2):
        """Joining the two factor congruences is total."""
        first = congruence_from_pairs(b2, [(0, 1)])
        second = congruence_from_pairs(b2, [(0, 2)])

        assert join_congruences(first, second).is_total()
