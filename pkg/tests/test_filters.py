"""
Tests for LQF-filters, their classification and the correspondence with congruences.
"""

from lqf_logic.filters import (
    FilterSet,
    cep_probe,
    center_correspondence,
    classify_filter,
    closure_discrepancies,
    enumerate_lqf_filters,
    enumerate_oml_filters,
    filter_congruence_maps,
    generate_filter,
    generate_filter_brute,
    generated_is_proper,
)


class TestEnumeration:
    """Test enumeration of filters."""

    def test_boolean_filters(self, b2):
        """Every up-set of boolean(2) is an LQF-filter."""
        filters = enumerate_lqf_filters(b2)

        assert len(filters) == 4
        assert [F.generator for F in filters] == [0, 1, 2, 3]

    def test_mo2_filters(self, mo2):
        """Perspectivity leaves only the improper filter and {1}."""
        assert [F.names for F in enumerate_oml_filters(mo2)] == [list(mo2.names), ["1"]]
        assert len(enumerate_lqf_filters(mo2)) == 2

    def test_filter_set(self, b2):
        """Membership, properness and generator of a filter set."""
        F = FilterSet.of(b2, ["a", "1"])

        assert 1 in F
        assert len(F) == 2
        assert F.is_proper
        assert F.generator == 1


class TestGeneration:
    """Test generated filters."""

    def test_boolean(self, b2):
        """An element of a Boolean algebra generates its up-set."""
        assert generate_filter(b2, ["a"]).names == ["a", "1"]
        assert generate_filter(b2, ["a", "b"]).names == list(b2.names)

    def test_mo2_atom_generates_everything(self, mo2):
        """e_d of an atom is 0 in MO2."""
        F = generate_filter(mo2, ["a"])

        assert not F.is_proper
        assert len(F) == mo2.size

    def test_empty_generator_set(self, mo2):
        """The empty meet is 1."""
        assert generate_filter(mo2, []).names == ["1"]

    def test_closed_form_matches_intersection(self, b1_mo2):
        """[e_d(m), 1] is the least LQF-filter containing the subset."""
        for subset in (["(1,a)"], ["(1,1)", "(0,b)"], ["(1,0)"], []):
            assert generate_filter(b1_mo2, subset) == generate_filter_brute(b1_mo2, subset)

    def test_generated_is_proper(self, b1_mo2):
        """Properness fails once some meet has e_d equal to 0."""
        assert generated_is_proper(b1_mo2, ["(1,a)"])
        assert not generated_is_proper(b1_mo2, ["(0,a)"])


class TestClassification:
    """Test the closure and maximality flags."""

    def test_top_filter_of_mo2_is_maximal(self, mo2):
        """{1} is the only proper LQF-filter of MO2."""
        flags = classify_filter(mo2, ["1"])

        assert flags.is_lqf_filter
        assert flags.proper
        assert flags.maximal
        assert flags.maximal_by_inclusion
        assert flags.maximal_by_center

    def test_up_set_of_an_atom(self, mo2):
        """[a, 1] is closed under neither e_d nor perspectivity."""
        flags = classify_filter(mo2, ["a", "1"])

        assert flags.increasing
        assert flags.meet_closed
        assert not flags.perspective_closed
        assert not flags.ed_closed
        assert not flags.is_oml_filter
        assert not flags.maximal

    def test_boolean_maximal_filters(self, b2):
        """[a, 1] is maximal in boolean(2), {1} is not."""
        assert classify_filter(b2, ["a", "1"]).maximal
        assert not classify_filter(b2, ["1"]).maximal_by_inclusion

    def test_improper_filter(self, b2):
        """The whole lattice is a filter but never maximal."""
        flags = classify_filter(b2, b2.names)

        assert flags.is_lqf_filter
        assert not flags.proper
        assert not flags.maximal

    def test_no_closure_discrepancy(self, mo2, b1_mo2):
        """On these lattices e_d closure and perspectivity closure agree."""
        assert closure_discrepancies(mo2) == []
        assert closure_discrepancies(b1_mo2) == []


class TestCorrespondences:
    """Test the maps between filters, congruences and the center."""

    def test_mo2_congruences(self, mo2):
        """MO2 is simple: two congruences, two filters."""
        report = filter_congruence_maps(mo2)

        assert report.congruences == 2
        assert report.filters == 2
        assert report.bijective
        assert report.order_preserving

    def test_boolean_congruences(self, b2):
        """boolean(2) has four of each."""
        report = filter_congruence_maps(b2)

        assert (report.congruences, report.filters) == (4, 4)
        assert report.bijective

    def test_center_correspondence(self, b2, b1_mo2):
        """Boolean filters of the center match LQF-filters one to one."""
        report = center_correspondence(b2)

        assert report.boolean_filters == 4
        assert report.lqf_filters == 4
        assert report.bijective
        assert report.order_preserving
        assert report.recovers_filters

        assert center_correspondence(b1_mo2).bijective

    def test_cep_probe(self, mo2):
        """Filters of the block {0, a, a', 1} extend without gaining members."""
        report = cep_probe(mo2, ["a"])

        assert set(report.subalgebra) == {"0", "a", "a'", "1"}
        assert report.filters_checked == 2
        assert report.ok
