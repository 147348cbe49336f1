"""
Tests for the term language: parsing, printing and evaluation.
"""

import random

import pytest

from lqf_logic.exceptions import SignatureError, TermSyntaxError, ValuationError
from lqf_logic.lattice import boolean
from lqf_logic.terms import (
    ONE,
    ZERO,
    Join,
    Meet,
    Neg,
    Var,
    W,
    Wstar,
    central_surrogate,
    complexity,
    depth,
    enumerate_term_classes,
    eval_term,
    find_counter_valuation,
    holds,
    named_valuation,
    parse,
    parse_equation,
    print_term,
    random_term,
    rel,
    resolve_valuation,
    substitute,
    uses_w,
    variables,
)

DISTRIBUTIVE = "x & (y | z) = (x & y) | (x & z)"


class TestParse:
    """Test the surface grammar."""

    def test_precedence(self):
        """~ binds tighter than &, which binds tighter than |."""
        a, b, c = Var("a"), Var("b"), Var("c")

        assert parse("a | b & c") == Join(a, Meet(b, c))
        assert parse("~a & b") == Meet(Neg(a), b)
        assert parse("a & b & c") == Meet(Meet(a, b), c)

    def test_constants(self):
        """0 and 1 are constants, not variables."""
        assert parse("0 | 1") == Join(ZERO, ONE)

    def test_macros_expand(self):
        """R, ed, w0, w0* and mu expand to core constructors."""
        x, y = Var("x"), Var("y")

        assert parse("R(x, y)") == rel(x, y)
        assert parse("ed(x)") == Neg(W(ZERO, Neg(x)))
        assert parse("w0(x)") == W(ZERO, x)
        assert parse("w0*(x)") == Wstar(ZERO, x)
        assert parse("mu(x, y)") == Meet(x, Join(Neg(x), y))

    def test_syntax_error_position(self):
        """Parse failures carry a position."""
        with pytest.raises(TermSyntaxError) as exc_info:
            parse("a & & b")

        assert exc_info.value.position is not None

    def test_equation(self):
        """Equations split on a single '='."""
        eq = parse_equation("x & x = x")

        assert eq.lhs == Meet(Var("x"), Var("x"))
        assert eq.rhs == Var("x")

    def test_equation_needs_one_sign(self):
        """Chains and bare terms are not equations."""
        for text in ("a = b = c", "a & b"):
            with pytest.raises(TermSyntaxError):
                parse_equation(text)

    def test_equation_error_offset(self):
        """Errors in the right-hand side are located in the full text."""
        with pytest.raises(TermSyntaxError) as exc_info:
            parse_equation("a = b &")

        assert exc_info.value.position is not None
        assert exc_info.value.position >= 4


class TestPrint:
    """Test printing."""

    def test_minimal_parentheses(self):
        """Only needed parentheses are printed."""
        assert print_term(parse("a & (b | c)")) == "a & (b | c)"
        assert print_term(parse("(a | b) | c")) == "a | b | c"
        assert print_term(parse("~(a | b)")) == "~(a | b)"

    def test_w0_shorthand(self):
        """w(0, x) prints as w0(x)."""
        assert print_term(parse("w(0, x)")) == "w0(x)"
        assert print_term(parse("w*(y, x)")) == "w*(y, x)"

    def test_reparse(self):
        """Printed terms parse back to the same tree."""
        term = parse("R(w(c, a), ~b) | mu(a, b)")

        assert parse(print_term(term)) == term


class TestStructure:
    """Test term inspection and substitution."""

    def test_variables(self):
        """Variables are sorted and deduplicated."""
        assert variables(parse_equation("w(z, x) = y & x")) == ["x", "y", "z"]

    def test_uses_w(self):
        """Only w and w* count."""
        assert uses_w(parse("ed(x)"))
        assert not uses_w(parse("R(x, y)"))

    def test_substitute(self):
        """Substitution is simultaneous."""
        term = substitute(parse("x & y"), {"x": Var("y"), "y": Var("x")})

        assert term == parse("y & x")

    def test_complexity(self):
        """Complexity counts nodes."""
        assert complexity(parse("~a & b")) == 4


class TestEvaluation:
    """Test evaluation in lattices and expanded structures."""

    def test_eval_in_mo2(self, mo2):
        """Two atoms join to the top."""
        value = eval_term(parse("a | b"), mo2, {"a": 1, "b": 3})

        assert value == mo2.top

    def test_holds(self, mo2):
        """Absorption holds in MO2, distributivity does not."""
        assert holds(mo2, "x & (x | y) = x")
        assert not holds(mo2, DISTRIBUTIVE)
        assert holds(boolean(2), DISTRIBUTIVE)

    def test_first_counter_valuation(self, mo2):
        """Counter-valuations are lexicographically first."""
        counter = find_counter_valuation(mo2, parse_equation(DISTRIBUTIVE))

        assert counter is not None
        assert named_valuation(mo2, counter) == {"x": "a", "y": "a'", "z": "b"}

    def test_orthomodular_law(self, mo2):
        """The orthomodular law holds in MO2."""
        assert holds(mo2, "x | (~x & (x | y)) = x | y")

    def test_w_needs_expanded_structure(self, mo2):
        """Bare lattices have no w table."""
        with pytest.raises(SignatureError):
            eval_term(parse("w0(x)"), mo2, {"x": 0})

    def test_unbound_variable(self, mo2):
        """Every variable needs a value."""
        with pytest.raises(ValuationError):
            eval_term(parse("x & y"), mo2, {"x": 0})

    def test_resolve_valuation(self, mo2):
        """Names resolve to indices."""
        assert resolve_valuation(mo2, {"x": "b'", "y": 1}) == {"x": 4, "y": 1}

        with pytest.raises(ValuationError):
            resolve_valuation(mo2, {"x": "c"})

    def test_central_surrogate(self, mo2, b1_mo2):
        """ed evaluates to the dual central cover in the central surrogate."""
        S = central_surrogate(mo2)

        assert eval_term(parse("ed(x)"), S, {"x": 1}) == mo2.bottom
        assert eval_term(parse("ed(x)"), S, {"x": mo2.top}) == mo2.top

        P = central_surrogate(b1_mo2)
        assert eval_term(parse("ed(x)"), P, {"x": 7}) == 6


class TestGeneration:
    """Test random terms and term classes."""

    def test_depth(self):
        """Leaves have depth 0."""
        assert depth(Var("a")) == 0
        assert depth(parse("~a & b")) == 2

    def test_random_term_bounds(self):
        """Random terms respect the depth bound and the variable names."""
        rng = random.Random(0)
        for _ in range(50):
            term = random_term(rng, ["x", "y"], 3)
            assert depth(term) <= 3
            assert set(variables(term)) <= {"x", "y"}
            assert not uses_w(term)

    def test_term_classes_cover_mo2(self, mo2):
        """Two atoms generate MO2 by depth 1."""
        classes = enumerate_term_classes(mo2, {"x": 1, "y": 3}, 2)

        assert sorted(c.value for c in classes) == list(mo2.elements)
        assert all(c.depth <= 1 for c in classes)
