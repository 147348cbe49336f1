"""
Tests for LQF Logic models.

This module contains tests for the input documents, the report models and the settings.
"""

import os

import pytest
from pydantic import ValidationError

from lqf_logic.exceptions import ConfigError
from lqf_logic.models import (
    BadStep,
    ConditionReport,
    FailureReason,
    JustificationDocument,
    LatticeDocument,
    LQFSettings,
    MatrixDocument,
    ProofDocument,
    RefutationTrace,
    RunConfig,
    TraceEntry,
    Verdict,
)

ENV_KEYS = ("LQF_SEED", "LQF_LOG_LEVEL", "LQF_OUTPUT_FORMAT", "LQF_CATALOG_MAX_SIZE")


@pytest.fixture
def clean_env(monkeypatch, tmp_path):
    """Clear LQF_* variables and return a .env path that does not exist."""
    for key in ENV_KEYS:
        monkeypatch.delenv(key, raising=False)
    return tmp_path / "absent.env"


class TestLatticeDocument:
    """Test LatticeDocument model."""

    def test_valid_document(self):
        """Test a two-element document."""
        doc = LatticeDocument(
            elements=["0", "1"], leq=[[True, True], [False, True]], neg=[1, 0], bottom=0, top=1
        )

        assert doc.w is None
        assert doc.name is None

    def test_duplicate_names(self):
        """Test duplicate element names are rejected."""
        with pytest.raises(ValidationError):
            LatticeDocument(
                elements=["a", "a"], leq=[[True, True], [False, True]], neg=[1, 0], bottom=0, top=1
            )

    def test_unknown_field(self):
        """Test extra keys are rejected."""
        with pytest.raises(ValidationError):
            LatticeDocument(
                elements=["0"], leq=[[True]], neg=[0], bottom=0, top=0, join=[[0]]
            )


class TestProofDocuments:
    """Test proof document models."""

    def test_justification_kinds(self):
        """Test unknown kinds are rejected."""
        with pytest.raises(ValidationError):
            JustificationDocument(kind="lemma")

    def test_required_fields(self):
        """Test each kind carries its own fields."""
        assert JustificationDocument(kind="axiom", id="A1").id == "A1"
        assert JustificationDocument(kind="ds", minor=1, major=2).major == 2

        with pytest.raises(ValidationError):
            JustificationDocument(kind="ds", minor=1)
        with pytest.raises(ValidationError):
            JustificationDocument(kind="n")

    def test_one_based_indices(self):
        """Test step references start at 1."""
        with pytest.raises(ValidationError):
            JustificationDocument(kind="hyp", index=0)

    def test_nested_dt(self):
        """Test deduction steps hold a sub-proof."""
        doc = ProofDocument.model_validate(
            {
                "steps": [
                    {
                        "term": "~ed(a) | a",
                        "just": {
                            "kind": "dt",
                            "hypothesis": "a",
                            "proof": {
                                "theory": ["a"],
                                "steps": [{"term": "a", "just": {"kind": "hyp", "index": 1}}],
                            },
                        },
                    }
                ]
            }
        )

        assert doc.steps[0].just.proof is not None
        assert doc.steps[0].just.proof.theory == ["a"]

    def test_empty_proof(self):
        """Test a proof needs at least one step."""
        with pytest.raises(ValidationError):
            ProofDocument(steps=[])


class TestMatrixDocument:
    """Test MatrixDocument model."""

    def test_rows(self):
        """Test strings and integers are accepted."""
        doc = MatrixDocument(rows=[["1/2", 0], [0, 1]])

        assert len(doc.rows) == 2

    def test_ragged_rows(self):
        """Test unequal rows are rejected."""
        with pytest.raises(ValidationError):
            MatrixDocument(rows=[[1, 0], [1]])


class TestReports:
    """Test report models."""

    def test_verdict_consistency(self):
        """Test ok verdicts have no bad step and failing ones have one."""
        bad = BadStep(index=2, reason=FailureReason.FORWARD_REFERENCE)

        assert Verdict(ok=False, first_bad_step=bad).first_bad_step.reason == "forward-reference"
        with pytest.raises(ValidationError):
            Verdict(ok=True, first_bad_step=bad)
        with pytest.raises(ValidationError):
            Verdict(ok=False)

    def test_failed_index(self):
        """Test the numeric suffix of a failing condition."""
        assert ConditionReport(ok=False, failed="LQF10").failed_index == 10
        assert ConditionReport(ok=True).failed_index is None

    def test_trace_ends_in_contradiction(self):
        """Test refutation traces must end with a contradiction."""
        entry = TraceEntry(step=1, claim="w0 is the indicator")

        with pytest.raises(ValidationError):
            RefutationTrace(lattice="boolean(1)", size=2, entries=[entry])


class TestLQFSettings:
    """Test LQFSettings model."""

    def test_defaults(self):
        """Test default values."""
        settings = LQFSettings()

        assert settings.seed == 0
        assert settings.log_level == "WARNING"
        assert settings.output_format == "human"
        assert settings.catalog_max_size == 32

    def test_from_env(self, monkeypatch, clean_env):
        """Test reading LQF_* variables."""
        monkeypatch.setenv("LQF_SEED", "7")
        monkeypatch.setenv("LQF_LOG_LEVEL", "debug")
        monkeypatch.setenv("LQF_OUTPUT_FORMAT", "json")
        monkeypatch.setenv("LQF_CATALOG_MAX_SIZE", "16")

        settings = LQFSettings.from_env(clean_env)

        assert settings.seed == 7
        assert settings.log_level == "DEBUG"
        assert settings.output_format == "json"
        assert settings.catalog_max_size == 16

    def test_from_env_defaults(self, clean_env):
        """Test unset variables keep the defaults."""
        assert LQFSettings.from_env(clean_env) == LQFSettings()

    def test_invalid_env(self, monkeypatch, clean_env):
        """Test invalid values raise ConfigError naming the variable."""
        monkeypatch.setenv("LQF_CATALOG_MAX_SIZE", "500")

        with pytest.raises(ConfigError) as exc_info:
            LQFSettings.from_env(clean_env)

        assert exc_info.value.config_key == "LQF_CATALOG_MAX_SIZE"

    def test_env_file(self, tmp_path, clean_env):
        """Test values from a .env file."""
        env_file = tmp_path / ".env"
        env_file.write_text("LQF_SEED=3\n", encoding="utf-8")

        try:
            settings = LQFSettings.from_env(env_file)
        finally:
            os.environ.pop("LQF_SEED", None)

        assert settings.seed == 3


class TestRunConfig:
    """Test RunConfig model."""

    def test_extra_forbidden(self):
        """Test unknown options are rejected."""
        with pytest.raises(ValidationError):
            RunConfig(subcommand="check", lattice="mo(2)")

    def test_validate_assignment(self):
        """Test assignments are validated."""
        config = RunConfig(subcommand="countermodel")

        with pytest.raises(ValidationError):
            config.seed = -1
