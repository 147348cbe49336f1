"""
Data models for the LQF Logic library.

This module defines Pydantic models for the documents the library reads
(lattices, expanded structures, proofs, matrices), the reports it returns,
and the settings that drive the command-line interface.
"""

import os
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .exceptions import ConfigError

SCHEMA_VERSION = "lqf/1"


class OutputFormat(str, Enum):
    """Report rendering formats."""

    HUMAN = "human"
    JSON = "json"


class LogLevel(str, Enum):
    """Accepted logging levels."""

    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"


class FailureReason(str, Enum):
    """Per-step rejection reasons of the proof checker."""

    NOT_AXIOM_INSTANCE = "not-an-axiom-instance"
    UNKNOWN_AXIOM = "unknown-axiom"
    SUBSTITUTION_MISMATCH = "substitution-mismatch"
    HYPOTHESIS_MISMATCH = "hypothesis-mismatch"
    DS_SHAPE_MISMATCH = "ds-shape-mismatch"
    N_SHAPE_MISMATCH = "n-shape-mismatch"
    FORWARD_REFERENCE = "forward-reference"
    MACRO_MISMATCH = "macro-mismatch"
    DT_IN_STRICT_MODE = "dt-in-strict-mode"
    DT_MISMATCH = "dt-mismatch"


# ---------------------------------------------------------------------------
# Input documents
# ---------------------------------------------------------------------------


class LatticeDocument(BaseModel):
    """JSON form of a finite lattice, optionally expanded with w and w* tables."""

    name: Optional[str] = Field(None, description="Display name of the structure")
    elements: List[str] = Field(..., min_length=1, description="Element names, index order")
    leq: List[List[bool]] = Field(..., description="Order relation, leq[i][j] iff i <= j")
    neg: List[int] = Field(..., description="Orthocomplement table")
    bottom: int = Field(..., ge=0, description="Index of the least element")
    top: int = Field(..., ge=0, description="Index of the greatest element")
    w: Optional[List[List[int]]] = Field(None, description="Binary table for w")
    wstar: Optional[List[List[int]]] = Field(None, description="Binary table for w*")

    @field_validator("elements")
    @classmethod
    def validate_elements(cls, v: List[str]) -> List[str]:
        """Element names must be unique and non-empty."""
        if len(set(v)) != len(v):
            raise ValueError("Element names must be unique")
        if any(not name.strip() for name in v):
            raise ValueError("Element names cannot be empty")
        return v

    model_config = ConfigDict(extra="forbid")


class JustificationDocument(BaseModel):
    """One justification entry of a proof step."""

    kind: str = Field(..., description="axiom | hyp | ds | n | macro | dt")
    id: Optional[str] = Field(None, description="Axiom id for axiom steps")
    subst: Optional[Dict[str, str]] = Field(None, description="Optional axiom substitution")
    index: Optional[int] = Field(None, ge=1, description="Hypothesis number (1-based)")
    minor: Optional[int] = Field(None, ge=1, description="DS minor premise t (1-based)")
    major: Optional[int] = Field(None, ge=1, description="DS major premise ~t|s (1-based)")
    premise: Optional[int] = Field(None, ge=1, description="N premise (1-based)")
    rule: Optional[str] = Field(None, description="Derived rule id for macro steps")
    inputs: List[int] = Field(default_factory=list, description="Macro input steps (1-based)")
    params: Dict[str, str] = Field(default_factory=dict, description="Macro parameters")
    hypothesis: Optional[str] = Field(None, description="Discharged hypothesis of a DT step")
    proof: Optional["ProofDocument"] = Field(None, description="Sub-proof of a DT step")

    @field_validator("kind")
    @classmethod
    def validate_kind(cls, v: str) -> str:
        """Only the six justification kinds are accepted."""
        kinds = {"axiom", "hyp", "ds", "n", "macro", "dt"}
        if v not in kinds:
            raise ValueError(f"Unknown justification kind '{v}', expected one of {sorted(kinds)}")
        return v

    @model_validator(mode="after")
    def validate_fields(self) -> "JustificationDocument":
        """Each kind must carry its own fields."""
        required = {
            "axiom": ["id"],
            "hyp": ["index"],
            "ds": ["minor", "major"],
            "n": ["premise"],
            "macro": ["rule"],
            "dt": ["hypothesis", "proof"],
        }[self.kind]
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            raise ValueError(f"'{self.kind}' justification requires {', '.join(missing)}")
        return self

    model_config = ConfigDict(extra="forbid")


class StepDocument(BaseModel):
    """One proof step: a term string and its justification."""

    term: str = Field(..., min_length=1, description="Term in the surface grammar")
    just: JustificationDocument = Field(..., description="Why the term is admitted")

    model_config = ConfigDict(extra="forbid")


class ProofDocument(BaseModel):
    """JSON form of a proof from a theory."""

    theory: List[str] = Field(default_factory=list, description="Hypotheses, as term strings")
    steps: List[StepDocument] = Field(..., min_length=1, description="Proof steps in order")

    model_config = ConfigDict(extra="forbid")


JustificationDocument.model_rebuild()
StepDocument.model_rebuild()
ProofDocument.model_rebuild()


class MatrixDocument(BaseModel):
    """Row-major matrix of exact rationals written as "p/q" strings."""

    rows: List[List[Union[str, int]]] = Field(..., min_length=1, description="Matrix rows")

    @field_validator("rows")
    @classmethod
    def validate_rows(cls, v: List[List[Union[str, int]]]) -> List[List[Union[str, int]]]:
        """Rows must be non-empty and of equal length."""
        if not v[0] or any(len(row) != len(v[0]) for row in v):
            raise ValueError("Matrix rows must be non-empty and of equal length")
        return v


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


class ValidationReport(BaseModel):
    """Outcome of checking lattice tables against the orthomodular laws."""

    ok: bool = Field(..., description="Whether every law holds")
    law: Optional[str] = Field(None, description="First failing law")
    witness: List[str] = Field(default_factory=list, description="Smallest failing element tuple")
    detail: str = Field("", description="Human-readable explanation")


class ModularityReport(BaseModel):
    """Three independent modularity detectors."""

    is_modular: bool = Field(..., description="Whether the modular law holds")
    witness: Optional[List[str]] = Field(None, description="(a, b, x) violating the modular law")
    n5: Optional[List[str]] = Field(None, description="Pentagon sublattice (0', p, q, r, 1')")
    perspective_pair: Optional[List[str]] = Field(
        None, description="(x, y, c) with x < y perspective through common complement c"
    )


class MapDiagnosticsReport(BaseModel):
    """Which properties of the supplied w_a / w_a* tables hold."""

    a: str = Field(..., description="The element the maps are attached to")
    preserves_relative_complements: Optional[bool] = Field(
        None, description="w_a(~x & a) = ~w_a(x) for every x in [0,a]"
    )
    sasaki_complement_law: Optional[bool] = Field(
        None, description="w_a(mu_a(~x)) = ~w_a(x & a) for every x in L"
    )
    relative_complement_equivalence: Optional[bool] = Field(
        None, description="Both sides of the relative-complement equivalence agree"
    )
    hypotheses_hold: Optional[bool] = Field(
        None, description="w_a w_a* = id, w_a* w_a = mu_a, w_a* order-preserving"
    )
    wstar_order_isomorphism: Optional[bool] = Field(None, description="w_a*: L -> [0,a] is an iso")
    w_restricted_isomorphism: Optional[bool] = Field(
        None, description="w_a restricted to [0,a] is an order isomorphism onto L"
    )
    wstar_fixes_a: Optional[bool] = Field(None, description="w_a*(a) = a")
    a_is_top: bool = Field(..., description="a = 1")


class FilterClassification(BaseModel):
    """Flags describing a subset of a finite lattice."""

    members: List[str] = Field(..., description="The classified subset")
    increasing: bool
    meet_closed: bool
    perspective_closed: bool
    ed_closed: bool
    proper: bool
    is_oml_filter: bool
    is_lqf_filter: bool
    maximal: bool = Field(..., description="Maximal by the x in F or ~ed(x) in F criterion")
    maximal_by_inclusion: bool = Field(..., description="Maximal among proper LQF-filters")
    maximal_by_center: bool = Field(..., description="F meet Z(L) is a maximal Boolean filter")


class BadStep(BaseModel):
    """The first rejected step of a proof."""

    index: int = Field(..., ge=1, description="1-based step number")
    reason: FailureReason
    detail: str = ""

    model_config = ConfigDict(use_enum_values=True)


class Verdict(BaseModel):
    """Result of checking a proof."""

    ok: bool
    first_bad_step: Optional[BadStep] = None
    conclusion: Optional[str] = Field(None, description="Last term when the proof is ok")

    @model_validator(mode="after")
    def validate_consistency(self) -> "Verdict":
        """An ok verdict carries no bad step and a failing one carries exactly one."""
        if self.ok == (self.first_bad_step is not None):
            raise ValueError("ok verdicts have no bad step; failing verdicts have one")
        return self


class ConditionReport(BaseModel):
    """Outcome of checking a list of conditions (LQF1-12 or III1-10)."""

    ok: bool
    failed: Optional[str] = Field(None, description="Id of the first failing condition")
    part: Optional[int] = Field(None, description="Failing part of a chained equation (1-based)")
    witness: Dict[str, str] = Field(default_factory=dict, description="Counter-valuation")
    supplementary: List["ConditionReport"] = Field(
        default_factory=list, description="Separately validated extra equations"
    )

    @property
    def failed_index(self) -> Optional[int]:
        """Numeric suffix of the failing condition id, if any."""
        if self.failed is None:
            return None
        digits = "".join(ch for ch in self.failed if ch.isdigit())
        return int(digits) if digits else None


ConditionReport.model_rebuild()


class AlignmentReport(BaseModel):
    """LQF1-12 versus III1-10 on one structure."""

    lqf: ConditionReport
    iii: ConditionReport
    shared_lqf: Optional[str] = Field(None, description="First failing LQF id among shared ones")
    shared_iii: Optional[str] = Field(None, description="First failing III id among shared ones")

    @property
    def agree(self) -> bool:
        lqf_index = int(self.shared_lqf[3:]) if self.shared_lqf else None
        iii_index = int(self.shared_iii[3:]) if self.shared_iii else None
        return lqf_index == iii_index


class TraceEntry(BaseModel):
    """One forced conclusion of the finite refuter."""

    step: int = Field(..., ge=1)
    claim: str
    cites: List[str] = Field(default_factory=list, description="Axioms and lemmas used")
    contradiction: bool = False


class RefutationTrace(BaseModel):
    """A propagation argument that no w/w* tables satisfy LQF1-12 on a lattice."""

    lattice: str
    size: int
    factor: List[str] = Field(default_factory=list, description="Carrier of the examined factor")
    entries: List[TraceEntry]

    @model_validator(mode="after")
    def validate_final_entry(self) -> "RefutationTrace":
        """The last entry must be the contradiction."""
        if not self.entries or not self.entries[-1].contradiction:
            raise ValueError("A refutation trace must end in a contradiction")
        return self


class W0UniquenessReport(BaseModel):
    """How many unary tables satisfy the w0 conditions on a directly indecomposable lattice."""

    lattice: str
    mode: str = Field(..., description="exhaustive | propagation")
    tables_checked: int
    satisfying: int
    table: List[str] = Field(..., description="The unique satisfying table, by element name")
    is_indicator: bool


class Decide2Result(BaseModel):
    """Verdict of the two-variable decision procedure."""

    valid: bool
    countervaluation: Dict[str, str] = Field(default_factory=dict)
    free_algebra_size: int
    generators: List[str] = Field(default_factory=list)


class CountermodelResult(BaseModel):
    """First counter-pair found in a catalog scope."""

    found: bool
    lattice: Optional[str] = None
    valuation: Dict[str, str] = Field(default_factory=dict)
    scope: List[str] = Field(default_factory=list)


class FilterCongruenceReport(BaseModel):
    """Verified correspondence between congruences and LQF-filters."""

    lattice: str
    congruences: int
    filters: int
    bijective: bool
    order_preserving: bool
    pairs: List[List[str]] = Field(
        default_factory=list, description="(congruence blocks, filter generator) per matched pair"
    )


class ClosureDiscrepancy(BaseModel):
    """A principal up-set closed under exactly one of e_d and perspectivity."""

    generator: str
    ed_closed: bool
    perspective_closed: bool


class CepReport(BaseModel):
    """Congruence extension probe on a sub-OML closed under the ambient e_d."""

    ambient: str
    subalgebra: List[str] = Field(..., description="Carrier of B, by ambient element name")
    filters_checked: int
    failures: List[str] = Field(default_factory=list, description="Generators of failing filters")

    @property
    def ok(self) -> bool:
        return not self.failures


class CenterCorrespondenceReport(BaseModel):
    """Verified isomorphism between Boolean filters of the center and LQF-filters."""

    lattice: str
    boolean_filters: int
    lqf_filters: int
    bijective: bool
    order_preserving: bool
    recovers_filters: bool


class PartialIsometryReport(BaseModel):
    """Independent verdicts of the partial-isometry characterizations."""

    definition: bool = Field(..., description="W restricted to Ker(W)-perp preserves Gram matrices")
    image_projector: bool = Field(..., description="W W^T is the projector onto Imag(W)")
    kernel_projector: bool = Field(..., description="W^T W is the projector onto Ker(W)-perp")
    w_wt_w: bool = Field(..., description="W W^T W = W")
    wt_w_wt: bool = Field(..., description="W^T W W^T = W^T")
    adjoint: bool = Field(..., description="W^T is a partial isometry by the definition")

    @property
    def verdicts(self) -> List[bool]:
        return [
            self.definition,
            self.image_projector,
            self.kernel_projector,
            self.w_wt_w,
            self.wt_w_wt,
            self.adjoint,
        ]

    @property
    def agree(self) -> bool:
        return len(set(self.verdicts)) == 1

    @property
    def is_partial_isometry(self) -> bool:
        return self.w_wt_w


class MvnVerdict(BaseModel):
    """Murray-von Neumann equivalence of two projectors."""

    equivalent: bool
    rank_p: int
    rank_q: int
    witness: Optional[List[List[str]]] = Field(None, description="W with W W^T = P, W^T W = Q")


class DimensionAudit(BaseModel):
    """Audit of the rank dimension function over a family of projectors."""

    projectors: int
    faithful: bool = Field(..., description="D(P) = 0 iff P = 0")
    equivalence: bool = Field(..., description="Equal rank iff Murray-von Neumann equivalent")
    additive: bool = Field(..., description="Orthogonal pairs add ranks and sum to a projector")
    orthogonal_pairs: int
    non_projector_sums: int = Field(
        ..., description="Non-orthogonal pairs whose sum is not a projector"
    )


class BorchersCertificate(BaseModel):
    """Why the full matrix algebra M_n fails the Borchers condition."""

    n: int
    vacuous: bool
    excluded_ranks: List[int]
    witnesses: List[List[List[str]]] = Field(default_factory=list)


class LinePairReport(BaseModel):
    """Perspectivity, unitary and MvN findings for one pair of lines."""

    first: str
    second: str
    common_complement: Optional[str] = None
    unitary_witness: Optional[List[List[str]]] = None
    mvn_equivalent: bool


class PerspectiveDemoReport(BaseModel):
    """Lines in Q^2: perspectivity in the generated lattice versus unitary equivalence."""

    elements: List[str]
    lattice_ok: bool
    sasaki_matches_projection: bool
    pairs: List[LinePairReport]
    note: str = (
        "The generated lattice is finite: a common complement certifies perspectivity, "
        "its absence does not refute it in the full projection lattice."
    )


# ---------------------------------------------------------------------------
# Settings
# ---------------------------------------------------------------------------


class LQFSettings(BaseModel):
    """Environment-driven defaults for the command-line interface."""

    seed: int = Field(default=0, ge=0, description="Seed for randomized suites")
    log_level: LogLevel = Field(default=LogLevel.WARNING, description="Logging level")
    output_format: OutputFormat = Field(default=OutputFormat.HUMAN, description="Report format")
    catalog_max_size: int = Field(default=32, ge=1, le=64, description="Largest catalog entry")

    model_config = ConfigDict(use_enum_values=True, validate_assignment=True, extra="forbid")

    @classmethod
    def from_env(cls, env_file: Optional[Union[str, Path]] = None) -> "LQFSettings":
        """
        Build settings from LQF_* environment variables.

        Args:
            env_file: Optional .env file loaded before reading the environment

        Returns:
            Validated settings

        Raises:
            ConfigError: If a variable holds an invalid value
        """
        load_dotenv(dotenv_path=env_file, override=False)
        mapping = {
            "seed": "LQF_SEED",
            "log_level": "LQF_LOG_LEVEL",
            "output_format": "LQF_OUTPUT_FORMAT",
            "catalog_max_size": "LQF_CATALOG_MAX_SIZE",
        }
        values: Dict[str, Any] = {}
        for field_name, env_key in mapping.items():
            raw = os.environ.get(env_key)
            if raw is not None and raw.strip():
                value = raw.strip()
                values[field_name] = value.upper() if field_name == "log_level" else value
        try:
            return cls(**values)
        except ValidationError as e:
            bad = e.errors()[0]["loc"][0] if e.errors() else None
            raise ConfigError(str(e.errors()[0]["msg"]), mapping.get(str(bad), None))


class RunConfig(BaseModel):
    """Options of one CLI invocation."""

    subcommand: str = Field(..., min_length=1)
    inputs: List[str] = Field(default_factory=list, description="Input paths or catalog names")
    scope: List[str] = Field(default_factory=list, description="Catalog scope selectors")
    strict: bool = Field(default=True)
    output_format: OutputFormat = Field(default=OutputFormat.HUMAN)
    seed: int = Field(default=0, ge=0)

    model_config = ConfigDict(use_enum_values=True, validate_assignment=True, extra="forbid")
