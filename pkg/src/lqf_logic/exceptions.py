"""
Custom exceptions for the LQF Logic library.

This module defines the exceptions raised for malformed input and violated
preconditions. Law failures, proof failures and failing conditions are not
exceptions: they come back as report values.
"""

from typing import Optional, Tuple


class LQFError(Exception):
    """Base exception for all LQF Logic errors."""

    def __init__(self, message: str, error_code: Optional[str] = None) -> None:
        self.message = message
        self.error_code = error_code
        super().__init__(self.message)

    def __str__(self) -> str:
        if self.error_code:
            return f"[{self.error_code}] {self.message}"
        return self.message


class ConfigError(LQFError):
    """Raised when settings or run options are invalid."""

    def __init__(self, message: str, config_key: Optional[str] = None) -> None:
        self.config_key = config_key
        super().__init__(message, "CONFIG_ERROR")

    def __str__(self) -> str:
        if self.config_key:
            return f"[CONFIG_ERROR] Configuration error for '{self.config_key}': {self.message}"
        return f"[CONFIG_ERROR] {self.message}"


class LatticeStructureError(LQFError):
    """Raised when lattice tables are malformed (shape, index range, missing bounds)."""

    def __init__(self, message: str, law: Optional[str] = None) -> None:
        self.law = law
        super().__init__(message, "STRUCTURE_ERROR")


class TermSyntaxError(LQFError):
    """Raised when a term or equation does not parse."""

    def __init__(self, message: str, position: Optional[int] = None, text: str = "") -> None:
        self.position = position
        self.text = text
        super().__init__(message, "SYNTAX_ERROR")

    def __str__(self) -> str:
        if self.position is not None:
            return f"[SYNTAX_ERROR] {self.message} (at position {self.position})"
        return f"[SYNTAX_ERROR] {self.message}"


class SignatureError(LQFError):
    """Raised when a term uses w or w* against a structure without those tables."""

    def __init__(self, message: str) -> None:
        super().__init__(message, "SIGNATURE_ERROR")


class ValuationError(LQFError):
    """Raised when a valuation misses a variable or names an unknown element."""

    def __init__(self, message: str, variable: Optional[str] = None) -> None:
        self.variable = variable
        super().__init__(message, "VALUATION_ERROR")

    def __str__(self) -> str:
        if self.variable:
            return f"[VALUATION_ERROR] Valuation error for '{self.variable}': {self.message}"
        return f"[VALUATION_ERROR] {self.message}"


class ProofFormatError(LQFError):
    """Raised when a proof document is structurally invalid."""

    def __init__(self, message: str, field: Optional[str] = None) -> None:
        self.field = field
        super().__init__(message, "PROOF_FORMAT_ERROR")

    def __str__(self) -> str:
        if self.field:
            return f"[PROOF_FORMAT_ERROR] Invalid field '{self.field}': {self.message}"
        return f"[PROOF_FORMAT_ERROR] {self.message}"


class ShapeMismatchError(LQFError):
    """Raised when a derived rule receives premises of the wrong shape."""

    def __init__(self, message: str, rule_id: Optional[str] = None) -> None:
        self.rule_id = rule_id
        super().__init__(message, "SHAPE_MISMATCH")

    def __str__(self) -> str:
        if self.rule_id:
            return f"[SHAPE_MISMATCH] {self.rule_id}: {self.message}"
        return f"[SHAPE_MISMATCH] {self.message}"


class UnsupportedQueryError(LQFError):
    """Raised when a query falls outside what a decision procedure supports."""

    def __init__(self, message: str) -> None:
        super().__init__(message, "UNSUPPORTED_QUERY")


class PreconditionError(LQFError):
    """Raised when an operation is called outside its precondition."""

    def __init__(self, message: str, operation: Optional[str] = None) -> None:
        self.operation = operation
        super().__init__(message, "PRECONDITION_ERROR")

    def __str__(self) -> str:
        if self.operation:
            return f"[PRECONDITION_ERROR] {self.operation}: {self.message}"
        return f"[PRECONDITION_ERROR] {self.message}"


class HypothesisViolationError(PreconditionError):
    """Raised when maps claimed to satisfy order hypotheses do not."""

    def __init__(self, message: str, witness: Optional[Tuple[str, str]] = None) -> None:
        self.witness = witness
        super().__init__(message, "map_diagnostics")
        self.error_code = "HYPOTHESIS_VIOLATION"

    def __str__(self) -> str:
        witness_info = f" (witness {self.witness[0]} <= {self.witness[1]})" if self.witness else ""
        return f"[HYPOTHESIS_VIOLATION] {self.message}{witness_info}"


class MatrixShapeError(LQFError):
    """Raised when matrix dimensions do not fit an operation."""

    def __init__(self, message: str, shape: Optional[Tuple[int, int]] = None) -> None:
        self.shape = shape
        super().__init__(message, "MATRIX_SHAPE_ERROR")

    def __str__(self) -> str:
        if self.shape:
            return f"[MATRIX_SHAPE_ERROR] {self.message} (shape {self.shape[0]}x{self.shape[1]})"
        return f"[MATRIX_SHAPE_ERROR] {self.message}"


class LQFFileError(LQFError):
    """Raised when there's an error reading or writing an input document."""

    def __init__(self, message: str, file_path: Optional[str] = None) -> None:
        self.file_path = file_path
        super().__init__(message, "FILE_ERROR")

    def __str__(self) -> str:
        if self.file_path:
            return f"[FILE_ERROR] File operation error for '{self.file_path}': {self.message}"
        return f"[FILE_ERROR] {self.message}"


class CrossCheckError(LQFError):
    """Raised when two independent computations of the same fact disagree."""

    def __init__(self, message: str, check: Optional[str] = None) -> None:
        self.check = check
        super().__init__(message, "CROSS_CHECK_FAILED")

    def __str__(self) -> str:
        if self.check:
            return f"[CROSS_CHECK_FAILED] {self.check}: {self.message}"
        return f"[CROSS_CHECK_FAILED] {self.message}"
