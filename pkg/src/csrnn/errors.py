"""Exception types shared across the package."""


class CsrnnError(Exception):
    """Base class for every error this package raises on bad input or state."""


class ParseError(CsrnnError):
    """Malformed input line; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class LabelError(CsrnnError):
    """A label that the active label scheme does not define."""


class SplitError(CsrnnError):
    """Author-disjoint splitting cannot be carried out as requested."""


class GeneratorError(CsrnnError):
    """Invalid synthetic-corpus specification."""


class FeatureError(CsrnnError):
    """Invalid input to feature extraction."""


class FormatError(CsrnnError):
    """Malformed embedding or model file."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class TrainingError(CsrnnError):
    """Training cannot proceed (empty or degenerate data)."""


class NumericError(CsrnnError):
    """A non-finite value appeared where a finite one is required."""


class DimensionError(CsrnnError):
    """Tensor shapes inconsistent with the network configuration."""


class AlignmentError(CsrnnError):
    """Predictions and gold data do not line up token for token."""


class SchemeError(CsrnnError):
    """Operation requires a label scheme with different labels."""


class CompatibilityError(CsrnnError):
    """Model file and runtime inputs do not match."""
