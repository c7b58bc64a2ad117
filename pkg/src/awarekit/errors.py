"""Exception types shared across the package."""

from __future__ import annotations


class AwarekitError(Exception):
    """Base class for all package-specific errors."""


class ModelFormatError(AwarekitError):
    """A model or proof file (or its in-memory data) is structurally unreadable."""


class FormulaSyntaxError(AwarekitError):
    """Formula text does not conform to the grammar.

    ``offset`` is the 0-based character position of the offending token.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnknownAtom(AwarekitError):
    """Formula mentions an atom outside the model's atom universe."""


class UnknownAgent(AwarekitError):
    """Operation names an agent the model does not have."""


class UnknownSpace(AwarekitError):
    """Event or state references a space index absent from the model."""


class UnknownState(AwarekitError):
    """Event, correspondence, or query references a state id absent from the model."""


class NotComparable(AwarekitError):
    """Projection requested to a space that is not below the state's space."""


class StraddledPossibilitySet(AwarekitError):
    """A possibility set spans more than one space, so its space is undefined."""


class UndefinedFormula(AwarekitError):
    """Formula is not defined in the model's language."""


class InvalidCaps(AwarekitError):
    """Generator caps must all be at least 1."""


class _ReportError(AwarekitError):
    """Error carrying a validation report with the witnesses that triggered it."""

    def __init__(self, message: str, report=None):
        if report is not None and report.violations:
            first = report.violations[0]
            message = f"{message}: {len(report.violations)} violation(s), first is {first}"
        super().__init__(message)
        self.report = report


class PreconditionFailed(_ReportError):
    """An operation was called on a model that fails its required validation."""


class CandidateInvalid(_ReportError):
    """The implicit correspondence candidate derived from explicit possibility fails validation."""


class DerivationInconsistent(_ReportError):
    """A derivation's asserted consequence failed; signals an input-validation escape."""


class TransformInvariantBroken(_ReportError):
    """A transform produced output that fails the target family's validators."""
