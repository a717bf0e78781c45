"""Exception hierarchy shared by every layer of the package."""

from __future__ import annotations

from typing import Any


class IvifError(ValueError):
    """Base class; carries an optional machine-readable context dict."""

    kind = "ivif_error"

    def __init__(self, message: str, **context: Any) -> None:
        super().__init__(message)
        self.message = message
        self.context = {k: v for k, v in context.items() if v is not None}

    def to_record(self) -> dict[str, Any]:
        record: dict[str, Any] = {"type": self.kind, "message": self.message}
        record.update(self.context)
        return record


class InvalidIVIFN(IvifError):
    kind = "invalid_ivifn"


class DomainError(IvifError):
    """Operation argument outside its mathematical domain (e.g. k <= 0)."""

    kind = "domain_error"


class WeightError(IvifError):
    kind = "invalid_weights"


class ShapeError(IvifError):
    kind = "shape_mismatch"


class DegenerateProblemError(IvifError):
    """The input carries no information for the requested computation."""

    kind = "degenerate_problem"


class ProblemFileError(IvifError):
    kind = "problem_file"


class UnknownLabelError(ProblemFileError):
    kind = "unknown_label"


class PipelineError(IvifError):
    """Wraps a module error with the pipeline stage that raised it."""

    kind = "pipeline_error"

    def __init__(self, stage: str, cause: IvifError) -> None:
        super().__init__(f"{stage}: {cause.message}", stage=stage)
        self.cause = cause

    def to_record(self) -> dict[str, Any]:
        record = self.cause.to_record()
        record["stage"] = self.context["stage"]
        return record
