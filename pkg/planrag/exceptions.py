"""Defines exceptions classes for representing exceptions in planrag.

* PlanragException: Exception class for common exceptions in planrag.
* GeometryError: Degenerate geometric input.
* InputError: Missing or malformed input files.
* NoBuildingFound: The pre-processing chain found no ink to work on.
* OutlineTooThin: The building outline vanished while refining it.
* InfeasibleSpec: The synthetic generator cannot honor its spec.
* PipelineStageError: A pipeline stage failed; carries the stage name.
"""


class PlanragException(Exception):
    """Exception class to represent common exceptions in planrag"""


class GeometryError(PlanragException):
    """Raised on degenerate rings, segments or hull inputs."""


class InputError(PlanragException):
    """Raised when an input file is missing, unreadable or malformed."""


class NoBuildingFound(PlanragException):
    def __init__(self, message: str = "no building found"):
        super().__init__(message)


class OutlineTooThin(PlanragException):
    def __init__(self, message: str = "outline too thin"):
        super().__init__(message)


class InfeasibleSpec(PlanragException):
    """Raised when a synthetic plan spec cannot be realized on its canvas."""


class PipelineStageError(PlanragException):
    """Wraps the failure of a single pipeline stage.

    Args:
        stage: name of the failing stage.
        cause: the original exception.
    """

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage '{stage}' failed: {cause}")
        self.stage = stage
        self.cause = cause
