"""Exception hierarchy shared by every gfreg module."""


class GfregError(Exception):
    """Base class for all gfreg errors."""


class ResolutionError(GfregError):
    """The grid cannot resolve the Littlewood-Paley transition band."""


class ScaleWindowError(GfregError, ValueError):
    """A scale lies outside the admissible window of the grid."""


class DomainSizeError(GfregError, ValueError):
    """The periodic domain is too short for the requested construction."""


class SpecGridMismatch(GfregError, ValueError):
    """A distribution spec is not representable on the given grid."""


class SpecParseError(GfregError, ValueError):
    """A catalog spec string could not be parsed."""


class InsufficientDataError(GfregError, ValueError):
    """Too few usable points for a scaling fit."""


class DegenerateInputError(GfregError, ValueError):
    """An input makes a ratio or fit meaningless (zero functional, non-positive values)."""


class StageFailure(GfregError):
    """A numeric pipeline stage failed; ``stage`` names it for the report."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"{stage}: {cause}")
        self.stage = stage
        self.cause = cause
