"""Exception types shared across the package."""


class LevelMismatchError(ValueError):
    """Two objects live at incompatible levels; lift explicitly first."""


class CapExceededError(RuntimeError):
    """A dense table or explicit tensor would exceed the configured cap."""


class PreconditionError(ValueError):
    """An operation's stated precondition does not hold for the inputs."""


class FalsificationError(RuntimeError):
    """A claimed identity failed on a concrete input.

    Carries a structured report naming the witnesses; raised instead of
    silently returning a wrong or partial answer.
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class InternalInconsistencyError(RuntimeError):
    """Two independent routes to the same value disagreed (implementation bug)."""
