"""Exception types raised by the simulator."""


class CatqedError(Exception):
    """Base class for all package errors."""


class LayoutError(CatqedError, ValueError):
    """Mismatched or invalid Hilbert-space layout (wrong atom count, bad index)."""


class CutoffError(CatqedError, ValueError):
    """An operation would push probability past the retained Fock levels."""


class ScheduleError(CatqedError, ValueError):
    """Inconsistent protocol timing (overlapping atoms, negative gaps)."""


class DegenerateBranchError(CatqedError, RuntimeError):
    """A measurement sampled a branch with numerically vanishing probability."""


class ConfigError(CatqedError, ValueError):
    """Invalid run configuration; ``path`` names the offending field."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")
