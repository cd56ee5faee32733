"""Exception types raised by the library.

Plain ``ValueError`` is used for simple argument validation (non-positive
lengths and the like); the classes below mark failures a caller may want to
handle specifically.
"""


class Error(Exception):
    """Base class for patchrf-specific errors."""


class ConfigError(Error):
    """Invalid configuration file; ``path`` names the offending field."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class UnreachableImpedanceError(Error):
    """Requested characteristic impedance cannot be realized on the substrate."""


class ModelValidityError(Error):
    """Inputs are outside the validity range of a closed-form model."""


class FrequencyMismatchError(Error):
    """Two-ports evaluated at different frequencies cannot be combined."""


class NoResonanceError(Error):
    """No resonance (reactance zero crossing) found in the examined band."""


class NoBandError(Error):
    """Sweep never crosses the requested return-loss threshold."""
