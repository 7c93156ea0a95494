class StrongNashError(Exception):
    """Base class for errors raised by strongnash."""


class ProfileError(StrongNashError, ValueError):
    """A strategy profile does not fit the game (wrong length, out of bounds)."""


class ParameterError(StrongNashError, ValueError):
    """A numeric parameter is outside its admissible range."""


class CapacityError(StrongNashError):
    """The requested enumeration exceeds the configured capacity."""


class ConfigError(StrongNashError):
    """An experiment or game configuration cannot be used."""
