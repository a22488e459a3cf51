"""Exception types raised by the toolkit."""


class DomainError(ValueError):
    """A physical precondition was violated (negative field, zero wavelength, ...)."""


class UnreachableResponseError(DomainError):
    """Calibration would need an optical contrast above 1."""


class UnboundedFeatureError(DomainError):
    """A fringe feature runs off the edge of the scanned range."""


class AmbiguityError(RuntimeError):
    """Dual-frequency integer ambiguity resolution failed."""


class ConfigError(ValueError):
    """Malformed or inconsistent instrument configuration."""
