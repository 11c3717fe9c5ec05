"""Exception types raised by the modem, channel, AMC and harness layers."""


class ModemError(Exception):
    """Base class for every error raised by :mod:`amcmodem`."""


class ConfigurationError(ModemError, ValueError):
    """Invalid parameters or experiment setup."""


class InsufficientBudgetError(ConfigurationError):
    """Simulation budget too small to resolve the requested error rate."""


class LengthError(ModemError, ValueError):
    """Bit stream length is not compatible with the symbol size."""


class InvalidSampleError(ModemError, ValueError):
    """Sample is NaN/Inf, or has no defined phase."""


class FramingError(ModemError, ValueError):
    """Sample count does not match the expected framing."""


class DomainError(ModemError, ValueError):
    """Argument outside the mathematical domain of the operation."""


class InsufficientDataError(ModemError, ValueError):
    """Too few samples for a meaningful estimate."""


class ConsistencyError(ModemError, RuntimeError):
    """Internal invariant broken; indicates a defective modem, not bad input."""
