"""Exception types shared across the package."""


class AlgowebError(Exception):
    """Base class for all package-specific errors."""


class GraphFormatError(AlgowebError):
    """Raised when an `.ssv` file cannot be parsed or fails validation."""


class GraphDisconnectedError(AlgowebError):
    """Raised when an operation that requires a connected graph detects
    that the input is not connected."""


class InstanceTooSmallError(AlgowebError):
    """Raised when the estimator parameters come out below 1 for the
    requested accuracy, i.e. the instance is too small for that epsilon."""


class SequenceExhaustedError(AlgowebError):
    """Raised when more draws are requested from a Fisher-Yates sequence
    than its domain size allows."""
