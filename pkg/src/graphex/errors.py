"""Exception types shared across the package."""


class GraphexError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(GraphexError):
    """A model config, flag, or input file could not be interpreted."""


class NonIntegrableError(GraphexError):
    """A graphon or star family has no finite L1 norm."""


class TruncationUnavailableError(GraphexError):
    """A family cannot provide a support truncation for the requested budget."""


class NotDilatableError(GraphexError):
    """A family cannot represent its own dilation."""


class OutOfRangeError(GraphexError):
    """An argument fell outside the documented domain."""


class EmptyGraphError(GraphexError):
    """An operation requires a graph with at least one vertex."""


class TrivialGraphexError(GraphexError):
    """The graphex has zero total intensity and generates nothing."""


class DegenerateBinsError(GraphexError):
    """Chi-square binning could not produce at least two cells."""


class UnknownSuiteError(GraphexError):
    """The requested verification suite does not exist."""
