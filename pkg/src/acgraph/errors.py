"""Exception hierarchy.

Every error raised by the library derives from :class:`AcgraphError`, and
the CLI uses :attr:`AcgraphError.category` as the message prefix.
"""


class AcgraphError(Exception):
    category = "error"


class DistributionError(AcgraphError, ValueError):
    """A node- or edge-type distribution is structurally invalid."""

    category = "distribution"


class BalanceError(DistributionError):
    """Mean out-degree and mean in-degree of P disagree."""


class ZeroDegreeError(DistributionError):
    """Mean degree of P is zero, so no edges can be generated."""


class DegenerateMarginalError(DistributionError):
    """A marginal of the edge-type distribution has zero variance."""


class OutOfRangeError(DistributionError):
    """Requested assortativity lies outside the attainable range."""


class TooSmallError(AcgraphError, ValueError):
    category = "size"


class CapacityError(AcgraphError, RuntimeError):
    """Internal invariant violation: ran out of undetermined nodes."""

    category = "internal"


class MatchError(AcgraphError, RuntimeError):
    """Internal invariant violation: slot and edge counts differ."""

    category = "internal"


class ConfigError(AcgraphError, ValueError):
    category = "config"


class ParseError(ConfigError):
    category = "parse"


class ValidationError(ConfigError):
    category = "validation"
