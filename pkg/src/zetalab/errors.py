"""Exception and warning types shared across the package."""


class ZetaLabError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(ZetaLabError):
    """Configuration file or override could not be parsed or validated."""


class EngineDomainError(ZetaLabError, ValueError):
    """Evaluation requested outside the supported (sigma, t) region."""


class PoleError(EngineDomainError):
    """Evaluation requested at (or numerically on top of) s = 1."""


class AccuracyWarning(UserWarning):
    """Internal error estimate exceeded the configured relative target."""


class QuadratureError(ZetaLabError):
    """Adaptive integration failed structurally (bad interval, NaN)."""


class ConvergenceError(QuadratureError):
    """Subdivision depth exhausted before the tolerance was met."""


class BracketingError(ZetaLabError):
    """A root search could not maintain or find a sign-change bracket."""


class NoBracketError(BracketingError):
    """Scan grid found no admissible mean-value bracket in the segment."""


class DegenerateDenominatorError(ZetaLabError):
    """Certificate denominator vanished at every admissible candidate."""


class MismatchedInputsError(ZetaLabError, ValueError):
    """Arguments that must agree (lengths, orderings, tags) do not."""


class ChainOverlapError(ZetaLabError):
    """Transported segments overlap; the chain is not disjoint."""

    def __init__(self, message, segments=None):
        super().__init__(message)
        self.segments = segments


class LayoutInvalidError(ConfigError):
    """Strip layout violates the required ordering inequalities."""


class BoundaryRootError(ZetaLabError):
    """A rectangle boundary passed too close to a root of zeta - a."""


class SearchWindowExhaustedError(ZetaLabError):
    """Window-by-window search hit t_max without a confirmed root."""


class NotFoundError(SearchWindowExhaustedError):
    """No a-point for the requested value below t_max.

    Carries enough state for the caller to widen the search or report.
    """

    def __init__(self, message, a=None, strip_index=None, t_max=None):
        super().__init__(message)
        self.a = a
        self.strip_index = strip_index
        self.t_max = t_max
