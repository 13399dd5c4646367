"""Exception hierarchy shared by all modules.

The CLI prints the class name of a ``GamowkitError`` on stderr, so the names
double as stable error codes.
"""


class GamowkitError(Exception):
    """Base class for domain errors."""


class ProfileError(GamowkitError, ValueError):
    pass


class GapOrOverlap(ProfileError):
    pass


class NonpositiveSupport(ProfileError):
    pass


class NonfiniteValue(ProfileError):
    pass


class Overflow(GamowkitError, OverflowError):
    """Result not representable as a plain complex; use the log-form variant."""


class DomainWarning(UserWarning):
    """Asymptotic series used outside its sector of validity."""


class NoConvergence(GamowkitError):
    pass


class DegenerateMomentum(GamowkitError):
    pass


class AtPole(GamowkitError):
    pass


class BoundaryZero(GamowkitError):
    pass


class SearchExhausted(GamowkitError):
    pass


class MirrorResidualFail(GamowkitError):
    pass


class NotAPole(GamowkitError):
    pass


class DegenerateEnergies(GamowkitError):
    pass


class ProfileMismatch(GamowkitError):
    pass


class RomoZeroMomentum(GamowkitError):
    pass


class ConfigError(GamowkitError):
    pass
