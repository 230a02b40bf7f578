"""Exception hierarchy shared by all toricgkz modules."""


class ToricGKZError(Exception):
    """Base class for every error raised by this package."""


class RankDeficient(ToricGKZError):
    pass


class DegreeOverflow(ToricGKZError):
    """A rational function exceeded the configured degree cap."""


class ZeroDivision(ToricGKZError, ZeroDivisionError):
    pass


class InvalidConfiguration(ToricGKZError, ValueError):
    """The matrix is not a homogeneous configuration."""


class DegenerateConfiguration(ToricGKZError):
    pass


class BoxTooSmall(ToricGKZError):
    pass


class Inconclusive(ToricGKZError):
    """A cap-limited lattice search ended without a decision."""


class DegeneratePair(ToricGKZError):
    """A standard pair produced an underdetermined fake-exponent system."""


class ZeroDenominator(ToricGKZError):
    pass


class NoEmbeddedPair(ToricGKZError):
    pass


class GenericityExhausted(ToricGKZError):
    pass


class WitnessSearchInconclusive(Inconclusive):
    pass


class AmbiguousConstruction(ToricGKZError):
    """More than one Gale-dual row is parallel to the pivot row."""
