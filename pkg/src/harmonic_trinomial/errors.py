"""Exception hierarchy shared by every module of the package."""


class TrinomialError(Exception):
    """Base class for all errors raised by :mod:`harmonic_trinomial`."""


class InvalidTrinomial(TrinomialError, ValueError):
    """The coefficients or exponents do not describe a supported instance."""


class ZeroCoefficient(InvalidTrinomial):
    pass


class BadExponents(InvalidTrinomial):
    pass


class CoefficientRange(InvalidTrinomial):
    """A coefficient modulus lies outside the supported ``[1e-8, 1e8]`` band."""


class NotATriangle(TrinomialError, ValueError):
    pass


class OutsideRegion(TrinomialError, ValueError):
    pass


class BracketFailure(TrinomialError, ArithmeticError):
    pass


class NonCoprime(TrinomialError, ValueError):
    pass


class NoCandidate(TrinomialError, ArithmeticError):
    pass


class FallbackDisagreement(TrinomialError):
    pass


class OracleError(TrinomialError):
    """Raised by the numerical root finder when it cannot vouch for its answer."""


class SingularRoot(OracleError):
    pass


class GridExhausted(OracleError):
    pass
