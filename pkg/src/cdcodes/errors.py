"""Exception types shared across the package."""


class CdcodesError(Exception):
    """Base class for all domain errors raised by this package."""


# -- field construction ------------------------------------------------------

class NotPrime(CdcodesError):
    pass


class NotPrimePower(CdcodesError):
    pass


class ReduciblePolynomial(CdcodesError):
    pass


class DegreeMismatch(CdcodesError):
    pass


class FactorizationNeeded(CdcodesError):
    pass


class NoFactorizationMatch(CdcodesError):
    pass


class BaseNotSubfield(CdcodesError):
    pass


# -- linear algebra ----------------------------------------------------------

class LengthMismatch(CdcodesError):
    pass


class ElementNotInField(CdcodesError):
    pass


class AmbientMismatch(CdcodesError):
    pass


class NotASubspaceOf(CdcodesError):
    pass


# -- codes and enumeration ---------------------------------------------------

class DimensionMismatch(CdcodesError):
    pass


class EmptyCode(CdcodesError):
    pass


class SingletonCode(CdcodesError):
    pass


class RangeError(CdcodesError):
    pass


class BudgetExceeded(CdcodesError):
    pass


class ConstructionVerificationFailed(CdcodesError):
    pass
