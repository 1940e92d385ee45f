"""Exception types shared across the package."""


class CdcError(Exception):
    """Base class for all package errors."""


# -- field tower ------------------------------------------------------------

class NotPrime(CdcError):
    """The claimed characteristic is not a prime."""


class SearchExhausted(CdcError):
    """A deterministic search (irreducible polynomial, primitive element)
    ran past its bound; indicates an implementation bug, not bad input."""


class DivisionByZero(CdcError):
    """Multiplicative inverse of zero requested."""


class LevelMismatch(CdcError):
    """Binary operation on elements of different tower levels."""


class ZeroElement(CdcError):
    """Operation undefined on the zero element (e.g. multiplicative order)."""


# -- subspace linear algebra ------------------------------------------------

class AmbientMismatch(CdcError):
    """Subspaces live in different ambient fields."""


class ZeroShift(CdcError):
    """Cyclic shift by zero requested."""


class EmptyInput(CdcError):
    """A nonzero span was required but the input spans only {0}."""


# -- constructions ----------------------------------------------------------

class InvalidParams(CdcError):
    """Construction parameters violate an invariant (message names it)."""


class BadShape(CdcError):
    """Tower shape does not match the requested construction family."""


class GreedyFellShort(CdcError):
    """The avoiding-set search produced fewer elements than guaranteed."""


class EqualInputs(CdcError):
    """A pairwise check was called with identical subspaces."""


# -- codes, formulas, scans -------------------------------------------------

class DimensionMismatch(CdcError):
    """Union generators do not share a common dimension."""


class InexactDivision(CdcError):
    """A closed-form evaluation left a remainder; transcription bug."""


class Infeasible(CdcError):
    """An exhaustive scan exceeds the configured budget."""


# -- linearized polynomials -------------------------------------------------

class NotFoundWithinBound(CdcError):
    """No splitting field found within the search bound."""


class NonPowerDegree(CdcError):
    """A q-polynomial gcd has degree that is not a power of q."""


class BadSupport(CdcError):
    """Polynomial support violates the required coefficient pattern."""


class WrongCharacteristic(CdcError):
    """Operation restricted to q = 2 called with another q."""


# -- channel ----------------------------------------------------------------

class InfeasibleNoise(CdcError):
    """Requested error dimensions cannot fit in the ambient space."""
