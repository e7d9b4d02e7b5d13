"""Exception hierarchy shared by all ksum3 modules."""


class Ksum3Error(Exception):
    """Base class for all errors raised by this package."""


class DegreeMismatch(Ksum3Error):
    """Modulus is not monic of the expected degree."""


class ReducibleModulus(Ksum3Error):
    """Modulus factors over F_3 and cannot define a field."""


class MixedFields(Ksum3Error):
    """Operands belong to different field instances."""


class DivisionByZero(Ksum3Error):
    """Plain inversion of the zero element."""


class NonResidue(Ksum3Error):
    """Square root requested of a non-square element."""


class NoSolution(Ksum3Error):
    """Artin-Schreier equation has no solution (trace of rhs is nonzero)."""


class FormatError(Ksum3Error):
    """Element or modulus string does not match the documented formats."""


class ZeroParameter(Ksum3Error):
    """Kloosterman sum / curve parameter a must be nonzero."""


class PointNotOnCurve(Ksum3Error):
    """Group-law input does not satisfy the curve equation."""


class OrderThreePoint(Ksum3Error):
    """Tripling requested at an x-coordinate of an order-3 point."""


class NotOnCurve(Ksum3Error):
    """x-coordinate does not belong to any affine curve point."""


class ZeroXCoordinate(Ksum3Error):
    """Divisibility obstruction is undefined at x = 0."""


class SamplingExhausted(Ksum3Error):
    """Rejection sampling hit its attempt cap."""


class IterationCapExceeded(Ksum3Error):
    """Safety cap hit in an iteration that theory says must terminate."""


class TraceNotZero(Ksum3Error):
    """Divisibility-by-27 test requires trace(a) = 0."""


class NotCycleCase(Ksum3Error):
    """Bounds only apply to cycle-terminated valuation reports."""


class CapExceeded(Ksum3Error):
    """Requested computation exceeds the desk-scale cap."""


class NoRootFound(Ksum3Error):
    """Embedding root search failed (internal failure)."""
