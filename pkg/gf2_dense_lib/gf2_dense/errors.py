# gf2_dense/errors.py


class GF2Error(Exception):
    """Base class for errors raised by gf2_dense."""


class ShapeError(GF2Error, ValueError):
    """Operand dimensions do not conform, or input rows are ragged."""


class FormatError(GF2Error, ValueError):
    """A serialized matrix has a malformed header or a truncated payload."""


class ContractError(GF2Error, ValueError):
    """A documented precondition of an operation does not hold."""


class InadmissibleRowError(GF2Error):
    """The candidate row would make the grown principal minor singular."""
