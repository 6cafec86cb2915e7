"""Exception hierarchy.

Every error raised on purpose by the library derives from
:class:`PrincipalBoundaryError`, which is what the command line front end
catches and turns into a JSON error object.
"""


class PrincipalBoundaryError(ValueError):
    """Base class for all library errors."""


class DegreeParityError(PrincipalBoundaryError):
    """The order sum does not correspond to a nonnegative integer genus."""


class OrderRangeError(PrincipalBoundaryError):
    """An order lies below the allowed minimum (or the signature is empty)."""


class UnsupportedError(PrincipalBoundaryError):
    """The operation is not defined for this kind of input."""


class DegreeMismatchError(PrincipalBoundaryError):
    """Zero and pole orders do not add up to the canonical degree."""


class ArityMismatchError(PrincipalBoundaryError):
    """Arguments present/absent do not fit the requested gluing pattern."""


class ConfigError(PrincipalBoundaryError):
    """A configuration violates one of its invariants."""


class NotAPoleError(PrincipalBoundaryError):
    """A residue was requested at a point that is not a pole."""


class UnderDeterminedError(PrincipalBoundaryError):
    """The residue system has more freedom than the solver supports."""


class InadmissibleError(PrincipalBoundaryError):
    """Angle data cannot be realised by a half-plane decomposition."""


class NotTypeIError(PrincipalBoundaryError):
    """A domain complex does not come from a type I configuration."""


class ParityUndefinedError(PrincipalBoundaryError):
    """Spin parity is not defined (odd orders, or a missing parity bit)."""


class WrongStratumError(PrincipalBoundaryError):
    """The stratum is not one for which the hyperelliptic test applies."""
