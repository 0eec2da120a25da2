"""Exception hierarchy shared across the toolkit.

All domain errors derive from FracepiError so callers (notably the CLI)
can map failure classes to exit codes without enumerating modules.
"""


class FracepiError(Exception):
    """Base class for every toolkit-specific error."""


# ---------------------------------------------------------------- solver

class InvalidOrder(FracepiError):
    """Derivative order outside the supported interval (0, 1]."""


class NonFiniteState(FracepiError):
    """A solution component became NaN/Inf (blow-up or bad step size)."""


class OutOfRange(FracepiError):
    """Argument outside a function's working range."""


class NonConvergent(FracepiError):
    """Series truncation cap reached before the tolerance was met."""


class DegenerateErrors(FracepiError):
    """A convergence study produced an exactly-zero error (trivial problem)."""


# -------------------------------------------------------------- analysis

class ZeroDeathRate(FracepiError):
    """mu = 0: the disease-free equilibrium is undefined."""


class ZeroRate(FracepiError):
    """A rate required to be positive for a sensitivity index is zero."""


class SingularTransitionMatrix(FracepiError):
    """The next-generation transition matrix is not invertible."""


class BoundaryCase(FracepiError):
    """R0 is numerically 1; the stability criterion gives no verdict."""


# ------------------------------------------------------------------- cli

class ParseError(FracepiError):
    """Malformed configuration document."""


class ValidationError(FracepiError):
    """Well-formed configuration violating an invariant."""
