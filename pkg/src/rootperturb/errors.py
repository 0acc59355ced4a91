"""Exception types raised by the library.

Every error derives from :class:`RootPerturbError`, itself a ``ValueError``,
so callers can catch all input problems at once.  The CLI maps
:class:`NoConvergence` to exit code 3 and everything else to exit code 2.
"""


class RootPerturbError(ValueError):
    pass


class ZeroPolynomial(RootPerturbError):
    """The operation has no meaning for the zero polynomial."""


class DegreeZero(RootPerturbError):
    """A nonzero constant was given where a polynomial with roots is needed."""


class EvalAtRoot(RootPerturbError):
    pass


class LeadingZero(RootPerturbError):
    """The coefficient that normalizes a bound is zero."""


class AmbientMismatch(RootPerturbError):
    pass


class InvalidEpsilon(RootPerturbError):
    pass


class ArityMismatch(RootPerturbError):
    pass


class FullAssignment(RootPerturbError):
    pass


class NotAZero(RootPerturbError):
    pass


class OutsideClosure(RootPerturbError):
    pass


class ParseError(RootPerturbError):
    pass


class NoConvergence(RootPerturbError):
    """Root iteration ran out of sweeps.

    ``roots`` and ``residuals`` hold the best iterates reached.
    """

    def __init__(self, message, roots=(), residuals=(), iterations=0):
        super().__init__(message)
        self.roots = tuple(roots)
        self.residuals = tuple(residuals)
        self.iterations = iterations
