"""Exception types shared across the package."""


class NahmError(Exception):
    """Base class for every error raised by nahmalg."""


class DimensionMismatch(NahmError, ValueError):
    pass


class InvalidAlgebra(NahmError, ValueError):
    """Structure constants fail antisymmetry or the Jacobi identity."""


class PreconditionError(NahmError, ValueError):
    pass


class VerificationError(NahmError, AssertionError):
    """An internal cross-check failed; indicates a bug or misuse."""


class SimplicityMismatch(VerificationError):
    """The centralizer test and the ideal-closure test disagree."""


class ConvergenceError(NahmError, RuntimeError):
    pass


class StepUnderflow(NahmError, RuntimeError):
    def __init__(self, message, t=None, state=None):
        super().__init__(message)
        self.t = t
        self.state = state
