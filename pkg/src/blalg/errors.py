"""Exception hierarchy shared by every module of the workbench."""


class WorkbenchError(Exception):
    """Base class; the CLI maps these to exit code 1."""


class DimensionMismatch(WorkbenchError, ValueError):
    pass


class NotPositive(WorkbenchError, ValueError):
    pass


class NotPositiveProduct(WorkbenchError):
    pass


class BadParameter(WorkbenchError, ValueError):
    pass


class PreconditionViolated(WorkbenchError):
    """A construction's hypothesis does not hold; ``hypothesis`` names which one."""

    def __init__(self, hypothesis: str, detail: str = ""):
        self.hypothesis = hypothesis
        self.detail = detail
        super().__init__(f"{hypothesis}: {detail}" if detail else hypothesis)


class AxiomFailure(WorkbenchError):
    pass


class NotAM(WorkbenchError):
    pass


class NoIdentity(WorkbenchError):
    pass


class IdentityNotOrderUnit(WorkbenchError):
    pass


class IndexOutsideSupport(WorkbenchError, IndexError):
    pass


class NotSubalgebra(WorkbenchError):
    pass


class NotRepresentedPointwise(WorkbenchError):
    pass


class TheoremViolation(WorkbenchError):
    """Raised when a computation contradicts a proved statement.

    Never expected on valid input. Reaching it means either the input
    slipped past a precondition check or the implementation is wrong.
    """


class ContradictsSubalgebra(TheoremViolation):
    """A constraint with a scalar outside {0, 1} survived on a subalgebra."""


class SpecFormatError(WorkbenchError, ValueError):
    """Malformed input file. The CLI maps this to exit code 2."""
