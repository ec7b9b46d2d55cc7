"""Exception hierarchy shared by all calculus modules.

Math errors are runtime failures a caller (or the CLI) is expected to
handle; contract errors signal violated preconditions and normally mean
the caller supplied inconsistent objects.
"""


class MathError(Exception):
    """Base class for arithmetic and domain failures."""


class DomainError(MathError):
    """Point lies outside the domain of the requested operator."""


class NotCommensurate(MathError):
    """Integration limits do not lie on a common operator lattice."""


class Divergent(MathError):
    """A series antiderivative failed to converge; finite-sum ones still exist."""


class ZeroDenominator(MathError):
    """Divided-difference denominator vanished at the evaluation point."""


class EvalError(MathError):
    """Base class for expression evaluation faults."""


class DivideByZero(EvalError):
    pass


class LogNonPositive(EvalError):
    pass


class SqrtNegative(EvalError):
    pass


class ContractError(Exception):
    """Base class for violated preconditions on supplied objects."""


class ContractViolation(ContractError):
    """An object failed a law it was certified to satisfy."""


class DegenerateSample(ContractError):
    """Sample set carries no usable information (all pairs equivalent)."""


class NotHomogeneous(ContractError):
    pass


class NotDirected(ContractError):
    pass


class ZeroStep(ContractError):
    pass


class NotRightInverse(ContractError):
    pass
