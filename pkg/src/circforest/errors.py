"""Exception hierarchy.

Two families matter to callers: :class:`DomainError` (bad input, mapped to
CLI exit status 1) and :class:`InvariantViolation` (a computed quantity broke
a proven identity, mapped to exit status 2).
"""


class CircForestError(Exception):
    pass


class DomainError(CircForestError):
    """Input outside the domain of an operation."""


class InvariantViolation(CircForestError):
    """An exact identity that must hold did not."""


# foliation model
class LoopInBase(DomainError):
    pass


class FiberCountMismatch(DomainError):
    pass


class NonIncreasingJumps(DomainError):
    pass


class DisconnectedBase(DomainError):
    pass


class JumpTooLargeForN(DomainError):
    pass


class UnknownFamily(DomainError):
    pass


class BadArity(DomainError):
    pass


# exact algebra
class ZeroPolynomial(DomainError):
    pass


class NonIntegerCoefficient(InvariantViolation):
    pass


# arithmetic
class FactorizationTimeout(DomainError):
    pass


class StructureViolation(InvariantViolation):
    pass


# numerics
class ConvergenceFailure(DomainError):
    pass


class UnitCircleRoot(DomainError):
    pass


class QuadratureNonconvergence(DomainError):
    pass


class PrecisionInsufficient(DomainError):
    pass


# family DSL
class FamilySyntaxError(DomainError):
    def __init__(self, message, text, pos, expected=()):
        self.text = text
        self.pos = pos
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.expected = tuple(sorted(set(expected)))
        detail = f"{message} at line {self.line}, column {self.column}"
        if self.expected:
            detail += f"; expected one of: {', '.join(self.expected)}"
        super().__init__(detail)


class FamilySemanticError(DomainError):
    def __init__(self, message, text="", pos=0):
        self.text = text
        self.pos = pos
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {self.line}, column {self.column}")
