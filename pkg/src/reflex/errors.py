"""Exception hierarchy shared by every module."""


class ReflexError(Exception):
    """Base class for all library errors."""


class InputError(ReflexError, ValueError):
    """A caller broke a documented precondition (bad index, bad degree, ...)."""


class ParseError(InputError):
    """Malformed scalar, representation file or family spec."""


class FieldMismatch(InputError):
    """Scalars or representations from different field contexts were mixed."""


class ReflectionError(ReflexError):
    """A matrix failed to be a generalized reflection."""


class NotRankOne(ReflectionError):
    pass


class NotDiagonalizable(ReflectionError):
    pass


class NotInvertible(ReflectionError):
    pass


class NotIrreducibleEvidence(ReflexError):
    """Raised when a construction that needs a simple module finds a proper
    invariant subspace instead. ``subspace`` holds a basis of it."""

    def __init__(self, message, subspace):
        super().__init__(message)
        self.subspace = subspace


class TheoremInapplicable(ReflexError):
    pass


class PsiNotIntertwining(ReflexError):
    """The supplied exterior-power map is not a valid isomorphism."""


class StructureViolation(ReflexError):
    """An identity that must hold for valid inputs failed.

    Any occurrence indicates a bug upstream; ``context`` carries the data
    needed to reproduce it.
    """

    def __init__(self, message, **context):
        super().__init__(message)
        self.context = context
