"""Exception hierarchy shared by all modules."""


class CSFError(ValueError):
    """Base class for input and precondition errors raised by this package."""


class ParseError(CSFError):
    pass


class NotInH1(CSFError):
    """A word is nonempty and does not end in ``y``."""


class NotLeftDivisible(CSFError):
    """``strip_left_x`` applied to a word that does not start with ``x``."""


class PreconditionViolation(CSFError):
    pass


class WeightMismatch(CSFError):
    pass


class DivergentIndex(CSFError):
    pass


class NonAdmissibleWord(CSFError):
    def __init__(self, word):
        super().__init__(f"word {word!r} is not admissible (must be 1 or lie in x H y)")
        self.word = word


class UnknownSuite(CSFError):
    pass


class InternalInconsistency(RuntimeError):
    """Two independent computations of the same quantity disagree."""
