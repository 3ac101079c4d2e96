"""Exception hierarchy shared by the library and the CLI exit-code mapping."""


class ColonresError(Exception):
    pass


class InputError(ColonresError, ValueError):
    """Malformed or out-of-contract input (CLI exit code 1)."""


class VerificationError(ColonresError):
    """A computed object failed one of its certified invariants (CLI exit code 2)."""


class NotAComplexError(VerificationError):
    pass


class LiftError(VerificationError):
    """A zig-zag lift does not exist: the input complex was not acyclic."""


class DecompositionError(InputError):
    """Some column of the top map does not lie in Q times the next module."""


class ScheduleExhausted(VerificationError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
