"""Exception hierarchy shared across the package."""


class FsmidError(Exception):
    """Base class for all errors raised by fsmid."""


class InputDomainError(FsmidError, ValueError):
    """A symbol, state or alphabet is out of range for the value it is used with."""


class FormatError(FsmidError, ValueError):
    """A file or text payload does not follow its documented format."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ObservationConflict(FsmidError):
    """Two different outputs were recorded for the same input string."""

    def __init__(self, word, existing, new, message=None):
        self.word = word
        self.existing = existing
        self.new = new
        super().__init__(message or f"conflicting outputs {existing!r} and {new!r} for string {word!r}")


class ClosureError(FsmidError):
    """A test set is not prefix-complete or an experiment set is not suffix-complete."""

    def __init__(self, kind, member, missing):
        self.kind = kind
        self.member = member
        self.missing = missing
        super().__init__(f"{kind} set is not {kind}-complete: {missing!r} (from {member!r}) is missing")


class ExtractionError(FsmidError):
    """A matrix does not satisfy the preconditions for automaton extraction."""

    def __init__(self, flag, witness):
        self.flag = flag
        self.witness = witness
        super().__init__(f"cannot extract a machine: {flag} fails (witness: {witness!r})")


class DecodeError(FsmidError):
    """A SAT model violates the functionality constraints of the encoding."""


class InadequacyError(FsmidError):
    """No adequate test-state set exists within the prefixes of the data."""
