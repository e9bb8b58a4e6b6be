"""Exception types shared across the package."""


class FlatkitError(Exception):
    """Base class for all flatkit errors."""


class NonSimpleError(FlatkitError):
    """A construction would produce a loop or a parallel pair."""


class LoopColumnError(NonSimpleError):
    """A matrix column is all zero."""


class ParallelColumnsError(NonSimpleError):
    """Two matrix columns are scalar multiples of each other."""


class UnsupportedFieldError(FlatkitError):
    """Field order outside the supported set {2, 3, 4, 5, 7, 8, 9}."""


class TooLargeError(FlatkitError):
    """A size cap (ground set, canonicalization, embedding search) was exceeded."""


class RankTableError(FlatkitError, ValueError):
    """A rank table is structurally malformed (length does not match 2**n)."""


class EmptyForbiddenListError(FlatkitError):
    """The class has no forbidden flats, so extension-class search is vacuous."""


class NotForbiddenError(FlatkitError):
    """Witness extraction was asked for a matroid that is not a minimal forbidden flat."""


class WitnessInvariantError(FlatkitError):
    """An extracted witness decomposition violates one of its rank invariants."""


class ConfigError(FlatkitError):
    """A class configuration file is invalid (duplicate, non-simple, or out-of-universe forbidden flats)."""


class ParseError(FlatkitError):
    """A matroid or config file failed to parse.

    Carries enough context to point the user at the offending token.
    """

    def __init__(self, message, source=None, line=None, expected=None):
        self.source = source
        self.line = line
        self.expected = expected
        parts = []
        if source is not None:
            parts.append(str(source))
        if line is not None:
            parts.append(f"line {line}")
        prefix = ": ".join(parts)
        full = f"{prefix}: {message}" if prefix else message
        if expected is not None:
            full += f" (expected {expected})"
        super().__init__(full)
