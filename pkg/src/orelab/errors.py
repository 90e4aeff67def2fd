"""Exception types shared across the library."""


class OrelabError(Exception):
    """Base class for all library-specific errors."""


class InvalidGroup(OrelabError):
    """A multiplication table violates a group law.

    ``law`` names the violated invariant (identity, inverse, associativity,
    range, shape).
    """

    def __init__(self, law: str, detail: str = ""):
        self.law = law
        super().__init__(f"invalid group ({law})" + (f": {detail}" if detail else ""))


class NotNormal(OrelabError):
    """Quotient requested by a non-normal subgroup."""


class BadAction(OrelabError):
    """An Action fails the automorphism/homomorphism requirements."""


class TooLarge(OrelabError):
    """A computation exceeds a configured size cap."""


class ParseError(OrelabError):
    """Malformed external input; carries a line/field position."""

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        self.line = line
        self.field = field
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", {field}" if field else "") + ")"
        super().__init__(message + where)


class UnknownId(OrelabError):
    """Unregistered statement, formation, functor or predicate id."""


class EmptyCorpus(OrelabError):
    """A corpus-wide check was invoked with no groups."""
