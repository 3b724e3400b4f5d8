"""Exception hierarchy shared across the library."""


class FrlabError(Exception):
    """Base class for all library errors."""


class OrderCapExceeded(FrlabError):
    """A computation would exceed one of the configured size caps."""

    def __init__(self, what: str, needed: int, cap: int):
        super().__init__(f"{what}: needs {needed}, cap is {cap}")
        self.what = what
        self.needed = needed
        self.cap = cap


class InvalidPermutation(FrlabError):
    """Malformed permutation input."""


class NotNormal(FrlabError):
    """Subgroup is not normal in its parent."""


class NotASection(FrlabError):
    """The pair (upper, lower) does not form a normal section."""


class NotAFormation(FrlabError):
    """Class is not flagged as a formation."""


class NotAutomorphism(FrlabError):
    """Map is not an automorphism of the group."""


class InvalidAction(FrlabError):
    """Action data is not a homomorphism into the automorphism group."""


class UnknownClass(FrlabError):
    """Unrecognized class name or class expression."""


class UnsupportedBase(FrlabError):
    """Preset base lacks the flags or definition data the preset needs."""


class UnknownCheck(FrlabError):
    """Unrecognized verification check id."""


class UnknownPredicate(FrlabError):
    """Unrecognized search predicate id."""


class MissingFlag(FrlabError):
    """Class lacks a closure flag required by the requested operation."""


class MissingDefinition(FrlabError):
    """Class lacks the local/composition definition data required here."""


class MissingOutData(FrlabError):
    """No outer-automorphism data for a simple type above the brute-force cap."""


class NoCandidate(FrlabError):
    """Corpus scan found no group satisfying the required side conditions."""


class Undecidable(FrlabError):
    """Every available route for the decision exceeded its cap."""


class RecipeSyntaxError(FrlabError):
    """Recipe or config text failed to parse; carries position info."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class UnknownConstructor(FrlabError):
    """Recipe names a constructor that does not exist."""
