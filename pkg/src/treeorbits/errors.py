"""Exception types shared across the package."""


class Error(Exception):
    """Base class for all package errors."""


class EmptyInput(Error):
    """Raised when a tree has no vertices."""


class NotATree(Error):
    """Raised when the edge set is not a rooted tree directed toward a root."""


class LabelViolation(Error):
    """Raised when labels are not positive integers strictly increasing along edges."""


class UnknownVertex(Error):
    """Raised when an operation names a vertex that is not in the tree."""


class RootForbidden(Error):
    """Raised when an operation that needs a non-root vertex is given the root."""


class BadRange(Error):
    """Raised when a numeric argument is outside its documented range."""


class BoundsError(Error):
    """Raised when flag dimensions are out of bounds or not strictly increasing."""


class ParseError(Error):
    """Raised on malformed input text; carries a character position when known."""

    def __init__(self, message: str, pos: int | None = None):
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)
        self.pos = pos


class IterationLimit(Error):
    """Raised when the rewrite loop fails to reach a fixpoint (catalog bug)."""


class NotPrime(Error):
    """Raised when a modulus that must be prime is not."""


class UnsupportedField(Error):
    """Raised when a finite-field order outside {2, 3, 4, 5} is requested."""


class CapExceeded(Error):
    """Raised when an enumeration would exceed the configured point cap."""

    def __init__(self, projected: int, cap: int):
        super().__init__(f"enumeration needs {projected} points, cap is {cap}")
        self.projected = projected
        self.cap = cap


class NotAPencil(Error):
    """Raised when cross-ratio inputs do not sit between the given flag pair."""


class Degenerate(Error):
    """Raised when the four cross-ratio subspaces are not pairwise distinct."""
