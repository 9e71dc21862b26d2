"""Exception vocabulary shared across the package."""


class ConceptkitError(Exception):
    """Base class for every error this package raises on purpose."""


class InvalidContext(ConceptkitError):
    """A context violates a structural invariant (duplicate names, bad refs, broken order)."""


class NotInContext(ConceptkitError):
    """An object or attribute name is not part of the context."""


class OracleScaleExceeded(ConceptkitError):
    """The brute-force concept oracle refuses contexts past its size guard."""


class NotPurified(ConceptkitError):
    """Operation requires a purified context (no duplicate rows or columns)."""


class ObjectSetMismatch(ConceptkitError):
    """Apposition requires both contexts to share the same object list."""


class AttributeCollision(ConceptkitError):
    """Apposition found the same attribute token on both sides and no namespaces."""


class IndexOutOfRange(ConceptkitError):
    """A concept index is outside 1..n."""


class EmptyExtent(ConceptkitError):
    """Linkage denominator would be zero: the source concept has no counted objects."""


class EmptyIntent(ConceptkitError):
    """Linkage denominator would be zero: the source concept has no counted attributes."""


class ThresholdOutOfRange(ConceptkitError):
    """Crispification threshold must lie in (0, 1]; filters require tau >= 0."""


class WrongScope(ConceptkitError):
    """Browsing operation invoked in the wrong session scope."""


class WrongMode(ConceptkitError):
    """Attempt to change or contradict a session's fixed browsing mode."""


class NotDisplayable(ConceptkitError):
    """Transition target carries no name (no view, attribute, or object generates it)."""


class CyclicOrder(ConceptkitError):
    """An order section (successors or predecessors) contains a cycle."""


class GraphIntegrity(ConceptkitError):
    """A link graph edge references an undeclared node."""


class IoError(ConceptkitError):
    """Wraps OS-level read/write failures on document or web emission paths."""


class ScaleValueError(ConceptkitError):
    """A value cannot be interpreted under the scale's comparator."""


class InterchangeError(ConceptkitError):
    """Base for FCIF/CLIF document errors; carries a source location."""

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"{message} (line {line}, col {col})"
        super().__init__(message)


class FcifSyntaxError(InterchangeError):
    """Token-level or structural syntax error."""


class UndeclaredName(InterchangeError):
    """A name is used before (or without) being declared."""


class DuplicateDeclaration(InterchangeError):
    """The same name or index is declared twice in one section."""
