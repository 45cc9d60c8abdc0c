"""Exception types shared across the package.

Every domain failure raises a subclass of GentleError, so callers (and the
CLI) can distinguish bad input from genuine bugs. Errors that point at a
position in a word carry the index on the exception object.
"""


class GentleError(ValueError):
    """Base class for all domain errors raised by this package."""


# presentation-level

class NonComposableRelation(GentleError):
    """A relation (x, y) where the path xy does not chain."""


class TooManyArrowsAtVertex(GentleError):
    """More than two arrows in, or out of, a single vertex."""


class GentleCondition2Violated(GentleError):
    """An arrow with two distinct relation-free continuations on one side."""


class GentleCondition3Violated(GentleError):
    """An arrow with two distinct relation continuations on one side."""


class NotChained(GentleError):
    """Consecutive arrows of a path do not compose."""


class TrivialPath(GentleError):
    """A trivial path was given where a nontrivial one is required."""


class VertexUnknown(GentleError):
    """A vertex name that the presentation does not declare."""


# word-level

class IndexedWordError(GentleError):
    """Base for word validation errors that point at an index."""

    def __init__(self, index, message):
        super().__init__(message)
        self.index = index


class HeadTailMismatch(IndexedWordError):
    """Adjacent letters whose head and tail vertices disagree."""


class InverseCancellation(IndexedWordError):
    """A letter immediately followed by its own inverse."""


class RelationCrossed(IndexedWordError):
    """An equal-direction pair of letters that spells a relation."""


class TailNotPeriodicizable(GentleError):
    """An infinite tail whose repeating unit is not a primitive cycle run."""


class NoValidAssignment(GentleError):
    """No sign assignment satisfies the same-head constraints."""


class ShapeMismatch(GentleError):
    """An operation applied to words of an unsupported index shape."""


class NotClassifiable(GentleError):
    """A valid word that fits none of the known classes."""


class NotAStringWord(GentleError):
    """Input expected to classify as a string word but did not."""


class NotABandWord(GentleError):
    """Input expected to classify as a band word but did not."""


class IndexOutOfShape(GentleError):
    """An index outside the word's index set."""


# generalised-word level

class AdjacencyRuleViolated(IndexedWordError):
    """An adjacent pair of generalised letters violating one of rules 1-4."""

    def __init__(self, index, rule, message):
        super().__init__(index, message)
        self.rule = rule


class PathNotInP(IndexedWordError):
    """A generalised-letter path that is zero or crosses a relation."""


class NotCyclic(GentleError):
    """A cycle that fails the cyclic-word requirements."""


class PeriodicInput(GentleError):
    """A periodic word given to an operation for non-periodic ones."""


class WindowRequired(GentleError):
    """An infinite complex materialization with no degree window."""


class NotARecognizedResolution(GentleError):
    """Input word is not a string-resolution or band-resolution."""


# matrix / oracle level

class SingularMatrix(GentleError):
    """A T-action matrix that is not invertible over its field."""


class RankMismatch(GentleError):
    """Matrices of different size where equal rank is required."""


class InfiniteDimensional(GentleError):
    """The presentation admits primitive cycles, so the algebra is
    infinite dimensional and cannot be expanded."""

    def __init__(self, cycles, message):
        super().__init__(message)
        self.cycles = cycles


class NotAComplex(GentleError):
    """Consecutive differentials whose product is nonzero."""
