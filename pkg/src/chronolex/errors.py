"""Exception types shared across the chronolex pipeline."""


class ChronolexError(Exception):
    """Base class for all chronolex errors."""


class DimensionMismatch(ChronolexError):
    """A vector's length disagrees with the established dimension."""


class MalformedLine(ChronolexError):
    """A text line could not be parsed (non-numeric component, bad header)."""


class EmptyTable(ChronolexError):
    """An embedding source contained no data lines."""


class YearOutOfRange(ChronolexError):
    """A year falls outside the configured slice range."""


class WrongArity(ChronolexError):
    """An n-gram field does not contain exactly n words."""


class MalformedYear(ChronolexError):
    """The year field of a corpus line is not an integer."""


class MalformedCount(ChronolexError):
    """The count field of a corpus line is not a positive integer."""


class MixedArity(ChronolexError):
    """Records with different n were fed into a single index build."""


class SliceOutOfRange(ChronolexError):
    """A slice index falls outside [0, slice_count)."""


class FormatVersionMismatch(ChronolexError):
    """A persisted index declares an unsupported format version."""


class ChecksumMismatch(ChronolexError):
    """A persisted index failed checksum verification (truncation/corruption)."""


class EmptyInput(ChronolexError):
    """An operation that needs at least one point received none."""


class NumericalFailure(ChronolexError):
    """The eigensolver failed to converge."""


class KeyMismatch(ChronolexError):
    """Two keyed collections that must share keys do not."""


class BindFailure(ChronolexError):
    """The serve address could not be bound at startup."""


class EmptyQuery(ChronolexError):
    """A query carried no words."""


class DuplicateWord(ChronolexError):
    """A query word appears more than once."""


class AllPointsMissing(ChronolexError):
    """No query word has data in any time slice."""
