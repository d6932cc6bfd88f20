"""Exception hierarchy for vnseg.

Every error raised for bad data or a bad model derives from
:class:`SegmentationError`, so the CLI can map them to one exit code.
"""


class SegmentationError(Exception):
    """Base class for data, resource and model errors."""


class EmptySentence(SegmentationError, ValueError):
    pass


class MalformedToken(SegmentationError, ValueError):
    pass


class LabelArity(SegmentationError, ValueError):
    pass


class NotEnoughData(SegmentationError, ValueError):
    pass


class MixedCorpus(SegmentationError, ValueError):
    pass


class NeedsLabels(SegmentationError, ValueError):
    pass


class AlignmentError(SegmentationError, ValueError):
    pass


class ResourceIO(SegmentationError, OSError):
    pass


class MalformedEntry(SegmentationError, ValueError):
    pass


class DegenerateLabels(SegmentationError, ValueError):
    pass


class BadInput(SegmentationError, ValueError):
    pass


class ModelVersion(SegmentationError, ValueError):
    """Model file has the wrong header, is truncated or otherwise unreadable."""
