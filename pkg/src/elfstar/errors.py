"""Exception hierarchy shared by the codecs and the CLI."""


class ElfError(Exception):
    """Base class for every error raised by this package."""


class DecodeError(ElfError, ValueError):
    """A byte stream could not be decoded.

    ``offset`` is the bit offset (or byte offset for container-level
    problems) at which decoding failed, when known.
    """

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)
        self.offset = offset


class TruncatedStreamError(DecodeError):
    """The stream ended before the requested bits were available."""


class FormatError(DecodeError):
    """Container magic, version or header fields are invalid."""


class EmptyDistributionError(ElfError, ValueError):
    """A rule was requested for a distribution that holds no records."""
