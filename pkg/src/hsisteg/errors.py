"""Exception types raised by the steganography toolkit."""


class StegoError(Exception):
    """Base class for all toolkit errors."""


class PayloadTooLarge(StegoError):
    """Payload exceeds the 2**32 - 1 byte limit of the length header."""


class TruncatedStream(StegoError):
    """Bit stream ends before the framed payload is complete.

    Raised when a carrier holds fewer bits than the length header demands,
    which usually means the image is not a stego image, was cropped, or was
    re-encoded lossily.
    """


class InsufficientCapacity(StegoError):
    """Framed payload does not fit in the carrier."""


class DimensionMismatch(StegoError):
    """Two images being compared do not have identical dimensions."""


class UnsupportedFormat(StegoError):
    """Image file format or pixel depth the toolkit does not handle."""


class AlphaNotSupported(StegoError):
    """Image carries an alpha channel, which would make stego bytes ambiguous."""


class CorruptFile(StegoError):
    """Image file is recognized but cannot be decoded."""


class IoFailure(StegoError):
    """Image file could not be written."""
