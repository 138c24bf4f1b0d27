"""Exception hierarchy shared by all f2vmatch modules."""


class F2VError(ValueError):
    """Base class for all library errors."""


class DomainError(F2VError):
    """A numeric argument lies outside its admissible domain."""


class WeightOverflow(DomainError, OverflowError):
    pass


class NotADistribution(DomainError):
    pass


class TreeError(F2VError):
    pass


class PrefixViolation(TreeError):
    pass


class BadCount(TreeError):
    pass


class EmptyWord(TreeError):
    pass


class NotComplete(TreeError):
    pass


class MTooLarge(F2VError):
    pass


class TooLarge(F2VError):
    pass


class NonTermination(RuntimeError):
    pass


class CodecError(F2VError):
    """Stream-level failure; ``bit_offset`` locates it in the input stream."""

    def __init__(self, message, bit_offset=None):
        super().__init__(message)
        self.bit_offset = bit_offset


class LengthNotMultiple(CodecError):
    pass


class DanglingSuffix(CodecError):
    pass


class InvalidSymbol(CodecError):
    pass


class FormatError(F2VError):
    """Malformed CodeFile or BitFile."""
