"""Exception types shared across the package.

Each class carries a short ``code`` string that the CLI puts in its JSON
error object.
"""


class GfChordalError(Exception):
    code = "error"


class UnsupportedOrderError(GfChordalError, ValueError):
    code = "unsupported-order"


class TooManyPointsError(GfChordalError, ValueError):
    code = "too-many-points"


class OddCharacteristicError(GfChordalError, ValueError):
    code = "odd-characteristic"


class IndexOutOfRangeError(GfChordalError, ValueError):
    code = "index-out-of-range"


class UnknownLabelError(GfChordalError, KeyError):
    code = "unknown-label"

    def __str__(self):
        return Exception.__str__(self)


class NotAFlatError(GfChordalError, ValueError):
    code = "not-a-flat"


class RankOutOfRangeError(GfChordalError, ValueError):
    code = "rank-out-of-range"


class PreconditionError(GfChordalError, ValueError):
    code = "precondition-violation"


class NotRepresentableAmalgamError(GfChordalError, RuntimeError):
    code = "not-representable-amalgam"


class TooLargeError(GfChordalError, ValueError):
    code = "too-large"


class MalformedDocumentError(GfChordalError, ValueError):
    code = "malformed-document"
