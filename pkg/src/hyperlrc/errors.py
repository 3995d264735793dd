"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A construction or operation was called outside its preconditions."""


class FieldMismatchError(ValueError):
    """Operands belong to different fields."""


class WorkCapExceeded(RuntimeError):
    """An exhaustive search would exceed its configured work limit."""

    def __init__(self, message, needed=None, cap=None):
        super().__init__(message)
        self.needed = needed
        self.cap = cap


class DecodeFailure(Exception):
    """Erasure decoding could not produce a unique codeword.

    ``reason`` is ``"ambiguous"`` when the erased positions admit several
    completions and ``"corrupt"`` when the known symbols are inconsistent
    with every completion.
    """

    def __init__(self, reason, message=""):
        super().__init__(message or reason)
        self.reason = reason
