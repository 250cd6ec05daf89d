"""Exception hierarchy shared by every module."""


class SymDynError(Exception):
    """Base class for all errors raised by symdyn."""


class InputError(SymDynError):
    """Malformed presentation, file or option value."""


class InadmissibleWord(SymDynError):
    pass


class OracleDepthExceeded(SymDynError):
    """A query needs words longer than the oracle's reliable length."""


class UnsupportedPresentation(SymDynError):
    pass


class NotIrreducible(SymDynError):
    pass


class TrivialShift(SymDynError):
    pass


class HorizonTooSmall(SymDynError):
    """The enumeration horizon cannot realize every class signature."""

    def __init__(self, required, given):
        super().__init__(f"horizon {given} too small; need at least {required}")
        self.required = required
        self.given = given


class TruncationTooShallow(SymDynError):
    pass


class EntryOverflow(SymDynError):
    pass


class DepthOverflow(SymDynError):
    pass


class SearchSpaceTooLarge(SymDynError):
    pass
