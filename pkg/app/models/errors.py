from typing import Optional


class EdOneError(Exception):
    """
    Root of every error raised by the library
    """


class InputError(EdOneError):
    """
    The caller handed in something malformed or outside the supported catalog
    """


class ParseError(InputError):
    def __init__(self, message: str, text: str = "", position: Optional[int] = None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} (at position {position} in {text!r})"
        super().__init__(message)


class NonPrimePower(ParseError):
    pass


class InvalidDescriptor(InputError):
    pass


class InvalidGnprParams(InvalidDescriptor):
    pass


class UnsupportedDescriptor(InputError):
    pass


class NotFiniteField(InputError):
    pass


class CharDividesN(InputError):
    pass


class NotPositiveCharacteristic(InputError):
    pass


class InconsistentRequirements(InputError):
    pass


class MissingRoots(InputError):
    pass


class FieldTooSmall(InputError):
    pass


class SingularMatrix(InputError):
    pass


class NotAUnitOfFiniteOrder(EdOneError):
    pass


class OrderExceedsCap(EdOneError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"order exceeds cap {cap}")


class CapExceeded(EdOneError):
    def __init__(self, cap: int, what: str = "closure"):
        self.cap = cap
        super().__init__(f"{what} exceeds cap {cap}")


class Unclassifiable(EdOneError):
    pass


class NotEdOne(EdOneError):
    pass
