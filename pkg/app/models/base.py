from fractions import Fraction

from pydantic import BaseModel


class BaseSchema(BaseModel):
    """
    Base for every JSON document the CLI reads or writes.
    Subclasses that mirror a runtime object set __domain__ and implement to_domain().
    """

    __domain__ = None

    class Config:
        json_encoders = {
            Fraction: lambda v: str(v),
        }

    def to_domain(self):
        if not self.__domain__:
            raise NotImplementedError("Error __domain__ class not set")
        raise NotImplementedError(f"{type(self).__name__} does not convert to {self.__domain__}")


class FrozenSchema(BaseModel):
    """
    Immutable, hashable value object
    """

    class Config:
        frozen = True
