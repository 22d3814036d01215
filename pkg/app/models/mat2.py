from typing import Iterable, Sequence, Tuple

from app.models.concrete_field import ConcreteField, FieldElem
from app.models.errors import NotFiniteField, SingularMatrix


class Mat2:
    """
    2x2 matrix [[a, b], [c, d]] over a ConcreteField.

    Entries are held as raw field values; the a/b/c/d properties hand out FieldElem.
    """

    __slots__ = ("field", "values", "_hash")

    def __init__(self, field: ConcreteField, values: Sequence):
        self.field = field
        self.values: Tuple = tuple(values)
        if len(self.values) != 4:
            raise ValueError(f"a 2x2 matrix needs 4 entries, got {len(self.values)}")
        self._hash = hash(self.values)

    @classmethod
    def identity(cls, field: ConcreteField) -> "Mat2":
        return cls(field, (field.one, field.zero, field.zero, field.one))

    @classmethod
    def from_ints(cls, field: ConcreteField, entries: Iterable[int]) -> "Mat2":
        return cls(field, [field.from_int(e) for e in entries])

    @property
    def a(self) -> FieldElem:
        return self.field.element(self.values[0])

    @property
    def b(self) -> FieldElem:
        return self.field.element(self.values[1])

    @property
    def c(self) -> FieldElem:
        return self.field.element(self.values[2])

    @property
    def d(self) -> FieldElem:
        return self.field.element(self.values[3])

    def entries(self) -> Tuple[FieldElem, ...]:
        return tuple(self.field.element(v) for v in self.values)

    def __mul__(self, other: "Mat2") -> "Mat2":
        if other.field != self.field:
            raise ValueError(f"matrices over {self.field!r} and {other.field!r}")
        f = self.field
        add, mul = f.add, f.mul
        a, b, c, d = self.values
        e, g, h, k = other.values
        return Mat2(
            f,
            (
                add(mul(a, e), mul(b, h)),
                add(mul(a, g), mul(b, k)),
                add(mul(c, e), mul(d, h)),
                add(mul(c, g), mul(d, k)),
            ),
        )

    def determinant(self) -> FieldElem:
        f = self.field
        a, b, c, d = self.values
        return f.element(f.sub(f.mul(a, d), f.mul(b, c)))

    def trace(self) -> FieldElem:
        return self.field.element(self.field.add(self.values[0], self.values[3]))

    def is_invertible(self) -> bool:
        return not self.determinant().is_zero()

    def inverse(self) -> "Mat2":
        det = self.determinant()
        if det.is_zero():
            raise SingularMatrix(f"{self} has determinant 0")
        f = self.field
        inv = f.inv(det.value)
        a, b, c, d = self.values
        return Mat2(f, (f.mul(d, inv), f.mul(f.neg(b), inv), f.mul(f.neg(c), inv), f.mul(a, inv)))

    def __pow__(self, e: int) -> "Mat2":
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = Mat2.identity(self.field)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, factor) -> "Mat2":
        value = factor.value if isinstance(factor, FieldElem) else factor
        return Mat2(self.field, [self.field.mul(value, v) for v in self.values])

    def is_scalar(self) -> bool:
        f = self.field
        a, b, c, d = self.values
        return f.is_zero(b) and f.is_zero(c) and a == d

    def is_identity(self) -> bool:
        return self == Mat2.identity(self.field)

    def projective_key(self) -> Tuple:
        """Entries scaled so that the first nonzero entry is 1"""
        f = self.field
        pivot = next(v for v in self.values if not f.is_zero(v))
        inv = f.inv(pivot)
        return tuple(f.mul(v, inv) for v in self.values)

    def to_json(self) -> list:
        return [self.field.to_json(v) for v in self.values]

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat2) and self.values == other.values and self.field == other.field

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        a, b, c, d = self.to_json()
        return f"[[{a}, {b}], [{c}, {d}]]"


class PglElem:
    """Scalar-equivalence class of an invertible Mat2"""

    __slots__ = ("representative", "key")

    def __init__(self, representative: Mat2):
        if not representative.is_invertible():
            raise SingularMatrix(f"{representative} is not invertible")
        self.representative = Mat2(representative.field, representative.projective_key())
        self.key = self.representative.values

    @property
    def field(self) -> ConcreteField:
        return self.representative.field

    def __mul__(self, other: "PglElem") -> "PglElem":
        return PglElem(self.representative * other.representative)

    def inverse(self) -> "PglElem":
        return PglElem(self.representative.inverse())

    def is_identity(self) -> bool:
        return self.representative.is_scalar()

    def __eq__(self, other) -> bool:
        return isinstance(other, PglElem) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"PGL{self.representative!r}"


class ProjPoint:
    """(x : y) on the projective line over a finite field, normalised to (t : 1) or (1 : 0)"""

    __slots__ = ("field", "x", "y")

    def __init__(self, field: ConcreteField, x, y):
        if not field.is_finite:
            raise NotFiniteField(f"projective points need a finite field, not {field!r}")
        if field.is_zero(x) and field.is_zero(y):
            raise ValueError("(0 : 0) is not a point")
        if field.is_zero(y):
            x, y = field.one, field.zero
        else:
            x, y = field.div(x, y), field.one
        self.field = field
        self.x = x
        self.y = y

    @classmethod
    def infinity(cls, field: ConcreteField) -> "ProjPoint":
        return cls(field, field.one, field.zero)

    @classmethod
    def affine(cls, field: ConcreteField, t) -> "ProjPoint":
        return cls(field, t, field.one)

    def is_infinity(self) -> bool:
        return self.field.is_zero(self.y)

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjPoint) and (self.x, self.y) == (other.x, other.y)

    def __hash__(self) -> int:
        return hash((self.x, self.y))

    def __repr__(self) -> str:
        return f"({self.field.to_json(self.x)} : {self.field.to_json(self.y)})"
