import logging
from abc import ABC, abstractmethod
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Any, Iterator, List, Optional

from sympy import factorint, totient
from sympy.ntheory import primitive_root
from sympy.polys.densearith import dup_mul, dup_rem
from sympy.polys.densebasic import dup_strip
from sympy.polys.domains import QQ, ZZ
from sympy.polys.euclidtools import dup_invert
from sympy.polys.galoistools import gf_gcdex, gf_mul, gf_pow_mod, gf_rem, gf_strip

from app.models.errors import InvalidDescriptor, MissingRoots, NotAUnitOfFiniteOrder
from app.models.int_poly import IntPoly
from app.utils.arithmetic import reduced_cyclotomic_index

logger = logging.getLogger(__name__)


class ConcreteField(ABC):
    """
    Exact arithmetic in a realization field.

    Raw values are plain hashable Python objects (int, tuple, Fraction); FieldElem wraps a raw
    value together with its field for operator syntax. Two fields are equal when they have the
    same key, so independently constructed copies interoperate.
    """

    kind: str = ""
    characteristic: int = 0
    degree: int = 1

    @property
    @abstractmethod
    def key(self) -> tuple:
        ...

    @property
    def size(self) -> Optional[int]:
        return None

    @property
    def is_finite(self) -> bool:
        return self.size is not None

    @property
    @abstractmethod
    def zero(self):
        ...

    @property
    @abstractmethod
    def one(self):
        ...

    @abstractmethod
    def add(self, a, b):
        ...

    @abstractmethod
    def neg(self, a):
        ...

    @abstractmethod
    def mul(self, a, b):
        ...

    @abstractmethod
    def inv(self, a):
        ...

    @abstractmethod
    def from_int(self, n: int):
        ...

    @abstractmethod
    def mult_order(self, a) -> int:
        ...

    @abstractmethod
    def primitive_nth_root(self, n: int):
        ...

    @abstractmethod
    def to_json(self, a) -> Any:
        ...

    @abstractmethod
    def from_json(self, obj: Any):
        ...

    @abstractmethod
    def description(self) -> dict:
        ...

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def power(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def element(self, value) -> "FieldElem":
        return FieldElem(self, value)

    def elements(self) -> Iterator:
        raise NotImplementedError(f"{self} is infinite")

    def __eq__(self, other) -> bool:
        return isinstance(other, ConcreteField) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"{self.kind}{self.key[1:]}"


class FieldElem:
    __slots__ = ("field", "value")

    def __init__(self, field: ConcreteField, value):
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise ValueError(f"cannot combine elements of {self.field} and {other.field}")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        value = self._coerce(other)
        if value is NotImplemented:
            return value
        return FieldElem(self.field, self.field.add(self.value, value))

    __radd__ = __add__

    def __sub__(self, other):
        value = self._coerce(other)
        if value is NotImplemented:
            return value
        return FieldElem(self.field, self.field.sub(self.value, value))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        value = self._coerce(other)
        if value is NotImplemented:
            return value
        return FieldElem(self.field, self.field.mul(self.value, value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        value = self._coerce(other)
        if value is NotImplemented:
            return value
        return FieldElem(self.field, self.field.div(self.value, value))

    def __pow__(self, e: int):
        return FieldElem(self.field, self.field.power(self.value, e))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def mult_order(self) -> int:
        return self.field.mult_order(self.value)

    def to_json(self):
        return self.field.to_json(self.value)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElem):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __repr__(self) -> str:
        return f"{self.to_json()}"


class FiniteFieldBase(ConcreteField):
    p: int
    k: int

    @property
    def size(self) -> int:
        return self.p**self.k

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def degree(self) -> int:
        return self.k

    @abstractmethod
    def primitive_element(self):
        """The canonical generator of the multiplicative group"""

    @abstractmethod
    def basis(self) -> List:
        """The canonical F_p-basis"""

    def mult_order(self, a) -> int:
        if self.is_zero(a):
            raise NotAUnitOfFiniteOrder("zero has no multiplicative order")
        order = self.size - 1
        for prime, exponent in factorint(order).items():
            for _ in range(exponent):
                if self.power(a, order // prime) == self.one:
                    order //= prime
                else:
                    break
        return order

    def primitive_nth_root(self, n: int):
        if (self.size - 1) % n:
            raise MissingRoots(f"F_{self.size} has no primitive {n}-th root of unity")
        return self.power(self.primitive_element(), (self.size - 1) // n)

    def scale(self, c: int, a):
        return self.mul(self.from_int(c), a)


class PrimeField(FiniteFieldBase):
    kind = "PrimeField"

    def __init__(self, p: int):
        self.p = p
        self.k = 1
        self._generator = int(primitive_root(p)) if p > 2 else 1

    @property
    def key(self) -> tuple:
        return (self.kind, self.p)

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def power(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        return pow(a, e, self.p)

    def from_int(self, n: int):
        return n % self.p

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def basis(self) -> List[int]:
        return [1]

    def primitive_element(self):
        return self._generator

    def to_json(self, a) -> int:
        return a

    def from_json(self, obj):
        if isinstance(obj, list):
            if len(obj) > 1 and any(obj[1:]):
                raise InvalidDescriptor(f"{obj} is not an element of F_{self.p}")
            obj = obj[0] if obj else 0
        if isinstance(obj, bool) or not isinstance(obj, int):
            raise InvalidDescriptor(f"{obj!r} is not an element of F_{self.p}")
        return obj % self.p

    def description(self) -> dict:
        return {"kind": self.kind, "p": self.p, "k": 1}


class ExtField(FiniteFieldBase):
    """
    F_{p^k} = F_p[x]/(modulus), elements are coefficient tuples (c_0, ..., c_{k-1}).

    Multiplication goes through exp/log tables of the canonical primitive element when the
    field is small enough, and through sympy's galoistools otherwise.
    """

    kind = "ExtField"

    def __init__(self, p: int, k: int, modulus: IntPoly, table_limit: int = 65536):
        if modulus.degree != k or not modulus.is_monic():
            raise InvalidDescriptor(f"modulus {modulus} is not monic of degree {k}")
        self.p = p
        self.k = k
        self.modulus = modulus
        self._gf_modulus = ZZ.map([c % p for c in modulus.high_to_low()])
        self._zero = (0,) * k
        self._one = (1,) + (0,) * (k - 1)
        self._exp: Optional[List[tuple]] = None
        self._log: Optional[dict] = None
        self._generator = self._find_primitive_element()
        if self.size <= table_limit:
            self._build_tables()

    @property
    def key(self) -> tuple:
        return (self.kind, self.p, self.k, self.modulus.coefficients)

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def _to_gf(self, a) -> list:
        return gf_strip(ZZ.map(list(reversed(a))))

    def _from_gf(self, f) -> tuple:
        coeffs = [int(c) % self.p for c in reversed(f)]
        return tuple(coeffs + [0] * (self.k - len(coeffs)))

    def _gf_mul(self, a, b):
        product_ = gf_mul(self._to_gf(a), self._to_gf(b), self.p, ZZ)
        return self._from_gf(gf_rem(product_, self._gf_modulus, self.p, ZZ))

    def _gf_pow(self, a, e: int):
        return self._from_gf(gf_pow_mod(self._to_gf(a), e, self._gf_modulus, self.p, ZZ))

    def _find_primitive_element(self):
        order = self.size - 1
        primes = list(factorint(order))
        for candidate in self.elements():
            if candidate == self._zero:
                continue
            if all(self._gf_pow(candidate, order // prime) != self._one for prime in primes):
                return candidate
        raise InvalidDescriptor(f"modulus {self.modulus} is not irreducible over F_{self.p}")

    def _build_tables(self):
        order = self.size - 1
        exp, log = [], {}
        current = self._one
        for i in range(order):
            if current in log:
                raise InvalidDescriptor(f"modulus {self.modulus} is not irreducible")
            exp.append(current)
            log[current] = i
            current = self._gf_mul(current, self._generator)
        self._exp, self._log = exp, log
        logger.debug(f"built log tables for F_{self.p}^{self.k}")

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        if a == self._zero or b == self._zero:
            return self._zero
        if self._log is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.size - 1)]
        return self._gf_mul(a, b)

    def inv(self, a):
        if a == self._zero:
            raise ZeroDivisionError("inverse of zero")
        if self._log is not None:
            return self._exp[(-self._log[a]) % (self.size - 1)]
        s, _, _ = gf_gcdex(self._to_gf(a), self._gf_modulus, self.p, ZZ)
        return self._from_gf(s)

    def power(self, a, e: int):
        if a == self._zero:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return self._one if e == 0 else self._zero
        if self._log is not None:
            return self._exp[(self._log[a] * e) % (self.size - 1)]
        if e < 0:
            a, e = self.inv(a), -e
        return self._gf_pow(a, e)

    def mult_order(self, a) -> int:
        if self._log is not None and a != self._zero:
            order = self.size - 1
            return order // gcd(self._log[a], order)
        return super().mult_order(a)

    def from_int(self, n: int):
        return (n % self.p,) + (0,) * (self.k - 1)

    def elements(self) -> Iterator[tuple]:
        return product(range(self.p), repeat=self.k)

    def basis(self) -> List[tuple]:
        return [tuple(1 if i == j else 0 for i in range(self.k)) for j in range(self.k)]

    def primitive_element(self):
        return self._generator

    def to_json(self, a) -> List[int]:
        return list(a)

    def from_json(self, obj):
        if isinstance(obj, bool):
            raise InvalidDescriptor(f"{obj!r} is not an element of F_{self.size}")
        if isinstance(obj, int):
            return self.from_int(obj)
        if not isinstance(obj, list) or len(obj) > self.k:
            raise InvalidDescriptor(f"{obj!r} is not an element of F_{self.size}")
        coeffs = [int(c) % self.p for c in obj]
        return tuple(coeffs + [0] * (self.k - len(coeffs)))

    def description(self) -> dict:
        return {
            "kind": self.kind,
            "p": self.p,
            "k": self.k,
            "modulus": list(self.modulus.coefficients),
        }


def _rational_to_json(numerator: int, denominator: int):
    if denominator == 1:
        return numerator
    return f"{numerator}/{denominator}"


def _rational_from_json(obj) -> Fraction:
    if isinstance(obj, bool):
        raise InvalidDescriptor(f"{obj!r} is not a rational number")
    if isinstance(obj, (int, str)):
        try:
            return Fraction(obj)
        except ValueError as e:
            raise InvalidDescriptor(f"{obj!r} is not a rational number") from e
    raise InvalidDescriptor(f"{obj!r} is not a rational number")


class Rationals(ConcreteField):
    kind = "Rationals"
    characteristic = 0
    degree = 1

    @property
    def key(self) -> tuple:
        return (self.kind,)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def from_int(self, n: int):
        return Fraction(n)

    def mult_order(self, a) -> int:
        if a == 1:
            return 1
        if a == -1:
            return 2
        raise NotAUnitOfFiniteOrder(f"{a} is not a root of unity")

    def primitive_nth_root(self, n: int):
        if n == 1:
            return Fraction(1)
        if n == 2:
            return Fraction(-1)
        raise MissingRoots(f"Q has no primitive {n}-th root of unity")

    def to_json(self, a):
        return _rational_to_json(a.numerator, a.denominator)

    def from_json(self, obj):
        if isinstance(obj, list):
            if len(obj) > 1 and any(_rational_from_json(c) for c in obj[1:]):
                raise InvalidDescriptor(f"{obj} is not a rational number")
            obj = obj[0] if obj else 0
        return _rational_from_json(obj)

    def description(self) -> dict:
        return {"kind": self.kind, "p": 0, "k": 1}

    def __repr__(self) -> str:
        return "Q"


class NumberField(ConcreteField):
    """
    Q[x]/(minpoly) with exact rational coefficients.

    Values are tuples of sympy QQ elements, low-to-high. The roots of unity are recognised
    when the minpoly is a cyclotomic polynomial; x is remembered as eta_m when the minpoly is
    the minimal polynomial of 2cos(2pi/m).
    """

    kind = "NumberField"
    characteristic = 0

    def __init__(self, minpoly: IntPoly):
        from app.services.polynomial_service import cyclotomic_poly, eta_min_poly

        if not minpoly.is_monic() or minpoly.degree < 1:
            raise InvalidDescriptor(f"minpoly {minpoly} must be monic of positive degree")
        if not minpoly.to_sympy().is_irreducible:
            raise InvalidDescriptor(f"minpoly {minpoly} is reducible over Q")
        self.minpoly = minpoly
        self.degree = minpoly.degree
        self._modulus = [QQ(c) for c in minpoly.high_to_low()]
        d = self.degree
        self._zero = tuple(QQ(0) for _ in range(d))
        self._one = (QQ(1),) + tuple(QQ(0) for _ in range(d - 1))
        x = self._generator_value()

        # roots of unity: +-1 unless the field is cyclotomic
        self.unity_order = 2
        self._unity_generator = self.neg(self._one)
        self.eta_index: Optional[int] = None
        for m in range(3, 2 * d * d + 3):
            if totient(m) == d and cyclotomic_poly(m) == minpoly:
                self.unity_order = reduced_cyclotomic_index(m)
                self._unity_generator = x if m % 2 == 0 else self.neg(x)
                break
        for m in range(3, 8 * d * d + 3):
            if totient(m) == 2 * d and eta_min_poly(m) == minpoly:
                self.eta_index = m
                break

    def _generator_value(self):
        if self.degree == 1:
            return (QQ(-self.minpoly.coefficients[0]),)
        return (QQ(0), QQ(1)) + tuple(QQ(0) for _ in range(self.degree - 2))

    @property
    def generator(self):
        """The class of x"""
        return self._generator_value()

    @property
    def key(self) -> tuple:
        return (self.kind, self.minpoly.coefficients)

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def _to_dup(self, a) -> list:
        return dup_strip(list(reversed(a)))

    def _from_dup(self, f) -> tuple:
        coeffs = list(reversed(f))
        return tuple(coeffs + [QQ(0)] * (self.degree - len(coeffs)))

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        product_ = dup_mul(self._to_dup(a), self._to_dup(b), QQ)
        return self._from_dup(dup_rem(product_, self._modulus, QQ))

    def inv(self, a):
        if a == self._zero:
            raise ZeroDivisionError("inverse of zero")
        if self.degree == 1:
            return (QQ(1) / a[0],)
        return self._from_dup(dup_invert(self._to_dup(a), self._modulus, QQ))

    def from_int(self, n: int):
        return (QQ(n),) + tuple(QQ(0) for _ in range(self.degree - 1))

    def mult_order(self, a) -> int:
        if a == self._zero:
            raise NotAUnitOfFiniteOrder("zero has no multiplicative order")
        cap = max(2, 2 * self.degree**2)
        current = a
        for k in range(1, cap + 1):
            if current == self._one:
                return k
            current = self.mul(current, a)
        raise NotAUnitOfFiniteOrder(f"{self.to_json(a)} has no finite order up to {cap}")

    def primitive_nth_root(self, n: int):
        if self.unity_order % n:
            raise MissingRoots(f"{self!r} has no primitive {n}-th root of unity")
        return self.power(self._unity_generator, self.unity_order // n)

    def to_json(self, a) -> list:
        return [_rational_to_json(int(c.numerator), int(c.denominator)) for c in a]

    def from_json(self, obj):
        if not isinstance(obj, list):
            value = _rational_from_json(obj)
            obj = [value.numerator if value.denominator == 1 else str(value)]
        if len(obj) > self.degree:
            raise InvalidDescriptor(f"{obj!r} has more than {self.degree} coefficients")
        coeffs = []
        for c in obj:
            value = _rational_from_json(c)
            coeffs.append(QQ(value.numerator, value.denominator))
        return tuple(coeffs + [QQ(0)] * (self.degree - len(coeffs)))

    def description(self) -> dict:
        return {
            "kind": self.kind,
            "p": 0,
            "k": self.degree,
            "minpoly": list(self.minpoly.coefficients),
        }

    def __repr__(self) -> str:
        return f"Q[x]/({self.minpoly})"


def field_from_description(data: dict, table_limit: int = 65536) -> ConcreteField:
    from app.services.polynomial_service import is_irreducible_mod_p

    kind = data.get("kind")
    if kind == PrimeField.kind:
        return PrimeField(int(data["p"]))
    if kind == ExtField.kind:
        p, k = int(data["p"]), int(data["k"])
        modulus = IntPoly(data["modulus"])
        if not is_irreducible_mod_p(modulus, p):
            raise InvalidDescriptor(f"modulus {modulus} is reducible over F_{p}")
        return ExtField(p, k, modulus, table_limit=table_limit)
    if kind == Rationals.kind:
        return Rationals()
    if kind == NumberField.kind:
        return NumberField(IntPoly(data["minpoly"]))
    raise InvalidDescriptor(f"unknown realization kind {kind!r}")
