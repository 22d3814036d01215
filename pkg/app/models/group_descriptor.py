from enum import Enum
from math import factorial
from typing import Tuple

from pydantic import root_validator
from sympy import isprime

from app.models.base import FrozenSchema
from app.models.errors import InvalidDescriptor, InvalidGnprParams
from app.utils.arithmetic import gnpr_degree_s, prime_power


class GroupFamily(str, Enum):
    trivial = "Trivial"
    cyclic = "Cyclic"
    dihedral = "Dihedral"
    binary_dihedral = "BinaryDihedral"
    gnpr = "Gnpr"
    sl2 = "SL2"
    elem_abelian = "ElemAbelian"
    alt = "Alt"
    sym = "Sym"


ARITY = {
    GroupFamily.trivial: 0,
    GroupFamily.cyclic: 1,
    GroupFamily.dihedral: 1,
    GroupFamily.binary_dihedral: 1,
    GroupFamily.gnpr: 3,
    GroupFamily.sl2: 1,
    GroupFamily.elem_abelian: 2,
    GroupFamily.alt: 1,
    GroupFamily.sym: 1,
}

SPEC_TAGS = {
    GroupFamily.cyclic: "C",
    GroupFamily.dihedral: "D",
    GroupFamily.binary_dihedral: "BD",
    GroupFamily.gnpr: "G",
    GroupFamily.sl2: "SL2",
    GroupFamily.elem_abelian: "EA",
    GroupFamily.alt: "A",
    GroupFamily.sym: "S",
}

ALT_DEGREES = (3, 4, 5)
SYM_DEGREES = (3, 4)


class GroupDescriptor(FrozenSchema):
    """
    Name of a group from the supported catalog.

    Parameters are positional per family: (n,) for Cyclic, Dihedral and BinaryDihedral,
    (n, p, r) for Gnpr, (q,) for SL2, (p, r) for ElemAbelian and (degree,) for Alt and Sym.
    The validator only checks arity and positivity; family-specific conditions such as
    p not dividing n for Gnpr are checked by `validate_parameters()`, so the parser can hand a
    well-formed but invalid descriptor to the constructors that report on it.
    """

    family: GroupFamily
    params: Tuple[int, ...] = ()

    @root_validator(skip_on_failure=True)
    def check_arity(cls, values):
        family, params = values["family"], values["params"]
        if len(params) != ARITY[family]:
            raise ValueError(f"{family.value} takes {ARITY[family]} parameters, got {params}")
        if any(v < 1 for v in params):
            raise ValueError(f"{family.value} parameters must be positive, got {params}")
        return values

    @classmethod
    def trivial(cls) -> "GroupDescriptor":
        return cls(family=GroupFamily.trivial)

    @classmethod
    def cyclic(cls, n: int) -> "GroupDescriptor":
        return cls(family=GroupFamily.cyclic, params=(n,))

    @classmethod
    def dihedral(cls, n: int) -> "GroupDescriptor":
        return cls(family=GroupFamily.dihedral, params=(n,))

    @classmethod
    def binary_dihedral(cls, n: int) -> "GroupDescriptor":
        return cls(family=GroupFamily.binary_dihedral, params=(n,))

    @classmethod
    def gnpr(cls, n: int, p: int, r: int) -> "GroupDescriptor":
        return cls(family=GroupFamily.gnpr, params=(n, p, r))

    @classmethod
    def sl2(cls, q: int) -> "GroupDescriptor":
        return cls(family=GroupFamily.sl2, params=(q,))

    @classmethod
    def elem_abelian(cls, p: int, r: int) -> "GroupDescriptor":
        return cls(family=GroupFamily.elem_abelian, params=(p, r))

    @classmethod
    def alt(cls, degree: int) -> "GroupDescriptor":
        return cls(family=GroupFamily.alt, params=(degree,))

    @classmethod
    def sym(cls, degree: int) -> "GroupDescriptor":
        return cls(family=GroupFamily.sym, params=(degree,))

    def validate_parameters(self) -> None:
        family, params = self.family, self.params
        if family == GroupFamily.gnpr:
            n, p, r = params
            if not isprime(p):
                raise InvalidGnprParams(f"G({n},{p}^{r}): {p} is not prime")
            if n % p == 0:
                raise InvalidGnprParams(f"G({n},{p}^{r}): p divides n")
            s = gnpr_degree_s(n, p)
            if r % s:
                raise InvalidGnprParams(f"G({n},{p}^{r}): s = {s} does not divide r")
        elif family == GroupFamily.sl2:
            if prime_power(params[0]) is None:
                raise InvalidDescriptor(f"SL2({params[0]}): {params[0]} is not a prime power")
        elif family == GroupFamily.elem_abelian:
            if not isprime(params[0]):
                raise InvalidDescriptor(f"(Z/{params[0]}Z)^{params[1]}: {params[0]} is not prime")
        elif family == GroupFamily.alt and params[0] not in ALT_DEGREES:
            raise InvalidDescriptor(f"A{params[0]} is outside the catalog (A3, A4, A5)")
        elif family == GroupFamily.sym and params[0] not in SYM_DEGREES:
            raise InvalidDescriptor(f"S{params[0]} is outside the catalog (S3, S4)")

    def order(self) -> int:
        family, params = self.family, self.params
        if family == GroupFamily.trivial:
            return 1
        if family == GroupFamily.cyclic:
            return params[0]
        if family == GroupFamily.dihedral:
            return 2 * params[0]
        if family == GroupFamily.binary_dihedral:
            return 4 * params[0]
        if family == GroupFamily.gnpr:
            n, p, r = params
            return n * p**r
        if family == GroupFamily.sl2:
            q = params[0]
            return q * (q * q - 1)
        if family == GroupFamily.elem_abelian:
            p, r = params
            return p**r
        size = factorial(params[0])
        return size // 2 if family == GroupFamily.alt else size

    def display_name(self) -> str:
        family, params = self.family, self.params
        if family == GroupFamily.trivial:
            return "1"
        if family == GroupFamily.gnpr:
            n, p, r = params
            return f"G({n},{p}^{r})"
        if family == GroupFamily.sl2:
            return f"SL2(F_{params[0]})"
        if family == GroupFamily.elem_abelian:
            p, r = params
            return f"(Z/{p}Z)^{r}"
        prefix = {
            GroupFamily.cyclic: "C",
            GroupFamily.dihedral: "D",
            GroupFamily.binary_dihedral: "BD",
            GroupFamily.alt: "A",
            GroupFamily.sym: "S",
        }[family]
        return f"{prefix}{params[0]}"

    def __str__(self) -> str:
        """The group spec string this descriptor parses from"""
        if self.family == GroupFamily.trivial:
            return "1"
        return f"{SPEC_TAGS[self.family]}:{','.join(str(v) for v in self.params)}"
