from enum import Enum
from typing import List, Tuple

from app.models.base import BaseSchema, FrozenSchema


class DicksonKind(str, Enum):
    cyclic = "CyclicT"
    binary_dihedral = "BinaryDihedralT"
    binary_tetrahedral = "BinaryTetrahedralT"
    binary_octahedral = "BinaryOctahedralT"
    binary_icosahedral = "BinaryIcosahedralT"
    gnpr = "GnprT"
    dihedral_odd_char2 = "DihedralOddChar2T"
    sl2 = "SL2T"
    sl2_ext = "SL2ExtT"
    sl2f5_char3 = "SL2F5Char3T"


# the families of finite subgroups of SL2 in characteristic 0
KLEIN_KINDS = (
    DicksonKind.cyclic,
    DicksonKind.binary_dihedral,
    DicksonKind.binary_tetrahedral,
    DicksonKind.binary_octahedral,
    DicksonKind.binary_icosahedral,
)


class DicksonType(FrozenSchema):
    kind: DicksonKind
    params: Tuple[int, ...] = ()

    @classmethod
    def of(cls, kind: DicksonKind, *params: int) -> "DicksonType":
        return cls(kind=kind, params=tuple(params))

    def expected_order(self, p: int) -> int:
        kind, params = self.kind, self.params
        if kind == DicksonKind.cyclic:
            return params[0]
        if kind == DicksonKind.binary_dihedral:
            return 4 * params[0]
        if kind == DicksonKind.binary_tetrahedral:
            return 24
        if kind == DicksonKind.binary_octahedral:
            return 48
        if kind in (DicksonKind.binary_icosahedral, DicksonKind.sl2f5_char3):
            return 120
        if kind == DicksonKind.gnpr:
            n, r = params
            return n * p**r
        if kind == DicksonKind.dihedral_odd_char2:
            return 2 * params[0]
        q = params[0]
        order = q * (q * q - 1)
        return 2 * order if kind == DicksonKind.sl2_ext else order

    def __str__(self) -> str:
        if not self.params:
            return self.kind.value
        return f"{self.kind.value}({','.join(str(v) for v in self.params)})"


class AtlasClass(BaseSchema):
    order: int
    type: str
    generators: List[List]
    conjugates: int
    notes: List[str] = []


class Atlas(BaseSchema):
    """Conjugacy classes of subgroups of SL2(F_q), smallest first"""

    q: int
    p: int
    total_subgroups: int
    oracle_count: int
    classes: List[AtlasClass]
