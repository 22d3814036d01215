import pytest

from app.models.errors import CapExceeded
from app.models.group_descriptor import GroupDescriptor
from app.services.field_service import finite_field
from app.services.group_service import (
    cyclic_group,
    dihedral_group,
    elementary_abelian_group,
    make_abstract,
    make_binary_dihedral,
    make_binary_octahedral,
    make_gnpr_abstract,
    make_sl2,
)
from app.services.isomorphism_service import are_isomorphic, find_isomorphism


class TestAreIsomorphic:
    def test_cyclic_of_order_6(self) -> None:
        assert are_isomorphic(cyclic_group(6), make_gnpr_abstract(2, 3, 1))

    def test_sl2_f2_is_s3(self) -> None:
        assert are_isomorphic(dihedral_group(3), make_sl2(2))
        assert are_isomorphic(make_abstract(GroupDescriptor.sym(3)), make_sl2(2))

    def test_exponent_differs(self) -> None:
        assert not are_isomorphic(cyclic_group(4), elementary_abelian_group(2, 2))

    def test_different_orders(self) -> None:
        assert not are_isomorphic(cyclic_group(4), cyclic_group(5))

    def test_quaternion_is_not_dihedral(self) -> None:
        quaternion = make_binary_dihedral(2, finite_field(3, 2))
        assert not are_isomorphic(quaternion, dihedral_group(4))
        assert are_isomorphic(quaternion, make_abstract(GroupDescriptor.binary_dihedral(2)))

    def test_a5_is_sl2_f4(self) -> None:
        assert are_isomorphic(make_abstract(GroupDescriptor.alt(5)), make_sl2(4))

    def test_sl2_f3_is_neither_s4_nor_bd6(self) -> None:
        assert not are_isomorphic(make_sl2(3), make_abstract(GroupDescriptor.sym(4)))
        assert not are_isomorphic(make_sl2(3), make_abstract(GroupDescriptor.binary_dihedral(6)))

    def test_binary_octahedral_is_not_dihedral(self) -> None:
        assert not are_isomorphic(make_binary_octahedral(), dihedral_group(24))

    def test_cap(self) -> None:
        with pytest.raises(CapExceeded):
            are_isomorphic(make_sl2(5), make_sl2(5), cap=100)


class TestFindIsomorphism:
    def test_map_is_a_homomorphism(self) -> None:
        g = make_abstract(GroupDescriptor.alt(4))
        h = make_gnpr_abstract(3, 2, 2)
        mapping = find_isomorphism(g, h)
        assert mapping is not None
        assert sorted(mapping.values()) == list(range(h.order))
        for x in range(g.order):
            for y in range(g.order):
                assert mapping[g.mul(x, y)] == h.mul(mapping[x], mapping[y])

    def test_trivial_groups(self) -> None:
        assert find_isomorphism(cyclic_group(1), cyclic_group(1)) == {0: 0}

    def test_none_when_not_isomorphic(self) -> None:
        assert find_isomorphism(dihedral_group(6), cyclic_group(12)) is None
