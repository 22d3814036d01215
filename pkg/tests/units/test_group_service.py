import pytest

from app.config.settings import get_settings
from app.models.errors import CapExceeded, InvalidDescriptor, InvalidGnprParams, MissingRoots
from app.models.group_descriptor import GroupDescriptor
from app.models.mat2 import Mat2
from app.services.field_service import finite_field, rationals
from app.services.group_service import (
    action_is_faithful,
    close_generated,
    close_generated_projective,
    make_abstract,
    make_binary_dihedral,
    make_binary_octahedral,
    make_sl2,
    make_sl2_ext,
    pgl2_group,
)

DESCRIPTORS = [
    GroupDescriptor.trivial(),
    GroupDescriptor.cyclic(6),
    GroupDescriptor.dihedral(1),
    GroupDescriptor.dihedral(5),
    GroupDescriptor.binary_dihedral(3),
    GroupDescriptor.gnpr(3, 2, 2),
    GroupDescriptor.gnpr(4, 5, 1),
    GroupDescriptor.sl2(3),
    GroupDescriptor.elem_abelian(3, 2),
    GroupDescriptor.alt(4),
    GroupDescriptor.alt(5),
    GroupDescriptor.sym(4),
]


class TestCloseGenerated:
    def test_single_unipotent_over_f2(self) -> None:
        f2 = finite_field(2)
        assert close_generated([Mat2.from_ints(f2, (1, 1, 0, 1))]).order == 2

    def test_two_unipotents_give_sl2_f2(self) -> None:
        f2 = finite_field(2)
        gens = [Mat2.from_ints(f2, (1, 1, 0, 1)), Mat2.from_ints(f2, (1, 0, 1, 1))]
        assert close_generated(gens).order == 6

    def test_cap(self) -> None:
        f2 = finite_field(2)
        with pytest.raises(CapExceeded):
            close_generated([Mat2.from_ints(f2, (1, 1, 0, 1))], cap=1)

    def test_infinite_order_generator_hits_cap(self) -> None:
        with pytest.raises(CapExceeded):
            close_generated([Mat2.from_ints(rationals(), (1, 1, 0, 1))], cap=100)

    def test_empty_generators_need_a_field(self) -> None:
        with pytest.raises(ValueError):
            close_generated([])
        assert close_generated([], field=finite_field(3)).order == 1

    def test_closure_satisfies_the_group_axioms(self) -> None:
        assert make_sl2(3).check_axioms()
        assert make_binary_octahedral().check_axioms()


class TestMakeAbstract:
    @pytest.mark.parametrize("descriptor", DESCRIPTORS, ids=str)
    def test_advertised_order(self, descriptor: GroupDescriptor) -> None:
        group = make_abstract(descriptor)
        assert group.order == descriptor.order()
        assert group.check_axioms()

    def test_commutativity(self) -> None:
        assert make_abstract(GroupDescriptor.cyclic(6)).is_abelian()
        assert not make_abstract(GroupDescriptor.dihedral(3)).is_abelian()
        assert make_abstract(GroupDescriptor.dihedral(1)).is_abelian()

    def test_binary_dihedral_has_one_involution(self) -> None:
        group = make_abstract(GroupDescriptor.binary_dihedral(2))
        assert sum(1 for x in range(group.order) if group.element_order(x) == 2) == 1

    def test_invalid_gnpr(self) -> None:
        with pytest.raises(InvalidGnprParams):
            make_abstract(GroupDescriptor.gnpr(3, 2, 3))
        with pytest.raises(InvalidGnprParams):
            make_abstract(GroupDescriptor.gnpr(6, 3, 1))

    def test_invalid_alt_degree(self) -> None:
        with pytest.raises(InvalidDescriptor):
            make_abstract(GroupDescriptor.alt(6))


class TestMakeBinaryDihedral:
    def test_quaternion_over_f9(self) -> None:
        group = make_binary_dihedral(2, finite_field(3, 2))
        assert group.order == 8
        assert sum(1 for x in range(group.order) if group.element_order(x) == 2) == 1

    def test_n_1_over_f5_is_cyclic_of_order_4(self) -> None:
        group = make_binary_dihedral(1, finite_field(5))
        assert group.order == 4
        assert group.exponent() == 4

    def test_presentation_over_f13(self) -> None:
        group = make_binary_dihedral(3, finite_field(13))
        sigma, tau = group.generators
        assert group.order == 12
        assert group.power(sigma, 3) == group.power(tau, 2)
        assert group.conjugate(group.inv(tau), sigma) == group.inv(sigma)

    def test_missing_roots(self) -> None:
        with pytest.raises(MissingRoots):
            make_binary_dihedral(2, finite_field(7))
        with pytest.raises(MissingRoots):
            make_binary_dihedral(3, finite_field(3, 2))


class TestSL2:
    @pytest.mark.parametrize("q,order", [(2, 6), (3, 24), (4, 60), (5, 120)])
    def test_census(self, q: int, order: int) -> None:
        group = make_sl2(q)
        assert group.order == order
        assert len(close_generated(group.generator_matrices).elements) == order

    def test_cap(self, monkeypatch) -> None:
        monkeypatch.setenv("EDONE_CLOSURE_CAP", "100")
        get_settings.cache_clear()
        with pytest.raises(CapExceeded):
            make_sl2(5)

    def test_binary_octahedral(self) -> None:
        group = make_binary_octahedral()
        assert group.order == 48
        assert len(group.center()) == 2

    def test_extension_of_sl2_f3(self) -> None:
        group = make_sl2_ext(3)
        assert group.order == 48
        assert group.field.size == 9
        assert all(m.determinant() == 1 for m in group.matrices)

    def test_extension_needs_odd_q(self) -> None:
        with pytest.raises(InvalidDescriptor):
            make_sl2_ext(4)


class TestFaithfulness:
    def test_sl2_f4_acts_faithfully(self) -> None:
        assert action_is_faithful(make_sl2(4))

    def test_minus_identity_is_in_the_kernel(self) -> None:
        assert not action_is_faithful(make_sl2(3))

    def test_trivial_group(self) -> None:
        assert action_is_faithful(close_generated([], field=finite_field(5)))


class TestProjective:
    @pytest.mark.parametrize("q", [2, 3, 4])
    def test_pgl2_order(self, q: int) -> None:
        field = finite_field(*{2: (2, 1), 3: (3, 1), 4: (2, 2)}[q])
        assert pgl2_group(field).order == q**3 - q

    def test_image_of_sl2_f3_in_pgl2(self) -> None:
        assert close_generated_projective(make_sl2(3).generator_matrices).order == 12
