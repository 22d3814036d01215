import pytest

from app.models.errors import InvalidDescriptor, NonPrimePower
from app.services.embedding_service import (
    find_elementary_abelian_embedding,
    lift_to_gl2,
    p_subgroups_of_pgl2,
)
from app.services.field_service import finite_field
from app.services.group_service import close_generated_projective, pgl2_group
from app.utils.arithmetic import prime_power

PRIME_POWERS_TO_64 = [q for q in range(2, 65) if prime_power(q)]


class TestElementaryAbelianEmbedding:
    def test_klein_four_in_pgl2_f4(self) -> None:
        gens = find_elementary_abelian_embedding(2, 2, 4)
        assert gens is not None and len(gens) == 2
        image = close_generated_projective(gens)
        assert image.order == 4
        assert image.exponent() == 2

    def test_klein_four_does_not_fit_in_pgl2_f2(self) -> None:
        assert find_elementary_abelian_embedding(2, 2, 2) is None

    def test_characteristic_mismatch(self) -> None:
        with pytest.raises(InvalidDescriptor):
            find_elementary_abelian_embedding(3, 1, 4)

    def test_not_a_prime_power(self) -> None:
        with pytest.raises(NonPrimePower):
            find_elementary_abelian_embedding(2, 1, 12)

    @pytest.mark.parametrize("q", PRIME_POWERS_TO_64)
    def test_embeds_iff_p_r_divides_q(self, q: int) -> None:
        p, _ = prime_power(q)
        r = 1
        while p**r <= 16:
            gens = find_elementary_abelian_embedding(p, r, q)
            assert (gens is not None) == (q % p**r == 0)
            r += 1


class TestLiftToGL2:
    @pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
    def test_every_p_subgroup_lifts(self, q: int) -> None:
        group = pgl2_group(finite_field(*prime_power(q)))
        subgroups = p_subgroups_of_pgl2(q)
        assert subgroups
        for subgroup in subgroups:
            lifted = lift_to_gl2(group, subgroup)
            assert lifted is not None
            assert lifted.order == len(subgroup)

    @pytest.mark.slow
    @pytest.mark.parametrize("q", [8, 9, 16])
    def test_every_p_subgroup_lifts_for_larger_q(self, q: int) -> None:
        group = pgl2_group(finite_field(*prime_power(q)))
        for subgroup in p_subgroups_of_pgl2(q):
            assert lift_to_gl2(group, subgroup).order == len(subgroup)

    def test_p_subgroups_of_pgl2_f4(self) -> None:
        sizes = sorted(len(s) for s in p_subgroups_of_pgl2(4))
        # PGL2(F_4) is A5
        assert sizes.count(2) == 15
        assert sizes.count(4) == 5
        assert max(sizes) == 4
