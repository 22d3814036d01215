from math import gcd

import pytest

from app.models.errors import NotFiniteField, OrderExceedsCap, SingularMatrix
from app.models.mat2 import Mat2, PglElem, ProjPoint
from app.services.field_service import embed, eta_field, finite_field, rationals
from app.services.group_service import make_sl2
from app.services.matrix_service import (
    acts_trivially,
    enumerate_pgl2,
    enumerate_sl2,
    moebius_apply,
    moebius_formula,
    pgl_order,
    projective_line,
    projective_trace_invariant,
)
from app.utils.arithmetic import prime_power

SWEEP_Q = [2, 3, 4, 5, 7, 8, 9]


class TestMatrixArithmetic:
    def test_identity_squared(self) -> None:
        identity = Mat2.identity(rationals())
        assert identity * identity == identity

    def test_determinant(self) -> None:
        m = Mat2.from_ints(rationals(), (0, -1, 1, -1))
        assert m.determinant() == 1

    def test_unipotent_power(self) -> None:
        f5 = finite_field(5)
        assert (Mat2.from_ints(f5, (1, 1, 0, 1)) ** 5).is_identity()

    def test_inverse(self) -> None:
        f7 = finite_field(7)
        m = Mat2.from_ints(f7, (2, 3, 1, 4))
        assert (m * m.inverse()).is_identity()
        assert (m**-1) == m.inverse()

    def test_singular_inverse(self) -> None:
        with pytest.raises(SingularMatrix):
            Mat2.from_ints(rationals(), (1, 2, 2, 4)).inverse()

    def test_is_scalar(self) -> None:
        f5 = finite_field(5)
        assert Mat2.identity(f5).is_scalar()
        assert not Mat2.from_ints(f5, (1, 1, 0, 1)).is_scalar()
        assert Mat2.from_ints(f5, (2, 0, 0, 2)).is_scalar()

    def test_projective_equality_is_scalar_equivalence(self) -> None:
        f7 = finite_field(7)
        m = Mat2.from_ints(f7, (2, 3, 1, 4))
        assert PglElem(m) == PglElem(m.scale(f7.from_int(3)))
        assert PglElem(m) != PglElem(Mat2.from_ints(f7, (2, 3, 1, 5)))


class TestPglOrder:
    def test_examples(self) -> None:
        assert pgl_order(Mat2.identity(rationals())) == 1
        assert pgl_order(Mat2.from_ints(finite_field(5), (1, 1, 0, 1))) == 5
        assert pgl_order(Mat2.from_ints(rationals(), (0, -1, 1, -1))) == 3

    def test_rotation_over_eta_5(self) -> None:
        field = eta_field(5)
        m = Mat2(field, (field.zero, field.from_int(-1), field.one, field.generator))
        assert pgl_order(m) == 5

    def test_unipotent_over_q_exceeds_cap(self) -> None:
        with pytest.raises(OrderExceedsCap):
            pgl_order(Mat2.from_ints(rationals(), (1, 1, 0, 1)), cap=50)

    def test_invariant_under_scaling_and_conjugation(self) -> None:
        f7 = finite_field(7)
        m = Mat2.from_ints(f7, (0, -1, 1, 3))
        g = Mat2.from_ints(f7, (1, 2, 3, 5))
        order = pgl_order(m)
        assert pgl_order(m.scale(f7.from_int(5))) == order
        assert pgl_order(g * m * g.inverse()) == order

    def test_singular(self) -> None:
        with pytest.raises(SingularMatrix):
            pgl_order(Mat2.from_ints(finite_field(3), (1, 1, 1, 1)))


class TestProjectiveTraceInvariant:
    def test_examples(self) -> None:
        f5 = finite_field(5)
        assert projective_trace_invariant(Mat2.identity(f5)) == 4
        assert projective_trace_invariant(Mat2.from_ints(rationals(), (0, -1, 1, -1))) == 1
        assert projective_trace_invariant(Mat2.from_ints(f5, (0, 1, 1, 0))) == 0


class TestPglSweeps:
    @pytest.mark.parametrize("q", SWEEP_Q)
    def test_orders_are_coprime_to_p_or_equal_p(self, q: int) -> None:
        p, _ = prime_power(q)
        for element in enumerate_pgl2(finite_field(*prime_power(q))):
            n = pgl_order(element)
            assert n % p != 0 or n == p

    @pytest.mark.parametrize("q", SWEEP_Q)
    def test_trace_invariant_is_eta_plus_two(self, q: int) -> None:
        p, k = prime_power(q)
        field = finite_field(p, k)
        splitting = finite_field(p, 2 * k)
        etas = {}
        for element in enumerate_pgl2(field):
            n = pgl_order(element)
            if n % p == 0:
                continue
            if n not in etas:
                zeta = splitting.element(splitting.primitive_nth_root(n))
                etas[n] = {(zeta**a + zeta ** (-a)).value for a in range(n) if gcd(a, n) == 1}
            shifted = projective_trace_invariant(element) - 2
            assert embed(shifted, splitting).value in etas[n]

    @pytest.mark.parametrize("q", [2, 3, 4, 5])
    def test_enumeration_sizes(self, q: int) -> None:
        field = finite_field(*prime_power(q))
        assert len(enumerate_pgl2(field)) == q**3 - q
        assert len(set(enumerate_pgl2(field))) == q**3 - q
        sl2 = enumerate_sl2(field)
        assert len(set(sl2)) == q * (q * q - 1)
        assert all(m.determinant() == 1 for m in sl2)


class TestMoebiusAction:
    def test_examples(self) -> None:
        f5 = finite_field(5)
        infinity = ProjPoint.infinity(f5)
        assert moebius_apply(Mat2.identity(f5), infinity) == infinity
        assert moebius_apply(Mat2.from_ints(f5, (1, 1, 0, 1)), infinity) == infinity
        image = moebius_apply(Mat2.from_ints(f5, (0, -1, 1, -1)), ProjPoint.affine(f5, 0))
        assert image == ProjPoint.affine(f5, 1)

    def test_is_a_group_action(self) -> None:
        f5 = finite_field(5)
        m = Mat2.from_ints(f5, (2, 1, 1, 1))
        n = Mat2.from_ints(f5, (0, 1, 4, 3))
        for point in projective_line(f5):
            assert moebius_apply(m * n, point) == moebius_apply(m, moebius_apply(n, point))
            assert moebius_apply(Mat2.identity(f5), point) == point

    def test_projective_line(self) -> None:
        points = projective_line(finite_field(2, 2))
        assert len(points) == 5
        assert len(set(points)) == 5
        with pytest.raises(NotFiniteField):
            projective_line(rationals())

    @pytest.mark.parametrize("q", [3, 4, 5])
    def test_trivial_action_kernel_is_the_scalars(self, q: int) -> None:
        group = make_sl2(q)
        points = projective_line(group.field)
        kernel = [m for m in group.matrices if acts_trivially(m, points)]
        assert kernel == group.scalar_members()

    def test_formula(self) -> None:
        m = Mat2.from_ints(finite_field(5), (1, 1, 0, 1))
        assert moebius_formula(m) == "t ↦ (1·t + 1)/(0·t + 1)"
