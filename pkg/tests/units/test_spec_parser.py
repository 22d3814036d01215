from fractions import Fraction

import pytest

from app.models.errors import InvalidDescriptor, NonPrimePower, ParseError
from app.models.field_spec import FieldKind, FieldSpec
from app.models.group_descriptor import GroupDescriptor, GroupFamily
from app.models.mat2 import Mat2
from app.services.field_service import finite_field, rationals
from app.utils.spec_parser import parse_field_spec, parse_group_spec, parse_matrix_literal

FIELD_SPECS = [
    FieldSpec.rational(),
    FieldSpec.cyclotomic(12),
    FieldSpec.real_cyclotomic(7),
    FieldSpec.finite(2),
    FieldSpec.finite(3, 2),
    FieldSpec.rational_function(5),
    FieldSpec.rational_function(2, 3),
    FieldSpec.closure(0),
    FieldSpec.closure(3),
]

GROUP_DESCRIPTORS = [
    GroupDescriptor.trivial(),
    GroupDescriptor.cyclic(12),
    GroupDescriptor.dihedral(15),
    GroupDescriptor.binary_dihedral(3),
    GroupDescriptor.gnpr(3, 2, 2),
    GroupDescriptor.sl2(8),
    GroupDescriptor.elem_abelian(2, 3),
    GroupDescriptor.alt(5),
    GroupDescriptor.sym(4),
]


class TestParseFieldSpec:
    def test_finite_field(self) -> None:
        assert parse_field_spec("F:9") == FieldSpec.finite(3, 2)

    def test_real_cyclotomic(self) -> None:
        spec = parse_field_spec("Q(eta:7)")
        assert spec.kind == FieldKind.real_cyclotomic
        assert spec.m == 7

    def test_rational_function_field(self) -> None:
        spec = parse_field_spec("F:8(t)")
        assert spec == FieldSpec.rational_function(2, 3)
        assert spec.q == 8

    def test_surrounding_whitespace(self) -> None:
        assert parse_field_spec("  Q ") == FieldSpec.rational()

    def test_not_a_prime_power(self) -> None:
        with pytest.raises(NonPrimePower) as e:
            parse_field_spec("F:12")
        assert e.value.position == 2

    @pytest.mark.parametrize("text", ["", "R", "Q(zeta:)", "Q(zeta:5", "F:", "F:9x", "Qx"])
    def test_malformed(self, text: str) -> None:
        with pytest.raises(ParseError):
            parse_field_spec(text)

    def test_closure_needs_a_prime(self) -> None:
        with pytest.raises(ParseError):
            parse_field_spec("closure:4")

    def test_zero_conductor(self) -> None:
        with pytest.raises(ParseError):
            parse_field_spec("Q(zeta:0)")

    @pytest.mark.parametrize("spec", FIELD_SPECS, ids=str)
    def test_printed_form_parses_back(self, spec: FieldSpec) -> None:
        assert parse_field_spec(str(spec)) == spec


class TestParseGroupSpec:
    def test_gnpr(self) -> None:
        assert parse_group_spec("G:3,2,2") == GroupDescriptor.gnpr(3, 2, 2)

    def test_dihedral(self) -> None:
        descriptor = parse_group_spec("D:15")
        assert descriptor.family == GroupFamily.dihedral
        assert descriptor.params == (15,)

    def test_alternating(self) -> None:
        assert parse_group_spec("A:5") == GroupDescriptor.alt(5)

    def test_trivial(self) -> None:
        assert parse_group_spec("1") == GroupDescriptor.trivial()

    def test_validity_is_deferred(self) -> None:
        descriptor = parse_group_spec("G:3,2,3")
        assert descriptor.order() == 24
        with pytest.raises(InvalidDescriptor):
            descriptor.validate_parameters()

    def test_unknown_tag(self) -> None:
        with pytest.raises(ParseError) as e:
            parse_group_spec("X:3")
        assert "unknown group tag" in str(e.value)

    def test_wrong_arity(self) -> None:
        with pytest.raises(ParseError):
            parse_group_spec("G:3,2")

    @pytest.mark.parametrize("text", ["", "C", "C:", "C:3,", "C:-3", "C:3x", "11"])
    def test_malformed(self, text: str) -> None:
        with pytest.raises(ParseError):
            parse_group_spec(text)

    def test_zero_parameter(self) -> None:
        with pytest.raises(InvalidDescriptor):
            parse_group_spec("C:0")

    @pytest.mark.parametrize("descriptor", GROUP_DESCRIPTORS, ids=str)
    def test_printed_form_parses_back(self, descriptor: GroupDescriptor) -> None:
        assert parse_group_spec(str(descriptor)) == descriptor


class TestParseMatrixLiteral:
    def test_integers_over_a_prime_field(self) -> None:
        field = finite_field(5)
        assert parse_matrix_literal("1,1,0,1", field) == Mat2.from_ints(field, (1, 1, 0, 1))

    def test_negative_entries_reduce(self) -> None:
        field = finite_field(5)
        assert parse_matrix_literal("0,-1,1,-1", field) == Mat2.from_ints(field, (0, 4, 1, 4))

    def test_rationals(self) -> None:
        m = parse_matrix_literal("1/2,0,0,2", rationals())
        assert m.values[0] == Fraction(1, 2)
        assert m.determinant() == 1

    def test_extension_field_coefficients(self) -> None:
        field = finite_field(2, 2)
        m = parse_matrix_literal("[0,1],0,0,[1,1]", field)
        assert m.a.mult_order() == 3
        assert m.a * m.d == 1

    def test_wrong_entry_count(self) -> None:
        with pytest.raises(ParseError):
            parse_matrix_literal("1,0,0", finite_field(5))

    def test_malformed(self) -> None:
        with pytest.raises(ParseError):
            parse_matrix_literal("1,,0,1", finite_field(5))
