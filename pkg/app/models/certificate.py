from typing import Any, Dict, List, Optional, Tuple

from app.config.settings import get_settings
from app.models.base import BaseSchema
from app.models.concrete_field import ConcreteField, field_from_description
from app.models.errors import InvalidDescriptor
from app.models.field_spec import FieldSpec
from app.models.group_descriptor import GroupDescriptor
from app.models.mat2 import Mat2


class VerificationReport(BaseSchema):
    """
    Schema for the independent re-check of a certificate
    """

    order_ok: bool
    iso_ok: bool
    faithful_ok: bool
    field_ok: bool
    iso_method: str = "backtracking"
    closure_order: int = 0

    @property
    def passed(self) -> bool:
        return self.order_ok and self.iso_ok and self.faithful_ok and self.field_ok


class Certificate:
    """
    A faithful Möbius action witnessing ed_K(G) = 1: labelled matrices over a realization
    field inside K whose closure in GL2 is the claimed group and meets the scalars trivially
    """

    def __init__(
        self,
        spec: FieldSpec,
        claimed: GroupDescriptor,
        realization: ConcreteField,
        generators: List[Tuple[str, Mat2]],
        action_note: str = "",
        canonical: Optional[GroupDescriptor] = None,
        verification: Optional[VerificationReport] = None,
    ):
        self.spec = spec
        self.claimed = claimed
        self.canonical = canonical or claimed
        self.realization = realization
        self.generators = generators
        self.action_note = action_note
        self.verification = verification

    @property
    def matrices(self) -> List[Mat2]:
        return [m for _, m in self.generators]

    @property
    def labels(self) -> List[str]:
        return [label for label, _ in self.generators]

    def to_schema(self) -> "CertificateSchema":
        return CertificateSchema(
            spec=str(self.spec),
            descriptor=str(self.claimed),
            canonical=str(self.canonical),
            realization=self.realization.description(),
            generators=[
                GeneratorSchema(label=label, matrix=m.to_json()) for label, m in self.generators
            ],
            action_note=self.action_note,
            verification=self.verification,
        )

    def __repr__(self) -> str:
        return f"Certificate({self.claimed} over {self.realization!r}, {self.labels})"


class GeneratorSchema(BaseSchema):
    label: str
    matrix: List[Any]


class CertificateSchema(BaseSchema):
    """
    Schema for the certificate JSON document
    """

    __domain__ = Certificate

    spec: str
    descriptor: str
    canonical: Optional[str] = None
    realization: Dict[str, Any]
    generators: List[GeneratorSchema]
    action_note: str = ""
    verification: Optional[VerificationReport] = None

    def to_domain(self) -> Certificate:
        from app.utils.spec_parser import parse_field_spec, parse_group_spec

        field = field_from_description(
            self.realization, table_limit=get_settings().table_field_limit
        )
        generators = []
        for generator in self.generators:
            if len(generator.matrix) != 4:
                raise InvalidDescriptor(f"generator {generator.label!r} needs 4 entries")
            values = [field.from_json(v) for v in generator.matrix]
            generators.append((generator.label, Mat2(field, values)))
        return Certificate(
            spec=parse_field_spec(self.spec),
            claimed=parse_group_spec(self.descriptor),
            canonical=parse_group_spec(self.canonical) if self.canonical else None,
            realization=field,
            generators=generators,
            action_note=self.action_note,
            verification=self.verification,
        )
