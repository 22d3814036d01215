import json
from typing import Optional

from app.models.command import Command, CommandResult
from app.models.errors import InvalidDescriptor, OrderExceedsCap
from app.models.field_report import FieldInfoReport
from app.models.field_spec import FieldKind
from app.services import field_service, matrix_service
from app.utils.spec_parser import parse_field_spec, parse_matrix_literal


class FieldController:
    """
    Controller for the fieldinfo and pglorder commands
    """

    def fieldinfo(self, command: Command) -> CommandResult:
        if not command.field and not command.q:
            raise InvalidDescriptor("fieldinfo needs --field or --q")
        spec = parse_field_spec(command.field) if command.field else None
        report = FieldInfoReport(field=str(spec) if spec else "", characteristic=0)
        lines = []
        if spec is not None:
            char = field_service.characteristic(spec)
            report.characteristic = char
            report.fp_degree = self._fp_degree(spec)
            lines.append(f"{spec}: characteristic {char}, [K:F_p] = {report.fp_degree or '-'}")
            if command.n:
                n = command.n
                report.n = n
                report.contains_zeta = field_service.contains_zeta(spec, n)
                if not (char and n % char == 0):
                    report.contains_zeta_plus = field_service.contains_zeta_plus(spec, n)
                lines.append(f"contains zeta_{n}: {report.contains_zeta}")
                lines.append(f"contains zeta_{n} + zeta_{n}^-1: {report.contains_zeta_plus}")
        if command.q:
            lemma = field_service.lemma_8_1_check(command.q)
            report.lemma_8_1 = lemma
            lines.append(
                f"q={lemma.q}: [F_2(zeta_{lemma.q + 1}):F_2] = {lemma.zeta_degree}, "
                f"[F_2(eta):F_2] = {lemma.eta_degree}"
            )
        return CommandResult(payload=json.loads(report.json()), text="\n".join(lines))

    @staticmethod
    def _fp_degree(spec) -> Optional[str]:
        if spec.kind == FieldKind.finite:
            return str(spec.k)
        if field_service.characteristic(spec):
            return "infinite"
        return None

    def pglorder(self, command: Command) -> CommandResult:
        """
        Order of the matrix in PGL2 of the field (its constant field for F_q(t)), or OVERFLOW
        past the order cap
        """
        spec = parse_field_spec(command.field)
        field = field_service.concrete_field_for(spec)
        matrix = parse_matrix_literal(command.matrix, field)
        try:
            order = matrix_service.pgl_order(matrix, cap=command.cap)
        except OrderExceedsCap as e:
            payload = {"matrix": matrix.to_json(), "order": None, "cap": e.cap}
            return CommandResult(payload=payload, text="OVERFLOW")
        return CommandResult(payload={"matrix": matrix.to_json(), "order": order}, text=str(order))
