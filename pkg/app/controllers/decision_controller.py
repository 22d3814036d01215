import json
import logging

from app.models.command import Command, CommandResult
from app.models.verdict import VerdictKind
from app.repository.certificate_repository import CertificateRepository
from app.services import certificate_service, decision_service
from app.utils.spec_parser import parse_field_spec, parse_group_spec

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_VERIFICATION_FAILED = 3


class DecisionController:
    """
    Controller for the decide, certify and verify commands
    """

    def __init__(self):
        self.certificate_repository = CertificateRepository()

    def decide(self, command: Command) -> CommandResult:
        """
        Prints the verdict with the theorem it rests on; exit 1 for EdAtLeastTwo
        """
        spec = parse_field_spec(command.field)
        descriptor = parse_group_spec(command.group)
        verdict = decision_service.decide(spec, descriptor)
        negative = verdict.kind == VerdictKind.ed_at_least_two
        return CommandResult(
            exit_code=EXIT_NEGATIVE if negative else EXIT_OK,
            payload=json.loads(verdict.json()),
            text=verdict.summary(),
        )

    def certify(self, command: Command) -> CommandResult:
        spec = parse_field_spec(command.field)
        descriptor = parse_group_spec(command.group)
        certificate = certificate_service.certify(spec, descriptor)
        schema = certificate.to_schema()
        if command.out:
            path = self.certificate_repository.save(schema, command.out)
            text = f"certificate for {descriptor} over {spec} written to {path}"
        else:
            text = self.certificate_repository.dumps(schema).rstrip("\n")
        exit_code = EXIT_OK if certificate.verification.passed else EXIT_VERIFICATION_FAILED
        return CommandResult(exit_code=exit_code, payload=json.loads(schema.json()), text=text)

    def verify(self, command: Command) -> CommandResult:
        """
        Re-checks a certificate file; exit 0 iff every check passes
        """
        certificate = self.certificate_repository.load_certificate(command.certificate)
        report = certificate_service.verify(certificate, cap=command.cap)
        text = (
            f"order_ok={report.order_ok} iso_ok={report.iso_ok} faithful_ok={report.faithful_ok}"
            f" field_ok={report.field_ok}"
            f" ({report.iso_method}, closure order {report.closure_order})"
        )
        if not report.passed:
            logger.warning(f"{command.certificate}: verification failed")
        return CommandResult(
            exit_code=EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED,
            payload=json.loads(report.json()),
            text=text,
        )
