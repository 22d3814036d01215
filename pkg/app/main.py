import argparse
import json
import logging
import sys
from typing import Callable, Dict, List, Optional, Type

from pydantic import ValidationError

from app.config import exception_config as exh
from app.config.settings import LOG_LEVELS, get_settings
from app.controllers.atlas_controller import AtlasController
from app.controllers.decision_controller import DecisionController
from app.controllers.field_controller import FieldController
from app.models.command import Command, CommandName, CommandResult
from app.models.errors import CapExceeded, EdOneError, InputError, NotEdOne, Unclassifiable

LOG_FORMAT = "%(asctime)s [%(levelname)8s] %(message)s (%(filename)s:%(lineno)s)"
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
FIELD_HELP = "Q, Q(zeta:m), Q(eta:m), F:q, F:q(t) or closure:p"
GROUP_HELP = "1, C:n, D:n, BD:n, G:n,p,r, SL2:q, EA:p,r, A:d or S:d"

ExceptionHandler = Callable[[Exception, bool], int]


class Application:
    """
    The edone command line: an argparse parser, the controllers behind each subcommand and
    the exception handlers that turn failures into exit codes
    """

    def __init__(self, parser: argparse.ArgumentParser):
        self.parser = parser
        self.exception_handlers: Dict[Type[BaseException], ExceptionHandler] = {}
        decision_controller = DecisionController()
        atlas_controller = AtlasController()
        field_controller = FieldController()
        self.routes: Dict[CommandName, Callable[[Command], CommandResult]] = {
            CommandName.decide: decision_controller.decide,
            CommandName.certify: decision_controller.certify,
            CommandName.verify: decision_controller.verify,
            CommandName.atlas: atlas_controller.atlas,
            CommandName.pglorder: field_controller.pglorder,
            CommandName.fieldinfo: field_controller.fieldinfo,
        }

    def add_exception_handler(self, exc_class: Type[BaseException], handler: ExceptionHandler):
        self.exception_handlers[exc_class] = handler

    def _lookup_handler(self, exc: Exception) -> ExceptionHandler:
        for cls in type(exc).__mro__:
            if cls in self.exception_handlers:
                return self.exception_handlers[cls]
        raise exc

    def run_command(self, command: Command) -> CommandResult:
        return self.routes[command.name](command)

    def run(self, argv: Optional[List[str]] = None) -> int:
        args = self.parser.parse_args(argv)
        configure_logging(args.log_level)
        command = Command(
            name=args.command,
            field=getattr(args, "field", None),
            group=getattr(args, "group", None),
            matrix=getattr(args, "matrix", None),
            certificate=getattr(args, "certificate", None),
            q=getattr(args, "q", None),
            n=getattr(args, "n", None),
            out=getattr(args, "out", None),
            json_output=args.json,
            cap=getattr(args, "cap", None),
        )
        try:
            result = self.run_command(command)
        except Exception as exc:
            return self._lookup_handler(exc)(exc, command.json_output)
        if command.json_output:
            indent = get_settings().json_indent
            print(json.dumps(result.payload, sort_keys=True, indent=indent, ensure_ascii=False))
        elif result.text:
            print(result.text)
        return result.exit_code


def configure_logging(level: Optional[str] = None) -> None:
    logging.basicConfig(format=LOG_FORMAT, datefmt=LOG_DATE_FORMAT, stream=sys.stderr)
    logging.getLogger("app").setLevel(LOG_LEVELS[level] if level else get_settings().logging_level)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument(
        "--log-level", choices=sorted(LOG_LEVELS), help="overrides EDONE_LOG_LEVEL"
    )

    parser = argparse.ArgumentParser(
        prog="edone",
        description="Decide ed_K(G) = 1, issue and verify Möbius-action certificates, "
        "and build the subgroup atlas of SL2(F_q)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    decide = commands.add_parser("decide", parents=[common], help="decide ed_K(G) = 1")
    decide.add_argument("--field", required=True, help=FIELD_HELP)
    decide.add_argument("--group", required=True, help=GROUP_HELP)

    certify = commands.add_parser("certify", parents=[common], help="write a certificate")
    certify.add_argument("--field", required=True, help=FIELD_HELP)
    certify.add_argument("--group", required=True, help=GROUP_HELP)
    certify.add_argument("--out", help="certificate path; stdout when omitted")

    verify = commands.add_parser("verify", parents=[common], help="re-check a certificate")
    verify.add_argument("certificate", help="certificate JSON file")
    verify.add_argument("--cap", type=int, help="closure cap")

    atlas = commands.add_parser("atlas", parents=[common], help="subgroup classes of SL2(F_q)")
    atlas.add_argument("--q", type=int, required=True)
    atlas.add_argument("--out", help="atlas path")
    atlas.add_argument("--cap", type=int, help="closure cap")

    pglorder = commands.add_parser("pglorder", parents=[common], help="order of a matrix in PGL2")
    pglorder.add_argument("--field", required=True)
    pglorder.add_argument("--matrix", required=True, help="a,b,c,d for [[a, b], [c, d]]")
    pglorder.add_argument("--cap", type=int, help="order cap")

    fieldinfo = commands.add_parser("fieldinfo", parents=[common], help="field predicates")
    fieldinfo.add_argument("--field")
    fieldinfo.add_argument("--n", type=int)
    fieldinfo.add_argument("--q", type=int, help="a power of 2 for the F_q / F_q^2 subfield check")
    return parser


def create_application() -> Application:
    application = Application(_build_parser())

    application.add_exception_handler(InputError, exh.input_error_handler)
    application.add_exception_handler(ValidationError, exh.validation_handler)
    application.add_exception_handler(OSError, exh.file_error_handler)
    application.add_exception_handler(NotEdOne, exh.not_ed_one_handler)
    application.add_exception_handler(CapExceeded, exh.verification_error_handler)
    application.add_exception_handler(Unclassifiable, exh.verification_error_handler)
    application.add_exception_handler(EdOneError, exh.ed_one_error_handler)
    application.add_exception_handler(Exception, exh.unhandled_exception_handler)

    return application


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(create_application().run(argv))


if __name__ == "__main__":
    main()
