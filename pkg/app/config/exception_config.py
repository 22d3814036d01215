import json
import logging
import sys

from pydantic import ValidationError

from app.models.errors import EdOneError, InputError, NotEdOne

logger = logging.getLogger(__name__)

EXIT_NEGATIVE = 1
EXIT_INPUT_ERROR = 2
EXIT_VERIFICATION_FAILED = 3


def _build_validation_errors(exc: ValidationError, title: str) -> dict:
    return {
        "errors": [
            {
                "title": title,
                "source": "/".join(map(str, error["loc"])),
                "msg": error["msg"],
            }
            for error in exc.errors()
        ]
    }


def _build_error_dict(title: str, msg: str) -> dict:
    return {
        "errors": [
            {
                "title": title,
                "msg": msg,
            }
        ]
    }


def _emit(content: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(content, ensure_ascii=False), file=sys.stderr)
        return
    for error in content["errors"]:
        source = f" ({error['source']})" if error.get("source") else ""
        print(f"{error['title']}: {error['msg']}{source}", file=sys.stderr)


def input_error_handler(exc: InputError, as_json: bool) -> int:
    logger.error(f"{type(exc).__name__}: {exc}")
    _emit(_build_error_dict(type(exc).__name__, str(exc)), as_json)
    return EXIT_INPUT_ERROR


def validation_handler(exc: ValidationError, as_json: bool) -> int:
    logger.error(f"Validation Error: {exc}")
    _emit(_build_validation_errors(exc, "Validation Error"), as_json)
    return EXIT_INPUT_ERROR


def file_error_handler(exc: OSError, as_json: bool) -> int:
    logger.error(f"File Error: {exc}")
    _emit(_build_error_dict("File Error", f"{exc.strerror}: {exc.filename}"), as_json)
    return EXIT_INPUT_ERROR


def not_ed_one_handler(exc: NotEdOne, as_json: bool) -> int:
    logger.error(f"NotEdOne: {exc}")
    _emit(_build_error_dict("NotEdOne", str(exc)), as_json)
    return EXIT_NEGATIVE


def verification_error_handler(exc: EdOneError, as_json: bool) -> int:
    logger.error(f"{type(exc).__name__}: {exc}")
    _emit(_build_error_dict(type(exc).__name__, str(exc)), as_json)
    return EXIT_VERIFICATION_FAILED


def ed_one_error_handler(exc: EdOneError, as_json: bool) -> int:
    logger.error(f"{type(exc).__name__}: {exc}")
    _emit(_build_error_dict(type(exc).__name__, str(exc)), as_json)
    return EXIT_INPUT_ERROR


def unhandled_exception_handler(exc: Exception, as_json: bool) -> int:
    logger.exception(f"unhandled {type(exc).__name__}")
    _emit(_build_error_dict("Internal Error", str(exc) or type(exc).__name__), as_json)
    return EXIT_INPUT_ERROR
