import json
from typing import Callable, Generator, NamedTuple

import pytest

from app.config.settings import get_settings
from app.main import Application, create_application


class CliRun(NamedTuple):
    exit_code: int
    stdout: str
    stderr: str

    def json(self):
        return json.loads(self.stdout)


@pytest.fixture(autouse=True)
def reset_settings(monkeypatch) -> Generator[None, None, None]:
    for name in ("EDONE_CLOSURE_CAP", "EDONE_ISO_CAP", "EDONE_ORDER_CAP", "EDONE_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture(scope="session")
def app() -> Application:
    return create_application()


@pytest.fixture
def run_cli(app: Application, capsys) -> Callable[..., CliRun]:
    def run(*argv: str) -> CliRun:
        exit_code = app.run(list(argv))
        captured = capsys.readouterr()
        return CliRun(exit_code, captured.out, captured.err)

    return run