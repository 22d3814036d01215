import logging
from pathlib import Path
from typing import Type, Union

from app.config.settings import get_settings
from app.models.base import BaseSchema

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class BaseRepository:
    """
    JSON documents on disk, one schema per repository. Output is written with sorted keys
    and a fixed indent so that equal documents are byte-identical.
    """

    __abstract__ = True

    def __init__(self, schema: Type[BaseSchema]):
        self.__schema__ = schema

    def dumps(self, data: BaseSchema) -> str:
        indent = get_settings().json_indent
        return data.json(sort_keys=True, indent=indent, ensure_ascii=False) + "\n"

    def save(self, data: BaseSchema, path: PathLike) -> Path:
        path = Path(path)
        if path.parent != Path(""):
            path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.dumps(data), encoding="utf-8")
        logger.info(f"wrote {self.__schema__.__name__} to {path}")
        return path

    def get_by_path(self, path: PathLike) -> BaseSchema:
        return self.__schema__.parse_file(Path(path), encoding="utf-8")
