from enum import Enum
from typing import Any, Dict, Optional

from app.models.base import BaseSchema


class CommandName(str, Enum):
    decide = "decide"
    certify = "certify"
    verify = "verify"
    atlas = "atlas"
    pglorder = "pglorder"
    fieldinfo = "fieldinfo"


class Command(BaseSchema):
    """
    Schema for one parsed CLI invocation; only the options of the named command are set
    """

    name: CommandName
    field: Optional[str] = None
    group: Optional[str] = None
    matrix: Optional[str] = None
    certificate: Optional[str] = None
    q: Optional[int] = None
    n: Optional[int] = None
    out: Optional[str] = None
    json_output: bool = False
    cap: Optional[int] = None


class CommandResult(BaseSchema):
    """
    Schema for what a controller hands back: the exit status, the machine-readable payload
    and its human-readable projection
    """

    exit_code: int = 0
    payload: Dict[str, Any] = {}
    text: str = ""
