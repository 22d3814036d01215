from enum import Enum
from typing import List, Optional

from app.models.base import BaseSchema


class VerdictKind(str, Enum):
    ed_zero = "EdZero"
    ed_one = "EdOne"
    ed_at_least_two = "EdAtLeastTwo"


class PredicateCheck(BaseSchema):
    """
    One field predicate (or arithmetic side condition) a verdict relied on, with its value
    """

    predicate: str
    args: List[int] = []
    value: bool
    text: str = ""


class VerdictReason(BaseSchema):
    """
    Schema for the justification of a verdict
    """

    theorem: str
    message: str = ""
    via: Optional[str] = None
    checks: List[PredicateCheck] = []
    axiom_backed: bool = False

    def failed_checks(self) -> List[PredicateCheck]:
        return [c for c in self.checks if not c.value]


class Verdict(BaseSchema):
    """
    Schema for the answer to "is ed_K(G) = 1?"
    """

    kind: VerdictKind
    field: str
    group: str
    canonical: str
    reason: VerdictReason

    @property
    def is_ed_one(self) -> bool:
        return self.kind == VerdictKind.ed_one

    def summary(self) -> str:
        if self.kind == VerdictKind.ed_zero:
            return f"{self.kind.value} ({self.reason.message})"
        text = self.reason.theorem
        if self.reason.via:
            text += f" via {self.reason.via}"
        if self.kind == VerdictKind.ed_at_least_two and self.reason.message:
            text += f": {self.reason.message}"
        return f"{self.kind.value} ({text})"
