import json
import re
from typing import List, Optional

from pydantic import ValidationError

from app.models.concrete_field import ConcreteField
from app.models.errors import InvalidDescriptor, NonPrimePower, ParseError
from app.models.field_spec import FieldSpec
from app.models.group_descriptor import ARITY, SPEC_TAGS, GroupDescriptor
from app.models.mat2 import Mat2
from app.utils.arithmetic import prime_power

FAMILY_BY_TAG = {tag: family for family, tag in SPEC_TAGS.items()}
FRACTION = re.compile(r"(-?\d+/\d+)")
DIGITS = re.compile(r"\d+")


class _Scanner:
    """Left-to-right reader over a spec string that reports failures with their offset"""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str, position: Optional[int] = None) -> ParseError:
        return ParseError(message, self.text, self.pos if position is None else position)

    def accept(self, literal: str) -> bool:
        if self.text.startswith(literal, self.pos):
            self.pos += len(literal)
            return True
        return False

    def expect(self, literal: str) -> None:
        if not self.accept(literal):
            raise self.fail(f"expected {literal!r}")

    def integer(self) -> int:
        match = DIGITS.match(self.text, self.pos)
        if not match:
            raise self.fail("expected a non-negative integer")
        self.pos = match.end()
        return int(match.group())

    def integers(self) -> List[int]:
        values = [self.integer()]
        while self.accept(","):
            values.append(self.integer())
        return values

    def at_end(self) -> bool:
        return self.pos == len(self.text)

    def end(self) -> None:
        if not self.at_end():
            raise self.fail(f"unexpected trailing text {self.text[self.pos:]!r}")


def parse_field_spec(text: str) -> FieldSpec:
    """
    Q | Q(zeta:m) | Q(eta:m) | F:q | F:q(t) | closure:p

    q is factored as p^k; a q that is not a prime power raises NonPrimePower.
    """
    scanner = _Scanner(text.strip())
    try:
        if scanner.accept("Q(zeta:"):
            m = scanner.integer()
            scanner.expect(")")
            scanner.end()
            return FieldSpec.cyclotomic(m)
        if scanner.accept("Q(eta:"):
            m = scanner.integer()
            scanner.expect(")")
            scanner.end()
            return FieldSpec.real_cyclotomic(m)
        if scanner.accept("Q"):
            scanner.end()
            return FieldSpec.rational()
        if scanner.accept("F:"):
            start = scanner.pos
            q = scanner.integer()
            factored = prime_power(q)
            if factored is None:
                raise NonPrimePower(f"{q} is not a prime power", scanner.text, start)
            if scanner.accept("(t)"):
                scanner.end()
                return FieldSpec.rational_function(*factored)
            scanner.end()
            return FieldSpec.finite(*factored)
        if scanner.accept("closure:"):
            char = scanner.integer()
            scanner.end()
            return FieldSpec.closure(char)
    except ValidationError as e:
        raise scanner.fail(f"invalid field parameters: {e.errors()[0]['msg']}", 0) from e
    raise scanner.fail("expected one of Q, Q(zeta:m), Q(eta:m), F:q, F:q(t), closure:p")


def parse_group_spec(text: str) -> GroupDescriptor:
    """
    1 | C:n | D:n | BD:n | G:n,p,r | SL2:q | EA:p,r | A:d | S:d

    Only the shape is checked here; family conditions are left to
    GroupDescriptor.validate_parameters().
    """
    scanner = _Scanner(text.strip())
    if scanner.accept("1") and scanner.at_end():
        return GroupDescriptor.trivial()
    scanner.pos = 0
    tag_end = scanner.text.find(":")
    if tag_end < 0:
        raise scanner.fail("expected '1' or TAG:params")
    tag = scanner.text[:tag_end]
    family = FAMILY_BY_TAG.get(tag)
    if family is None:
        tags = ", ".join(sorted(FAMILY_BY_TAG))
        raise scanner.fail(f"unknown group tag {tag!r} (expected one of {tags})", 0)
    scanner.pos = tag_end + 1
    params = scanner.integers()
    scanner.end()
    if len(params) != ARITY[family]:
        raise scanner.fail(f"{tag} takes {ARITY[family]} parameters, got {len(params)}")
    try:
        return GroupDescriptor(family=family, params=tuple(params))
    except ValidationError as e:
        raise InvalidDescriptor(f"{text}: {e.errors()[0]['msg']}") from e


def parse_matrix_literal(text: str, field: ConcreteField) -> Mat2:
    """
    "a,b,c,d" for [[a, b], [c, d]]; entries are JSON field elements (integers, coefficient
    lists for extension fields) or p/q rationals
    """
    quoted = FRACTION.sub(r'"\1"', text.strip())
    try:
        entries = json.loads(f"[{quoted}]")
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed matrix: {e.msg}", text, max(e.pos - 1, 0)) from e
    if len(entries) != 4:
        raise ParseError(f"a 2x2 matrix needs 4 entries, got {len(entries)}", text, len(text))
    return Mat2(field, [field.from_json(entry) for entry in entries])
