import logging
from itertools import product
from typing import List, Optional, Union

from app.config.settings import get_settings
from app.models.concrete_field import ConcreteField, FieldElem
from app.models.errors import NotFiniteField, OrderExceedsCap, SingularMatrix
from app.models.mat2 import Mat2, PglElem, ProjPoint

logger = logging.getLogger(__name__)


def _matrix(m: Union[Mat2, PglElem]) -> Mat2:
    return m.representative if isinstance(m, PglElem) else m


def pgl_order(m: Union[Mat2, PglElem], cap: Optional[int] = None) -> int:
    """Smallest k >= 1 with m^k scalar"""
    cap = cap or get_settings().order_cap
    m = _matrix(m)
    if not m.is_invertible():
        raise SingularMatrix(f"{m} is not invertible")
    current = m
    for k in range(1, cap + 1):
        if current.is_scalar():
            return k
        current = current * m
    raise OrderExceedsCap(cap)


def projective_trace_invariant(m: Union[Mat2, PglElem]) -> FieldElem:
    """trace^2 / det, unchanged by scaling and conjugation"""
    m = _matrix(m)
    det = m.determinant()
    if det.is_zero():
        raise SingularMatrix(f"{m} has determinant 0")
    trace = m.trace()
    return trace * trace / det


def moebius_apply(m: Union[Mat2, PglElem], point: ProjPoint) -> ProjPoint:
    """M . (x : y) = (ax + by : cx + dy), i.e. t -> (at + b)/(ct + d) for t = x/y"""
    m = _matrix(m)
    f = m.field
    if f != point.field:
        raise ValueError(f"{m} and {point} live over different fields")
    a, b, c, d = m.values
    x, y = point.x, point.y
    return ProjPoint(f, f.add(f.mul(a, x), f.mul(b, y)), f.add(f.mul(c, x), f.mul(d, y)))


def projective_line(field: ConcreteField) -> List[ProjPoint]:
    """The q + 1 points of P^1(F_q): (t : 1) for every t, then infinity"""
    if not field.is_finite:
        raise NotFiniteField(f"{field!r} has no finite projective line")
    points = [ProjPoint.affine(field, t) for t in field.elements()]
    points.append(ProjPoint.infinity(field))
    return points


def acts_trivially(m: Union[Mat2, PglElem], points: List[ProjPoint]) -> bool:
    return all(moebius_apply(m, point) == point for point in points)


def moebius_formula(m: Union[Mat2, PglElem]) -> str:
    m = _matrix(m)
    a, b, c, d = m.to_json()
    return f"t ↦ ({a}·t + {b})/({c}·t + {d})"


def enumerate_pgl2(field: ConcreteField) -> List[PglElem]:
    """One normalised representative per element of PGL2(F_q); q^3 - q of them"""
    if not field.is_finite:
        raise NotFiniteField(f"{field!r} is infinite")
    values = list(field.elements())
    one, zero = field.one, field.zero
    result = []
    # first nonzero entry is 1: either a = 1, or a = 0 and b = 1
    for b, c, d in product(values, repeat=3):
        m = Mat2(field, (one, b, c, d))
        if m.is_invertible():
            result.append(PglElem(m))
    for c, d in product(values, repeat=2):
        m = Mat2(field, (zero, one, c, d))
        if m.is_invertible():
            result.append(PglElem(m))
    logger.debug(f"PGL2 over {field!r}: {len(result)} elements")
    return result


def enumerate_sl2(field: ConcreteField) -> List[Mat2]:
    """Every determinant-1 matrix over F_q, in a fixed order"""
    if not field.is_finite:
        raise NotFiniteField(f"{field!r} is infinite")
    values = list(field.elements())
    one = field.one
    result = []
    for a in values:
        if field.is_zero(a):
            for b in values:
                if field.is_zero(b):
                    continue
                c = field.neg(field.inv(b))
                for d in values:
                    result.append(Mat2(field, (a, b, c, d)))
        else:
            inv_a = field.inv(a)
            for b, c in product(values, repeat=2):
                d = field.mul(field.add(one, field.mul(b, c)), inv_a)
                result.append(Mat2(field, (a, b, c, d)))
    return result
