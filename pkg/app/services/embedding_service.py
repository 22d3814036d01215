import logging
from typing import FrozenSet, List, Optional, Set

from app.models.errors import CapExceeded, InvalidDescriptor, NonPrimePower
from app.models.finite_group import FiniteGroup, MatrixGroup
from app.models.mat2 import Mat2, PglElem
from app.services.field_service import finite_field
from app.services.group_service import close_generated, close_generated_projective, pgl2_group
from app.utils.arithmetic import prime_power

logger = logging.getLogger(__name__)


def _field_for(q: int):
    factored = prime_power(q)
    if factored is None:
        raise NonPrimePower(f"{q} is not a prime power")
    return finite_field(*factored)


def find_elementary_abelian_embedding(p: int, r: int, q: int) -> Optional[List[Mat2]]:
    """
    Generators of a copy of (Z/pZ)^r in PGL2(F_q), q a power of p, or None.

    Every p-subgroup of PGL2(F_q) is conjugate into the unipotent upper triangular
    matrices, so the search runs over those: unipotents t -> t + b are taken in field
    order whenever b is F_p-independent of the ones already chosen.
    """
    field = _field_for(q)
    if field.characteristic != p:
        raise InvalidDescriptor(f"F_{q} does not have characteristic {p}")
    one, zero = field.one, field.zero
    span = {zero}
    chosen: List[Mat2] = []
    for b in field.elements():
        if len(chosen) == r:
            break
        if b in span:
            continue
        chosen.append(Mat2(field, (one, b, zero, one)))
        multiples = [field.mul(field.from_int(c), b) for c in range(p)]
        span = {field.add(x, m) for x in span for m in multiples}
    if len(chosen) < r:
        logger.debug(f"(Z/{p}Z)^{r} does not fit in PGL2(F_{q})")
        return None

    image = close_generated_projective(chosen)
    if image.order != p**r or not image.is_abelian():
        return None
    return chosen


def p_subgroups_of_pgl2(q: int) -> List[FrozenSet[int]]:
    """
    Every nontrivial subgroup of p-power order of PGL2(F_q), p = char F_q, as index sets
    into pgl2_group. These are all elementary abelian, so each one is reached from a
    smaller one by adjoining a commuting element of order p.
    """
    field = _field_for(q)
    p = field.characteristic
    group = pgl2_group(field)
    order_p = [x for x in range(group.order) if group.element_order(x) == p]

    found: Set[FrozenSet[int]] = set()
    frontier = []
    for x in order_p:
        subgroup = frozenset(group.closure([x]))
        if subgroup not in found:
            found.add(subgroup)
            frontier.append(subgroup)
    while frontier:
        next_frontier = []
        for subgroup in frontier:
            members = sorted(subgroup)
            for y in order_p:
                if y in subgroup or any(group.mul(x, y) != group.mul(y, x) for x in members):
                    continue
                bigger = frozenset(group.closure(members + [y]))
                if bigger not in found:
                    found.add(bigger)
                    next_frontier.append(bigger)
        frontier = next_frontier
    logger.debug(f"PGL2(F_{q}): {len(found)} nontrivial {p}-subgroups")
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def lift_to_gl2(group: FiniteGroup, subgroup: FrozenSet[int]) -> Optional[MatrixGroup]:
    """
    A subgroup of GL2 mapping isomorphically onto a p-subgroup of PGL2 (p = char), or None.

    Each class M of order p has exactly one representative c*M with (c*M)^p = I, since
    c -> c^p is a bijection of the field; the lift is closed iff the complement exists.
    """
    lifts = []
    for x in subgroup:
        element: PglElem = group.elements[x]
        m = element.representative
        field = m.field
        p = field.characteristic
        power = m**p
        if not power.is_scalar():
            raise InvalidDescriptor(f"{m} does not have order dividing {p} in PGL2")
        target = field.inv(power.values[0])
        scalar = next(c for c in field.elements() if field.power(c, p) == target)
        lifts.append(m.scale(scalar))
    if not lifts:
        return None
    try:
        lifted = close_generated(lifts, cap=len(subgroup))
    except CapExceeded:
        return None
    return lifted if lifted.order == len(subgroup) else None
