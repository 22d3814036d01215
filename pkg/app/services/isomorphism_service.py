import logging
from collections import deque
from typing import Dict, List, Optional

from app.config.settings import get_settings
from app.models.errors import CapExceeded
from app.models.finite_group import FiniteGroup

logger = logging.getLogger(__name__)


def _invariants_differ(g: FiniteGroup, h: FiniteGroup) -> Optional[str]:
    if g.order_profile() != h.order_profile():
        return "order profile"
    if g.is_abelian() != h.is_abelian():
        return "commutativity"
    if len(g.center()) != len(h.center()):
        return "centre size"
    if len(g.derived_subgroup()) != len(h.derived_subgroup()):
        return "derived subgroup order"
    return None


def _extend(
    g: FiniteGroup, h: FiniteGroup, gens: List[int], images: List[int]
) -> Optional[Dict[int, int]]:
    """
    The homomorphism on <gens> sending gens[i] to images[i], walking the Cayley graph;
    None when an edge is inconsistent or two elements collide
    """
    mapping = {g.identity: h.identity}
    used = {h.identity}
    queue = deque([g.identity])
    while queue:
        x = queue.popleft()
        fx = mapping[x]
        for gen, image in zip(gens, images):
            y = g.mul(x, gen)
            fy = h.mul(fx, image)
            known = mapping.get(y)
            if known is None:
                if fy in used:
                    return None
                mapping[y] = fy
                used.add(fy)
                queue.append(y)
            elif known != fy:
                return None
    return mapping


def find_isomorphism(
    g: FiniteGroup, h: FiniteGroup, cap: Optional[int] = None
) -> Optional[Dict[int, int]]:
    """
    An isomorphism g -> h as an index map, or None.

    Generator images are chosen by backtracking over elements of matching order; the first
    image only ranges over conjugacy-class representatives of h.
    """
    cap = cap or get_settings().iso_cap
    if g.order != h.order:
        return None
    if g.order > cap:
        raise CapExceeded(cap, what=f"isomorphism test on order {g.order}")
    reason = _invariants_differ(g, h)
    if reason:
        logger.debug(f"{g.name} and {h.name} differ in {reason}")
        return None

    gens = g.generating_set()
    if not gens:
        return {g.identity: h.identity}
    by_order: Dict[int, List[int]] = {}
    for y in range(h.order):
        by_order.setdefault(h.element_order(y), []).append(y)
    class_reps = {min(cls) for cls in h.conjugacy_classes()}

    def candidates(level: int) -> List[int]:
        pool = by_order.get(g.element_order(gens[level]), [])
        if level == 0:
            return [y for y in pool if y in class_reps]
        return pool

    def search(images: List[int]) -> Optional[Dict[int, int]]:
        level = len(images)
        for y in candidates(level):
            trial = images + [y]
            mapping = _extend(g, h, gens[: level + 1], trial)
            if mapping is None:
                continue
            if level + 1 == len(gens):
                if len(mapping) == g.order:
                    return mapping
                continue
            found = search(trial)
            if found is not None:
                return found
        return None

    return search([])


def are_isomorphic(g: FiniteGroup, h: FiniteGroup, cap: Optional[int] = None) -> bool:
    cap = cap or get_settings().iso_cap
    if g.order != h.order:
        return False
    if g.order > cap:
        raise CapExceeded(cap, what=f"isomorphism test on order {g.order}")
    if g.is_abelian() and h.is_abelian():
        # finite abelian groups are determined by how many elements have each order
        return g.order_profile() == h.order_profile()
    result = find_isomorphism(g, h, cap) is not None
    logger.debug(f"{g.name} ~ {h.name}: {result}")
    return result
