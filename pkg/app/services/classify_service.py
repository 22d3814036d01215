import logging
from collections import deque
from functools import lru_cache
from typing import Iterator, List, NamedTuple, Optional, Sequence, Set, Tuple

from sympy import divisors

from app.config.settings import get_settings
from app.models.dickson_type import Atlas, AtlasClass, DicksonKind, DicksonType
from app.models.errors import CapExceeded, InvalidDescriptor, Unclassifiable
from app.models.finite_group import FiniteGroup, MatrixGroup
from app.services.gnpr_service import recognize_gnpr
from app.services.group_service import (
    binary_dihedral_group,
    dihedral_group,
    make_binary_octahedral,
    make_sl2,
)
from app.services.isomorphism_service import are_isomorphic
from app.utils.arithmetic import prime_power

logger = logging.getLogger(__name__)


class SubgroupClass(NamedTuple):
    """A conjugacy class of subgroups of an ambient group, by one representative"""

    members: Tuple[int, ...]
    conjugates: int

    @property
    def order(self) -> int:
        return len(self.members)


# ---------------------------------------------------------------- reference groups


@lru_cache(maxsize=None)
def _sl2(q: int) -> MatrixGroup:
    return make_sl2(q)


@lru_cache(maxsize=None)
def _binary_octahedral() -> MatrixGroup:
    return make_binary_octahedral()


def _iso(h: FiniteGroup, reference: FiniteGroup) -> bool:
    if h.order != reference.order:
        return False
    return are_isomorphic(h, reference, cap=max(h.order, get_settings().iso_cap))


def _is_cyclic(h: FiniteGroup) -> bool:
    return any(h.element_order(x) == h.order for x in range(h.order))


def subgroup_of(group: MatrixGroup, members: Sequence[int], name: str = "subgroup") -> MatrixGroup:
    return MatrixGroup(group.field, [group.elements[i] for i in sorted(members)], name=name)


# ---------------------------------------------------------------- single-subgroup checks


def _subfield_sizes(p: int, k: int) -> List[int]:
    return [p**j for j in divisors(k)]


def _sl2_ext_type(h: MatrixGroup, p: int, k: int) -> Optional[DicksonType]:
    if p == 2:
        return None
    for j in divisors(k):
        if k % (2 * j):
            continue
        q_sub = p**j
        if h.order != 2 * q_sub * (q_sub * q_sub - 1):
            continue
        derived = subgroup_of(h, h.derived_subgroup(), name="derived")
        if _iso(derived, _sl2(q_sub)):
            return DicksonType.of(DicksonKind.sl2_ext, q_sub)
    return None


def _klein_types(h: FiniteGroup) -> Iterator[DicksonType]:
    """Characteristic-0 families the group is isomorphic to, cyclic first"""
    order = h.order
    if _is_cyclic(h):
        yield DicksonType.of(DicksonKind.cyclic, order)
    if order % 4 == 0 and order >= 8 and _iso(h, binary_dihedral_group(order // 4)):
        yield DicksonType.of(DicksonKind.binary_dihedral, order // 4)
    if order == 24 and _iso(h, _sl2(3)):
        yield DicksonType.of(DicksonKind.binary_tetrahedral)
    if order == 48 and _iso(h, _binary_octahedral()):
        yield DicksonType.of(DicksonKind.binary_octahedral)
    if order == 120 and _iso(h, _sl2(5)):
        yield DicksonType.of(DicksonKind.binary_icosahedral)


def klein_type(h: FiniteGroup, p: Optional[int] = None) -> Optional[DicksonType]:
    """The characteristic-0 family of a group of order prime to p, or None"""
    if p and h.order % p == 0:
        return None
    return next(_klein_types(h), None)


def _candidate_types(h: MatrixGroup, q: int) -> Iterator[Tuple[DicksonType, bool]]:
    """
    (type, eligible) in precedence order. Ineligible entries are isomorphism matches that
    the classification does not use for this characteristic; they only feed the notes.
    """
    p, k = prime_power(q)
    order = h.order
    coprime = order % p != 0
    full = q * (q * q - 1)

    if order == full:
        yield DicksonType.of(DicksonKind.sl2, q), True
    ext = _sl2_ext_type(h, p, k)
    if ext:
        yield ext, True
    if not coprime:
        recognized = recognize_gnpr(h, p)
        if recognized:
            yield DicksonType.of(DicksonKind.gnpr, *recognized), True
    if p == 2 and order % 4 == 2 and order > 2 and _iso(h, dihedral_group(order // 2)):
        yield DicksonType.of(DicksonKind.dihedral_odd_char2, order // 2), True
    for klein in _klein_types(h):
        yield klein, coprime
    if p == 3 and order == 120 and _iso(h, _sl2(5)):
        yield DicksonType.of(DicksonKind.sl2f5_char3), True
    for q_sub in _subfield_sizes(p, k):
        if q_sub != q and order == q_sub * (q_sub * q_sub - 1) and _iso(h, _sl2(q_sub)):
            yield DicksonType.of(DicksonKind.sl2, q_sub), True


def classify_with_notes(h: MatrixGroup, ambient_q: int) -> Tuple[DicksonType, List[str]]:
    if prime_power(ambient_q) is None:
        raise InvalidDescriptor(f"{ambient_q} is not a prime power")
    chosen: Optional[DicksonType] = None
    notes: List[str] = []
    for dickson_type, eligible in _candidate_types(h, ambient_q):
        if chosen is None and eligible:
            chosen = dickson_type
        elif str(dickson_type) not in notes and dickson_type != chosen:
            notes.append(str(dickson_type))
    if chosen is None:
        raise Unclassifiable(f"subgroup of order {h.order} of SL2(F_{ambient_q}) fits no type")
    return chosen, notes


def classify_subgroup(h: MatrixGroup, ambient_q: int) -> DicksonType:
    return classify_with_notes(h, ambient_q)[0]


# ---------------------------------------------------------------- enumeration


def _closure_mask(table: List[List[int]], identity: int, gens: Sequence[int]) -> int:
    members = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        row = table[x]
        for g in gens:
            y = row[g]
            if y not in members:
                members.add(y)
                queue.append(y)
    mask = 0
    for x in members:
        mask |= 1 << x
    return mask


def _bits(mask: int) -> List[int]:
    result, i = [], 0
    while mask:
        if mask & 1:
            result.append(i)
        mask >>= 1
        i += 1
    return result


def _conjugation_maps(group: FiniteGroup) -> List[List[int]]:
    return [
        [group.conjugate(g, x) for x in range(group.order)] for g in group.generating_set()
    ]


def _orbit(mask: int, maps: List[List[int]]) -> Set[int]:
    orbit = {mask}
    queue = deque([mask])
    while queue:
        current = queue.popleft()
        members = _bits(current)
        for conj in maps:
            image = 0
            for x in members:
                image |= 1 << conj[x]
            if image not in orbit:
                orbit.add(image)
                queue.append(image)
    return orbit


def _check_enumeration_size(q: int) -> None:
    max_q = get_settings().enumeration_max_q
    if q > max_q:
        raise CapExceeded(max_q, what=f"subgroup enumeration of SL2(F_{q}): field size")


def enumerate_subgroups(q: int, cap: Optional[int] = None) -> List[SubgroupClass]:
    """
    Conjugacy classes of subgroups of SL2(F_q), each given by a representative.

    Breadth first from the trivial subgroup: every representative is extended by each
    element outside it and the closure is kept when its conjugacy orbit is new. Classes are
    sorted by order, then by member indices.
    """
    _check_enumeration_size(q)
    ambient = _sl2(q)
    cap = cap or get_settings().closure_cap
    if ambient.order > cap:
        raise CapExceeded(cap, what=f"SL2(F_{q})")
    table = ambient.cayley_table()
    maps = _conjugation_maps(ambient)
    identity = ambient.identity

    trivial = 1 << identity
    seen = {trivial}
    classes = [SubgroupClass((identity,), 1)]
    queue = deque([(trivial, [])])
    while queue:
        mask, gens = queue.popleft()
        for x in range(ambient.order):
            if mask >> x & 1:
                continue
            extended = _closure_mask(table, identity, gens + [x])
            if extended in seen:
                continue
            orbit = _orbit(extended, maps)
            seen |= orbit
            classes.append(SubgroupClass(tuple(_bits(extended)), len(orbit)))
            queue.append((extended, gens + [x]))
    classes.sort(key=lambda c: (c.order, c.members))
    logger.info(f"SL2(F_{q}): {len(classes)} conjugacy classes, {len(seen)} subgroups")
    return classes


def brute_force_subgroup_count(q: int) -> int:
    """Number of distinct subgroups <a, b> over all pairs of elements of SL2(F_q)"""
    _check_enumeration_size(q)
    ambient = _sl2(q)
    table = ambient.cayley_table()
    identity = ambient.identity
    found = set()
    for a in range(ambient.order):
        cyclic = _closure_mask(table, identity, [a])
        for b in range(a, ambient.order):
            if cyclic >> b & 1:
                found.add(cyclic)
            else:
                found.add(_closure_mask(table, identity, [a, b]))
    return len(found)


def atlas(q: int, cap: Optional[int] = None) -> Atlas:
    factored = prime_power(q)
    if factored is None:
        raise InvalidDescriptor(f"{q} is not a prime power")
    _check_enumeration_size(q)
    ambient = _sl2(q)
    classes = []
    for subgroup_class in enumerate_subgroups(q, cap):
        h = subgroup_of(ambient, subgroup_class.members, name=f"H{len(classes)}")
        dickson_type, notes = classify_with_notes(h, q)
        classes.append(
            AtlasClass(
                order=h.order,
                type=str(dickson_type),
                generators=[h.elements[g].to_json() for g in h.generating_set()],
                conjugates=subgroup_class.conjugates,
                notes=notes,
            )
        )
        logger.debug(f"SL2(F_{q}): order {h.order} x{subgroup_class.conjugates} -> {dickson_type}")
    total = sum(c.conjugates for c in classes)
    oracle = brute_force_subgroup_count(q)
    logger.info(f"atlas for q={q}: {len(classes)} classes, {total} subgroups (oracle {oracle})")
    return Atlas(q=q, p=factored[0], total_subgroups=total, oracle_count=oracle, classes=classes)
