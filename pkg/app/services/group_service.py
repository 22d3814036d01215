import logging
from collections import deque
from itertools import product
from math import gcd
from typing import List, Optional, Sequence

from sympy.combinatorics.named_groups import AlternatingGroup, SymmetricGroup

from app.config.settings import get_settings
from app.models.concrete_field import ConcreteField
from app.models.errors import CapExceeded, InvalidDescriptor, MissingRoots, SingularMatrix
from app.models.finite_group import FiniteGroup, MatrixGroup
from app.models.group_descriptor import GroupDescriptor, GroupFamily
from app.models.mat2 import Mat2, PglElem
from app.services.field_service import finite_field, prime_field
from app.services.matrix_service import enumerate_pgl2, enumerate_sl2
from app.utils.arithmetic import gnpr_degree_s, prime_power

logger = logging.getLogger(__name__)


def close_generated(
    gens: Sequence[Mat2],
    cap: Optional[int] = None,
    labels: Optional[Sequence[str]] = None,
    name: str = "closure",
    field: Optional[ConcreteField] = None,
) -> MatrixGroup:
    """Subgroup of GL2 generated by gens, breadth first from the identity"""
    cap = cap or get_settings().closure_cap
    if not gens and field is None:
        raise ValueError("an empty generator list needs an explicit field")
    field = field or gens[0].field
    for g in gens:
        if g.field != field:
            raise ValueError(f"generator {g} is not over {field!r}")
        if not g.is_invertible():
            raise SingularMatrix(f"generator {g} is not invertible")

    identity = Mat2.identity(field)
    members = [identity]
    seen = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x * g
            if y not in seen:
                if len(members) >= cap:
                    raise CapExceeded(cap)
                seen.add(y)
                members.append(y)
                queue.append(y)
    logger.debug(f"{name}: closure of {len(gens)} generators has order {len(members)}")
    return MatrixGroup(field, members, generators=gens, labels=labels, name=name)


def action_is_faithful(group: MatrixGroup) -> bool:
    """The Möbius action has kernel the scalar members, so it is faithful iff that is {I}"""
    return all(m.is_identity() for m in group.scalar_members())


# ---------------------------------------------------------------- abstract constructors


def trivial_group() -> FiniteGroup:
    return FiniteGroup([0], lambda a, b: 0, 0, name="1")


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(
        range(n), lambda a, b: (a + b) % n, 0, generators=[1] if n > 1 else [], name=f"C{n}"
    )


def dihedral_group(n: int) -> FiniteGroup:
    """Pairs (a, e) standing for sigma^a tau^e, sigma^n = tau^2 = 1, tau sigma tau = sigma^-1"""

    def multiply(x, y):
        (a, e), (b, f) = x, y
        return ((a + (-b if e else b)) % n, e ^ f)

    elements = list(product(range(n), (0, 1)))
    generators = [elements.index((1 % n, 0)), elements.index((0, 1))]
    return FiniteGroup(elements, multiply, (0, 0), generators=generators, name=f"D{n}")


def binary_dihedral_group(n: int) -> FiniteGroup:
    """Pairs (a, e) for sigma^a tau^e with sigma of order 2n, tau^2 = sigma^n"""
    order = 2 * n

    def multiply(x, y):
        (a, e), (b, f) = x, y
        return ((a + (-b if e else b) + (n if e and f else 0)) % order, e ^ f)

    elements = list(product(range(order), (0, 1)))
    generators = [elements.index((1, 0)), elements.index((0, 1))]
    return FiniteGroup(elements, multiply, (0, 0), generators=generators, name=f"BD{n}")


def elementary_abelian_group(p: int, r: int) -> FiniteGroup:
    def multiply(x, y):
        return tuple((a + b) % p for a, b in zip(x, y))

    elements = list(product(range(p), repeat=r))
    units = [tuple(1 if i == j else 0 for i in range(r)) for j in range(r)]
    return FiniteGroup(
        elements,
        multiply,
        (0,) * r,
        generators=[elements.index(u) for u in units],
        name=f"(Z/{p}Z)^{r}",
    )


def permutation_group(family: GroupFamily, degree: int) -> FiniteGroup:
    group = AlternatingGroup(degree) if family == GroupFamily.alt else SymmetricGroup(degree)
    elements = list(group.generate())
    prefix = "A" if family == GroupFamily.alt else "S"
    return FiniteGroup(
        elements,
        lambda a, b: a * b,
        group.identity,
        generators=[elements.index(g) for g in group.generators],
        name=f"{prefix}{degree}",
    )


def make_gnpr_abstract(n: int, p: int, r: int) -> FiniteGroup:
    """
    G(n, p^r) as pairs (v, k): v in V = F_{p^s}^t (r = st), k mod n, with
    (v1, k1)(v2, k2) = (v1 + w^k1 v2, k1 + k2), w the canonical primitive root of unity of
    order n / gcd(n, 2) in F_{p^s}.

    Generators are sigma_i_j = (w^(j-1) e_i, 0) for i <= t, j <= s, and tau = (0, 1).
    """
    GroupDescriptor.gnpr(n, p, r).validate_parameters()
    s = gnpr_degree_s(n, p)
    t = r // s
    field = finite_field(p, s)
    omega = field.primitive_nth_root(n // gcd(n, 2))
    omega_powers = [field.power(omega, k) for k in range(n)]
    zero = field.zero

    def multiply(x, y):
        (v, k), (w, m) = x, y
        scale = omega_powers[k]
        return (
            tuple(field.add(a, field.mul(scale, b)) for a, b in zip(v, w)),
            (k + m) % n,
        )

    values = list(field.elements())
    elements = [(v, k) for v in product(values, repeat=t) for k in range(n)]
    index = {e: i for i, e in enumerate(elements)}
    generators, labels = [], []
    for i in range(t):
        for j in range(s):
            v = tuple(omega_powers[j] if c == i else zero for c in range(t))
            generators.append(index[(v, 0)])
            labels.append(f"sigma_{i + 1}_{j + 1}")
    generators.append(index[((zero,) * t, 1 % n)])
    labels.append("tau")
    return FiniteGroup(
        elements,
        multiply,
        ((zero,) * t, 0),
        generators=generators,
        labels=labels,
        name=f"G({n},{p}^{r})",
    )


def make_abstract(descriptor: GroupDescriptor) -> FiniteGroup:
    descriptor.validate_parameters()
    family, params = descriptor.family, descriptor.params
    if family == GroupFamily.trivial:
        return trivial_group()
    if family == GroupFamily.cyclic:
        return cyclic_group(params[0])
    if family == GroupFamily.dihedral:
        return dihedral_group(params[0])
    if family == GroupFamily.binary_dihedral:
        return binary_dihedral_group(params[0])
    if family == GroupFamily.gnpr:
        return make_gnpr_abstract(*params)
    if family == GroupFamily.sl2:
        return make_sl2(params[0])
    if family == GroupFamily.elem_abelian:
        return elementary_abelian_group(*params)
    if family in (GroupFamily.alt, GroupFamily.sym):
        return permutation_group(family, params[0])
    raise InvalidDescriptor(f"no constructor for {descriptor}")


# ---------------------------------------------------------------- matrix constructors


def make_binary_dihedral(n: int, field: ConcreteField) -> MatrixGroup:
    """
    <sigma, tau> with sigma = diag(zeta_2n, zeta_2n^-1) and tau = [[0, i], [i, 0]];
    sigma^n = tau^2 = -I and tau^-1 sigma tau = sigma^-1
    """
    char = field.characteristic
    if char and (2 * n) % char == 0:
        raise MissingRoots(f"characteristic {char} divides {2 * n}")
    zeta = field.primitive_nth_root(2 * n)
    i = field.primitive_nth_root(4)
    zero = field.zero
    sigma = Mat2(field, (zeta, zero, zero, field.inv(zeta)))
    tau = Mat2(field, (zero, i, i, zero))
    return close_generated([sigma, tau], labels=["sigma", "tau"], name=f"BD{n}")


def sl2_generators(field: ConcreteField) -> List[Mat2]:
    """[[1,1],[0,1]], [[1,0],[1,1]] and, beyond the prime field, diag(g, g^-1)"""
    gens = [Mat2.from_ints(field, (1, 1, 0, 1)), Mat2.from_ints(field, (1, 0, 1, 1))]
    if field.size > 3:
        g = field.primitive_element()
        gens.append(Mat2(field, (g, field.zero, field.zero, field.inv(g))))
    return gens


SL2_LABELS = ["u", "l", "h"]


def make_sl2(q: int) -> MatrixGroup:
    factored = prime_power(q)
    if factored is None:
        raise InvalidDescriptor(f"SL2({q}): {q} is not a prime power")
    cap = get_settings().closure_cap
    size = q * (q * q - 1)
    if size > cap:
        raise CapExceeded(cap, what=f"SL2(F_{q}) of order {size}")
    field = finite_field(*factored)
    gens = sl2_generators(field)
    return MatrixGroup(
        field,
        enumerate_sl2(field),
        generators=gens,
        labels=SL2_LABELS[: len(gens)],
        name=f"SL2({q})",
    )


def make_binary_octahedral() -> MatrixGroup:
    """
    The binary octahedral group inside SL2(F_7), from quaternion units i = [[2,3],[3,-2]],
    j = [[0,1],[-1,0]]: generated by (1 + i + j + ij)/2 and (1 + i)/sqrt(2), sqrt(2) = 3
    """
    field = prime_field(7)
    one = Mat2.identity(field)
    mi = Mat2.from_ints(field, (2, 3, 3, -2))
    mj = Mat2.from_ints(field, (0, 1, -1, 0))
    mk = mi * mj

    def add(*ms: Mat2) -> Mat2:
        return Mat2(field, [sum(vs) % 7 for vs in zip(*(m.values for m in ms))])

    hurwitz = add(one, mi, mj, mk).scale(field.inv(2))
    octa = add(one, mi).scale(field.inv(3))
    return close_generated([hurwitz, octa], labels=["a", "b"], name="2O")


def make_sl2_ext(q: int) -> MatrixGroup:
    """
    <SL2(F_q), diag(e, e^-1)> inside SL2(F_{q^2}), q odd, where e = g^((q+1)/2) for the
    canonical generator g of F_{q^2}^x; then e^2 generates F_q^x and F_q(e) = F_{q^2}
    """
    factored = prime_power(q)
    if factored is None:
        raise InvalidDescriptor(f"{q} is not a prime power")
    p, k = factored
    if p == 2:
        raise InvalidDescriptor(f"the extension of SL2(F_{q}) by diag(e, e^-1) needs q odd")
    field = finite_field(p, 2 * k)
    g = field.primitive_element()
    h = field.power(g, q + 1)
    epsilon = field.power(g, (q + 1) // 2)
    zero = field.zero
    gens = [Mat2.from_ints(field, (1, 1, 0, 1)), Mat2.from_ints(field, (1, 0, 1, 1))]
    labels = ["u", "l"]
    if q > 3:
        gens.append(Mat2(field, (h, zero, zero, field.inv(h))))
        labels.append("h")
    gens.append(Mat2(field, (epsilon, zero, zero, field.inv(epsilon))))
    labels.append("e")
    return close_generated(gens, labels=labels, name=f"SL2({q}).2")


# ---------------------------------------------------------------- PGL2


def pgl2_group(field: ConcreteField) -> FiniteGroup:
    """PGL2 over a finite field as a FiniteGroup of normalised PglElem"""
    elements = enumerate_pgl2(field)
    return FiniteGroup(
        elements, PglElem.__mul__, PglElem(Mat2.identity(field)), name=f"PGL2({field.size})"
    )


def close_generated_projective(gens: Sequence[Mat2], cap: Optional[int] = None) -> FiniteGroup:
    """Image in PGL2 of the group generated by gens"""
    cap = cap or get_settings().closure_cap
    if not gens:
        raise ValueError("need at least one generator")
    classes = [PglElem(g) for g in gens]
    identity = PglElem(Mat2.identity(gens[0].field))
    members = [identity]
    seen = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in classes:
            y = x * g
            if y not in seen:
                if len(members) >= cap:
                    raise CapExceeded(cap)
                seen.add(y)
                members.append(y)
                queue.append(y)
    index = {m: i for i, m in enumerate(members)}
    return FiniteGroup(
        members,
        PglElem.__mul__,
        identity,
        generators=[index[g] for g in classes],
        name="projective closure",
    )
