import logging
import re
from math import gcd
from typing import Dict, List, Optional, Set, Tuple

from sympy import factorint

from app.models.concrete_field import ConcreteField, FieldElem
from app.models.errors import FieldTooSmall, InvalidGnprParams
from app.models.finite_group import FiniteGroup, MatrixGroup
from app.models.group_descriptor import GroupDescriptor
from app.models.int_poly import IntPoly
from app.models.mat2 import Mat2
from app.services.group_service import close_generated
from app.services.polynomial_service import cyclotomic_poly, factor_mod_p
from app.utils.arithmetic import gnpr_degree_s

logger = logging.getLogger(__name__)

SIGMA_LABEL = re.compile(r"^sigma_(\d+)_(\d+)$")


def validate(n: int, p: int, r: int) -> int:
    """Checks p prime, p does not divide n and s | r; returns s"""
    GroupDescriptor.gnpr(n, p, r).validate_parameters()
    return gnpr_degree_s(n, p)


def _add_to_span(span: Set, vector, field: ConcreteField) -> Set:
    p = field.characteristic
    multiples = [field.mul(field.from_int(c), vector) for c in range(p)]
    return {field.add(x, m) for x in span for m in multiples}


def gnpr_basis(n: int, p: int, r: int, field: ConcreteField) -> List:
    """
    beta_1, ..., beta_t (t = r/s): the first canonical basis vectors of the field that are
    independent over F_p(zeta_n^2)
    """
    s = validate(n, p, r)
    if field.characteristic != p:
        raise InvalidGnprParams(f"G({n},{p}^{r}) needs characteristic {p}, not {field!r}")
    if r > field.degree:
        raise FieldTooSmall(f"[{field!r} : F_{p}] = {field.degree} < {r}")
    zeta = field.primitive_nth_root(n)
    omega = field.mul(zeta, zeta)
    span = {field.zero}
    betas = []
    for candidate in field.basis():
        if len(betas) == r // s:
            break
        if candidate in span:
            continue
        betas.append(candidate)
        power = candidate
        for _ in range(s):
            span = _add_to_span(span, power, field)
            power = field.mul(omega, power)
    if len(betas) < r // s:
        raise FieldTooSmall(f"{field!r} has no F_p(zeta_{n}^2)-subspace of dimension {r}")
    return betas


def make_gnpr_matrix(
    n: int, p: int, r: int, field: ConcreteField, a: Optional[FieldElem] = None
) -> MatrixGroup:
    """
    G(n, p^r) inside SL2 of the field: sigma_i_j = [[1, zeta^(2(j-1)) beta_i], [0, 1]] and
    tau = [[zeta, a], [0, zeta^-1]]
    """
    a_value = field.zero if a is None else a.value
    if n <= 2 and not field.is_zero(a_value):
        raise InvalidGnprParams(f"G({n},{p}^{r}) takes a = 0 when n <= 2")
    s = validate(n, p, r)
    if field.characteristic != p:
        raise InvalidGnprParams(f"G({n},{p}^{r}) needs characteristic {p}, not {field!r}")
    zeta = field.primitive_nth_root(n)
    omega = field.mul(zeta, zeta)
    one, zero = field.one, field.zero

    gens, labels = [], []
    for i, beta in enumerate(gnpr_basis(n, p, r, field), start=1):
        entry = beta
        for j in range(1, s + 1):
            gens.append(Mat2(field, (one, entry, zero, one)))
            labels.append(f"sigma_{i}_{j}")
            entry = field.mul(omega, entry)
    gens.append(Mat2(field, (zeta, a_value, zero, field.inv(zeta))))
    labels.append("tau")
    return close_generated(gens, labels=labels, name=f"G({n},{p}^{r})")


def sigma_grid(group: FiniteGroup) -> Tuple[List[List[int]], int]:
    """(t x s grid of sigma generator indices, tau index) read off the generator labels"""
    cells: Dict[Tuple[int, int], int] = {}
    tau = None
    for label, g in zip(group.labels, group.generators):
        if label == "tau":
            tau = g
            continue
        match = SIGMA_LABEL.match(label)
        if not match:
            raise InvalidGnprParams(f"unexpected generator label {label!r}")
        cells[(int(match.group(1)), int(match.group(2)))] = g
    if tau is None:
        raise InvalidGnprParams("no tau generator")
    rows = sorted({i for i, _ in cells})
    cols = sorted({j for _, j in cells})
    grid = []
    for i in rows:
        if any((i, j) not in cells for j in cols):
            raise InvalidGnprParams(f"sigma labels do not form a grid: {sorted(cells)}")
        grid.append([cells[(i, j)] for j in cols])
    return grid, tau


def _wrap_exponents(f: IntPoly, p: int) -> List[int]:
    """a_j = -f_(j-1) mod p, so that w^s = sum_j a_j w^(j-1) when f(w) = 0"""
    return [(-c) % p for c in f.coefficients[:-1]]


def check_gnpr_presentation(
    group: FiniteGroup, n: int, p: int, grid: List[List[int]], tau: int
) -> bool:
    """
    The defining relations of G(n, p^r) on a t x s grid of sigma generators and tau:
    sigma^p = 1, the sigmas commute, tau^n = 1, tau sigma_i_j tau^-1 = sigma_i_(j+1) and
    tau sigma_i_s tau^-1 = prod_j sigma_i_j^(a_j), with a_j read off the minimal polynomial
    of zeta_n^2 over F_p (any irreducible factor of the cyclotomic polynomial of its order)
    """
    s = gnpr_degree_s(n, p)
    if not grid or any(len(row) != s for row in grid):
        logger.debug(f"grid shape {[len(row) for row in grid]} does not match s = {s}")
        return False
    sigmas = [x for row in grid for x in row]
    e = group.identity
    if any(group.power(x, p) != e for x in sigmas):
        return False
    if any(group.mul(x, y) != group.mul(y, x) for x in sigmas for y in sigmas):
        return False
    if group.power(tau, n) != e:
        return False
    for row in grid:
        for j in range(s - 1):
            if group.conjugate(tau, row[j]) != row[j + 1]:
                return False

    candidates = [f for f in factor_mod_p(cyclotomic_poly(n // gcd(n, 2)), p) if f.degree == s]
    for f in dict.fromkeys(candidates):
        exponents = _wrap_exponents(f, p)
        if all(group.conjugate(tau, row[-1]) == _word(group, row, exponents) for row in grid):
            return True
    return False


def _word(group: FiniteGroup, row: List[int], exponents: List[int]) -> int:
    result = group.identity
    for x, k in zip(row, exponents):
        result = group.mul(result, group.power(x, k))
    return result


def presentation_holds(group: FiniteGroup, n: int, p: int) -> bool:
    """check_gnpr_presentation on the group's own labelled generators"""
    grid, tau = sigma_grid(group)
    return check_gnpr_presentation(group, n, p, grid, tau)


def _p_part(order: int, p: int) -> int:
    return p ** factorint(order).get(p, 0)


def _is_p_power(k: int, p: int) -> bool:
    while k % p == 0:
        k //= p
    return k == 1


def recognize_gnpr(group: FiniteGroup, p: int) -> Optional[Tuple[int, int]]:
    """
    (n, r) when the p-Sylow subgroup Q is normal and elementary abelian of order p^r and
    G/Q is cyclic of order n; None otherwise
    """
    order = group.order
    sylow_order = _p_part(order, p)
    if sylow_order == 1:
        return None
    r = factorint(sylow_order)[p]
    n = order // sylow_order

    p_elements = {x for x in range(order) if _is_p_power(group.element_order(x), p)}
    # a unique Sylow p-subgroup is exactly the set of p-elements
    if len(p_elements) != sylow_order:
        return None
    if any(group.element_order(x) not in (1, p) for x in p_elements):
        return None
    gens: List[int] = []
    span = {group.identity}
    for x in sorted(p_elements):
        if x not in span:
            gens.append(x)
            span = group.closure(gens)
    if any(group.mul(x, y) != group.mul(y, x) for x in gens for y in gens):
        return None

    for x in range(order):
        current, k = x, 1
        while current not in p_elements:
            current = group.mul(current, x)
            k += 1
        if k == n:
            logger.debug(f"{group.name}: Sylow-{p} normal of order {p}^{r}, quotient C{n}")
            return n, r
    return None
