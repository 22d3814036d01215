import logging
from functools import lru_cache
from math import gcd
from typing import Dict, Tuple

from sympy import divisors

from app.config.settings import get_settings
from app.models.concrete_field import (
    ConcreteField,
    ExtField,
    FieldElem,
    FiniteFieldBase,
    NumberField,
    PrimeField,
    Rationals,
)
from app.models.errors import (
    CharDividesN,
    FieldTooSmall,
    InconsistentRequirements,
    InvalidDescriptor,
    MissingRoots,
    NonPrimePower,
    NotPositiveCharacteristic,
    UnsupportedDescriptor,
)
from app.models.field_report import Lemma81Report
from app.models.field_spec import FieldKind, FieldSpec, RealizationRequirements
from app.models.int_poly import IntPoly
from app.services.polynomial_service import canonical_irreducible, cyclotomic_poly, eta_min_poly
from app.utils.arithmetic import (
    eta_degree,
    lcm,
    multiplicative_order,
    prime_power,
    reduced_cyclotomic_index,
)

logger = logging.getLogger(__name__)

RATIONAL_ETA_INDICES = (1, 2, 3, 4, 6)
FINITE_KINDS = (FieldKind.finite, FieldKind.rational_function)


# ---------------------------------------------------------------- predicates


def characteristic(spec: FieldSpec) -> int:
    if spec.kind in FINITE_KINDS:
        return spec.p
    if spec.kind == FieldKind.closure:
        return spec.char
    return 0


def contains_zeta(spec: FieldSpec, n: int) -> bool:
    if n == 1:
        return True
    char = characteristic(spec)
    if char and n % char == 0:
        return False
    if spec.kind in (FieldKind.rational, FieldKind.real_cyclotomic):
        return n <= 2
    if spec.kind == FieldKind.cyclotomic:
        return reduced_cyclotomic_index(spec.m) % n == 0
    if spec.kind in FINITE_KINDS:
        return (spec.q - 1) % n == 0
    return True


def _galois_fixes_eta(n: int, modulus: int, fixing) -> bool:
    """
    Every a in (Z/L)^x fixing the field (fixing(a) true) must satisfy a = +-1 (mod n),
    L = lcm(n, modulus)
    """
    big = lcm(n, modulus)
    for a in range(1, big + 1):
        if gcd(a, big) != 1:
            continue
        if fixing(a) and a % n not in (1 % n, (n - 1) % n):
            return False
    return True


def contains_zeta_plus(spec: FieldSpec, n: int) -> bool:
    char = characteristic(spec)
    if char and n % char == 0:
        raise CharDividesN(f"characteristic {char} divides {n}")
    if spec.kind == FieldKind.rational:
        return n in RATIONAL_ETA_INDICES
    if spec.kind == FieldKind.cyclotomic:
        m = reduced_cyclotomic_index(spec.m)
        return _galois_fixes_eta(n, m, lambda a: a % m == 1)
    if spec.kind == FieldKind.real_cyclotomic:
        m = reduced_cyclotomic_index(spec.m)
        return _galois_fixes_eta(n, m, lambda a: a % m in (1, m - 1))
    if spec.kind in FINITE_KINDS:
        return spec.q % n in (1 % n, (n - 1) % n)
    return True


def fp_degree_at_least(spec: FieldSpec, r: int) -> bool:
    if characteristic(spec) == 0:
        raise NotPositiveCharacteristic(f"{spec} has characteristic 0")
    if spec.kind == FieldKind.finite:
        return spec.k >= r
    return True


def contains_fq(spec: FieldSpec, q: int) -> bool:
    factored = prime_power(q)
    if factored is None:
        raise NonPrimePower(f"{q} is not a prime power")
    p, j = factored
    if spec.kind in FINITE_KINDS:
        return spec.p == p and spec.k % j == 0
    if spec.kind == FieldKind.closure:
        return spec.char == p
    return False


def cardinality_at_least(spec: FieldSpec, c: int) -> bool:
    if spec.kind == FieldKind.finite:
        return spec.q >= c
    return True


# ---------------------------------------------------------------- concrete fields


@lru_cache(maxsize=None)
def prime_field(p: int) -> PrimeField:
    return PrimeField(p)


@lru_cache(maxsize=None)
def finite_field(p: int, k: int = 1) -> FiniteFieldBase:
    if k == 1:
        return prime_field(p)
    logger.debug(f"constructing F_{p}^{k}")
    return ExtField(p, k, canonical_irreducible(p, k), table_limit=get_settings().table_field_limit)


@lru_cache(maxsize=None)
def rationals() -> Rationals:
    return Rationals()


@lru_cache(maxsize=None)
def number_field(minpoly: IntPoly) -> ConcreteField:
    if minpoly.degree == 1:
        return rationals()
    return NumberField(minpoly)


def cyclotomic_field(m: int) -> ConcreteField:
    return number_field(cyclotomic_poly(m))


def eta_field(n: int) -> ConcreteField:
    return number_field(eta_min_poly(n))


def concrete_field_for(spec: FieldSpec) -> ConcreteField:
    """
    A concrete model of the described field, or of its constant field for F_q(t)
    """
    if spec.kind == FieldKind.rational:
        return rationals()
    if spec.kind == FieldKind.cyclotomic:
        return cyclotomic_field(spec.m)
    if spec.kind == FieldKind.real_cyclotomic:
        return eta_field(spec.m)
    if spec.kind in FINITE_KINDS:
        return finite_field(spec.p, spec.k)
    raise UnsupportedDescriptor(f"{spec} has no concrete model")


def build_realization(requirements: RealizationRequirements) -> ConcreteField:
    """
    Smallest field of the requested characteristic satisfying the requirements.

    In positive characteristic the answer is F_{p^k} with k the least multiple of the degrees
    forced by each requirement (and dividing ambient_degree when given). In characteristic 0
    the answer is minimal for a single requirement; several requirements are met inside one
    cyclotomic (or real cyclotomic) field of their lcm.
    """
    char = requirements.char
    if char:
        return _build_finite_realization(requirements)

    if requirements.fp_degree_min > 1 or requirements.contains_fq is not None:
        raise InconsistentRequirements("F_p-degree and F_q requirements need characteristic p")
    roots = sorted({n for n in requirements.roots_needed if n > 2})
    etas = sorted({n for n in requirements.eta_needed if n not in RATIONAL_ETA_INDICES})
    if not roots and not etas:
        return rationals()
    if not roots:
        return eta_field(lcm(*etas))
    big = lcm(*roots, *etas)
    return cyclotomic_field(big // 2 if big % 4 == 2 else big)


def _build_finite_realization(requirements: RealizationRequirements) -> FiniteFieldBase:
    p = requirements.char
    degree = 1
    for n in requirements.roots_needed:
        if n > 1 and n % p == 0:
            raise InconsistentRequirements(f"characteristic {p} divides root order {n}")
        degree = lcm(degree, multiplicative_order(p, n))
    for n in requirements.eta_needed:
        if n > 1 and n % p == 0:
            raise InconsistentRequirements(f"characteristic {p} divides eta index {n}")
        degree = lcm(degree, eta_degree(p, n))
    if requirements.contains_fq is not None:
        factored = prime_power(requirements.contains_fq)
        if factored is None or factored[0] != p:
            raise InconsistentRequirements(
                f"F_{requirements.contains_fq} does not live in characteristic {p}"
            )
        degree = lcm(degree, factored[1])

    r = max(requirements.fp_degree_min, 1)
    k = degree * -(-r // degree)
    ambient = requirements.ambient_degree
    if ambient is not None:
        fitting = [d for d in divisors(ambient) if d % degree == 0 and d >= r]
        if not fitting:
            raise InconsistentRequirements(
                f"no subfield of F_{p}^{ambient} has degree a multiple of {degree} and >= {r}"
            )
        k = int(min(fitting))
    logger.debug(f"realization for {requirements}: F_{p}^{k}")
    return finite_field(p, k)


def mult_order(e: FieldElem) -> int:
    return e.field.mult_order(e.value)


# ---------------------------------------------------------------- special elements


def dickson_value(k: int, x: FieldElem) -> FieldElem:
    """D_k(x) with D_k(z + 1/z) = z^k + z^-k"""
    previous, current = x.field.element(x.field.from_int(2)), x
    if k == 0:
        return previous
    for _ in range(k - 1):
        previous, current = current, x * current - previous
    return current


def eta_element(field: ConcreteField, n: int) -> FieldElem:
    """Some zeta_n + zeta_n^-1 inside the field (a root of eta_min_poly(n))"""
    char = field.characteristic
    if char and n % char == 0:
        raise CharDividesN(f"characteristic {char} divides {n}")
    if isinstance(field, FiniteFieldBase):
        if (field.size - 1) % n == 0:
            zeta = field.element(field.primitive_nth_root(n))
            return zeta + zeta.inverse()
        psi = eta_min_poly(n)
        for value in field.elements():
            if _evaluate(psi, field.element(value)).is_zero():
                return field.element(value)
        raise MissingRoots(f"F_{field.size} does not contain zeta_{n} + zeta_{n}^-1")
    if isinstance(field, Rationals):
        psi = eta_min_poly(n)
        if psi.degree != 1:
            raise MissingRoots(f"Q does not contain zeta_{n} + zeta_{n}^-1")
        return field.element(field.from_int(-psi.coefficients[0]))
    if isinstance(field, NumberField):
        if field.eta_index is not None and field.eta_index % n == 0:
            return dickson_value(field.eta_index // n, field.element(field.generator))
        if field.unity_order % n == 0:
            zeta = field.element(field.primitive_nth_root(n))
            return zeta + zeta.inverse()
        if eta_min_poly(n).degree == 1:
            return field.element(field.from_int(-eta_min_poly(n).coefficients[0]))
    raise MissingRoots(f"{field!r} does not contain zeta_{n} + zeta_{n}^-1")


def _evaluate(poly: IntPoly, x: FieldElem) -> FieldElem:
    result = x.field.element(x.field.zero)
    for c in reversed(poly.coefficients):
        result = result * x + c
    return result


def primitive_root_of_unity(field: ConcreteField, n: int) -> FieldElem:
    return field.element(field.primitive_nth_root(n))


# ---------------------------------------------------------------- subfields and embeddings


def _require_finite(e: FieldElem) -> FiniteFieldBase:
    if not isinstance(e.field, FiniteFieldBase):
        raise InvalidDescriptor(f"{e.field!r} is not a finite field")
    return e.field


def subfield_degree(e: FieldElem) -> int:
    """[F_p(e) : F_p], the least d with e^(p^d) = e"""
    field = _require_finite(e)
    for d in divisors(field.k):
        if e ** (field.p**d) == e:
            return int(d)
    return field.k


def element_min_poly(e: FieldElem) -> IntPoly:
    field = _require_finite(e)
    conjugates = [e ** (field.p**i) for i in range(subfield_degree(e))]
    coeffs = [field.element(field.one)]
    for c in conjugates:
        shifted = [field.element(field.zero)] + coeffs
        scaled = [c * x for x in coeffs] + [field.element(field.zero)]
        coeffs = [a - b for a, b in zip(shifted, scaled)]
    return IntPoly(_prime_part(x) for x in coeffs)


def _prime_part(x: FieldElem) -> int:
    value = x.value
    if isinstance(value, tuple):
        if any(value[1:]):
            raise ArithmeticError(f"{value} is not in the prime field")
        return value[0]
    return value


_embedding_roots: Dict[Tuple[tuple, tuple], tuple] = {}


def embed(e: FieldElem, target: ConcreteField) -> FieldElem:
    """Image of e under the canonical embedding F_{p^j} -> F_{p^k}, j | k"""
    source = e.field
    if source == target:
        return e
    if not isinstance(target, FiniteFieldBase):
        raise InvalidDescriptor(f"{target!r} is not a finite field")
    source = _require_finite(e)
    if source.p != target.p or target.k % source.k:
        raise FieldTooSmall(f"F_{source.size} does not embed in F_{target.size}")
    if isinstance(source, PrimeField):
        return target.element(target.from_int(e.value))

    cache_key = (source.key, target.key)
    if cache_key not in _embedding_roots:
        _embedding_roots[cache_key] = _find_modulus_root(source.modulus, target)
    alpha = target.element(_embedding_roots[cache_key])
    image = target.element(target.zero)
    power = target.element(target.one)
    for c in e.value:
        image = image + power * c
        power = power * alpha
    return image


def _find_modulus_root(modulus: IntPoly, target: FiniteFieldBase):
    for value in target.elements():
        if _evaluate(modulus, target.element(value)).is_zero():
            return value
    raise FieldTooSmall(f"{modulus} has no root in F_{target.size}")


# ---------------------------------------------------------------- characteristic 2 subfield check


def lemma_8_1_check(q: int) -> Lemma81Report:
    """
    For q = 2^r: F_2(zeta_{q+1}) = F_{q^2} and F_2(zeta_{q+1} + zeta_{q+1}^-1) = F_q,
    measured by the degrees of the generated subfields inside F_{q^2}
    """
    factored = prime_power(q)
    if factored is None or factored[0] != 2:
        raise InvalidDescriptor(f"{q} is not a power of 2")
    r = factored[1]
    field = finite_field(2, 2 * r)
    zeta = primitive_root_of_unity(field, q + 1)
    eta = zeta + zeta.inverse()
    report = Lemma81Report(
        q=q,
        r=r,
        zeta_order=mult_order(zeta),
        zeta_degree=subfield_degree(zeta),
        eta_degree=subfield_degree(eta),
    )
    logger.info(f"q={q}: [F2(zeta):F2]={report.zeta_degree}, [F2(eta):F2]={report.eta_degree}")
    return report
