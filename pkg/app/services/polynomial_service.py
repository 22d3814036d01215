import logging
from functools import lru_cache
from itertools import product
from typing import List

from sympy import Poly
from sympy import cyclotomic_poly as sympy_cyclotomic_poly
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from app.models.int_poly import X, IntPoly

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> IntPoly:
    if n < 1:
        raise ValueError(f"cyclotomic index must be positive, got {n}")
    return IntPoly.from_sympy(sympy_cyclotomic_poly(n, X, polys=True))


@lru_cache(maxsize=None)
def eta_min_poly(n: int) -> IntPoly:
    """
    Minimal polynomial over Q of eta_n = zeta_n + zeta_n^-1 = 2cos(2pi/n).

    For n >= 3, Phi_n is palindromic of degree 2d and equals x^d * psi(x + 1/x); psi is
    peeled off from the top coefficient down.
    """
    if n < 1:
        raise ValueError(f"eta index must be positive, got {n}")
    if n == 1:
        return IntPoly([-2, 1])
    if n == 2:
        return IntPoly([2, 1])

    remainder = cyclotomic_poly(n).to_sympy()
    d = remainder.degree() // 2
    psi = [0] * (d + 1)
    for j in range(d, -1, -1):
        c = int(remainder.coeff_monomial(X ** (d + j)))
        psi[j] = c
        remainder = remainder - Poly(c * X ** (d - j) * (X**2 + 1) ** j, X)
    if not remainder.is_zero:
        raise ArithmeticError(f"Phi_{n} is not palindromic")
    return IntPoly(psi)


def is_irreducible_mod_p(poly: IntPoly, p: int) -> bool:
    coeffs = [c % p for c in poly.high_to_low()]
    return bool(gf_irreducible_p(ZZ.map(coeffs), p, ZZ))


@lru_cache(maxsize=None)
def canonical_irreducible(p: int, k: int) -> IntPoly:
    """
    Lexicographically smallest monic irreducible polynomial of degree k over F_p,
    coefficients (c_0, ..., c_{k-1}) compared low-to-high
    """
    for tail in product(range(p), repeat=k):
        candidate = IntPoly(list(tail) + [1])
        if is_irreducible_mod_p(candidate, p):
            logger.debug(f"canonical modulus for F_{p}^{k}: {candidate}")
            return candidate
    raise ArithmeticError(f"no irreducible polynomial of degree {k} over F_{p}")


def factor_mod_p(poly: IntPoly, p: int) -> List[IntPoly]:
    """Monic irreducible factors of poly over F_p, with multiplicity, sorted"""
    _, factors = poly.to_sympy(modulus=p).factor_list()
    result = []
    for factor, multiplicity in factors:
        reduced = IntPoly(int(c) % p for c in reversed(factor.all_coeffs()))
        result.extend([reduced] * multiplicity)
    return sorted(result, key=lambda f: (f.degree, f.coefficients))


def poly_divides(divisor: IntPoly, dividend: IntPoly) -> bool:
    _, remainder = dividend.to_sympy().div(divisor.to_sympy())
    return remainder.is_zero
