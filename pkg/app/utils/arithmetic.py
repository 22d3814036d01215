from math import gcd
from typing import Optional, Tuple

from sympy import factorint
from sympy.ntheory import n_order


def prime_power(q: int) -> Optional[Tuple[int, int]]:
    """(p, k) with q = p^k, or None when q is not a prime power"""
    if q < 2:
        return None
    factors = factorint(q)
    if len(factors) != 1:
        return None
    ((p, k),) = factors.items()
    return int(p), int(k)


def multiplicative_order(a: int, n: int) -> int:
    if n <= 2:
        return 1
    return int(n_order(a % n, n))


def eta_degree(p: int, n: int) -> int:
    """Smallest d >= 1 with p^d = +-1 (mod n); the degree of F_p(zeta_n + zeta_n^-1)"""
    if n <= 2:
        return 1
    if gcd(p, n) != 1:
        raise ValueError(f"{p} and {n} are not coprime")
    d, power = 1, p % n
    while power not in (1, n - 1):
        power = power * p % n
        d += 1
    return d


def reduced_cyclotomic_index(m: int) -> int:
    """m~ = m for m even, 2m for m odd; the roots of unity in Q(zeta_m) have order m~"""
    return m if m % 2 == 0 else 2 * m


def gnpr_degree_s(n: int, p: int) -> int:
    """[F_p(zeta_n^2) : F_p], the order of p modulo n / gcd(n, 2)"""
    return multiplicative_order(p, n // gcd(n, 2))


def lcm(*values: int) -> int:
    result = 1
    for v in values:
        result = result * v // gcd(result, v)
    return result
