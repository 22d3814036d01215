from typing import Iterable, Tuple

from sympy import Poly, symbols

X = symbols("x")


class IntPoly:
    """
    Integer polynomial, coefficients stored low-to-high degree.
    Trailing zeros are stripped so the leading coefficient is nonzero unless the
    polynomial is zero (stored as the empty tuple).
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[int]):
        coeffs = [int(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients: Tuple[int, ...] = tuple(coeffs)

    @classmethod
    def from_sympy(cls, poly: Poly) -> "IntPoly":
        return cls(int(c) for c in reversed(poly.all_coeffs()))

    def to_sympy(self, modulus: int = None) -> Poly:
        coeffs = list(reversed(self.coefficients)) or [0]
        if modulus is not None:
            return Poly(coeffs, X, modulus=modulus)
        return Poly(coeffs, X)

    def high_to_low(self) -> list:
        return list(reversed(self.coefficients))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_monic(self) -> bool:
        return bool(self.coefficients) and self.coefficients[-1] == 1

    def evaluate(self, value):
        result = 0
        for c in reversed(self.coefficients):
            result = result * value + c
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPoly) and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def __len__(self) -> int:
        return len(self.coefficients)

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coefficients)})"

    def __str__(self) -> str:
        return str(self.to_sympy().as_expr())
