import logging
from collections import Counter, deque
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Set, Tuple

from app.models.concrete_field import ConcreteField
from app.models.mat2 import Mat2
from app.utils.arithmetic import lcm

logger = logging.getLogger(__name__)


class FiniteGroup:
    """
    A finite group given by its element list and a multiplication function.

    Elements are addressed by their index in `elements`; methods take and return indices.
    Products are computed on demand through `multiply` and memoised, so groups of a few
    thousand elements never need a full Cayley table.
    """

    def __init__(
        self,
        elements: Sequence[Hashable],
        multiply: Callable[[Hashable, Hashable], Hashable],
        identity: Hashable,
        generators: Iterable[int] = (),
        name: str = "group",
        labels: Optional[Sequence[str]] = None,
    ):
        self.elements: List[Hashable] = list(elements)
        self._index: Dict[Hashable, int] = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise ValueError(f"{name}: repeated elements")
        self.multiply = multiply
        self.identity = self._index[identity]
        self.generators: List[int] = list(generators)
        self.labels: List[str] = list(labels) if labels else [f"g{i}" for i in self.generators]
        self.name = name
        self._products: Dict[Tuple[int, int], int] = {}
        self._orders: Dict[int, int] = {}
        self._inverses: Dict[int, int] = {}
        self._generating_set: Optional[List[int]] = None
        self._spanning: Optional[bool] = None

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"{self.name}(order={self.order})"

    def index(self, element: Hashable) -> int:
        return self._index[element]

    def __contains__(self, element: Hashable) -> bool:
        return element in self._index

    def mul(self, i: int, j: int) -> int:
        key = (i, j)
        product = self._products.get(key)
        if product is None:
            product = self._index[self.multiply(self.elements[i], self.elements[j])]
            self._products[key] = product
        return product

    def element_order(self, i: int) -> int:
        cached = self._orders.get(i)
        if cached is not None:
            return cached
        n, current = 1, i
        while current != self.identity:
            current = self.mul(current, i)
            n += 1
        self._orders[i] = n
        return n

    def power(self, i: int, e: int) -> int:
        e %= self.element_order(i)
        result, base = self.identity, i
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, i: int) -> int:
        cached = self._inverses.get(i)
        if cached is None:
            cached = self.power(i, self.element_order(i) - 1)
            self._inverses[i] = cached
        return cached

    def conjugate(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.mul(self.mul(g, x), self.inv(g))

    def commutator(self, x: int, y: int) -> int:
        return self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y)))

    def order_profile(self) -> Tuple[Tuple[int, int], ...]:
        """Sorted (element order, count) pairs"""
        counts = Counter(self.element_order(i) for i in range(self.order))
        return tuple(sorted(counts.items()))

    def exponent(self) -> int:
        return lcm(*(self.element_order(i) for i in range(self.order)))

    def closure(self, generators: Iterable[int]) -> Set[int]:
        """Indices of the subgroup generated by the given indices"""
        generators = [g for g in dict.fromkeys(generators) if g != self.identity]
        members = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for g in generators:
                y = self.mul(x, g)
                if y not in members:
                    members.add(y)
                    queue.append(y)
        return members

    def generating_set(self) -> List[int]:
        """
        A small generating set, picked greedily: repeatedly add the element of largest order
        outside the current subgroup (smallest index on ties)
        """
        if self._generating_set is not None:
            return self._generating_set
        if 0 < len(self.generators) <= 2 and len(self.closure(self.generators)) == self.order:
            self._generating_set = list(self.generators)
            return self._generating_set

        chosen: List[int] = []
        span = {self.identity}
        by_order = sorted(range(self.order), key=lambda i: (-self.element_order(i), i))
        while len(span) < self.order:
            pick = next(i for i in by_order if i not in span)
            chosen.append(pick)
            span = self.closure(chosen)
        self._generating_set = chosen
        return chosen

    def _generators_or_search(self) -> List[int]:
        if self._spanning is None:
            spans = len(self.closure(self.generators)) == self.order
            self._spanning = bool(self.generators) and spans
        return self.generators if self._spanning else self.generating_set()

    def is_abelian(self) -> bool:
        gens = self._generators_or_search()
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)

    def center(self) -> Set[int]:
        gens = self._generators_or_search()
        return {x for x in range(self.order) if all(self.mul(x, g) == self.mul(g, x) for g in gens)}

    def normal_closure(self, subset: Iterable[int]) -> Set[int]:
        gens = self._generators_or_search()
        members = self.closure(subset)
        while True:
            conjugates = {self.conjugate(g, x) for g in gens for x in members}
            if conjugates <= members:
                return members
            members = self.closure(members | conjugates)

    def is_normal(self, subgroup: Set[int]) -> bool:
        gens = self._generators_or_search()
        return all(self.conjugate(g, x) in subgroup for g in gens for x in subgroup)

    def derived_subgroup(self) -> Set[int]:
        gens = self._generators_or_search()
        return self.normal_closure(self.commutator(a, b) for a in gens for b in gens)

    def conjugacy_class(self, x: int) -> Set[int]:
        gens = self._generators_or_search()
        members = {x}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for g in gens:
                z = self.conjugate(g, y)
                if z not in members:
                    members.add(z)
                    queue.append(z)
        return members

    def conjugacy_classes(self) -> List[Set[int]]:
        seen: Set[int] = set()
        classes = []
        for x in range(self.order):
            if x in seen:
                continue
            cls = self.conjugacy_class(x)
            seen |= cls
            classes.append(cls)
        return classes

    def cayley_table(self) -> List[List[int]]:
        return [[self.mul(i, j) for j in range(self.order)] for i in range(self.order)]

    def check_axioms(self) -> bool:
        """
        Identity, inverses and associativity. Associativity is checked with Light's test over
        a generating set, which is exhaustive for the whole table.
        """
        n = self.order
        e = self.identity
        if any(self.mul(e, x) != x or self.mul(x, e) != x for x in range(n)):
            return False
        for x in range(n):
            y = self.inv(x)
            if self.mul(x, y) != self.identity or self.mul(y, x) != self.identity:
                return False
        for a in self.generating_set():
            for x in range(n):
                xa = self.mul(x, a)
                for y in range(n):
                    if self.mul(xa, y) != self.mul(x, self.mul(a, y)):
                        logger.debug(f"{self.name}: associativity fails at ({x}, {a}, {y})")
                        return False
        return True


class MatrixGroup(FiniteGroup):
    """A FiniteGroup whose elements are Mat2 over a common field"""

    def __init__(
        self,
        field: ConcreteField,
        elements: Sequence[Mat2],
        generators: Sequence[Mat2] = (),
        labels: Optional[Sequence[str]] = None,
        name: str = "matrix group",
    ):
        self.field = field
        index = {m: i for i, m in enumerate(elements)}
        super().__init__(
            elements,
            Mat2.__mul__,
            Mat2.identity(field),
            generators=[index[g] for g in generators],
            name=name,
            labels=labels or [f"g{i}" for i in range(len(generators))],
        )

    @property
    def matrices(self) -> List[Mat2]:
        return self.elements

    @property
    def generator_matrices(self) -> List[Mat2]:
        return [self.elements[i] for i in self.generators]

    def labelled_generators(self) -> List[Tuple[str, Mat2]]:
        return list(zip(self.labels, self.generator_matrices))

    def scalar_members(self) -> List[Mat2]:
        return [m for m in self.elements if m.is_scalar()]
