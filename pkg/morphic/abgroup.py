"""
Finitely generated abelian groups up to isomorphism.

A group is stored as its free rank plus the invariant-factor chain
d1 | d2 | ... | dk (every di >= 2, ascending), which makes dataclass equality
the same thing as isomorphism.
"""

import itertools
import logging
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

from sympy import factorint
from sympy.functions.combinatorial.numbers import partition
from sympy.utilities.iterables import partitions

from .errors import DomainError
from .exact_linalg import IntMatrix, snf

logger = logging.getLogger(__name__)


class _Infinite:
    """Marker for the order or exponent of a group with positive free rank."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Infinite"

    def __str__(self):
        return "infinite"

    def __reduce__(self):
        return (_Infinite, ())


Infinite = _Infinite()

GroupOrder = Union[int, _Infinite]


@dataclass(frozen=True)
class FgAbGroup:
    free_rank: int
    invariant_factors: tuple

    def __post_init__(self):
        if self.free_rank < 0:
            raise DomainError(f"free rank {self.free_rank} is negative")
        factors = self.invariant_factors
        if any(d < 2 for d in factors):
            raise DomainError(f"invariant factors {factors} must all be >= 2")
        if any(b % a for a, b in zip(factors, factors[1:])):
            raise DomainError(f"invariant factors {factors} do not form a divisibility chain")

    @classmethod
    def trivial(cls) -> "FgAbGroup":
        return cls(0, ())

    @classmethod
    def free(cls, rank: int) -> "FgAbGroup":
        return cls(rank, ())

    @classmethod
    def cyclic(cls, n: int) -> "FgAbGroup":
        return canonicalize([n], 0)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def torsion_part(self) -> "FgAbGroup":
        return FgAbGroup(0, self.invariant_factors)

    def to_expr(self) -> str:
        """Canonical expression, e.g. 'Z^2 + Z/2 + Z/4'; the trivial group is '0'."""
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return self.to_expr()


@dataclass(frozen=True)
class PrimaryDecomposition:
    """Exponent partitions of the torsion part, keyed by prime (descending parts)."""

    components: tuple

    def as_dict(self) -> dict:
        return {p: list(parts) for p, parts in self.components}

    def recombine(self) -> tuple:
        """CRT recombination back to invariant factors, largest exponents together."""
        if not self.components:
            return ()
        width = max(len(parts) for _, parts in self.components)
        factors = []
        for k in range(width):
            d = 1
            for p, parts in self.components:
                if k < len(parts):
                    d *= p ** parts[k]
            factors.append(d)
        return tuple(reversed(factors))


def canonicalize(cyclic_orders: Sequence[int], free_rank: int = 0) -> FgAbGroup:
    """Invariant-factor form of Z^free_rank + Z/n1 + Z/n2 + ..."""
    for n in cyclic_orders:
        if n < 1:
            raise DomainError(f"cyclic order {n} must be positive")
    if free_rank < 0:
        raise DomainError(f"free rank {free_rank} is negative")
    orders = [n for n in cyclic_orders if n > 1]
    diagonal = snf(IntMatrix.diagonal(orders)).diagonal
    return FgAbGroup(free_rank, tuple(d for d in diagonal if d > 1))


def from_relations(rel: IntMatrix) -> FgAbGroup:
    """Cokernel Z^g / column-span(rel) where g = rel.rows."""
    diagonal = snf(rel).diagonal
    # rows beyond the diagonal carry no relation at all
    free_rank = rel.rows - len(diagonal) + sum(1 for d in diagonal if d == 0)
    return FgAbGroup(free_rank, tuple(d for d in diagonal if d > 1))


def iso_eq(g: FgAbGroup, h: FgAbGroup) -> bool:
    """Isomorphism test; both sides are already canonical."""
    return g.free_rank == h.free_rank and g.invariant_factors == h.invariant_factors


def direct_sum(*groups: FgAbGroup) -> FgAbGroup:
    """Canonical form of the direct sum of any number of groups."""
    return canonicalize(
        [d for g in groups for d in g.invariant_factors],
        sum(g.free_rank for g in groups),
    )


def order(g: FgAbGroup) -> GroupOrder:
    """Number of elements, or Infinite."""
    if g.free_rank:
        return Infinite
    return math.prod(g.invariant_factors)


def exponent(g: FgAbGroup) -> GroupOrder:
    """Least positive n with nM = 0, or Infinite."""
    if g.free_rank:
        return Infinite
    return g.invariant_factors[-1] if g.invariant_factors else 1


def torsion_exponent(g: FgAbGroup) -> int:
    return exponent(g.torsion_part)


def primary_decomposition(g: FgAbGroup) -> PrimaryDecomposition:
    """p-adic valuations of the invariant factors, written descending per prime."""
    valuations = {}
    for d in g.invariant_factors:
        for p, e in factorint(d).items():
            valuations.setdefault(p, []).append(e)
    return PrimaryDecomposition(
        tuple((p, tuple(sorted(valuations[p], reverse=True))) for p in sorted(valuations))
    )


def primary_components(g: FgAbGroup) -> list:
    """The (p)-primary summands of the torsion part, ascending p."""
    return [
        canonicalize([p ** e for e in parts], 0)
        for p, parts in primary_decomposition(g).components
    ]


def primary_cyclic_factors(g: FgAbGroup) -> list:
    """Prime-power cyclic orders of the torsion part, ascending."""
    return sorted(
        p ** e for p, parts in primary_decomposition(g).components for e in parts
    )


def direct_summands(g: FgAbGroup) -> list:
    """Every class A with g = A + B for some B (finite g), sorted by order then factors."""
    if not g.is_finite:
        raise DomainError(f"direct summands are enumerated for finite groups only, got {g}")
    factors = Counter(primary_cyclic_factors(g))
    keys = sorted(factors)
    summands = set()
    for counts in itertools.product(*(range(factors[q] + 1) for q in keys)):
        chosen = [q for q, c in zip(keys, counts) for _ in range(c)]
        summands.add(canonicalize(chosen, 0))
    return sorted(summands, key=_group_sort_key)


def class_count(n: int) -> int:
    """Number of abelian groups of order n."""
    return math.prod(int(partition(e)) for e in factorint(n).values())


def _group_sort_key(g: FgAbGroup):
    return (order(g), len(g.invariant_factors), g.invariant_factors)


def _groups_of_order(n: int) -> list:
    per_prime = []
    for p, v in sorted(factorint(n).items()):
        # partitions() reuses its dict, so copy each one out
        shapes = [
            sorted((part for part, mult in shape.items() for _ in range(mult)), reverse=True)
            for shape in (dict(s) for s in partitions(v))
        ]
        per_prime.append((p, shapes))
    groups = []
    for choice in itertools.product(*(shapes for _, shapes in per_prime)):
        decomposition = PrimaryDecomposition(
            tuple((p, tuple(shape)) for (p, _), shape in zip(per_prime, choice))
        )
        groups.append(FgAbGroup(0, decomposition.recombine()))
    return sorted(groups, key=_group_sort_key)


def enumerate_groups(max_order: int) -> Iterator[FgAbGroup]:
    """Every finite abelian group of order <= max_order exactly once, deterministic order."""
    if max_order < 1:
        raise DomainError(f"max_order must be >= 1, got {max_order}")
    for n in range(1, max_order + 1):
        yield from _groups_of_order(n)


def element_order_multiset(orders: Sequence[int]) -> Counter:
    """Brute-force multiset of element orders of Z/n1 + Z/n2 + ..."""
    counts = Counter()
    for x in itertools.product(*(range(n) for n in orders)):
        counts[math.lcm(*(n // math.gcd(n, xi) for n, xi in zip(orders, x)))] += 1
    return counts
