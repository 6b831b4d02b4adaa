"""
Modules over Z, Z/n and finite products of Z/n_i.

Ideals of Z and Z/n are represented by one nonnegative generator.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from sympy.ntheory.modular import crt

from config import PRODUCT_BUDGET

from .abgroup import FgAbGroup, direct_sum, exponent
from .endo_oracle import FinitePresentation, is_endo_morphic, multiplication_endo
from .errors import BudgetExceededError, DisagreementError, DomainError
from .morphic_core import is_a_morphic, is_weakly_morphic

logger = logging.getLogger(__name__)


class _Zero:
    """Marker for the zero ideal of Z."""

    def __repr__(self):
        return "Zero"


Zero = _Zero()


@dataclass(frozen=True)
class IntegerRing:
    def __str__(self):
        return "Z"


@dataclass(frozen=True)
class ModularRing:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"Z/{self.n} needs n >= 1")

    def __str__(self):
        return f"Z/{self.n}"


@dataclass(frozen=True)
class ProductRing:
    components: tuple

    def __post_init__(self):
        if not self.components:
            raise DomainError("a product ring needs at least one component")
        if not all(isinstance(c, ModularRing) for c in self.components):
            raise DomainError("product ring components must be Z/n rings")

    @property
    def size(self) -> int:
        return math.prod(c.n for c in self.components)

    def __str__(self):
        return " x ".join(str(c) for c in self.components)


BaseRing = Union[IntegerRing, ModularRing, ProductRing]


@dataclass(frozen=True)
class RingModule:
    """An abelian group with a compatible module structure over `ring`.

    Over a ProductRing, `group` is a tuple with one FgAbGroup per component.
    """

    ring: BaseRing
    group: Union[FgAbGroup, tuple]

    def __post_init__(self):
        ring, group = self.ring, self.group
        if isinstance(ring, IntegerRing):
            if not isinstance(group, FgAbGroup):
                raise DomainError("a Z-module is a single group")
        elif isinstance(ring, ModularRing):
            _require_killed_by(group, ring.n)
        else:
            if not isinstance(group, tuple) or len(group) != len(ring.components):
                raise DomainError("a product-ring module needs one group per component")
            for g, c in zip(group, ring.components):
                _require_killed_by(g, c.n)


def _require_killed_by(g: FgAbGroup, n: int):
    if not isinstance(g, FgAbGroup):
        raise DomainError(f"expected a group, got {g!r}")
    if not g.is_finite or n % exponent(g):
        raise DomainError(f"{g} is not a Z/{n}-module")


def ann_ring(m: FgAbGroup):
    """Generator of Ann_Z(M): the exponent, or Zero when M has free rank."""
    return exponent(m) if m.is_finite else Zero


def s_m_ring(m: FgAbGroup) -> BaseRing:
    """Z / Ann_Z(M), the ring of multiplication maps of M."""
    return ModularRing(exponent(m)) if m.is_finite else IntegerRing()


def _is_regular_element(n: int, a: int) -> bool:
    return any((a - a * a * x) % n == 0 for x in range(n))


def regular_elements(ring: BaseRing) -> list:
    if isinstance(ring, ModularRing):
        return [a for a in range(ring.n) if _is_regular_element(ring.n, a)]
    raise DomainError(f"regular elements are listed for Z/n only, got {ring}")


def is_regular_ring(r: BaseRing) -> bool:
    if isinstance(r, IntegerRing):
        return False
    if isinstance(r, ProductRing):
        return all(is_regular_ring(c) for c in r.components)
    regular = len(regular_elements(r)) == r.n
    squarefree = all(r.n % (p * p) for p in range(2, math.isqrt(r.n) + 1))
    if regular != squarefree:
        raise DisagreementError(f"{r}: witness search says {regular}, squarefree test says {squarefree}")
    return regular


def is_weakly_morphic_over(m: RingModule) -> bool:
    ring = m.ring
    if isinstance(ring, IntegerRing):
        return is_weakly_morphic(m.group).holds
    if isinstance(ring, ModularRing):
        # Z -> Z/n is onto, so every multiplication map comes from some a in 0..n-1
        return all(is_a_morphic(m.group, a) for a in range(ring.n))
    return all(
        is_weakly_morphic_over(RingModule(c, g)) for c, g in zip(ring.components, m.group)
    )


def _product_predicate(modules: Sequence[RingModule]) -> bool:
    """Every scalar tuple (a_1, ..., a_k) of the product ring acts morphically.

    Decided element-level by the endomorphism oracle, one component at a time:
    a module over a product ring is the product of its components.
    """
    presentations = [FinitePresentation.from_group(m.group) for m in modules]
    morphic = [
        [is_endo_morphic(multiplication_endo(p, a)) for a in range(m.ring.n)]
        for p, m in zip(presentations, modules)
    ]
    for scalars in itertools.product(*(range(m.ring.n) for m in modules)):
        if not all(verdicts[a] for verdicts, a in zip(morphic, scalars)):
            logger.debug("scalar tuple %s is not morphic", scalars)
            return False
    return True


def product_module_check(components: Sequence[RingModule], budget: int = PRODUCT_BUDGET) -> bool:
    """Weakly-morphic over the product ring.

    The scalar-tuple scan runs on the endomorphism oracle and the componentwise
    verdict on the closed forms; they must agree.
    """
    if not components:
        raise DomainError("product_module_check needs at least one component")
    for m in components:
        if not isinstance(m.ring, ModularRing):
            raise DomainError(f"component ring {m.ring} is not Z/n")
    size = math.prod(m.ring.n for m in components)
    if size > budget:
        raise BudgetExceededError("product ring scalars", size, budget)
    direct = _product_predicate(components)
    componentwise = all(is_weakly_morphic_over(m) for m in components)
    if direct != componentwise:
        raise DisagreementError(
            f"product predicate {direct} differs from componentwise {componentwise}"
        )
    return direct


def product_module(components: Sequence[RingModule]) -> RingModule:
    return RingModule(
        ProductRing(tuple(m.ring for m in components)), tuple(m.group for m in components)
    )


def crt_scalar(residues: Sequence[int], moduli: Sequence[int]) -> int:
    """The a mod prod(moduli) with a == residues[i] mod moduli[i]."""
    if math.prod(moduli) == 1:
        return 0
    solution = crt(list(moduli), list(residues))
    if solution is None:
        raise DomainError(f"residues {residues} are incompatible mod {moduli}")
    return int(solution[0])


def crt_identify(components: Sequence[RingModule]) -> RingModule:
    """Identify a module over a coprime product of Z/n_i with a Z/(prod n_i)-module."""
    moduli = [m.ring.n for m in components]
    for x, y in itertools.combinations(moduli, 2):
        if math.gcd(x, y) != 1:
            raise DomainError(f"moduli {moduli} are not pairwise coprime")
    return RingModule(ModularRing(math.prod(moduli)), direct_sum(*(m.group for m in components)))


def is_unit(ring: BaseRing, a: int) -> bool:
    if isinstance(ring, IntegerRing):
        return a in (1, -1)
    if isinstance(ring, ModularRing):
        return math.gcd(a, ring.n) == 1
    raise DomainError(f"units are decided for Z and Z/n only, got {ring}")


def morphic_element_witness(ring: BaseRing, a: int) -> Optional[int]:
    """b with aR == Ann_R(b) and Ann_R(a) == bR, if one exists."""
    if isinstance(ring, IntegerRing):
        if a == 0:
            return 1
        if a in (1, -1):
            return 0
        return None
    if isinstance(ring, ModularRing):
        n = ring.n
        return (n // math.gcd(a, n)) % n
    raise DomainError(f"morphic elements are decided for Z and Z/n only, got {ring}")


def principal_ideal(ring: ModularRing, a: int) -> frozenset:
    return frozenset((a * r) % ring.n for r in range(ring.n))


def annihilator(ring: ModularRing, a: int) -> frozenset:
    return frozenset(r for r in range(ring.n) if (a * r) % ring.n == 0)
