"""
Closed-form decisions for multiplication maps on f.g. abelian groups.

For a cyclic factor Z/d and g = gcd(|a|, d):
    image of a    ~ Z/(d/g)
    kernel of a   ~ Z/g
    cokernel of a ~ Z/g
A free factor Z maps onto aZ: kernel 0 unless a == 0, cokernel Z/|a|.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .abgroup import (
    FgAbGroup,
    canonicalize,
    direct_sum,
    direct_summands,
    enumerate_groups,
    exponent,
    iso_eq,
    order,
    primary_decomposition,
    torsion_exponent,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MulMap:
    """phi_a : M -> M, m -> m*a."""

    domain: FgAbGroup
    scalar: int

    def image(self) -> FgAbGroup:
        return image_mul(self.domain, self.scalar)

    def kernel(self) -> FgAbGroup:
        return ann_mul(self.domain, self.scalar)

    def cokernel(self) -> FgAbGroup:
        return coker_mul(self.domain, self.scalar)

    def is_morphic(self) -> bool:
        return is_a_morphic(self.domain, self.scalar)


@dataclass(frozen=True)
class MorphicVerdict:
    holds: bool
    witness: Optional[int] = None

    def __bool__(self):
        return self.holds


@dataclass
class SummandScanReport:
    max_order: int
    classes_scanned: int = 0
    summands_checked: int = 0
    counterexamples: list = field(default_factory=list)
    note: str = ""

    @property
    def passed(self) -> bool:
        return not self.counterexamples


def image_mul(m: FgAbGroup, a: int) -> FgAbGroup:
    """Ma, the image of multiplication by a."""
    a = abs(a)
    orders = [d // math.gcd(a, d) for d in m.invariant_factors]
    return canonicalize(orders, m.free_rank if a else 0)


def ann_mul(m: FgAbGroup, a: int) -> FgAbGroup:
    """Ann_M(a), the elements killed by a."""
    a = abs(a)
    orders = [math.gcd(a, d) for d in m.invariant_factors]
    return canonicalize(orders, 0 if a else m.free_rank)


def coker_mul(m: FgAbGroup, a: int) -> FgAbGroup:
    """M/Ma."""
    a = abs(a)
    orders = [math.gcd(a, d) for d in m.invariant_factors]
    if a == 0:
        return canonicalize(orders, m.free_rank)
    return canonicalize(orders + [a] * m.free_rank, 0)


def is_a_morphic(m: FgAbGroup, a: int) -> bool:
    """M/Ma ~ Ann_M(a)."""
    return iso_eq(coker_mul(m, a), ann_mul(m, a))


def scalar_range(m: FgAbGroup) -> range:
    """Scalars that represent every multiplication map of m up to sign.

    Finite m: 0..exponent-1, since gcd(a, d) == gcd(a mod d, d) for every d | exponent.
    Infinite m: 0..torsion exponent.
    """
    if m.is_finite:
        return range(exponent(m))
    return range(torsion_exponent(m) + 1)


def is_weakly_morphic(m: FgAbGroup) -> MorphicVerdict:
    if not m.is_finite:
        # coprime to the torsion order and not a unit, so phi_a is injective but not onto
        witness = torsion_exponent(m) + 1
        return MorphicVerdict(False, witness)
    for a in scalar_range(m):
        if not is_a_morphic(m, a):
            logger.warning("finite group %s fails a-morphic at a=%d", m, a)
            return MorphicVerdict(False, a)
    return MorphicVerdict(True)


def is_morphic_fg(m: FgAbGroup) -> bool:
    """Finite, and every (p)-primary component is (Z/p^k)^n."""
    if not m.is_finite:
        return False
    return all(len(set(parts)) == 1 for _, parts in primary_decomposition(m).components)


def is_mul_regular(m: FgAbGroup, a: int) -> bool:
    """Some integer x gives m*a == m*a^2*x for all m in M."""
    if m.free_rank and a not in (0, 1, -1):
        return False
    e = torsion_exponent(m)
    return math.gcd(abs(a), e) == math.gcd(a * a, e)


def mul_is_automorphism(m: FgAbGroup, a: int) -> bool:
    if m.free_rank and a not in (1, -1):
        return False
    return math.gcd(abs(a), order(m.torsion_part)) == 1


def morphic_scalars(m: FgAbGroup, scalars: Iterable[int]) -> list:
    return [a for a in scalars if is_a_morphic(m, a)]


def regular_scalars(m: FgAbGroup) -> list:
    return [a for a in scalar_range(m) if is_mul_regular(m, a)]


def weakly_morphic_summand_scan(max_order: int) -> SummandScanReport:
    """Check that direct summands of weakly-morphic groups are weakly-morphic, up to max_order.

    Every finite group is weakly-morphic, so at this scale the check is vacuous;
    a counterexample would have to be infinite and is out of reach here.
    """
    report = SummandScanReport(
        max_order=max_order,
        note=(
            "every finite abelian group is weakly-morphic, so summand closure holds "
            "vacuously here; the general question stays open"
        ),
    )
    for g in enumerate_groups(max_order):
        report.classes_scanned += 1
        if not is_weakly_morphic(g).holds:
            continue
        for summand in direct_summands(g):
            report.summands_checked += 1
            if not is_weakly_morphic(summand).holds:
                report.counterexamples.append((g.to_expr(), summand.to_expr()))
    logger.info(
        "summand scan up to %d: %d classes, %d summands, %d counterexamples",
        max_order,
        report.classes_scanned,
        report.summands_checked,
        len(report.counterexamples),
    )
    return report


def decomposes_as_image_plus_kernel(m: FgAbGroup, a: int) -> bool:
    """Ma + Ann_M(a) is isomorphic to M."""
    return iso_eq(direct_sum(image_mul(m, a), ann_mul(m, a)), m)
