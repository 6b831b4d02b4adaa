import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from typing import Iterator, Optional

from sympy import Matrix

from config import ENDO_BUDGET
from suites_config import (
    FREE_RANKS,
    GTG_COMPONENT_MAX_ORDER,
    SNF_MAX_DIM,
    SNF_MAX_ENTRY,
    SNF_SAMPLES,
    SNF_SEED,
    SQUAREFREE_LIMIT,
    SUITES,
)

from .abgroup import (
    FgAbGroup,
    canonicalize,
    direct_sum,
    enumerate_groups,
    exponent,
    iso_eq,
    order,
)
from .endo_oracle import (
    FinitePresentation,
    brute_is_morphic,
    brute_is_weakly_morphic,
    endo_coker,
    endo_image,
    endo_kernel,
    first_non_morphic_endo,
    hom_count,
    is_exact_at_both_ends,
    lemma_x_witness,
    multiplication_endo,
    regular_witness_search,
)
from .errors import DisagreementError, DomainError
from .exact_linalg import IntMatrix, mat_mul, snf
from .morphic_core import (
    ann_mul,
    coker_mul,
    decomposes_as_image_plus_kernel,
    image_mul,
    is_a_morphic,
    is_morphic_fg,
    is_mul_regular,
    is_weakly_morphic,
    regular_scalars,
    scalar_range,
    weakly_morphic_summand_scan,
)
from .ring_mod import (
    ModularRing,
    RingModule,
    crt_identify,
    is_regular_ring,
    is_weakly_morphic_over,
    product_module_check,
)

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class PredicateReport:
    group: str
    order: object
    weakly_morphic: bool
    witness: Optional[int]
    morphic: bool
    regular_scalars: tuple
    oracle_used: bool

    def __post_init__(self):
        if (self.witness is None) != self.weakly_morphic:
            raise DomainError("a witness is reported exactly when weakly_morphic is false")
        if self.morphic and not self.weakly_morphic:
            raise DomainError("a morphic group is weakly-morphic")

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "group": self.group,
            "order": self.order if isinstance(self.order, int) else "infinite",
            "weakly_morphic": self.weakly_morphic,
            "witness": self.witness,
            "morphic": self.morphic,
            "regular_scalars": list(self.regular_scalars),
            "oracle_used": self.oracle_used,
        }


@dataclass
class SuiteResult:
    name: str
    passed: bool = True
    checked: int = 0
    counterexample: Optional[str] = None
    details: dict = field(default_factory=dict)

    def fail(self, message: str):
        """Record a failure, keeping only the first counterexample."""
        if self.passed:
            self.counterexample = message
        self.passed = False


class MorphicOrchestrator:
    """Coordinates the closed forms, the endomorphism oracle and the ring layer."""

    def __init__(self, budget: int = ENDO_BUDGET):
        self.budget = budget
        self.suites = {
            "example": self._suite_example,
            "das": self._suite_das,
            "das-infinite": self._suite_das_infinite,
            "rats-oracle": self._suite_rats_oracle,
            "mul-oracle": self._suite_mul_oracle,
            "e5e": self._suite_e5e,
            "ftft": self._suite_ftft,
            "gtg": self._suite_gtg,
            "p51": self._suite_p51,
            "snf": self._suite_snf,
            "cyclic": self._suite_cyclic,
            "lemma-x": self._suite_lemma_x,
            "summand": self._suite_summand,
        }

    def check(self, group: FgAbGroup, oracle: bool = False) -> PredicateReport:
        """
        Decide every predicate for one group.

        With oracle=True a finite group is also decided by brute force and any
        disagreement raises DisagreementError.
        """
        # 1. Closed forms
        verdict = is_weakly_morphic(group)
        morphic = is_morphic_fg(group)
        regular = regular_scalars(group)

        # 2. Element-level cross-check
        oracle_used = False
        if oracle and group.is_finite:
            self._cross_check(group, verdict.holds, morphic, regular)
            oracle_used = True
        elif oracle:
            logger.info("oracle skipped for infinite group %s", group)

        return PredicateReport(
            group=group.to_expr(),
            order=order(group),
            weakly_morphic=verdict.holds,
            witness=verdict.witness,
            morphic=morphic,
            regular_scalars=tuple(regular),
            oracle_used=oracle_used,
        )

    def _cross_check(self, group: FgAbGroup, weak: bool, morphic: bool, regular: list):
        p = FinitePresentation.from_group(group)
        brute_weak = brute_is_weakly_morphic(p)
        if brute_weak != weak:
            raise DisagreementError(f"{group}: weakly-morphic closed form {weak}, oracle {brute_weak}")
        brute_morphic = brute_is_morphic(p, self.budget)
        if brute_morphic != morphic:
            raise DisagreementError(f"{group}: morphic closed form {morphic}, oracle {brute_morphic}")
        brute_regular = [a for a in scalar_range(group) if regular_witness_search(p, a) is not None]
        if brute_regular != regular:
            raise DisagreementError(f"{group}: regular scalars closed form {regular}, oracle {brute_regular}")

    def census(self, max_order: int, oracle: bool = False) -> Iterator[PredicateReport]:
        """One report per isomorphism class of order <= max_order."""
        for group in enumerate_groups(max_order):
            yield self.check(group, oracle=oracle)

    def run_suite(self, name: str, max_order: Optional[int] = None) -> SuiteResult:
        if name not in self.suites:
            raise DomainError(f"unknown suite '{name}'")
        if max_order is None:
            max_order = SUITES[name]["max_order"]
        logger.info("running suite %s (max_order=%s)", name, max_order)
        result = self.suites[name](max_order)
        logger.info(
            "suite %s: %s after %d checks", name, "pass" if result.passed else "FAIL", result.checked
        )
        return result

    # Suites

    def _suite_example(self, _max_order) -> SuiteResult:
        result = SuiteResult("example")
        group = canonicalize([2, 4])
        p = FinitePresentation.from_group(group)

        # 1. Weakly-morphic over every scalar class
        for a in range(4):
            result.checked += 1
            if not is_a_morphic(group, a):
                result.fail(f"Z/2 + Z/4 is not {a}-morphic")

        # 2. The a = 2 case, computed both ways
        two = canonicalize([2, 2])
        phi = multiplication_endo(p, 2)
        for label, value in (
            ("closed-form cokernel", coker_mul(group, 2)),
            ("closed-form kernel", ann_mul(group, 2)),
            ("oracle cokernel", endo_coker(phi)),
            ("oracle kernel", endo_kernel(phi)),
        ):
            result.checked += 1
            if not iso_eq(value, two):
                result.fail(f"{label} at a=2 is {value}, expected Z/2 + Z/2")

        # 3. Not morphic: some endomorphism out of the 32 fails
        result.details["endomorphisms"] = hom_count(p, p)
        bad = first_non_morphic_endo(p, self.budget)
        result.checked += 1
        if bad is None or is_morphic_fg(group):
            result.fail("Z/2 + Z/4 was found morphic")
        else:
            result.details["non_morphic_endo"] = bad.matrix.to_rows()
        return result

    def _suite_das(self, max_order: int) -> SuiteResult:
        result = SuiteResult("das")
        for group in enumerate_groups(max_order):
            result.checked += 1
            if not is_weakly_morphic(group).holds:
                result.fail(f"{group} fails the closed form")
            elif not brute_is_weakly_morphic(FinitePresentation.from_group(group)):
                result.fail(f"{group} fails the oracle")
        result.details["classes"] = result.checked
        return result

    def _suite_das_infinite(self, max_order: int) -> SuiteResult:
        result = SuiteResult("das-infinite")
        for rank in FREE_RANKS:
            for torsion in enumerate_groups(max_order):
                group = direct_sum(FgAbGroup.free(rank), torsion)
                verdict = is_weakly_morphic(group)
                result.checked += 1
                if verdict.holds:
                    result.fail(f"{group} reported weakly-morphic")
                elif verdict.witness is None or is_a_morphic(group, verdict.witness):
                    result.fail(f"{group}: witness {verdict.witness} does not fail a-morphic")
        return result

    def _suite_rats_oracle(self, max_order: int) -> SuiteResult:
        result = SuiteResult("rats-oracle")
        morphic_classes = 0
        for group in enumerate_groups(max_order):
            result.checked += 1
            brute = brute_is_morphic(FinitePresentation.from_group(group), self.budget)
            morphic_classes += brute
            if brute != is_morphic_fg(group):
                result.fail(f"{group}: oracle {brute}, classification {is_morphic_fg(group)}")
        result.details["morphic_classes"] = morphic_classes
        return result

    def _suite_mul_oracle(self, max_order: int) -> SuiteResult:
        result = SuiteResult("mul-oracle")
        for group in enumerate_groups(max_order):
            p = FinitePresentation.from_group(group)
            for a in scalar_range(group):
                phi = multiplication_endo(p, a)
                image, kernel, cokernel = endo_image(phi), endo_kernel(phi), endo_coker(phi)
                result.checked += 1
                if not (
                    iso_eq(image, image_mul(group, a))
                    and iso_eq(kernel, ann_mul(group, a))
                    and iso_eq(cokernel, coker_mul(group, a))
                ):
                    result.fail(f"{group}, a={a}: oracle disagrees with closed forms")
                if order(image) * order(kernel) != order(group):
                    result.fail(f"{group}, a={a}: |image| * |kernel| != |group|")
        return result

    def _suite_e5e(self, max_order: int) -> SuiteResult:
        result = SuiteResult("e5e")
        for group in enumerate_groups(max_order):
            p = FinitePresentation.from_group(group)
            for a in range(exponent(group) + 1):
                result.checked += 1
                regular = is_mul_regular(group, a)
                if regular != (regular_witness_search(p, a) is not None):
                    result.fail(f"{group}, a={a}: regular {regular} but witness search disagrees")
                if regular and not (is_a_morphic(group, a) and decomposes_as_image_plus_kernel(group, a)):
                    result.fail(f"{group}, a={a}: regular but M != Ma + Ann(a) or not a-morphic")

        # the converse fails: Z/4 with a = 2
        z4 = FgAbGroup.cyclic(4)
        gap = not is_mul_regular(z4, 2) and is_a_morphic(z4, 2)
        result.details["z4_a2_gap"] = gap
        if not gap:
            result.fail("Z/4, a=2 should be a-morphic but not regular")
        return result

    def _suite_ftft(self, max_order: int) -> SuiteResult:
        result = SuiteResult("ftft")
        groups = list(enumerate_groups(max_order))
        for n in range(1, SQUAREFREE_LIMIT + 1):
            ring = ModularRing(n)
            if any(n % (q * q) == 0 for q in range(2, math.isqrt(n) + 1)):
                continue
            if not is_regular_ring(ring):
                result.fail(f"{ring} is squarefree but not regular")
            for group in groups:
                if n % exponent(group):
                    continue
                result.checked += 1
                if not is_weakly_morphic_over(RingModule(ring, group)):
                    result.fail(f"{group} is not weakly-morphic over {ring}")
                bad = [a for a in range(n) if not is_mul_regular(group, a)]
                if bad:
                    result.fail(f"{group} over {ring}: scalars {bad} are not regular")
        return result

    def _suite_gtg(self, max_order: int) -> SuiteResult:
        result = SuiteResult("gtg")
        pool = list(enumerate_groups(max(GTG_COMPONENT_MAX_ORDER, max_order // 2)))
        components = {}
        regular_modules = set()
        for n1 in range(2, max_order + 1):
            for n2 in range(n1 + 1, max_order // n1 + 1):
                if math.gcd(n1, n2) != 1:
                    continue
                for n in (n1, n2):
                    if n not in components:
                        components[n] = gtg_components(n, pool)
                for g1, g2 in itertools.product(components[n1], components[n2]):
                    modules = [RingModule(ModularRing(n1), g1), RingModule(ModularRing(n2), g2)]
                    result.checked += 1
                    product = product_module_check(modules)
                    single = is_weakly_morphic_over(crt_identify(modules))
                    if product != single:
                        result.fail(f"{g1} over Z/{n1} x {g2} over Z/{n2}: product {product}, CRT {single}")
                    for n, g in ((n1, g1), (n2, g2)):
                        if n > GTG_COMPONENT_MAX_ORDER and g == FgAbGroup.cyclic(n):
                            regular_modules.add(n)
        result.details["regular_modules_above_bound"] = sorted(regular_modules)
        return result

    def _suite_p51(self, max_order: int) -> SuiteResult:
        result = SuiteResult("p51")
        for group in enumerate_groups(max_order):
            e = exponent(group)
            over_z = is_weakly_morphic(group).holds
            for n in (e, 2 * e):
                result.checked += 1
                over_n = is_weakly_morphic_over(RingModule(ModularRing(n), group))
                if over_n != over_z:
                    result.fail(f"{group}: over Z/{n} {over_n}, over Z {over_z}")
        return result

    def _suite_snf(self, _max_order) -> SuiteResult:
        result = SuiteResult("snf")
        rng = random.Random(SNF_SEED)
        for _ in range(SNF_SAMPLES):
            rows, cols = rng.randint(0, SNF_MAX_DIM), rng.randint(0, SNF_MAX_DIM)
            a = IntMatrix.from_rows(
                [[rng.randint(-SNF_MAX_ENTRY, SNF_MAX_ENTRY) for _ in range(cols)] for _ in range(rows)],
                cols,
            )
            r = snf(a)
            result.checked += 1
            problem = snf_problem(a, r)
            if problem:
                result.fail(f"{a.to_rows()}: {problem}")
        return result

    def _suite_cyclic(self, max_order: int) -> SuiteResult:
        result = SuiteResult("cyclic")
        for n in range(1, max_order + 1):
            group = FgAbGroup.cyclic(n)
            result.checked += 1
            brute = brute_is_morphic(FinitePresentation((n,)), self.budget)
            weak = is_weakly_morphic(group).holds
            if not (brute and weak):
                result.fail(f"Z/{n}: oracle morphic {brute}, weakly-morphic {weak}")
        return result

    def _suite_lemma_x(self, max_order: int) -> SuiteResult:
        result = SuiteResult("lemma-x")
        for group in enumerate_groups(max_order):
            p = FinitePresentation.from_group(group)
            for a in range(exponent(group) + 1):
                if not is_a_morphic(group, a):
                    continue
                result.checked += 1
                psi = lemma_x_witness(p, a, self.budget)
                if psi is None:
                    result.fail(f"{group}, a={a}: no witness")
                elif not is_exact_at_both_ends(p, a, psi):
                    result.fail(f"{group}, a={a}: witness sequence is not exact")
        return result

    def _suite_summand(self, max_order: int) -> SuiteResult:
        scan = weakly_morphic_summand_scan(max_order)
        result = SuiteResult("summand", checked=scan.summands_checked)
        result.details = {"classes": scan.classes_scanned, "note": scan.note}
        if scan.counterexamples:
            group, summand = scan.counterexamples[0]
            result.fail(f"{summand} is a summand of {group} but not weakly-morphic")
        return result


def snf_problem(a: IntMatrix, r) -> Optional[str]:
    """First violated Smith normal form property, or None."""
    if mat_mul(mat_mul(r.u, a), r.v) != r.s:
        return "u @ a @ v != s"
    for m in (r.u, r.v):
        if m.rows and abs(Matrix(m.to_rows()).det()) != 1:
            return "transform is not unimodular"
    if not r.s.is_diagonal():
        return "s is not diagonal"
    d = r.diagonal
    if any(x < 0 for x in d):
        return "negative diagonal entry"
    nonzero = [x for x in d if x]
    if d[: len(nonzero)] != nonzero:
        return "zero diagonal entry before a nonzero one"
    if any(y % x for x, y in zip(nonzero, nonzero[1:])):
        return "divisibility chain broken"
    return None


def gtg_components(n: int, pool: list) -> list:
    """Z/n-modules drawn from pool: exponent divides n, order at most max(bound, n).

    Z/n over itself always qualifies.
    """
    bound = max(GTG_COMPONENT_MAX_ORDER, n)
    return [g for g in pool if n % exponent(g) == 0 and order(g) <= bound]
