import itertools
import random

import pytest

from morphic import endo_oracle
from morphic.abgroup import FgAbGroup, canonicalize, enumerate_groups, exponent, order
from morphic.endo_oracle import (
    Endo,
    FinitePresentation,
    brute_is_morphic,
    brute_is_weakly_morphic,
    endo_coker,
    endo_image,
    endo_image_set,
    endo_kernel,
    endo_kernel_set,
    enumerate_endos,
    first_non_morphic_endo,
    hom_count,
    hom_vanishing_check,
    is_endo_morphic,
    is_exact_at_both_ends,
    is_homomorphism_table,
    lemma_x_witness,
    multiplication_endo,
    regular_witness_search,
)
from morphic.errors import BudgetExceededError, DisagreementError, DomainError, MorphicError
from morphic.exact_linalg import IntMatrix
from morphic.morphic_core import ann_mul, coker_mul, image_mul, is_a_morphic, is_morphic_fg, is_mul_regular

Z2_Z4 = FinitePresentation((2, 4))


def presentation(*orders):
    return FinitePresentation(tuple(orders))


def test_endomorphism_counts():
    assert hom_count(Z2_Z4, Z2_Z4) == 32
    assert len(list(enumerate_endos(Z2_Z4))) == 32
    for n in (1, 5, 12):
        assert len(list(enumerate_endos(presentation(n)))) == n
    assert len(list(enumerate_endos(presentation()))) == 1


def test_hom_count():
    assert hom_count(presentation(2), presentation(3)) == 1
    assert hom_count(presentation(2), presentation(4)) == 2
    assert hom_count(presentation(4), presentation(2)) == 2


def test_enumeration_is_unique():
    matrices = [f.matrix for f in enumerate_endos(presentation(2, 2, 4))]
    assert len(matrices) == len(set(matrices)) == hom_count(presentation(2, 2, 4), presentation(2, 2, 4))


def test_budget_refusal():
    with pytest.raises(BudgetExceededError) as info:
        list(enumerate_endos(Z2_Z4, budget=31))
    assert info.value.count == 32
    assert info.value.budget == 31


def test_rejects_invalid_matrices():
    with pytest.raises(DomainError):
        Endo(Z2_Z4, IntMatrix.identity(3))
    # e_1 has order 2, so it cannot go to an element of order 4
    with pytest.raises(DomainError):
        Endo.from_rows(Z2_Z4, [[0, 0], [1, 0]])
    with pytest.raises(DomainError):
        FinitePresentation((2, 0))


def test_infinite_groups_have_no_presentation():
    with pytest.raises(DomainError):
        FinitePresentation.from_group(FgAbGroup.free(1))


def test_identity_and_zero():
    p = presentation(2, 6)
    identity = Endo.identity(p)
    assert endo_image(identity) == p.group()
    assert endo_kernel(identity) == FgAbGroup.trivial()
    assert is_endo_morphic(identity)
    zero = Endo.zero(p)
    assert endo_kernel(zero) == p.group()
    assert endo_coker(zero) == p.group()
    assert is_endo_morphic(zero)


def test_multiplication_by_two_on_z2_z4():
    phi = multiplication_endo(Z2_Z4, 2)
    assert endo_image(phi) == FgAbGroup.cyclic(2)
    assert endo_kernel(phi) == canonicalize([2, 2])
    assert endo_coker(phi) == canonicalize([2, 2])
    assert is_endo_morphic(phi)
    assert endo_image_set(phi) == {(0, 0), (0, 2)}


def test_non_morphic_endo_of_z2_z4():
    # e_1 -> 0, e_2 -> (1, 0)
    f = Endo.from_rows(Z2_Z4, [[0, 1], [0, 0]])
    assert endo_image(f) == FgAbGroup.cyclic(2)
    assert endo_coker(f) == FgAbGroup.cyclic(4)
    assert endo_kernel(f) == canonicalize([2, 2])
    assert not is_endo_morphic(f)
    assert first_non_morphic_endo(Z2_Z4) is not None


@pytest.mark.parametrize(
    "orders, morphic, weakly",
    [((2, 4), False, True), ((4,), True, True), ((2, 2), True, True), ((), True, True)],
)
def test_brute_predicates(orders, morphic, weakly):
    p = FinitePresentation(orders)
    assert brute_is_morphic(p) == morphic
    assert brute_is_weakly_morphic(p) == weakly


def test_brute_morphic_matches_classification():
    for g in enumerate_groups(8):
        assert brute_is_morphic(FinitePresentation.from_group(g)) == is_morphic_fg(g)


@pytest.mark.slow
def test_brute_morphic_matches_classification_up_to_16(groups_16):
    for g in groups_16:
        assert brute_is_morphic(FinitePresentation.from_group(g)) == is_morphic_fg(g)


def test_apply_and_compose():
    p = presentation(2, 4)
    f = Endo.from_rows(p, [[1, 0], [2, 3]])
    assert f.apply((1, 1)) == (1, 1)
    assert f.compose(Endo.identity(p)) == f
    assert Endo.identity(p).compose(f) == f
    ff = f.compose(f)
    for x in p.elements():
        assert ff.apply(x) == f.apply(f.apply(x))


def test_composition_closure():
    rng = random.Random(7)
    groups = [g for g in enumerate_groups(16) if g.invariant_factors]
    cache = {}
    for _ in range(100):
        p = FinitePresentation.from_group(rng.choice(groups))
        if p not in cache:
            cache[p] = list(enumerate_endos(p))
        endos = cache[p]
        f, g = rng.choice(endos), rng.choice(endos)
        # Endo validates the congruence constraint on construction
        fg = f.compose(g)
        assert isinstance(fg, Endo)


def test_congruence_constraint_matches_exhaustive_map_check():
    for g in enumerate_groups(12):
        p = FinitePresentation.from_group(g)
        allowed = {repr(f.matrix.to_rows()) for f in enumerate_endos(p)}
        k = p.rank
        candidates = itertools.product(*(range(p.orders[i]) for _ in range(k) for i in range(k)))
        for entries in candidates:
            # entries listed column by column: images[j][i]
            images = [tuple(entries[j * k:(j + 1) * k]) for j in range(k)]
            rows = [[images[j][i] for j in range(k)] for i in range(k)]
            assert is_homomorphism_table(p, images) == (repr(rows) in allowed)


@pytest.mark.parametrize("orders", [(2, 4), (3, 9), (2, 2, 6)])
def test_oracle_matches_closed_forms(orders):
    p = FinitePresentation(orders)
    g = p.group()
    for a in range(p.exponent):
        phi = multiplication_endo(p, a)
        assert endo_image(phi) == image_mul(g, a)
        assert endo_kernel(phi) == ann_mul(g, a)
        assert endo_coker(phi) == coker_mul(g, a)
        assert len(endo_image_set(phi)) == order(image_mul(g, a))
        assert len(endo_kernel_set(phi)) == order(ann_mul(g, a))


@pytest.mark.slow
def test_oracle_matches_closed_forms_up_to_64(groups_64):
    for g in groups_64:
        p = FinitePresentation.from_group(g)
        for a in range(p.exponent):
            phi = multiplication_endo(p, a)
            assert endo_image(phi) == image_mul(g, a)
            assert endo_kernel(phi) == ann_mul(g, a)
            assert endo_coker(phi) == coker_mul(g, a)


def test_first_isomorphism_theorem_on_every_endo():
    for g in enumerate_groups(12):
        p = FinitePresentation.from_group(g)
        for f in enumerate_endos(p):
            assert order(endo_image(f)) * order(endo_kernel(f)) == p.order


@pytest.mark.parametrize(
    "orders, a, expected",
    [((4,), 2, None), ((6,), 2, 2), ((2, 4), 1, 1), ((5,), 1, 1), ((4,), 0, 0)],
)
def test_regular_witness_search(orders, a, expected):
    assert regular_witness_search(FinitePresentation(orders), a) == expected


def test_regular_witness_matches_closed_form(groups_64):
    for g in groups_64[::2]:
        p = FinitePresentation.from_group(g)
        for a in range(exponent(g) + 1):
            assert (regular_witness_search(p, a) is not None) == is_mul_regular(g, a)


def test_lemma_x_witness_examples():
    psi = lemma_x_witness(Z2_Z4, 2)
    assert psi is not None
    assert endo_kernel_set(psi) == endo_image_set(multiplication_endo(Z2_Z4, 2))
    assert endo_image_set(psi) == endo_kernel_set(multiplication_endo(Z2_Z4, 2))

    assert lemma_x_witness(Z2_Z4, 1) == Endo.zero(Z2_Z4)

    z4 = presentation(4)
    assert lemma_x_witness(z4, 2) == multiplication_endo(z4, 2)


def test_lemma_x_sequences_are_exact(groups_16):
    for g in groups_16:
        p = FinitePresentation.from_group(g)
        for a in range(exponent(g) + 1):
            psi = lemma_x_witness(p, a)
            assert psi is not None
            assert is_a_morphic(g, a)
            assert is_exact_at_both_ends(p, a, psi)


def test_hom_vanishing_check():
    assert hom_vanishing_check([presentation(4), presentation(3), presentation(5)])
    assert hom_vanishing_check([presentation(2, 4), presentation(9)])
    with pytest.raises(DomainError):
        hom_vanishing_check([presentation(2), presentation(4)])


@pytest.mark.slow
def test_brute_morphic_on_cyclic_groups():
    for n in range(1, 201):
        assert brute_is_morphic(presentation(n))


def test_disagreement_error_is_a_morphic_error():
    assert issubclass(DisagreementError, MorphicError)


def test_oracle_does_not_use_closed_forms():
    sources = {getattr(value, "__module__", None) for value in vars(endo_oracle).values()}
    assert "morphic.morphic_core" not in sources


def test_lemma_x_witness_existence_follows_the_oracle():
    for g in enumerate_groups(12):
        p = FinitePresentation.from_group(g)
        for a in range(exponent(g)):
            assert (lemma_x_witness(p, a) is not None) == is_endo_morphic(multiplication_endo(p, a))
