import itertools

import pytest

from morphic import abgroup
from morphic.abgroup import FgAbGroup, canonicalize, direct_sum, enumerate_groups, exponent, iso_eq, order
from morphic.morphic_core import (
    MulMap,
    ann_mul,
    coker_mul,
    decomposes_as_image_plus_kernel,
    image_mul,
    is_a_morphic,
    is_morphic_fg,
    is_mul_regular,
    is_weakly_morphic,
    morphic_scalars,
    mul_is_automorphism,
    regular_scalars,
    scalar_range,
    weakly_morphic_summand_scan,
)

Z2_Z4 = canonicalize([2, 4])
Z = FgAbGroup.free(1)


def test_multiplication_by_two_on_z2_z4():
    assert image_mul(Z2_Z4, 2) == FgAbGroup.cyclic(2)
    assert ann_mul(Z2_Z4, 2) == canonicalize([2, 2])
    assert coker_mul(Z2_Z4, 2) == canonicalize([2, 2])
    assert is_a_morphic(Z2_Z4, 2)


def test_image_examples():
    assert image_mul(FgAbGroup.cyclic(12), 8) == FgAbGroup.cyclic(3)
    for g in (Z2_Z4, Z, FgAbGroup(2, (3, 6))):
        assert image_mul(g, 1) == g
        assert ann_mul(g, 0) == g
        assert coker_mul(g, 1) == FgAbGroup.trivial()


def test_free_group_maps():
    assert ann_mul(Z, 2) == FgAbGroup.trivial()
    assert coker_mul(Z, 2) == FgAbGroup.cyclic(2)
    assert image_mul(Z, 2) == Z
    assert not is_a_morphic(Z, 2)
    assert is_a_morphic(Z, 0)
    assert is_a_morphic(Z, -1)


def test_mul_map_wrapper():
    phi = MulMap(FgAbGroup.cyclic(12), 8)
    assert phi.image() == FgAbGroup.cyclic(3)
    assert phi.kernel() == FgAbGroup.cyclic(4)
    assert phi.cokernel() == FgAbGroup.cyclic(4)
    assert phi.is_morphic()


def test_order_conservation(groups_64):
    for g in groups_64:
        for a in scalar_range(g):
            assert order(image_mul(g, a)) * order(ann_mul(g, a)) == order(g)
            assert order(coker_mul(g, a)) * order(image_mul(g, a)) == order(g)


def test_scalars_reduce_mod_exponent(groups_16):
    for g in groups_16:
        e = exponent(g)
        for a in range(10 * e):
            r = a % e
            assert image_mul(g, a) == image_mul(g, r)
            assert ann_mul(g, a) == ann_mul(g, r)
            assert is_a_morphic(g, a) == is_a_morphic(g, r)
            assert image_mul(g, -a) == image_mul(g, a)


def test_automorphism_criterion(groups_64):
    trivial = FgAbGroup.trivial()
    for g in groups_64:
        for a in scalar_range(g):
            injective = ann_mul(g, a) == trivial
            surjective = image_mul(g, a) == g
            assert injective == surjective == mul_is_automorphism(g, a)
    assert mul_is_automorphism(Z, -1)
    assert not mul_is_automorphism(Z, 2)


@pytest.mark.parametrize(
    "group, holds, witness",
    [
        (Z2_Z4, True, None),
        (FgAbGroup.trivial(), True, None),
        (Z, False, 2),
        (FgAbGroup.free(3), False, 2),
        (FgAbGroup(1, (2,)), False, 3),
        (FgAbGroup(2, (2, 6)), False, 7),
    ],
)
def test_is_weakly_morphic(group, holds, witness):
    verdict = is_weakly_morphic(group)
    assert verdict.holds == holds
    assert bool(verdict) == holds
    assert verdict.witness == witness
    if witness is not None:
        assert not is_a_morphic(group, witness)


def test_every_finite_group_is_weakly_morphic(groups_64):
    assert all(is_weakly_morphic(g).holds for g in groups_64)


def test_free_part_is_never_morphic_for_nonunits(groups_16):
    for rank in (1, 2, 3):
        for torsion in groups_16:
            g = direct_sum(FgAbGroup.free(rank), torsion)
            for a in itertools.chain(range(-6, -1), range(2, 20)):
                assert not is_a_morphic(g, a)
            assert is_a_morphic(g, 0)
            assert is_a_morphic(g, 1)


@pytest.mark.parametrize(
    "group, expected",
    [
        (Z2_Z4, False),
        (canonicalize([4, 4, 4]), True),
        (Z, False),
        (FgAbGroup.cyclic(6), True),
        (canonicalize([2, 2, 3]), True),
        (canonicalize([2, 12]), False),
        (FgAbGroup.trivial(), True),
    ],
)
def test_is_morphic_fg(group, expected):
    assert is_morphic_fg(group) == expected


def test_morphic_census_up_to_eight():
    groups = list(enumerate_groups(8))
    morphic = [g for g in groups if is_morphic_fg(g)]
    assert len(groups) == 11
    assert len(morphic) == 10
    assert [g for g in groups if not is_morphic_fg(g)] == [Z2_Z4]


def test_is_mul_regular_examples():
    assert not is_mul_regular(FgAbGroup.cyclic(4), 2)
    assert is_mul_regular(FgAbGroup.cyclic(6), 2)
    assert is_mul_regular(Z2_Z4, 1)
    assert is_mul_regular(Z, 0)
    assert not is_mul_regular(Z, 2)


def test_regular_scalars():
    assert regular_scalars(FgAbGroup.cyclic(4)) == [0, 1, 3]
    assert regular_scalars(FgAbGroup.cyclic(6)) == [0, 1, 2, 3, 4, 5]
    assert regular_scalars(Z) == [0, 1]


def test_regular_implies_splitting_and_morphic(groups_64):
    for g in groups_64:
        for a in range(exponent(g) + 1):
            if is_mul_regular(g, a):
                assert decomposes_as_image_plus_kernel(g, a)
                assert is_a_morphic(g, a)


def test_z4_is_a_morphic_without_splitting():
    z4 = FgAbGroup.cyclic(4)
    assert is_a_morphic(z4, 2)
    assert not decomposes_as_image_plus_kernel(z4, 2)


def test_direct_sums_stay_weakly_morphic(groups_16):
    for g, h in itertools.combinations_with_replacement(groups_16, 2):
        assert is_weakly_morphic(g).holds and is_weakly_morphic(h).holds
        assert is_weakly_morphic(direct_sum(g, h)).holds


def test_direct_sums_preserve_a_morphic():
    small = list(enumerate_groups(8))
    for g, h in itertools.combinations_with_replacement(small, 2):
        total = direct_sum(g, h)
        for a in range(exponent(total)):
            if is_a_morphic(g, a) and is_a_morphic(h, a):
                assert is_a_morphic(total, a)


def test_morphic_scalars():
    assert morphic_scalars(Z, range(-3, 4)) == [-1, 0, 1]
    assert morphic_scalars(Z2_Z4, range(4)) == [0, 1, 2, 3]


def test_summand_scan():
    report = weakly_morphic_summand_scan(16)
    assert report.passed
    assert report.classes_scanned == 25
    assert report.summands_checked > report.classes_scanned
    assert report.note
    one = weakly_morphic_summand_scan(1)
    assert one.classes_scanned == 1
    assert one.summands_checked == 1
    assert weakly_morphic_summand_scan(8).passed


def test_coker_and_kernel_agree_on_finite_groups(groups_64):
    for g in groups_64:
        for a in scalar_range(g):
            assert iso_eq(coker_mul(g, a), ann_mul(g, a))


@pytest.mark.parametrize(
    "function",
    [image_mul, ann_mul, coker_mul, abgroup.iso_eq, abgroup.direct_sum, abgroup.order, abgroup.exponent],
)
def test_group_operations_are_documented(function):
    assert function.__doc__ and function.__doc__.strip()
