"""Tame extension classes and the metacyclic conjugacy model."""

import math
from fractions import Fraction

import pytest

from fiberscope.errors import PreconditionError
from fiberscope.tame import (
    MetacyclicGroup,
    TameExtensionClass,
    all_classes,
    classify_binomial,
    count_classes,
    faithful_sigma_order,
    iso_test,
    max_abelian_subdegree,
    metacyclic_conjugate,
    proportion_realizable,
    realizability,
)


def test_count_classes():
    assert count_classes(5, 1, 2) == 2      # gcd(2, 4)
    assert count_classes(7, 1, 3) == 3      # 3 | 6
    assert count_classes(5, 1, 3) == 1      # gcd(3, 4) = 1
    assert count_classes(3, 2, 2) == 2      # gcd(2, 8)
    assert count_classes(2, 1, 5) == 1


def test_count_classes_rejects_wild():
    with pytest.raises(PreconditionError):
        count_classes(3, 1, 6)


def test_all_classes():
    classes = all_classes(7, 1, 3)
    assert [c.unit_index for c in classes] == [0, 1, 2]
    assert all(c.g == 3 for c in classes)


def test_classify_binomial():
    # x^2 - 5u over Q_5: class index is the Legendre symbol exponent of u
    assert classify_binomial(5, 1, 2, 1).unit_index == 0
    assert classify_binomial(5, 1, 2, 4).unit_index == 0
    assert classify_binomial(5, 1, 2, 2).unit_index == 1
    assert classify_binomial(5, 1, 2, 3).unit_index == 1


def test_classify_binomial_cube():
    # q = 7: cube classes partition units by dlog mod 3
    seen = {}
    for u in range(1, 7):
        seen.setdefault(classify_binomial(7, 1, 3, u).unit_index, []).append(u)
    assert sorted(len(v) for v in seen.values()) == [2, 2, 2]
    assert set(seen) == {0, 1, 2}


def test_iso_test():
    a = classify_binomial(5, 1, 2, 2)       # non-square unit
    b = classify_binomial(5, 1, 2, 4)       # square unit
    c = classify_binomial(5, 1, 2, 3)       # non-square: same class as 2
    assert not iso_test(a, b)
    assert iso_test(a, c)


def test_class_index_reduced_mod_g():
    cls = TameExtensionClass(7, 1, 4, 1)
    assert cls.g == math.gcd(4, 6)
    with pytest.raises(PreconditionError):
        TameExtensionClass(7, 1, 4, 5)      # index must be < g


def test_realizability():
    # (2, 2, 3): (q^f-1)/(q-1) = 4, gcd(2, 4) = 2: not all realized
    assert not realizability(2, 2, 3)
    assert proportion_realizable(2, 2, 3) == Fraction(1, 2)
    # (2, 1, 5) and (3, 1, 7): trivially realizable over the base
    assert realizability(2, 1, 5)
    assert realizability(3, 1, 7)
    # (3, 2, 5): (25-1)/4 = 6, gcd(3, 6) = 3
    assert not realizability(3, 2, 5)
    assert proportion_realizable(3, 2, 5) == Fraction(1, 3)


def test_max_abelian_subdegree():
    assert max_abelian_subdegree(6, 7) == 6
    assert max_abelian_subdegree(4, 7) == 2
    assert max_abelian_subdegree(5, 7) == 1


def test_faithful_sigma_order():
    # ord_5(4) = 2 but 1 + 5 = 6 != 0 mod 4: doubling is needed
    m = faithful_sigma_order(4, 5)
    assert m % 2 == 0
    total = sum(pow(5, k, 4) for k in range(m)) % 4
    assert total == 0
    assert faithful_sigma_order(1, 3) == 1


def test_metacyclic_group_order():
    group = MetacyclicGroup(4, 5)
    assert len(group) == 4 * faithful_sigma_order(4, 5)
    ident = group.identity()
    for x in group.elements():
        assert group.product(x, group.inverse(x)) == ident


def test_metacyclic_conjugate_matches_gcd_rule():
    for e, q in [(4, 5), (6, 5), (5, 7), (8, 3), (9, 2)]:
        if math.gcd(e, q) != 1:
            continue
        group = MetacyclicGroup(e, q)
        g = math.gcd(e, q - 1)
        for i in range(e):
            for j in range(e):
                assert metacyclic_conjugate(group, i, j) == ((i - j) % g == 0)


def test_tame_class_json():
    cls = TameExtensionClass(5, 1, 2, 1)
    doc = cls.to_json()
    assert doc["p"] == 5 and doc["e"] == 2 and doc["unit_index"] == 1
    assert doc["g"] == 2
