"""p-adic integers and unramified extensions: precision semantics,
exactness, and Teichmüller lifts."""

import math

import pytest

from fiberscope.errors import BelowPrecisionError, PreconditionError
from fiberscope.padic import PadicRing, UnramifiedRing, teichmuller_lift


def test_exact_arithmetic():
    ring = PadicRing(5, 10)
    a, b = ring.exact(7), ring.exact(-3)
    assert (a + b) == 4
    assert (a * b) == -21
    assert (a - b) == 10


def test_fraction_coercion():
    from fractions import Fraction

    ring = PadicRing(5, 6)
    half = ring.exact(Fraction(1, 2))
    assert half * ring.exact(2) == 1
    with pytest.raises(PreconditionError):
        ring.exact(Fraction(1, 5))     # p in the denominator


def test_valuation():
    ring = PadicRing(5, 12)
    assert ring.exact(50).valuation() == 2
    assert ring.exact(7).valuation() == 0
    assert ring.exact(0).valuation() == math.inf


def test_inexact_zero_valuation_is_undetermined():
    ring = PadicRing(5, 4)
    with pytest.raises(BelowPrecisionError):
        ring.inexact(0).valuation()


def test_shift_down():
    ring = PadicRing(7, 10)
    x = ring.exact(49 * 3)
    assert x.shift_down(2) == 3
    assert x.shift_down(2).valuation() == 0


def test_precision_truncation():
    ring = PadicRing(5, 10)
    x = ring.inexact(1 + 5**4)
    y = x.at_precision(4)
    assert y.prec == 4
    assert y == ring.exact(1)          # equality at the common precision
    with pytest.raises(BelowPrecisionError):
        y.at_precision(8)              # cannot re-extend inexact values


def test_exact_values_reextend():
    ring = PadicRing(5, 10)
    x = ring.exact(7).at_precision(3)
    assert x.at_precision(10).lift() == 7


def test_residue_roundtrip():
    ring = PadicRing(7, 8)
    a = ring.exact(23)
    assert a.residue() == 23 % 7
    lifted = ring.lift_residue(ring.residue_element(a))
    assert lifted.residue() == 2


def test_teichmuller_prime_field():
    ring = PadicRing(7, 12)
    for a in range(7):
        t = ring.teichmuller(a)
        assert t.residue() == a
        if a:
            assert t ** 6 == 1          # (q-1)-st root of unity
    # 0 and +-1 are exactly their own lifts
    assert ring.teichmuller(0) == 0
    assert ring.teichmuller(1) == 1
    assert ring.teichmuller(6) == -1


def test_teichmuller_is_multiplicative():
    ring = PadicRing(5, 10)
    for a in range(1, 5):
        for b in range(1, 5):
            assert (ring.teichmuller(a) * ring.teichmuller(b)
                    == ring.teichmuller((a * b) % 5))


def test_unramified_ring_basics():
    ring = UnramifiedRing(3, 2, 10)
    field = ring.residue_field
    a = ring.lift_residue(field.gen())
    assert a.residue() == field.gen()
    inv = a.inverse()
    assert (a * inv).residue().is_one()


def test_unramified_teichmuller_order():
    ring = UnramifiedRing(3, 2, 8)
    field = ring.residue_field
    for a in field.units():
        t = ring.teichmuller(a)
        assert t.residue() == a
        assert (t ** 8 - ring.one()).is_apparent_zero()


def test_teichmuller_lift_helper():
    ring = PadicRing(5, 8)
    t = teichmuller_lift(ring.residue_field.from_int(2), ring)
    assert (t ** 4 - ring.one()).is_apparent_zero()


def test_unram_element_valuation():
    ring = UnramifiedRing(5, 2, 8)
    x = ring.lift_residue(ring.residue_field.gen()) * ring.coerce(25)
    assert x.valuation() == 2
    assert x.shift_down(2).valuation() == 0
