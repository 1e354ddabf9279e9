"""Cluster recursion over Z_p: (e, f) invariants and tame unit classes."""

import pytest

from fiberscope.errors import PreconditionError
from fiberscope.localfactor import LocalFactor, local_factor
from fiberscope.padic import PadicRing
from fiberscope.poly import Poly


def invariants(p, coeffs, prec=40):
    ring = PadicRing(p, prec)
    f = Poly(ring, [ring.exact(c) for c in coeffs])
    return [(fac.e, fac.f, fac.unit_index) for fac in local_factor(f)]


def test_localfactor_key_equality():
    assert LocalFactor(2, 1, 0) == LocalFactor(2, 1, 0)
    assert LocalFactor(2, 1, 0) != LocalFactor(2, 1, 1)
    assert LocalFactor(1, 2) != LocalFactor(2, 1)
    assert len({LocalFactor(3, 1, 1), LocalFactor(3, 1, 1)}) == 1


def test_unramified_pieces():
    # 3 is a non-square mod 7, an inert quadratic
    assert invariants(7, [-3, 0, 1]) == [(1, 2, None)]
    # 3 has order 4 mod 5: an inert quartic
    assert invariants(5, [-3, 0, 0, 0, 1]) == [(1, 4, None)]
    # z^2 - 49 splits into two rational roots of valuation 1
    assert invariants(7, [-49, 0, 1]) == [(1, 1, None), (1, 1, None)]


def test_totally_ramified_quadratics():
    # z^2 - p^3·u: ramified, class read from the unit u at odd valuation
    assert invariants(7, [-343, 0, 1]) == [(2, 1, 0)]
    assert invariants(7, [-1029, 0, 1]) == [(2, 1, 1)]      # u = 3, non-square
    assert invariants(5, [-125, 0, 1]) == [(2, 1, 0)]
    assert invariants(5, [-250, 0, 1]) == [(2, 1, 1)]       # u = 2, non-square


def test_tame_cubic_classes():
    # z^3 - 21 over Q_7: e = 3 tame, unit class of 3 in units/cubes
    assert invariants(7, [-21, 0, 0, 1]) == [(3, 1, 1)]
    # z^3 - 3 over Q_3 is wildly ramified: e determined, class withheld
    assert invariants(3, [-3, 0, 0, 1]) == [(3, 1, None)]


def test_inert_then_ramified():
    # (z^2 - 2)^2 - 5: residue is an irreducible square; the cluster sits
    # in the unramified quadratic and ramifies there
    assert invariants(5, [-1, 0, -4, 0, 1], prec=24) == [(2, 2, 0)]
    # (z^2 - 2)^3 - 5: same ascent, tame cubic above
    assert invariants(5, [-13, 0, 12, 0, -6, 0, 1], prec=24) == [(3, 2, 0)]


def test_exact_roots_at_zero_stripped():
    # z(z^2 - 5)(z^2 - 2) = z^5 - 7z^3 + 10z over Z_5
    assert invariants(5, [0, 10, 0, -7, 0, 1]) == [
        (1, 1, None), (1, 2, None), (2, 1, 0)
    ]


def test_dimension_bookkeeping():
    for p, coeffs in [(7, [-21, 0, 0, 1]), (5, [-1, 0, -4, 0, 1]),
                      (11, [-11, 0, 0, 0, 0, 1])]:
        facs = invariants(p, coeffs, prec=24)
        assert sum(e * f for e, f, _ in facs) == len(coeffs) - 1


def test_sorted_output():
    facs = invariants(5, [0, 10, 0, -7, 0, 1])
    assert facs == sorted(facs, key=lambda t: (t[0], t[1], -1 if t[2] is None else t[2]))


def test_unsupported_cluster_shape():
    # z^4 - 9 over Z_3: two e = 2 pieces share the slope-1/2 segment, which
    # the recursion cannot separate
    with pytest.raises(PreconditionError):
        invariants(3, [-9, 0, 0, 0, 1])


def test_monic_required():
    ring = PadicRing(5, 20)
    f = Poly(ring, [ring.exact(1), ring.exact(0), ring.exact(3)])
    with pytest.raises(PreconditionError):
        local_factor(f)
