"""Hensel lifting: simple roots, coprime splits, and block lifts."""

import pytest

from fiberscope.errors import PreconditionError
from fiberscope.fields import make_field
from fiberscope.hensel import (
    hensel_lift_blocks,
    hensel_split,
    lift_root,
    poly_residue,
)
from fiberscope.padic import PadicRing, UnramifiedRing
from fiberscope.poly import Poly


def _zp_poly(ring, coeffs):
    return Poly(ring, [ring.exact(c) for c in coeffs])


def test_lift_root_square():
    ring = PadicRing(7, 20)
    f = _zp_poly(ring, [-2, 0, 1])          # z^2 - 2, and 2 = 3^2 mod 7
    root = lift_root(f, make_field(7, 1).from_int(3))
    assert f(root).is_apparent_zero()
    assert root.residue() == 3
    assert (root * root) == 2


def test_lift_root_respects_full_precision():
    ring = PadicRing(5, 40)
    f = _zp_poly(ring, [-6, 0, 1])
    root = lift_root(f, make_field(5, 1).from_int(1))
    assert (root * root - ring.exact(6)).is_apparent_zero()


def test_lift_root_needs_simple_root():
    ring = PadicRing(5, 10)
    f = _zp_poly(ring, [0, 0, 1])           # z^2: double root at 0
    with pytest.raises(PreconditionError):
        lift_root(f, make_field(5, 1).from_int(0))


def test_hensel_split_reconstructs():
    ring = PadicRing(5, 16)
    f = _zp_poly(ring, [-1, 0, 0, 0, 1])    # z^4 - 1
    field = make_field(5, 1)
    fbar = poly_residue(f)
    g0 = Poly(field, [field.from_int(4), field.one()])      # z - 1
    h0 = fbar // g0
    g, h = hensel_split(f, g0, h0, 16)
    prod = g * h
    diff = prod - f
    assert all(c.is_apparent_zero() for c in diff.coeffs) or diff.is_zero()
    assert poly_residue(g) == g0


def test_hensel_split_requires_coprimality():
    ring = PadicRing(5, 10)
    f = _zp_poly(ring, [0, 0, 0, 1])        # z^3
    field = make_field(5, 1)
    z = Poly(field, [field.zero(), field.one()])
    with pytest.raises(PreconditionError):
        hensel_split(f, z, z * z, 10)


def test_hensel_lift_blocks():
    ring = PadicRing(7, 14)
    # (z - 1)(z - 2)(z^2 + 1) over Z_7, grouped as three coprime blocks
    f = (_zp_poly(ring, [-1, 1]) * _zp_poly(ring, [-2, 1])
         * _zp_poly(ring, [1, 0, 1]))
    field = make_field(7, 1)
    mk = lambda cs: Poly(field, [field.from_int(c) for c in cs])
    parts = [mk([-1, 1]), mk([-2, 1]), mk([1, 0, 1])]
    blocks = hensel_lift_blocks(f, parts, 14)
    assert [b.degree for b in blocks] == [1, 1, 2]
    prod = blocks[0] * blocks[1] * blocks[2]
    diff = prod - f
    assert all(c.is_apparent_zero() for c in diff.coeffs) or diff.is_zero()
    for block, part in zip(blocks, parts):
        assert poly_residue(block) == part


def test_hensel_split_unramified_coefficients():
    ring = UnramifiedRing(3, 2, 12)
    field = ring.residue_field
    w = field.gen()
    # (z - w)(z + w)(z - 1) with residues split as (z - w) * rest
    zw = Poly(ring, [-ring.lift_residue(w), ring.one()])
    zw2 = Poly(ring, [ring.lift_residue(w), ring.one()])
    z1 = Poly(ring, [-ring.one(), ring.one()])
    f = zw * zw2 * z1
    g0 = Poly(field, [-w, field.one()])
    h0 = poly_residue(f) // g0
    g, h = hensel_split(f, g0, h0, 12)
    assert g.degree == 1 and h.degree == 2
    assert poly_residue(g) == g0
