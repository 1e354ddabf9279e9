"""Hensel lifting over Z_p and its unramified extensions.

Two flavours: Newton iteration for a simple residue root, and the quadratic
two-factor split for a monic polynomial whose reduction factors into coprime
monic parts.  The split follows the classical scheme: with s·g0 + t·h0 = 1,
each round replaces (g, h) by (g + te + qg, h + r) where e = f − gh and
se = qh + r, then refreshes the Bezout pair the same way.
"""

from __future__ import annotations

import math

from .errors import BelowPrecisionError, PreconditionError
from .padic import PadicInt, UnramElement
from .poly import Poly


def poly_residue(f: Poly) -> Poly:
    """Reduction of a polynomial over a p-adic ring to the residue field."""
    field = f.ring.residue_field
    return Poly(field, [field.coerce(c.residue()) for c in f.coeffs])


def poly_lift(fbar: Poly, ring) -> Poly:
    """Coefficientwise integer lift of a residue-field polynomial."""
    return Poly(ring, [ring.lift_residue(c) for c in fbar.coeffs])


def poly_truncate(f: Poly, prec: int) -> Poly:
    """Truncate every coefficient to absolute precision `prec`."""
    return Poly(f.ring, [c.at_precision(min(prec, _prec_of(c))) for c in f.coeffs])


def _prec_of(c):
    if isinstance(c, PadicInt):
        return c.prec
    return min(a.prec for a in c.vec)


def _inexact_copy(x):
    """Forget exactness so iterative refinements don't grow huge rationals."""
    if isinstance(x, PadicInt):
        return PadicInt(x.ring, x.man, x.prec, None)
    return UnramElement(x.ring, [_inexact_copy(a) for a in x.vec])


def poly_xgcd(f: Poly, g: Poly):
    """(d, s, t) with s·f + t·g = d over a coefficient field, d monic."""
    ring = f.ring
    one = Poly(ring, [ring.one()])
    zero = Poly(ring, [])
    r0, r1 = f, g
    s0, s1 = one, zero
    t0, t1 = zero, one
    while not r1.is_zero():
        q, r = r0.divmod_by(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = ring.inv(r0.leading())
    return r0.scalar_mul(inv), s0.scalar_mul(inv), t0.scalar_mul(inv)


def lift_root(f: Poly, abar):
    """Newton lift of a simple residue root of f to the ring's precision.

    abar may be a residue-field element or anything the residue field
    coerces; f must have a unit derivative at the root mod p.
    """
    ring = f.ring
    field = ring.residue_field
    abar = field.coerce(abar)
    fbar = poly_residue(f)
    if not field.is_zero(fbar(abar)):
        raise PreconditionError("not a root of the reduction")
    if field.is_zero(poly_residue(f.derivative())(abar)):
        raise PreconditionError("root of the reduction is not simple")
    x = _inexact_copy(ring.lift_residue(abar))
    fprime = f.derivative()
    for _ in range(max(2, math.ceil(math.log2(ring.prec)) + 2)):
        fx = f(x)
        if f.ring.is_zero(fx):
            break
        x = x - fx * ring.inv(fprime(x))
    return x


def hensel_split(f: Poly, g0: Poly, h0: Poly, target_prec: int):
    """Lift the coprime monic residue factorization f ≡ g0·h0 to a monic
    factorization f ≡ g·h mod p^target_prec; the lift is unique to that
    precision.  Degenerate splits (a degree-0 side) are rejected."""
    ring = f.ring
    field = ring.residue_field
    if g0.degree < 1 or h0.degree < 1:
        raise PreconditionError(
            "degenerate split: both residue factors need positive degree"
        )
    if not f.is_monic() or not g0.is_monic() or not h0.is_monic():
        raise PreconditionError("hensel_split needs monic inputs")
    if ring.prec < target_prec:
        raise BelowPrecisionError(
            f"input precision {ring.prec} below target {target_prec}"
        )
    if not (poly_residue(f) == g0 * h0):
        raise PreconditionError("f mod p is not g0 * h0")
    d, s, t = poly_xgcd(g0, h0)
    if d.degree != 0:
        raise PreconditionError("residue factors are not coprime")

    g, h = poly_lift(g0, ring), poly_lift(h0, ring)
    S, T = poly_lift(s, ring), poly_lift(t, ring)
    one = Poly(ring, [ring.one()])
    for _ in range(max(2, math.ceil(math.log2(target_prec)) + 2)):
        e = f - g * h
        if e.is_zero():
            break
        q, r = (S * e).divmod_by(h)
        g = g + T * e + q * g
        h = h + r
        b = S * g + T * h - one
        if not b.is_zero():
            c, d2 = (S * b).divmod_by(h)
            S = S - d2
            T = T - T * b - c * g
    return poly_truncate(g, target_prec), poly_truncate(h, target_prec)


def hensel_lift_blocks(f: Poly, blocks, target_prec: int):
    """Lift a pairwise-coprime monic residue factorization with several
    factors; returns the lifted factors in the order of `blocks`."""
    if not blocks:
        raise PreconditionError("no residue blocks given")
    if len(blocks) == 1:
        return [poly_truncate(f, target_prec)]
    rest = blocks[1]
    for b in blocks[2:]:
        rest = rest * b
    g, h = hensel_split(f, blocks[0], rest, target_prec)
    return [g] + hensel_lift_blocks(h, blocks[1:], target_prec)
