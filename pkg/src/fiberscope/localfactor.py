"""Factorization of monic polynomials over Z_p into (e, f) invariants by
cluster recursion.

The engine never computes full irreducible factors over Q_p.  It finds, for
each irreducible factor, its ramification index e, inertia degree f, and —
for tame totally ramified pieces reached through a coprime-to-e slope — the
unit class of the attached binomial y^e − u·p, which classifies the field
up to isomorphism.

Method: factor the residue, Hensel-split into coprime blocks; an inert block
(irreducible residue of degree k > 1) is pushed up into the unramified
extension of relative degree k, where its residue splits into conjugate
clusters — by the orbit correspondence, the factors of ONE cluster,
with inertia multiplied by k, enumerate the absolute factors.  A totally
congruent block (residue a power of a linear) is recentered on the
Teichmüller lift and dispatched on its Newton polygon: a polygon of one
segment with slope of exact denominator e is an irreducible totally
ramified piece; an integer lowest slope is scaled away (y -> p^a y) so the
residue separates again; anything else is outside the supported range.
"""

from __future__ import annotations

import math

from .errors import PreconditionError
from .fields import FqElement, FqField
from .fqfactor import factor, roots_in_field
from .hensel import hensel_split, hensel_lift_blocks, lift_root, poly_residue
from .padic import PadicInt, PadicRing, UnramifiedRing, teichmuller_lift
from .poly import Poly, newton_polygon


class LocalFactor:
    """Invariant data of one irreducible factor over Q_p: ramification
    index e, inertia degree f, and the tame unit class when determined."""

    def __init__(self, e, f, unit_index=None):
        self.e = e
        self.f = f
        self.unit_index = unit_index

    def key(self):
        idx = -1 if self.unit_index is None else self.unit_index
        return (self.e, self.f, idx)

    def __eq__(self, other):
        return isinstance(other, LocalFactor) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        tail = "" if self.unit_index is None else f", u={self.unit_index}"
        return f"LocalFactor(e={self.e}, f={self.f}{tail})"


def _poly_prec(g: Poly) -> int:
    out = None
    for c in g.coeffs:
        prec = c.prec if hasattr(c, "prec") else min(a.prec for a in c.vec)
        out = prec if out is None else min(out, prec)
    return out


def _fq_embed(x: FqElement, dst: FqField, rhobar: FqElement) -> FqElement:
    """Image of x under the embedding sending the source generator to
    rhobar (a root of the source modulus in dst)."""
    acc = dst.zero()
    power = dst.one()
    for a in x.coeffs:
        acc = acc + dst.from_int(a) * power
        power = power * rhobar
    return acc


class _Ascent:
    """Embedding of an unramified ring (or Z_p) into a larger one, fixed by
    the choice of a root of the source modulus in the destination."""

    def __init__(self, src, dst: UnramifiedRing):
        self.src = src
        self.dst = dst
        if isinstance(src, PadicRing):
            self.rhobar = dst.residue_field.one()
            self.rho_powers = [dst.one()]
        else:
            mbar = Poly(
                dst.residue_field,
                [
                    _fq_embed(src.residue_field.from_int(m % src.p),
                              dst.residue_field, dst.residue_field.one())
                    for m in src.modulus
                ],
            )
            self.rhobar = roots_in_field(mbar)[0]
            modulus = Poly(
                dst, [dst.element([dst.base.inexact(m)]) for m in src.modulus]
            )
            rho = lift_root(modulus, self.rhobar)
            self.rho_powers = [dst.one()]
            for _ in range(src.f - 1):
                self.rho_powers.append(self.rho_powers[-1] * rho)

    def map_element(self, x):
        if isinstance(self.src, PadicRing):
            return self.dst.coerce(x)
        acc = self.dst.zero()
        for coord, power in zip(x.vec, self.rho_powers):
            acc = acc + self.dst.coerce(coord) * power
        return acc

    def map_residue(self, x) -> FqElement:
        if isinstance(self.src, PadicRing):
            return self.dst.residue_field.from_int(x.lift())
        return _fq_embed(x, self.dst.residue_field, self.rhobar)


def _binomial_class_index(ring, c0, v: int, e: int):
    """Unit class index of the totally ramified degree-e piece whose
    centered polynomial has constant term c0 of valuation v, gcd(v, e) = 1:
    the class of ((−1)^{e+1}·c0/p^v)^{1/v mod e}."""
    if math.gcd(e, ring.p) != 1:
        return None
    unit = c0.shift_down(v)
    if isinstance(unit, PadicInt):
        ubar = ring.residue_element(unit)
    else:
        ubar = unit.residue()
    m_v = pow(v % e, -1, e)
    field = ring.residue_field
    sign = field.one() if e % 2 == 1 else field.from_int(field.p - 1)
    value = sign * ubar**m_v
    g = math.gcd(e, field.order - 1)
    return value.dlog() % g


def _scale_down(h: Poly, a: int) -> Poly:
    """h(p^a·y)/p^{a·deg h} — integral exactly when the Newton polygon of h
    lies on or above the line of slope a through (deg h, 0)."""
    n = h.degree
    return Poly(h.ring, [c.shift_down(a * (n - i)) if a * (n - i) else c
                         for i, c in enumerate(h.coeffs)])


def cluster_factor(g: Poly, ring) -> list[LocalFactor]:
    """All (e, f) invariants of g's irreducible factors, relative to the
    coefficient ring (f counted relative to ring's residue field)."""
    if g.degree == 0:
        return []
    if not g.is_monic():
        raise PreconditionError("cluster recursion requires a monic input")
    # exact roots at 0 are visible before any lifting; strip them so they
    # don't hide behind an undetermined constant term later
    out = []
    while g.degree > 0 and ring.val_info(g.coeff(0))[0] == "exact_zero":
        out.append(LocalFactor(1, 1))
        g = Poly(ring, g.coeffs[1:])
    if g.degree == 0:
        return out
    if out:
        return out + cluster_factor(g, ring)
    gbar = poly_residue(g)
    residue_factors = factor(gbar)

    # simple residue factors lift by Hensel to unramified factors: their
    # invariants (e = 1, f = deg) need no splitting and no descent
    out = [LocalFactor(1, ft.degree)
           for ft, e in residue_factors if e == 1]
    ramified = [(ft, e) for ft, e in residue_factors if e >= 2]
    if not ramified:
        return out

    if out or len(ramified) > 1:
        parts = [ft**e for ft, e in ramified]
        if out:
            sep = None
            for ft, e in residue_factors:
                if e == 1:
                    sep = ft if sep is None else sep * ft
            parts.append(sep)
        blocks = hensel_lift_blocks(g, parts, _poly_prec(g))
        for block in blocks[:len(ramified)]:
            out.extend(cluster_factor(block, ring))
        return out

    ftilde, e = ramified[0]
    k = ftilde.degree

    if k > 1:
        # inert direction: ascend to the unramified extension where the
        # residue factor splits, analyze one conjugate cluster, multiply f
        dst = UnramifiedRing(ring.p, ring.f * k, ring.prec)
        ascent = _Ascent(ring, dst)
        g_up = Poly(dst, [ascent.map_element(c) for c in g.coeffs])
        ft_up = Poly(
            dst.residue_field, [ascent.map_residue(c) for c in ftilde.coeffs]
        )
        theta_bar = roots_in_field(ft_up)[0]
        zero = dst.residue_field.zero()
        y_minus_theta = Poly(
            dst.residue_field, [zero - theta_bar, dst.residue_field.one()]
        )
        rest = (ft_up // y_minus_theta) ** e
        if rest.degree == 0:
            cluster = g_up
        else:
            cluster, _ = hensel_split(
                g_up, y_minus_theta**e, rest, _poly_prec(g_up)
            )
        return [
            LocalFactor(fac.e, k * fac.f, fac.unit_index)
            for fac in cluster_factor(cluster, dst)
        ]

    # residue is (y - abar)^e, e >= 2: recenter on the Teichmüller lift
    abar = -ftilde.coeff(0)
    center = teichmuller_lift(abar, ring)
    h = g.shift(center)
    return _centered_factors(h, ring)


def _centered_factors(h: Poly, ring) -> list[LocalFactor]:
    """Factors of h whose residue is y^(deg h) — all roots of positive
    valuation — dispatched on the Newton polygon."""
    np_data = newton_polygon(h)
    out = [LocalFactor(1, 1) for _ in range(np_data.vanishing_order)]
    core = Poly(ring, h.coeffs[np_data.vanishing_order:])
    if core.degree == 0:
        return out
    segments = np_data.segments

    if len(segments) == 1:
        slope, length = segments[0]
        if slope.denominator == length:
            idx = None
            if length > 1:
                idx = _binomial_class_index(
                    ring, core.coeff(0), slope.numerator, length
                )
            out.append(LocalFactor(length, 1, idx))
            return out

    lowest = segments[0][0]
    if lowest.denominator == 1:
        scaled = _scale_down(core, int(lowest))
        out.extend(cluster_factor(scaled, ring))
        return out

    raise PreconditionError(
        "unsupported cluster shape: fractional slope segment of composite "
        "length"
    )


def local_factor(f: Poly) -> list[LocalFactor]:
    """Invariants of the irreducible factors of a monic f over Z_p,
    sorted by (e, f, class); Σ e·f = deg f."""
    ring = f.ring
    factors = sorted(cluster_factor(f, ring), key=LocalFactor.key)
    total = sum(fac.e * fac.f for fac in factors)
    assert total == f.degree, "dimension bookkeeping failed"
    return factors
