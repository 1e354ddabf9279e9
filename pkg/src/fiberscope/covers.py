"""Covers of the projective line: bivariate integer polynomials monic in z,
their discriminants, branch loci, and good-reduction checking.

A cover is f(t, z) ∈ Z[t][z], monic of degree d ≥ 2 in z, understood as the
function-field extension Q(t)[z]/(f) ↔ ψ: C → P¹.  The branch data lives in
disc_z(f) ∈ Z[t] and its radical r(t); a prime p has good reduction when the
reduction preserves the branch locus and every ramification index, all
tamely — checked by five effective conditions, see check_good_reduction.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import PreconditionError
from .fields import FqField, make_field
from .fqfactor import factor, is_irreducible, squarefree_decomposition
from .ntheory import primes_upto, prime_divisors
from .poly import Poly, QQ, ZZ, discriminant, poly_gcd


class CoverSpec:
    """A cover given as the coefficient matrix of f(t, z): rows by z-degree,
    columns by t-degree; cached discriminant and branch radical."""

    def __init__(self, z_coeffs, check_irreducible: bool = True):
        # z_coeffs[i] = coefficient of z^i as an integer polynomial in t
        self.z_coeffs = [Poly(ZZ, row) for row in z_coeffs]
        while self.z_coeffs and self.z_coeffs[-1].is_zero():
            self.z_coeffs.pop()
        self.d = len(self.z_coeffs) - 1
        if self.d < 2:
            raise PreconditionError("cover needs z-degree >= 2")
        lc = self.z_coeffs[-1]
        if not (lc.degree == 0 and lc.coeffs[0] == 1):
            raise PreconditionError("cover must be monic in z")
        self._disc = None
        self._radical = None
        self.irreducibility_witness = None
        if check_irreducible:
            self.irreducibility_witness = find_irreducibility_witness(self)

    # -- structural data ---------------------------------------------------

    @property
    def t_degree(self) -> int:
        return max((c.degree for c in self.z_coeffs), default=0)

    def coefficient_matrix(self) -> list[list[int]]:
        width = self.t_degree + 1
        return [
            [row.coeff(j) for j in range(width)] for row in self.z_coeffs
        ]

    def disc_z(self) -> Poly:
        """disc_z f as an integer polynomial in t, by evaluation at enough
        integer points and exact interpolation."""
        if self._disc is None:
            bound = (2 * self.d - 1) * max(1, self.t_degree) + 1
            xs = list(range(bound + 1))
            ys = [
                Fraction(discriminant(self.specialize_exact(x))) for x in xs
            ]
            self._disc = _interpolate_integer(xs, ys)
        return self._disc

    def radical(self) -> Poly:
        """The squarefree part r(t) of disc_z f: primitive over Z with
        positive leading coefficient."""
        if self._radical is None:
            disc = self.disc_z()
            if disc.is_zero():
                raise PreconditionError(
                    "discriminant vanishes identically (inseparable cover)"
                )
            dq = disc.map_coeffs(Fraction, QQ)
            sqfree = (dq // poly_gcd(dq, dq.derivative())).monic()
            self._radical = _primitive_integer(sqfree)
        return self._radical

    def branch_multiplicity_parts(self) -> list[tuple[Poly, int]]:
        """Yun decomposition of disc_z f over Q: [(primitive integer part,
        multiplicity)] with each part squarefree, pairwise coprime."""
        dq = self.disc_z().map_coeffs(Fraction, QQ).monic()
        out = []
        g = poly_gcd(dq, dq.derivative())
        b = dq // g
        w = dq.derivative() // g - b.derivative()
        k = 1
        while b.degree > 0:
            a = poly_gcd(b, w)
            if a.degree > 0:
                out.append((_primitive_integer(a), k))
            b = b // a
            w = w // a - b.derivative()
            k += 1
        return out

    # -- specializations ----------------------------------------------------

    def specialize_exact(self, t) -> Poly:
        """f(t, z) ∈ Q[z] for a rational t (ZZ when t is an integer)."""
        if isinstance(t, int):
            return Poly(ZZ, [c(t) for c in self.z_coeffs])
        t = Fraction(t)
        return Poly(
            QQ, [Fraction(cq(t)) for cq in
                 (c.map_coeffs(Fraction, QQ) for c in self.z_coeffs)]
        )

    def fq_fiber_poly(self, field: FqField, tbar) -> Poly:
        """f(t̄, z) over F_q."""
        tbar = field.coerce(tbar)
        coeffs = []
        for c in self.z_coeffs:
            acc = field.zero()
            power = field.one()
            for a in c.coeffs:
                acc = acc + field.from_int(a % field.p) * power
                power = power * tbar
            coeffs.append(acc)
        return Poly(field, coeffs)

    def padic_fiber_poly(self, ring, t) -> Poly:
        """f(t, z) over a PadicRing, t a p-integral rational."""
        t = Fraction(t)
        if t.denominator % ring.p == 0:
            raise PreconditionError(
                "t has negative valuation; use the infinity chart"
            )
        return Poly(
            ring,
            [c.map_coeffs(Fraction, QQ)(t) for c in self.z_coeffs],
        )

    def infinity_chart(self) -> "CoverSpec":
        """The cover in the chart at infinity: substitute t -> 1/t and
        renormalize w = t^k z with the least k making all coefficients
        polynomial; fibers over t = ∞ become fibers over 0."""
        k = 0
        for i, c in enumerate(self.z_coeffs[:-1]):
            if not c.is_zero():
                k = max(k, math.ceil(c.degree / (self.d - i)))
        rows = []
        for i, c in enumerate(self.z_coeffs):
            # coefficient of w^i picks up t^(k(d-i)) · c(1/t), a polynomial
            # of degree k(d-i) - ... ; reverse c into degree k(d-i)
            shift = k * (self.d - i)
            cs = list(c.coeffs)
            rows.append([0] * (shift - c.degree) + list(reversed(cs))
                        if not c.is_zero() else [])
        return CoverSpec(rows, check_irreducible=False)

    def __repr__(self):
        return f"CoverSpec(deg_z={self.d}, deg_t={self.t_degree})"


def _interpolate_integer(xs, ys) -> Poly:
    """Exact Lagrange interpolation; asserts integer coefficients."""
    n = len(xs)
    acc = Poly(QQ, [])
    for i in range(n):
        num = Poly(QQ, [Fraction(1)])
        den = Fraction(1)
        for j in range(n):
            if j != i:
                num = num * Poly(QQ, [Fraction(-xs[j]), Fraction(1)])
                den *= Fraction(xs[i] - xs[j])
        acc = acc + num.scalar_mul(ys[i] / den)
    coeffs = []
    for c in acc.coeffs:
        assert c.denominator == 1, "interpolation produced a non-integer"
        coeffs.append(int(c))
    return Poly(ZZ, coeffs)


def _primitive_integer(f: Poly) -> Poly:
    """Clear denominators of a rational polynomial and divide by content;
    leading coefficient made positive."""
    if f.is_zero():
        return Poly(ZZ, [])
    denom = 1
    for c in f.coeffs:
        c = Fraction(c)
        denom = denom * c.denominator // math.gcd(denom, c.denominator)
    ints = [int(Fraction(c) * denom) for c in f.coeffs]
    content = 0
    for a in ints:
        content = math.gcd(content, a)
    ints = [a // content for a in ints]
    if ints[-1] < 0:
        ints = [-a for a in ints]
    return Poly(ZZ, ints)


def find_irreducibility_witness(cover: CoverSpec, prime_bound: int = 30):
    """Search for (p, t̄) with f(t̄, z) irreducible over F_p — a sound
    certificate that f is irreducible over Q(t) (monic specialization).
    Returns the witness pair or None (callers may warn, not reject)."""
    for p in primes_upto(prime_bound):
        field = make_field(p, 1)
        for tbar in range(p):
            fiber = cover.fq_fiber_poly(field, tbar)
            if fiber.degree == cover.d and is_irreducible(fiber):
                return (p, tbar)
    return None


class ReductionReport:
    """Outcome of the good-reduction check at a prime."""

    def __init__(self, p, good, branch_points_mod_p, ramification_table,
                 failure_reasons):
        self.p = p
        self.good = good
        self.branch_points_mod_p = branch_points_mod_p
        self.ramification_table = ramification_table
        self.failure_reasons = failure_reasons

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "good": self.good,
            "branch_points_mod_p": self.branch_points_mod_p,
            "ramification_table": {
                str(tbar): sorted(pairs)
                for tbar, pairs in self.ramification_table.items()
            },
            "failure_reasons": self.failure_reasons,
        }

    def __repr__(self):
        status = "good" if self.good else f"bad ({'; '.join(self.failure_reasons)})"
        return f"ReductionReport(p={self.p}, {status})"


def check_good_reduction(cover: CoverSpec, p: int) -> ReductionReport:
    """The five effective conditions:

    (i)   p ∤ d and p ∤ lc_t(r);
    (ii)  r mod p squarefree of full degree (branch locus étale);
    (iii) per closed branch point, the fiber's Σ(e−1)·deg matches the
          t-adic vanishing of the discriminant, and the discriminant's
          multiplicity structure matches characteristic 0;
    (iv)  every ramification index is prime to p (tameness);
    (v)   every ramified residue factor is separable.
    """
    reasons = []
    r = cover.radical()
    disc = cover.disc_z()
    field = make_field(p, 1)

    if cover.d % p == 0:
        reasons.append(f"p divides deg_z = {cover.d}")
    if r.leading() % p == 0:
        reasons.append("branch locus degenerates: p divides lc(r)")

    rbar = Poly(field, [c % p for c in r.coeffs])
    if rbar.degree != r.degree:
        reasons.append("branch locus drops degree mod p")
    elif poly_gcd(rbar, rbar.derivative()).degree != 0:
        reasons.append("branch locus not squarefree mod p")

    if all(c % p == 0 for c in disc.coeffs):
        reasons.append("discriminant vanishes identically mod p")

    # F_p-rational ramification table is always reported, even on failure
    table = {}
    if not reasons:
        # (iii) part one: multiplicity structure of the discriminant
        char0 = {k: part for part, k in cover.branch_multiplicity_parts()}
        discbar = Poly(field, [c % p for c in disc.coeffs])
        modp = {k: part for part, k in squarefree_decomposition(discbar)}
        if sorted(char0) != sorted(modp):
            reasons.append(
                "discriminant multiplicity profile changes mod p"
            )
        else:
            for k, part in char0.items():
                redc = Poly(field, [c % p for c in part.coeffs])
                if redc.degree != part.degree or not (redc.monic() == modp[k]):
                    reasons.append(
                        f"multiplicity-{k} branch factor changes mod p"
                    )
                    break

    if not reasons:
        # (iii) part two + (iv) + (v): closed points of the branch locus
        disc_mult = _disc_multiplicities(cover, field)
        for rho, mult in factor(rbar):
            delta = rho.degree
            ext = make_field(p, delta)
            theta = _root_in_extension(rho, ext)
            fiber = cover.fq_fiber_poly(ext, theta)
            pairs = []
            for g, e in factor(fiber):
                pairs.append((g.degree, e))
                if math.gcd(e, p) != 1:
                    reasons.append(
                        f"wild ramification: e = {e} at a point above "
                        f"deg-{delta} branch point"
                    )
                if e > 1 and poly_gcd(g, g.derivative()).degree != 0:
                    reasons.append("inseparable ramified residue factor")
            rough = sum((e - 1) * dg for dg, e in pairs)
            expected = disc_mult[_coeff_key_int(rho)]
            if rough != expected:
                reasons.append(
                    f"ramification degree sum {rough} != disc vanishing "
                    f"order {expected} at a branch point"
                )

    # rational table for the report; also catches wildness when earlier
    # conditions already failed (e.g. p | d covers z^p - t)
    for tbar in range(p):
        rb = rbar(field.from_int(tbar)) if rbar.degree >= 0 else field.zero()
        if rbar.is_zero() or not rb.is_zero():
            continue
        fiber = cover.fq_fiber_poly(field, tbar)
        pairs = sorted((g.degree, e) for g, e in factor(fiber))
        table[tbar] = pairs
        for dg, e in pairs:
            if math.gcd(e, p) != 1:
                reasons.append(
                    f"wild ramification: e = {e} at t̄ = {tbar}"
                )

    good = not reasons
    branch = sorted(table)
    return ReductionReport(p, good, branch, table, sorted(set(reasons)))


def _coeff_key_int(g: Poly):
    return tuple(tuple(c.coeffs) for c in g.coeffs)


def _disc_multiplicities(cover: CoverSpec, field: FqField) -> dict:
    """Map (irreducible factor of r̄ over F_p) -> vanishing order of the
    reduced discriminant along it."""
    p = field.p
    discbar = Poly(field, [c % p for c in cover.disc_z().coeffs])
    out = {}
    for part, k in squarefree_decomposition(discbar):
        for rho, _ in factor(part):
            out[_coeff_key_int(rho)] = k
    return out


def _root_in_extension(rho: Poly, ext: FqField):
    """A root in F_{p^deg} of an irreducible polynomial over F_p."""
    lifted = Poly(ext, [ext.from_int(c.lift()) for c in rho.coeffs])
    for a in ext:
        if ext.is_zero(lifted(a)):
            return a
    raise AssertionError("irreducible factor without a root in its field")


def bad_primes(cover: CoverSpec, bound: int) -> set[int]:
    """Primes ≤ bound where check_good_reduction fails, together with all
    primes ≤ bound dividing lc(r), disc(r) or d! — a deliberate superset:
    everything ≤ bound left out is certified good."""
    out = set()
    r = cover.radical()
    rq = r.map_coeffs(Fraction, QQ)
    disc_r = discriminant(rq) if r.degree >= 1 else 1
    extras = abs(int(r.leading())) * math.factorial(cover.d)
    num = Fraction(disc_r)
    extras *= abs(num.numerator)
    for p in primes_upto(bound):
        if extras % p == 0 or not check_good_reduction(cover, p).good:
            out.add(p)
    return out
