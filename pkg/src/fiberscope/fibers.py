"""Fibers of a cover over p-adic points: structure-theorem prediction,
direct p-adic verification, and the ramified-class census.

Two independent paths compute the étale algebra k(C_t) ⊗ Q_p of a fiber:

* predict_fiber reads everything from residue data — the mod-p
  factorization of the fiber, the distance v = val(t − t₀) to the branch
  point, and one unit class built from ∂f/∂t — and applies the structure
  theorem for tame extensions;
* factor_fiber_oracle factors f(t, z) over Z_p by cluster recursion and
  reports what is actually there.

agreement_check runs both and compares.  measure_census sweeps all lifts
of a branch point with v = 1 and histograms the resulting classes.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction

from .covers import CoverSpec, check_good_reduction
from .errors import BelowPrecisionError, PreconditionError
from .fields import FqElement, make_field
from .fqfactor import factor, roots_in_field
from .hensel import lift_root
from .localfactor import local_factor
from .padic import PadicRing, UnramifiedRing
from .poly import Poly, QQ
from .tame import TameExtensionClass

INFINITE_DISTANCE = math.inf

_DEFAULT_PRECISION_CAP = 256


def _precision_cap() -> int:
    return int(os.environ.get("FIBERSCOPE_PRECISION_CAP",
                              str(_DEFAULT_PRECISION_CAP)))


def with_precision_escalation(start: int, fn):
    """Run fn(N), doubling N on below-precision failures up to the cap."""
    cap = _precision_cap()
    n = min(start, cap)
    while True:
        try:
            return fn(n)
        except BelowPrecisionError:
            if n >= cap:
                raise
            n = min(2 * n, cap)


class EtaleFactor:
    """One factor of the fiber algebra: ramification index e, inertia
    degree f, optional tame class; indeterminate rows carry bounds for e
    instead of a class."""

    def __init__(self, e, f, tame_class=None, e_bounds=None,
                 block_dimension=None):
        self.e = e
        self.f = f
        self.tame_class = tame_class
        self.e_bounds = e_bounds
        self.block_dimension = block_dimension

    @property
    def indeterminate(self) -> bool:
        return self.e_bounds is not None

    def key(self):
        cls = (-1, -1) if self.tame_class is None else (
            self.tame_class.g, self.tame_class.unit_index
        )
        return (self.e, self.f, cls, self.e_bounds or (0, 0))

    def __eq__(self, other):
        return isinstance(other, EtaleFactor) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def to_json(self) -> dict:
        out = {"e": self.e, "f": self.f,
               "tame_class": None if self.tame_class is None
               else self.tame_class.to_json()}
        if self.indeterminate:
            out["e_bounds"] = list(self.e_bounds)
            out["indeterminate"] = True
        return out

    def __repr__(self):
        if self.indeterminate:
            return (f"EtaleFactor(e in {self.e_bounds}, f={self.f}, "
                    f"indeterminate)")
        tail = "" if self.tame_class is None else f", {self.tame_class!r}"
        return f"EtaleFactor(e={self.e}, f={self.f}{tail})"


class EtaleAlgebraDescriptor:
    """Multiset of fiber factors; total dimension is conserved."""

    def __init__(self, factors, degree=None):
        self.factors = sorted(factors, key=EtaleFactor.key)
        if degree is not None:
            total = sum(
                fac.block_dimension if fac.indeterminate else fac.e * fac.f
                for fac in self.factors
            )
            assert total == degree, (
                f"dimension bookkeeping failed: {total} != {degree}"
            )

    def __eq__(self, other):
        return (isinstance(other, EtaleAlgebraDescriptor)
                and self.factors == other.factors)

    def __iter__(self):
        return iter(self.factors)

    def total_dimension(self) -> int:
        return sum(
            fac.block_dimension if fac.indeterminate else fac.e * fac.f
            for fac in self.factors
        )

    def to_json(self) -> dict:
        return {"factors": [fac.to_json() for fac in self.factors],
                "total_degree": self.total_dimension()}

    def __repr__(self):
        return f"EtaleAlgebraDescriptor({self.factors!r})"


class FiberPointClass:
    """A point x̄ of the special fiber over t̄: its residue factor f̃, the
    multiplicity e, the Teichmüller root, and the unit constant
    c = s(θ)·f̃'(θ)^{−e} whose class enters the prediction."""

    def __init__(self, tbar, ftilde, e, theta_bar, cbar):
        self.tbar = tbar
        self.ftilde = ftilde
        self.e = e
        self.theta_bar = theta_bar
        self.cbar = cbar

    @property
    def degree(self) -> int:
        return self.ftilde.degree

    def theta(self, prec: int = 8):
        """The Teichmüller root as an element of O_{K'}."""
        ring = UnramifiedRing(self.ftilde.ring.p, max(1, self.degree), prec)
        return ring.teichmuller(_move_residue(self.theta_bar,
                                              ring.residue_field))

    def s_theta_class(self):
        """Class index of (−1)^{e+1}·c in F_{q'}^×/(e-th powers): the class
        of the fiber at the closest lifts t = t₀ + p·(unit ≡ 1)."""
        if self.cbar is None:
            return None
        ext = self.cbar.field
        sign = ext.one() if self.e % 2 == 1 else ext.from_int(ext.p - 1)
        g = math.gcd(self.e, ext.order - 1)
        return (sign * self.cbar).dlog() % g if g > 1 else 0

    def to_json(self) -> dict:
        return {
            "tbar": self.tbar,
            "ftilde": [c.lift() if c.field.f == 1 else list(c.coeffs)
                       for c in self.ftilde.coeffs],
            "deg": self.degree,
            "e": self.e,
            "theta_bar": list(self.theta_bar.coeffs),
            "s_theta_class": self.s_theta_class(),
        }

    def __repr__(self):
        return (f"FiberPointClass(tbar={self.tbar}, deg={self.degree}, "
                f"e={self.e})")


def _move_residue(x: FqElement, dst):
    """Copy a residue element into the same field constructed elsewhere."""
    return dst.element(list(x.coeffs))


def _require_good(cover: CoverSpec, p: int):
    cache = getattr(cover, "_reduction_cache", None)
    if cache is None:
        cache = {}
        cover._reduction_cache = cache
    if p not in cache:
        cache[p] = check_good_reduction(cover, p)
    report = cache[p]
    if not report.good:
        raise PreconditionError(
            f"cover has bad reduction at p = {p}: "
            + "; ".join(report.failure_reasons)
        )
    return report


def _residue_of_rational(t: Fraction, p: int) -> int:
    t = Fraction(t)
    if t.denominator % p == 0:
        raise PreconditionError(
            "t has negative valuation; use the infinity chart"
        )
    return t.numerator * pow(t.denominator, -1, p) % p


def _fiber_blocks(cover: CoverSpec, p: int, tbar: int):
    field = make_field(p, 1)
    fiber = cover.fq_fiber_poly(field, tbar)
    return factor(fiber)


def special_fiber_data(cover: CoverSpec, p: int, tbar: int):
    """The points of the special fiber over t̄ with their prediction
    constants (good reduction required)."""
    _require_good(cover, p)
    blocks = _fiber_blocks(cover, p, tbar % p)
    out = []
    for ftilde, e in blocks:
        k = ftilde.degree
        ext = make_field(p, k)
        lifted = Poly(ext, [ext.from_int(c.lift()) for c in ftilde.coeffs])
        theta_bar = roots_in_field(lifted)[0] if k > 1 \
            else -_move_residue(ftilde.coeff(0), ext)
        cbar = None
        if e > 1:
            cbar = _prediction_constant(cover, p, tbar % p, blocks,
                                        ftilde, e, theta_bar)
        out.append(FiberPointClass(tbar % p, ftilde, e, theta_bar, cbar))
    return out


def _prediction_constant(cover, p, tbar, blocks, ftilde, e, theta_bar):
    """c = s(θ)·f̃'(θ)^{−e} computed in the residue field: s(θ) is
    (∂f/∂t)(t̄, θ̄) divided by the product of the other residue blocks at
    θ̄, and f̃'(θ̄) is the product of the root differences."""
    ext = theta_bar.field
    tbar_ext = ext.from_int(tbar)
    # (∂f/∂t)(t̄, θ̄)
    df_dt = ext.zero()
    power = ext.one()
    for c in cover.z_coeffs:
        dc = c.derivative()
        acc = ext.zero()
        tpow = ext.one()
        for a in dc.coeffs:
            acc = acc + ext.from_int(a % p) * tpow
            tpow = tpow * tbar_ext
        df_dt = df_dt + acc * power
        power = power * theta_bar
    # product of the other blocks at θ̄
    cofactor = ext.one()
    for other, mult in blocks:
        if other == ftilde:
            continue
        lifted = Poly(ext, [ext.from_int(c.lift()) for c in other.coeffs])
        cofactor = cofactor * lifted(theta_bar) ** mult
    if cofactor.is_zero():
        raise PreconditionError("residue blocks are not coprime")
    s_theta = df_dt * cofactor.inverse()
    lifted_ft = Poly(ext, [ext.from_int(c.lift()) for c in ftilde.coeffs])
    deriv = lifted_ft.derivative()(theta_bar)
    if deriv.is_zero():
        raise PreconditionError("inseparable residue factor")
    return s_theta * deriv.inverse() ** e


def branch_distance(cover: CoverSpec, p: int, t):
    """v(t, ℬ) = val_p(t − t₀) for the branch point t₀ over t̄; the
    infinite marker when the specialization is unramified."""
    v, _ = _branch_distance_data(cover, p, t)
    return v


def _lift_branch_point(cover: CoverSpec, p: int, tbar: int, prec: int):
    """Hensel lift of the branch point t₀ ≡ t̄ mod p as a root of r(t)."""
    ring = PadicRing(p, prec)
    r_poly = Poly(ring, [ring.exact(c) for c in cover.radical().coeffs])
    return lift_root(r_poly, make_field(p, 1).from_int(tbar % p))


def _branch_distance_data(cover: CoverSpec, p: int, t):
    _require_good(cover, p)
    t = Fraction(t)
    tbar = _residue_of_rational(t, p)
    blocks = _fiber_blocks(cover, p, tbar)
    if all(e == 1 for _, e in blocks):
        return INFINITE_DISTANCE, None
    rq = cover.radical().map_coeffs(Fraction, QQ)
    if rq(t) == 0:
        raise PreconditionError("t lies on the branch locus")

    def attempt(prec):
        ring = PadicRing(p, prec)
        t0 = _lift_branch_point(cover, p, tbar, prec)
        diff = ring.exact(t) - t0
        return diff.valuation(), t0

    return with_precision_escalation(12, attempt)


def predict_fiber(cover: CoverSpec, p: int, t) -> EtaleAlgebraDescriptor:
    """Étale algebra of the fiber at t from residue data alone, by the
    structure theorem for tamely ramified extensions."""
    _require_good(cover, p)
    t = Fraction(t)
    tbar = _residue_of_rational(t, p)
    points = special_fiber_data(cover, p, tbar)
    ramified = [x for x in points if x.e > 1]

    factors = []
    if not ramified:
        for x in points:
            factors.append(EtaleFactor(1, x.degree))
        return EtaleAlgebraDescriptor(factors, cover.d)

    v, t0 = _branch_distance_data(cover, p, t)
    if v == INFINITE_DISTANCE or t0 is None:
        raise PreconditionError("inconsistent branch data")

    # residue of (t - t0)/p^v in F_p
    def unit_residue(prec):
        ring = PadicRing(p, prec)
        t0_here = _lift_branch_point(cover, p, tbar, prec)
        diff = ring.exact(t) - t0_here
        return ring.residue_element(diff.shift_down(int(v)))

    u_t = with_precision_escalation(int(v) + 10, unit_residue)

    for x in points:
        if x.e == 1:
            factors.append(EtaleFactor(1, x.degree))
            continue
        e = x.e
        g = math.gcd(int(v), e)
        if g > 1:
            factors.append(
                EtaleFactor(
                    e, x.degree, e_bounds=(e // g, e),
                    block_dimension=e * x.degree,
                )
            )
            continue
        ext = x.cbar.field
        u_value = ext.from_int(u_t.lift())
        m_v = pow(int(v) % e, -1, e)
        sign = ext.one() if e % 2 == 1 else ext.from_int(p - 1)
        u_binom = sign * (u_value * x.cbar) ** m_v
        gg = math.gcd(e, ext.order - 1)
        idx = u_binom.dlog() % gg
        cls = TameExtensionClass(p, x.degree, e, idx)
        factors.append(EtaleFactor(e, x.degree, tame_class=cls))

    return EtaleAlgebraDescriptor(factors, cover.d)


def _teichmuller_factor(p: int, mbar: Poly):
    """The exact Z[z] divisor of z^{p^k} − z whose reduction is the
    irreducible mbar of degree k, or None.

    Its roots are Teichmüller points, so its coefficients are symmetric
    functions of roots of unity — bounded by 2^k — and the Frobenius-orbit
    product at low precision rounds to the exact integers.  Rounding or
    integrality failing means the orbit does not close over Q (e.g. a
    single nontrivial root of unity in Z_p); those never divide exactly,
    so None is the honest answer.
    """
    k = mbar.degree
    prec = max(8, k + 3)
    ring = UnramifiedRing(p, k, prec)
    field = ring.residue_field
    m_ext = mbar.map_coeffs(lambda c: field.from_int(c.lift()), field)
    theta = ring.teichmuller(roots_in_field(m_ext)[0])

    taus, tau = [theta], theta
    for _ in range(k - 1):
        tau = tau**p
        taus.append(tau)

    mu = Poly(ring, [ring.one()])
    for tau in taus:
        mu = mu * Poly(ring, [-tau, ring.one()])

    pk = p**prec
    out = []
    for c in mu.coeffs:
        if any(not comp.is_apparent_zero() for comp in c.vec[1:]):
            return None
        man = c.vec[0].man % pk
        value = man if man <= pk // 2 else man - pk
        if abs(value) > 2**k:
            return None
        out.append(Fraction(value))
    return Poly(QQ, out)


def _strip_teichmuller_roots(gq: Poly, p: int):
    """Exactly remove factors of gq ∈ Q[z] whose roots are Teichmüller
    points, returning (remaining polynomial, list of (e=1, f) data).

    Factors are detected on repeated blocks of the reduction and confirmed
    by exact division over Q.  Without this pre-pass the cluster descent
    would center at an exact root of gq, leaving a constant term whose
    valuation no finite precision can certify.
    """
    field = make_field(p, 1)
    stripped = []
    changed = True
    while changed and gq.degree >= 1:
        changed = False
        gbar = gq.map_coeffs(
            lambda c: field.from_int(
                c.numerator * pow(c.denominator, -1, p)),
            field,
        )
        for mbar, mult in factor(gbar):
            if mult < 2 or mbar.degree < 1:
                continue
            mu = _teichmuller_factor(p, mbar)
            if mu is None:
                continue
            quotient, remainder = gq.divmod_by(mu)
            if not remainder.is_zero():
                continue
            gq = quotient
            stripped.append((1, mbar.degree))
            changed = True
            break
    return gq, stripped


def factor_fiber_oracle(cover: CoverSpec, p: int, t,
                        precision=None) -> EtaleAlgebraDescriptor:
    """Étale algebra of the fiber at t by direct p-adic factorization.

    Factors whose roots are Teichmüller points are split off exactly
    first; a root of the fiber polynomial sitting at a deeper Teichmüller
    tower point (an unramified algebraic number none of whose truncations
    is rational) still exhausts the precision cap, which surfaces as
    BelowPrecisionError.
    """
    _require_good(cover, p)
    t = Fraction(t)
    _residue_of_rational(t, p)

    v, _ = _branch_distance_data(cover, p, t)
    e_max = max(e for _, e in _fiber_blocks(cover, p,
                                            _residue_of_rational(t, p)))
    if precision is None:
        base = 8 if v == INFINITE_DISTANCE else int(v)
        precision = base + e_max + 8

    gq = cover.specialize_exact(t).map_coeffs(Fraction, QQ).monic()
    gq, unramified = _strip_teichmuller_roots(gq, p)

    def attempt(prec):
        ring = PadicRing(p, prec)
        out = [EtaleFactor(e, f) for e, f in unramified]
        if gq.degree >= 1:
            fpoly = gq.map_coeffs(ring.exact, ring)
            for fac in local_factor(fpoly):
                cls = None
                if fac.unit_index is not None and fac.e > 1:
                    cls = TameExtensionClass(p, fac.f, fac.e,
                                             fac.unit_index)
                out.append(EtaleFactor(fac.e, fac.f, tame_class=cls))
        return EtaleAlgebraDescriptor(out, cover.d)

    return with_precision_escalation(precision, attempt)


def agreement_check(cover: CoverSpec, p: int, t):
    """Run both paths; True when they agree (indeterminate predictions
    compare on bounds and total dimension only).  Returns (ok, report)."""
    predicted = predict_fiber(cover, p, t)
    oracle = factor_fiber_oracle(cover, p, t)

    report = {
        "p": p,
        "t": str(Fraction(t)),
        "predicted": predicted.to_json(),
        "oracle": oracle.to_json(),
    }

    determinate = [f for f in predicted if not f.indeterminate]
    open_blocks = [f for f in predicted if f.indeterminate]

    remaining = list(oracle.factors)
    for fac in determinate:
        if fac in remaining:
            remaining.remove(fac)
        else:
            report["mismatch"] = f"missing factor {fac!r}"
            return False, report

    if not open_blocks:
        if remaining:
            report["mismatch"] = f"extra oracle factors {remaining!r}"
            return False, report
        return True, report

    budget = sum(f.block_dimension for f in open_blocks)
    got = sum(f.e * f.f for f in remaining)
    if budget != got:
        report["mismatch"] = (
            f"indeterminate budget {budget} != oracle dimension {got}"
        )
        return False, report
    for fac in remaining:
        if not any(
            blk.f <= fac.f and fac.f % blk.f == 0
            and blk.e_bounds[0] <= fac.e <= blk.e_bounds[1]
            and blk.e % fac.e == 0
            for blk in open_blocks
        ):
            report["mismatch"] = (
                f"oracle factor {fac!r} violates predicted bounds"
            )
            return False, report
    return True, report


class CensusReport:
    """Histogram of ramified classes over the v = 1 lifts of a branch
    point, with empirical and theoretical frequencies."""

    def __init__(self, p, tbar, depth, block, counts, total,
                 realized, theoretical):
        self.p = p
        self.tbar = tbar
        self.depth = depth
        self.block = block
        self.counts = counts
        self.total = total
        self.realized = realized
        self.theoretical = theoretical

    def frequencies(self) -> dict:
        return {idx: Fraction(n, self.total)
                for idx, n in self.counts.items()}

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "tbar": self.tbar,
            "depth": self.depth,
            "block": {"deg": self.block.degree, "e": self.block.e},
            "counts": {str(k): v for k, v in sorted(self.counts.items())},
            "total": self.total,
            "realized_classes": sorted(self.realized),
            "theoretical_frequency": str(self.theoretical),
        }

    def __repr__(self):
        return (f"CensusReport(p={self.p}, tbar={self.tbar}, "
                f"counts={dict(sorted(self.counts.items()))})")


def _ramified_point(cover, p, tbar, block_index):
    points = special_fiber_data(cover, p, tbar)
    ramified = [x for x in points if x.e > 1]
    if not ramified:
        raise PreconditionError(f"t̄ = {tbar} has no ramified point")
    if not 0 <= block_index < len(ramified):
        raise PreconditionError(
            f"block index {block_index} out of range "
            f"({len(ramified)} ramified points)"
        )
    x = ramified[block_index]
    if math.gcd(x.e, p) != 1:
        raise PreconditionError("wild ramification is out of scope")
    return x


def _class_of_unit(x, p, ubar_int):
    """Class index of the fiber at a v=1 lift with unit residue u."""
    ext = x.cbar.field
    e = x.e
    sign = ext.one() if e % 2 == 1 else ext.from_int(p - 1)
    value = sign * (ext.from_int(ubar_int % p) * x.cbar)
    g = math.gcd(e, ext.order - 1)
    return value.dlog() % g


def realizable_classes(cover: CoverSpec, p: int, tbar: int,
                       block_index: int = 0) -> set:
    """All classes realized by fibers in the v = 1 stratum over t̄."""
    x = _ramified_point(cover, p, tbar % p, block_index)
    out = set()
    for u in range(1, p):
        idx = _class_of_unit(x, p, u)
        out.add(TameExtensionClass(p, x.degree, x.e, idx))
    return out


def measure_census(cover: CoverSpec, p: int, tbar: int, depth: int,
                   block_index: int = 0) -> CensusReport:
    """Sweep a ≡ t̄ mod p with v(a, ℬ) = 1, a mod p^depth, classifying the
    ramified block of each fiber; exact rational frequencies."""
    if depth < 2:
        raise PreconditionError("census depth must be at least 2")
    tbar = tbar % p
    x = _ramified_point(cover, p, tbar, block_index)
    t0 = with_precision_escalation(
        max(12, depth + 4),
        lambda n: _lift_branch_point(cover, p, tbar, n),
    )

    counts = {}
    total = 0
    for a in range(p ** depth):
        if a % p != tbar:
            continue
        # v(a, B) = 1 exactly when (a - t0)/p is a unit
        diff = a - t0.lift()
        if diff % p != 0 or (diff // p) % p == 0:
            continue
        idx = _class_of_unit(x, p, (diff // p) % p)
        counts[idx] = counts.get(idx, 0) + 1
        total += 1

    e = x.e
    q = x.cbar.field.order
    g = math.gcd(e, q - 1)
    s = (q - 1) // (p - 1)
    realized_count = g // math.gcd(e, s)
    theoretical = Fraction(1, realized_count)
    realized = sorted(idx for idx in counts)
    return CensusReport(p, tbar, depth, x, counts, total, realized,
                        theoretical)
