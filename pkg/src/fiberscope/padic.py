"""p-adic integers at capped absolute precision, and their unramified
extensions.

A PadicInt carries a residue mod p^N together with, when available, the
exact rational it came from (any rational with denominator prime to p).
Arithmetic follows the min-precision rule: combining precision-N and
precision-M values yields precision min(N, M).  A value whose residue is 0
but whose exactness is unknown is an *apparent zero*: asking for its
valuation raises BelowPrecisionError rather than guessing.

UnramifiedRing models O_{K'} = Z_p[w]/(M(w)) for the unramified degree-f
extension K'/Q_p, with M the Teichmüller-compatible lift of the canonical
residue modulus: w itself is the Teichmüller lift of the residue generator,
i.e. w^(p^f - 1) = 1 holds at working precision.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import BelowPrecisionError, PreconditionError
from .fields import FqElement, FqField, make_field
from .ntheory import require_prime, valuation


def _too_big(x, bit_cap: int) -> bool:
    num = x.numerator if isinstance(x, Fraction) else x
    den = x.denominator if isinstance(x, Fraction) else 1
    return num.bit_length() > bit_cap or den.bit_length() > bit_cap


class PadicInt:
    """An element of Z_p known modulo p^prec, optionally exact."""

    __slots__ = ("ring", "man", "prec", "exact")

    def __init__(self, ring: "PadicRing", man: int, prec: int, exact=None):
        self.ring = ring
        self.prec = prec
        self.man = man % ring.p**prec
        self.exact = exact

    # -- arithmetic (min-precision rule) -----------------------------------

    def _binary(self, other, op):
        other = self.ring.coerce(other)
        prec = min(self.prec, other.prec)
        exact = None
        if self.exact is not None and other.exact is not None:
            exact = op(self.exact, other.exact)
            # exactness beyond a few multiples of the cap carries no usable
            # information; dropping it keeps bignums bounded
            if _too_big(exact, self.ring._exact_bit_cap):
                exact = None
        return PadicInt(self.ring, op(self.man, other.man), prec, exact)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    def __radd__(self, other):
        return self + other

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self.ring.coerce(other) - self

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    def __rmul__(self, other):
        return self * other

    def __neg__(self):
        return PadicInt(
            self.ring, -self.man, self.prec,
            None if self.exact is None else -self.exact,
        )

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one_at(self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "PadicInt":
        if self.man % self.ring.p == 0:
            raise PreconditionError("only units are invertible in Z_p")
        inv_man = pow(self.man, -1, self.ring.p**self.prec)
        exact = None
        if self.exact is not None:
            exact = Fraction(1) / Fraction(self.exact)
        return PadicInt(self.ring, inv_man, self.prec, exact)

    def __truediv__(self, other):
        return self * self.ring.coerce(other).inverse()

    # -- valuation and precision -------------------------------------------

    def is_apparent_zero(self) -> bool:
        """Zero modulo p^prec (may or may not be exactly zero)."""
        return self.man == 0

    def is_exact_zero(self) -> bool:
        return self.exact is not None and self.exact == 0

    def valuation(self):
        """p-adic valuation; math.inf for exact zero, BelowPrecisionError
        for an apparent zero of unknown exactness."""
        if self.exact is not None:
            if self.exact == 0:
                return math.inf
            num = Fraction(self.exact)
            return valuation(num.numerator, self.ring.p) - valuation(
                num.denominator, self.ring.p
            )
        if self.man == 0:
            raise BelowPrecisionError(
                f"valuation of 0 mod {self.ring.p}^{self.prec} is undetermined"
            )
        return valuation(self.man, self.ring.p)

    def unit_part(self) -> "PadicInt":
        """self / p^val, precision drops by val."""
        return self.shift_down(self.valuation())

    def shift_down(self, k: int) -> "PadicInt":
        """Exact division by p^k (requires val >= k); precision drops by k."""
        if k == 0:
            return self
        pk = self.ring.p**k
        if self.man % pk != 0:
            raise PreconditionError(f"not divisible by p^{k}")
        if self.prec - k <= 0:
            raise BelowPrecisionError("no precision left after dividing by p^k")
        exact = None if self.exact is None else Fraction(self.exact) / pk
        return PadicInt(self.ring, self.man // pk, self.prec - k, exact)

    def at_precision(self, prec: int) -> "PadicInt":
        """The same value truncated (never extended) to absolute precision."""
        if prec > self.prec and self.exact is None:
            raise BelowPrecisionError("cannot re-extend an inexact value")
        if self.exact is not None:
            return self.ring.exact_at(self.exact, prec)
        return PadicInt(self.ring, self.man, min(prec, self.prec), None)

    # -- conversions ---------------------------------------------------------

    def lift(self) -> int:
        """The representative in [0, p^prec)."""
        return self.man

    def residue(self) -> int:
        return self.man % self.ring.p

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.coerce(other)
        if not isinstance(other, PadicInt):
            return NotImplemented
        prec = min(self.prec, other.prec)
        pk = self.ring.p**prec
        return self.ring.p == other.ring.p and (self.man - other.man) % pk == 0

    def __hash__(self):
        return hash((self.ring.p, self.man, self.prec))

    def __repr__(self):
        return f"{self.man} + O({self.ring.p}^{self.prec})"


class PadicRing:
    """Z_p at working absolute precision N (a coefficient-ring object)."""

    def __init__(self, p: int, prec: int):
        require_prime(p)
        if prec < 1:
            raise PreconditionError("precision must be >= 1")
        self.p = p
        self.prec = prec
        self.f = 1
        self.residue_field = make_field(p, 1)
        self._exact_bit_cap = 3 * prec * p.bit_length() + 64

    # -- element factories ----------------------------------------------------

    def exact(self, x) -> PadicInt:
        return self.exact_at(x, self.prec)

    def exact_at(self, x, prec: int) -> PadicInt:
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise PreconditionError("denominator divisible by p")
        pk = self.p**prec
        man = x.numerator * pow(x.denominator, -1, pk) % pk
        exact = x if x.denominator != 1 else int(x)
        return PadicInt(self, man, prec, exact)

    def inexact(self, man: int, prec=None) -> PadicInt:
        return PadicInt(self, man, self.prec if prec is None else prec, None)

    def coerce(self, x) -> PadicInt:
        if isinstance(x, PadicInt):
            if x.ring.p != self.p:
                raise PreconditionError("different residue characteristics")
            return x
        if isinstance(x, (int, Fraction)):
            return self.exact(x)
        raise PreconditionError(f"cannot coerce {x!r} into {self!r}")

    def zero(self) -> PadicInt:
        return self.exact(0)

    def one(self) -> PadicInt:
        return self.exact(1)

    def one_at(self, prec: int) -> PadicInt:
        return self.exact_at(1, prec)

    # -- ring protocol for Poly -------------------------------------------------

    def is_zero(self, x) -> bool:
        return self.coerce(x).is_apparent_zero()

    def inv(self, x) -> PadicInt:
        return self.coerce(x).inverse()

    def val_info(self, c):
        c = self.coerce(c)
        if c.exact is not None:
            if c.exact == 0:
                return ("exact_zero", None)
            return ("val", c.valuation())
        if c.man == 0:
            return ("at_least", c.prec)
        return ("val", valuation(c.man, self.p))

    # -- residue interface --------------------------------------------------------

    def residue_element(self, x: PadicInt) -> FqElement:
        return self.residue_field.from_int(x.residue())

    def lift_residue(self, a, prec=None) -> PadicInt:
        """Exact integer lift of a residue-field element (or int)."""
        if isinstance(a, FqElement):
            a = a.lift()
        return self.exact_at(int(a) % self.p, self.prec if prec is None else prec)

    def teichmuller(self, a) -> PadicInt:
        """The Teichmüller lift: the unique root of unity (or 0) congruent
        to the residue a mod p, by p-power iteration."""
        x = self.lift_residue(a)
        if x.man == 0:
            return self.zero()
        # 1 and -1 are their own lifts; keeping them exact lets roots
        # sitting exactly on a Teichmüller point stay visible downstream
        if x.man == 1:
            return self.one()
        if x.man == self.p - 1 and self.p > 2:
            return self.exact(-1)
        pk = self.p**self.prec
        man = x.man
        for _ in range(self.prec + 1):
            nxt = pow(man, self.p, pk)
            if nxt == man:
                break
            man = nxt
        return PadicInt(self, man, self.prec, None)

    def __repr__(self):
        return f"Z_{self.p} (O({self.p}^{self.prec}))"


class UnramElement:
    """An element of O_{K'}, stored as a PadicInt vector on 1, w, ..., w^{f-1}."""

    __slots__ = ("ring", "vec")

    def __init__(self, ring: "UnramifiedRing", vec):
        self.ring = ring
        self.vec = tuple(vec)

    def __add__(self, other):
        other = self.ring.coerce(other)
        return UnramElement(
            self.ring, [a + b for a, b in zip(self.vec, other.vec)]
        )

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return UnramElement(self.ring, [-a for a in self.vec])

    def __sub__(self, other):
        return self + (-self.ring.coerce(other))

    def __rsub__(self, other):
        return self.ring.coerce(other) - self

    def __mul__(self, other):
        other = self.ring.coerce(other)
        return self.ring._mul(self, other)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "UnramElement":
        return self.ring.invert_unit(self)

    def __truediv__(self, other):
        return self * self.ring.coerce(other).inverse()

    def is_apparent_zero(self) -> bool:
        return all(a.is_apparent_zero() for a in self.vec)

    def valuation(self):
        """min over coordinates (the w-basis is integral), math.inf when
        exactly zero; BelowPrecisionError when undetermined."""
        kind, v = self.ring.val_info(self)
        if kind == "exact_zero":
            return math.inf
        if kind == "at_least":
            raise BelowPrecisionError(
                f"valuation >= {v} but undetermined at working precision"
            )
        return v

    def shift_down(self, k: int) -> "UnramElement":
        return UnramElement(self.ring, [a.shift_down(k) for a in self.vec])

    def at_precision(self, prec: int) -> "UnramElement":
        return UnramElement(self.ring, [a.at_precision(prec) for a in self.vec])

    def residue(self) -> FqElement:
        return self.ring.residue_field.element([a.residue() for a in self.vec])

    def __eq__(self, other):
        try:
            other = self.ring.coerce(other)
        except PreconditionError:
            return NotImplemented
        return all(a == b for a, b in zip(self.vec, other.vec))

    def __hash__(self):
        return hash((self.ring.p, self.ring.f, tuple(a.man for a in self.vec)))

    def __repr__(self):
        return "(" + ", ".join(str(a.man) for a in self.vec) + f") in {self.ring!r}"


class UnramifiedRing:
    """O_{K'} for the unramified extension K'/Q_p of degree f, at capped
    absolute precision, with the Teichmüller-compatible defining modulus."""

    def __init__(self, p: int, f: int, prec: int):
        self.p = p
        self.f = f
        self.prec = prec
        self.base = PadicRing(p, prec)
        self.residue_field = make_field(p, f)
        self.q = p**f
        # integer representative of the Teichmüller-compatible modulus,
        # low-to-high, monic of degree f, valid mod p^prec
        self.modulus = _teich_modulus(p, f, prec)
        self._red_rows = self._reduction_rows()

    # -- construction helpers ---------------------------------------------------

    def _reduction_rows(self):
        p, f, N = self.p, self.f, self.prec
        if f == 1:
            return []
        pk = p**N
        rows = []
        current = [(-c) % pk for c in self.modulus[:f]]
        rows.append(tuple(current))
        for _ in range(f - 2):
            shifted = [0] + current[:-1]
            top = current[-1]
            current = [(shifted[i] + top * rows[0][i]) % pk for i in range(f)]
            rows.append(tuple(current))
        return rows

    # -- element factories ---------------------------------------------------------

    def element(self, coords) -> UnramElement:
        coords = list(coords)
        if len(coords) > self.f:
            raise PreconditionError("coordinate vector too long")
        vec = [self.base.coerce(c) for c in coords]
        vec += [self.base.zero()] * (self.f - len(vec))
        return UnramElement(self, vec)

    def coerce(self, x) -> UnramElement:
        if isinstance(x, UnramElement):
            if x.ring.p != self.p or x.ring.f != self.f:
                raise PreconditionError("element of a different ring")
            return x
        if isinstance(x, (int, Fraction, PadicInt)):
            return self.element([x])
        raise PreconditionError(f"cannot coerce {x!r} into {self!r}")

    def zero(self) -> UnramElement:
        return self.element([])

    def one(self) -> UnramElement:
        return self.element([1])

    def gen(self) -> UnramElement:
        """The class of w — the Teichmüller lift of the residue generator."""
        if self.f == 1:
            return self.one()
        return self.element([0, 1])

    # -- ring protocol for Poly ------------------------------------------------------

    def is_zero(self, x) -> bool:
        return self.coerce(x).is_apparent_zero()

    def inv(self, x) -> UnramElement:
        return self.coerce(x).inverse()

    def val_info(self, c):
        c = self.coerce(c)
        determined = []
        bounds = []
        all_exact_zero = True
        for a in c.vec:
            if a.exact is not None and a.exact == 0:
                continue
            all_exact_zero = False
            if a.exact is not None:
                determined.append(a.valuation())
            elif a.man == 0:
                bounds.append(a.prec)
            else:
                determined.append(valuation(a.man, self.p))
        if all_exact_zero:
            return ("exact_zero", None)
        if determined and (not bounds or min(determined) < min(bounds)):
            return ("val", min(determined))
        # the valuation is >= every fuzzy coordinate's precision but capped
        # above by any determined coordinate — undetermined overall
        return ("at_least", min(bounds))

    # -- arithmetic core ---------------------------------------------------------------

    def _mul(self, a: UnramElement, b: UnramElement) -> UnramElement:
        f = self.f
        if f == 1:
            return UnramElement(self, [a.vec[0] * b.vec[0]])
        out = [self.base.zero()] * (2 * f - 1)
        for i, ai in enumerate(a.vec):
            if not ai.is_apparent_zero():
                for j, bj in enumerate(b.vec):
                    out[i + j] = out[i + j] + ai * bj
        result = out[:f]
        for k in range(f - 1):
            top = out[f + k]
            if not top.is_apparent_zero():
                row = self._red_rows[k]
                for i in range(f):
                    result[i] = result[i] + top * self.base.inexact(row[i])
        return UnramElement(self, result)

    def invert_unit(self, x: UnramElement) -> UnramElement:
        """Inverse of a unit by Newton iteration from the residue inverse."""
        x = self.coerce(x)
        rbar = x.residue()
        if rbar.is_zero():
            raise PreconditionError("only units are invertible in O_K'")
        y = _drop_exactness(self.lift_residue(rbar.inverse()))
        two = self.element([2])
        steps = max(1, math.ceil(math.log2(self.prec)) + 1)
        for _ in range(steps):
            y = y * (two - x * y)
        return y

    # -- residue interface ----------------------------------------------------------------

    def lift_residue(self, a: FqElement, prec=None) -> UnramElement:
        """Coordinatewise integer lift of a residue-field element."""
        a = self.residue_field.coerce(a)
        prec = self.prec if prec is None else prec
        return UnramElement(
            self,
            [self.base.exact_at(c, prec) for c in a.coeffs],
        )

    def residue_element(self, x: UnramElement) -> FqElement:
        return self.coerce(x).residue()

    def teichmuller(self, a: FqElement) -> UnramElement:
        """Teichmüller lift in O_{K'}: the fixed point of y -> y^q over the
        naive lift of a."""
        a = self.residue_field.coerce(a)
        if a.is_zero():
            return self.zero()
        if a.is_one():
            return self.one()
        if self.p > 2 and a == self.residue_field.from_int(self.p - 1):
            return self.element([-1])
        y = _drop_exactness(self.lift_residue(a))
        for _ in range(self.prec + 1):
            nxt = y**self.q
            if nxt == y:
                break
            y = nxt
        return y

    def __repr__(self):
        return f"O_K' (p={self.p}, f={self.f}, O({self.p}^{self.prec}))"


def _drop_exactness(x: UnramElement) -> UnramElement:
    """Forget exact rational provenance (used after iterative constructions
    whose exactness is an artifact of the start value)."""
    return UnramElement(
        x.ring,
        [PadicInt(a.ring, a.man, a.prec, None) for a in x.vec],
    )


@lru_cache(maxsize=None)
def _teich_modulus(p: int, f: int, prec: int) -> tuple[int, ...]:
    """Integer lift M of the canonical residue modulus such that the class
    of w in Z_p[w]/(M) is a (p^f - 1)-th root of unity mod p^prec.

    Construction: in the naive-lift ring Z_p[x]/(m~), Teichmüller-lift the
    class of x by q-power iteration, then expand prod_i (T - theta^(p^i))
    over the Galois orbit; its coefficients are rational integers mod p^prec.
    """
    if f == 1:
        return (0, 1)
    field = make_field(p, f)
    naive = _NaiveLiftRing(p, f, prec, field.modulus)
    theta = naive.teichmuller_gen()
    # expand the product over the Frobenius orbit of theta
    conjugates = [theta]
    for _ in range(f - 1):
        conjugates.append(naive.power(conjugates[-1], p))
    # coefficients of prod (T - conj) as vectors in the naive ring
    coeffs = [naive.one()]
    for c in conjugates:
        nxt = [naive.zero()] * (len(coeffs) + 1)
        for i, a in enumerate(coeffs):
            nxt[i + 1] = naive.add(nxt[i + 1], a)
            nxt[i] = naive.sub(nxt[i], naive.mul(a, c))
        coeffs = nxt
    out = []
    for vec in coeffs:
        if any(x % p**prec != 0 for x in vec[1:]):
            raise AssertionError(
                "Teichmüller modulus coefficients failed to be rational"
            )  # pragma: no cover
        out.append(vec[0] % p**prec)
    assert out[-1] == 1 and all(
        (a - b) % p == 0 for a, b in zip(out, field.modulus)
    ), "modulus must be a monic lift of the residue modulus"
    return tuple(out)


class _NaiveLiftRing:
    """Z/p^N [x]/(m~) with m~ the naive integer lift of an irreducible
    residue modulus — scratch ring for building the Teichmüller modulus."""

    def __init__(self, p, f, prec, residue_modulus):
        self.p, self.f, self.prec = p, f, prec
        self.pk = p**prec
        self.mod = [int(c) for c in residue_modulus]

    def zero(self):
        return [0] * self.f

    def one(self):
        return [1] + [0] * (self.f - 1)

    def add(self, a, b):
        return [(x + y) % self.pk for x, y in zip(a, b)]

    def sub(self, a, b):
        return [(x - y) % self.pk for x, y in zip(a, b)]

    def mul(self, a, b):
        f, pk = self.f, self.pk
        prod = [0] * (2 * f - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % pk
        for k in range(len(prod) - 1, f - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i in range(f):
                    prod[k - f + i] = (prod[k - f + i] - c * self.mod[i]) % pk
        return prod[:f]

    def power(self, a, n):
        out = self.one()
        base = list(a)
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def teichmuller_gen(self):
        """Teichmüller lift of the class of x, by q-power iteration."""
        y = [0, 1] + [0] * (self.f - 2)
        q = self.p**self.f
        for _ in range(self.prec + 1):
            nxt = self.power(y, q)
            if nxt == y:
                break
            y = nxt
        return y


def teichmuller_lift(a, ring):
    """Teichmüller lift of a residue element into a PadicRing or
    UnramifiedRing (dispatch convenience)."""
    return ring.teichmuller(a)
