"""Finite fields F_{p^f} with deterministic, reproducible construction.

Two choices are pinned down so that every run of the library (and every
serialized artifact) agrees on the meaning of a field element:

* the defining modulus is the lexicographically smallest monic irreducible
  polynomial of degree f over F_p, coefficients compared low-degree-first;
* the distinguished generator of the unit group is the smallest element,
  in the same coefficient order, of multiplicative order p^f - 1.

For f = 1 no modulus is involved and arithmetic is plain arithmetic mod p.
Elements are immutable and hashable; the parent field is compared by
(p, f) only, which is sound because the construction is deterministic.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

from .errors import PreconditionError
from .ntheory import prime_divisors, require_prime


class FqElement:
    """An element of F_{p^f}, stored as a coefficient tuple on the power
    basis 1, w, ..., w^{f-1} of the canonical modulus."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: "FqField", coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    # -- ring structure ---------------------------------------------------

    def __add__(self, other: "FqElement") -> "FqElement":
        other = self.field.coerce(other)
        p = self.field.p
        return FqElement(
            self.field,
            tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __neg__(self) -> "FqElement":
        p = self.field.p
        return FqElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other: "FqElement") -> "FqElement":
        return self + (-self.field.coerce(other))

    def __mul__(self, other: "FqElement") -> "FqElement":
        other = self.field.coerce(other)
        return self.field._mul(self, other)

    def __rmul__(self, other) -> "FqElement":
        return self.field.coerce(other) * self

    def __radd__(self, other) -> "FqElement":
        return self + self.field.coerce(other)

    def __rsub__(self, other) -> "FqElement":
        return self.field.coerce(other) - self

    def __truediv__(self, other: "FqElement") -> "FqElement":
        return self * self.field.coerce(other).inverse()

    def __pow__(self, n: int) -> "FqElement":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "FqElement":
        if self.is_zero():
            raise PreconditionError("inverse of zero")
        # x^(q-2) is fine at desk scale and avoids a poly-xgcd code path
        return self ** (self.field.order - 2)

    # -- predicates and conversions ---------------------------------------

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and all(a == 0 for a in self.coeffs[1:])

    def lift(self) -> int:
        """Integer lift, only for prime-subfield elements."""
        if any(self.coeffs[1:]):
            raise PreconditionError("element is not in the prime subfield")
        return self.coeffs[0]

    def frobenius(self) -> "FqElement":
        """The p-power Frobenius image."""
        return self ** self.field.p

    def minimal_polynomial_degree(self) -> int:
        """Degree of the element over F_p (size of its Frobenius orbit)."""
        d = 1
        x = self.frobenius()
        while x != self:
            x = x.frobenius()
            d += 1
        return d

    def dlog(self) -> int:
        """Discrete logarithm to the field's distinguished generator."""
        if self.is_zero():
            raise PreconditionError("dlog of zero")
        return self.field._dlog_table()[self.coeffs]

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, FqElement):
            return NotImplemented
        return (
            self.field.p == other.field.p
            and self.field.f == other.field.f
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field.p, self.field.f, self.coeffs))

    def __repr__(self):
        if self.field.f == 1:
            return f"{self.coeffs[0]}"
        terms = []
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            if i == 0:
                terms.append(f"{a}")
            elif i == 1:
                terms.append(f"{a}*w" if a != 1 else "w")
            else:
                terms.append(f"{a}*w^{i}" if a != 1 else f"w^{i}")
        return " + ".join(terms) if terms else "0"


class FqField:
    """The finite field with p^f elements, canonical modulus and generator."""

    def __init__(self, p: int, f: int):
        require_prime(p)
        if f < 1:
            raise PreconditionError("extension degree must be >= 1")
        self.p = p
        self.f = f
        self.order = p**f
        self.modulus = self._canonical_modulus() if f > 1 else (0, 1)
        # reduction table: w^(f+k) written on the power basis, k = 0..f-2
        self._red = self._reduction_rows()
        self._gen: FqElement | None = None
        self._dlog: dict[tuple[int, ...], int] | None = None

    # -- construction -----------------------------------------------------

    def _canonical_modulus(self) -> tuple[int, ...]:
        """Lexicographically smallest monic irreducible of degree f,
        low-degree coefficients most significant in the comparison."""
        for tail in itertools.product(range(self.p), repeat=self.f):
            candidate = tail + (1,)
            if _is_irreducible_mod_p(candidate, self.p):
                return candidate
        raise AssertionError("no irreducible polynomial found")  # unreachable

    def _reduction_rows(self) -> list[tuple[int, ...]]:
        p, f = self.p, self.f
        if f == 1:
            return []
        rows = []
        # w^f = -(m_0 + m_1 w + ... + m_{f-1} w^{f-1})
        current = [(-c) % p for c in self.modulus[:f]]
        rows.append(tuple(current))
        for _ in range(f - 2):
            shifted = [0] + current[:-1]
            top = current[-1]
            current = [
                (shifted[i] + top * rows[0][i]) % p for i in range(f)
            ]
            rows.append(tuple(current))
        return rows

    # -- element factories -------------------------------------------------

    def element(self, coeffs) -> FqElement:
        coeffs = tuple(int(c) % self.p for c in coeffs)
        if len(coeffs) > self.f:
            raise PreconditionError("coefficient vector too long")
        coeffs = coeffs + (0,) * (self.f - len(coeffs))
        return FqElement(self, coeffs)

    def from_int(self, n: int) -> FqElement:
        return self.element((n,))

    def coerce(self, x) -> FqElement:
        if isinstance(x, FqElement):
            if x.field.p != self.p or x.field.f != self.f:
                raise PreconditionError("element from a different field")
            return x
        if isinstance(x, int):
            return self.from_int(x)
        raise PreconditionError(f"cannot coerce {x!r} into {self!r}")

    def zero(self) -> FqElement:
        return self.element(())

    def one(self) -> FqElement:
        return self.from_int(1)

    def is_zero(self, x) -> bool:
        return self.coerce(x).is_zero()

    def inv(self, x) -> FqElement:
        return self.coerce(x).inverse()

    def gen(self) -> FqElement:
        """The class of w (for f > 1), else 1."""
        if self.f == 1:
            return self.one()
        return self.element((0, 1))

    def __iter__(self):
        for tail in itertools.product(range(self.p), repeat=self.f):
            yield FqElement(self, tail)

    def units(self):
        for x in self:
            if not x.is_zero():
                yield x

    # -- arithmetic core ----------------------------------------------------

    def _mul(self, a: FqElement, b: FqElement) -> FqElement:
        p, f = self.p, self.f
        if f == 1:
            return FqElement(self, ((a.coeffs[0] * b.coeffs[0]) % p,))
        prod = [0] * (2 * f - 1)
        for i, ai in enumerate(a.coeffs):
            if ai:
                for j, bj in enumerate(b.coeffs):
                    prod[i + j] += ai * bj
        out = [c % p for c in prod[:f]]
        for k in range(f - 1):
            top = prod[f + k] % p
            if top:
                row = self._red[k]
                for i in range(f):
                    out[i] = (out[i] + top * row[i]) % p
        return FqElement(self, tuple(out))

    # -- multiplicative structure -------------------------------------------

    def generator(self) -> FqElement:
        """Smallest element (coefficientwise lex order) of order p^f - 1."""
        if self._gen is None:
            qm1 = self.order - 1
            primes = prime_divisors(qm1) if qm1 > 1 else []
            for x in self:
                if x.is_zero():
                    continue
                if all((x ** (qm1 // ell)) != self.one() for ell in primes):
                    self._gen = x
                    break
            else:  # pragma: no cover - every finite field has a generator
                raise AssertionError("no generator found")
        return self._gen

    def _dlog_table(self) -> dict[tuple[int, ...], int]:
        if self._dlog is None:
            table = {}
            g = self.generator()
            x = self.one()
            for k in range(self.order - 1):
                table[x.coeffs] = k
                x = x * g
            self._dlog = table
        return self._dlog

    def __eq__(self, other):
        return (
            isinstance(other, FqField)
            and self.p == other.p
            and self.f == other.f
        )

    def __hash__(self):
        return hash((self.p, self.f))

    def __repr__(self):
        return f"F_{self.p}" if self.f == 1 else f"F_{self.p}^{self.f}"


def _is_irreducible_mod_p(coeffs: tuple[int, ...], p: int) -> bool:
    """Distinct-degree irreducibility test for a monic polynomial over F_p.

    coeffs is low-to-high and monic.  m of degree f is irreducible iff
    x^(p^f) = x mod m and gcd(x^(p^i) - x, m) = 1 for 1 <= i <= f/2.
    """
    f = len(coeffs) - 1
    if f == 1:
        return True
    if coeffs[0] == 0:  # divisible by x
        return False

    def polymulmod(a, b):
        prod = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        # reduce mod coeffs (monic)
        for k in range(len(prod) - 1, f - 1, -1):
            c = prod[k]
            if c:
                for i in range(f + 1):
                    prod[k - f + i] = (prod[k - f + i] - c * coeffs[i]) % p
        prod = prod[:f]
        while prod and prod[-1] == 0:
            prod.pop()
        return prod or [0]

    def polypowmod_x(e):
        base = [0, 1]
        out = [1]
        while e:
            if e & 1:
                out = polymulmod(out, base)
            base = polymulmod(base, base)
            e >>= 1
        return out

    def polymod(a, b):
        inv = pow(b[-1], -1, p)
        bm = [(c * inv) % p for c in b]
        r = [c % p for c in a]
        while len(r) >= len(bm):
            c = r[-1]
            if c:
                off = len(r) - len(bm)
                for i in range(len(bm)):
                    r[off + i] = (r[off + i] - c * bm[i]) % p
            r.pop()
        while r and r[-1] == 0:
            r.pop()
        return r or [0]

    def polygcd(a, b):
        a, b = list(a), list(b)
        while b != [0]:
            a, b = b, polymod(a, b)
        return a

    x = [0, 1]
    for i in range(1, f // 2 + 1):
        xpi = polypowmod_x(p**i)
        diff = [0] * max(len(xpi), 2)
        for k, c in enumerate(xpi):
            diff[k] = c
        diff[1] = (diff[1] - 1) % p
        while len(diff) > 1 and diff[-1] == 0:
            diff.pop()
        g = polygcd(list(coeffs), diff)
        if len(g) - 1 >= 1:
            return False
    xpf = polypowmod_x(p**f)
    return xpf == [0, 1]


@lru_cache(maxsize=None)
def make_field(p: int, f: int) -> FqField:
    """The field F_{p^f} with the canonical modulus and generator.

    Cached so repeated requests share discrete-log tables.
    """
    return FqField(p, f)


def is_eth_power(x: FqElement, e: int) -> bool:
    """Whether x is an e-th power in F_q^*.

    Requires x != 0 and gcd(e, p) = 1; decided by the exponent test
    x^((q-1)/g) = 1 with g = gcd(e, q - 1).
    """
    if x.is_zero():
        raise PreconditionError("e-th power test requires a unit")
    if math.gcd(e, x.field.p) != 1:
        raise PreconditionError("exponent must be coprime to the characteristic")
    g = math.gcd(e, x.field.order - 1)
    return (x ** ((x.field.order - 1) // g)).is_one()


def embed_subfield(x: FqElement, target: FqField) -> FqElement:
    """Image of a prime-subfield element in a larger field F_{p^f}."""
    if x.field.p != target.p:
        raise PreconditionError("different characteristics")
    if x.field.f == 1:
        return target.from_int(x.coeffs[0])
    if x.field.f == target.f:
        return target.coerce(x)
    raise PreconditionError("only prime-subfield embeddings are supported")
