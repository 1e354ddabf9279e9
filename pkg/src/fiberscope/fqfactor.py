"""Polynomial factorization over finite fields.

Squarefree decomposition (characteristic-aware), distinct-degree
factorization, and Cantor–Zassenhaus equal-degree splitting (power method
for odd q, trace method in characteristic 2).  Randomness is drawn from a
fixed-seed generator per call, so results are deterministic across runs.
"""

from __future__ import annotations

import random

from .errors import PreconditionError
from .fields import FqField
from .poly import Poly, poly_gcd


def poly_powmod(base: Poly, e: int, mod: Poly) -> Poly:
    """base^e mod `mod` by square and multiply."""
    result = Poly(mod.ring, [mod.ring.one()])
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


def _pth_root(f: Poly) -> Poly:
    """Inverse of Frobenius on polynomials: g with g(x)^p = f(x), defined
    when f = h(x^p).  Coefficient a goes to a^(q/p)."""
    field: FqField = f.ring
    p = field.p
    root_exp = field.order // p
    coeffs = []
    for i, c in enumerate(f.coeffs):
        if i % p == 0:
            coeffs.append(c**root_exp)
        elif not field.is_zero(c):
            raise PreconditionError("polynomial is not a p-th power")
    return Poly(field, coeffs)


def _coeff_key(g: Poly):
    return tuple(tuple(c.coeffs) for c in g.coeffs)


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Monic squarefree parts with multiplicities: f = lc·∏ g_i^{m_i}."""
    field = f.ring
    if f.degree < 1:
        return []
    f = f.monic()
    out = {}

    def add(g: Poly, m: int):
        if g.degree > 0:
            key = _coeff_key(g)
            if key in out:
                out[key] = (g, out[key][1] + m)
            else:
                out[key] = (g, m)

    def work(f: Poly, mult: int):
        c = poly_gcd(f, f.derivative())
        w = f // c
        i = 1
        while w.degree > 0:
            y = poly_gcd(w, c)
            add(w // y, i * mult)
            w = y
            c = c // y
            i += 1
        if c.degree > 0:
            # c is a p-th power: recurse on its p-th root
            work(_pth_root(c), mult * field.p)

    work(f, 1)
    return sorted(out.values(), key=lambda t: (t[0].degree, _coeff_key(t[0])))


def distinct_degree_factorization(f: Poly) -> list[tuple[Poly, int]]:
    """For squarefree monic f: [(product of irreducible factors of degree d,
    d)] with d ascending."""
    field = f.ring
    q = field.order
    x = Poly(field, [field.zero(), field.one()])
    out = []
    h = x
    rest = f
    d = 0
    while rest.degree > 2 * (d + 1) - 1 and rest.degree > 0:
        d += 1
        h = poly_powmod(h, q, rest)
        g = poly_gcd(h - x, rest)
        if g.degree > 0:
            out.append((g, d))
            rest = rest // g
            h = h % rest
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def _random_poly(field: FqField, degree_lt: int, rng: random.Random) -> Poly:
    coeffs = [
        field.element([rng.randrange(field.p) for _ in range(field.f)])
        for _ in range(degree_lt)
    ]
    return Poly(field, coeffs)


def equal_degree_factorization(
    f: Poly, d: int, rng: random.Random
) -> list[Poly]:
    """Split a squarefree monic f all of whose irreducible factors have
    degree exactly d."""
    field = f.ring
    q = field.order
    if f.degree == d:
        return [f]
    while True:
        a = _random_poly(field, f.degree, rng)
        if a.degree < 1:
            continue
        g = poly_gcd(a, f)
        if 0 < g.degree < f.degree:
            pieces = g, f // g
        else:
            if field.p == 2:
                # trace method: sum of 2^i-th powers over F_{2^(f·d)}
                b = a % f
                t = b
                for _ in range(field.f * d - 1):
                    b = (b * b) % f
                    t = (t + b) % f
                split = poly_gcd(t, f)
            else:
                b = poly_powmod(a, (q**d - 1) // 2, f)
                split = poly_gcd(b - Poly(field, [field.one()]), f)
            if 0 < split.degree < f.degree:
                pieces = split, f // split
            else:
                continue
        out = []
        for piece in pieces:
            out.extend(equal_degree_factorization(piece.monic(), d, rng))
        return out


def factor(f: Poly) -> list[tuple[Poly, int]]:
    """Full factorization over F_q: monic irreducible factors with
    multiplicities, deterministic order (by degree, then coefficient
    tuples); the unit is f's leading coefficient."""
    if f.degree < 0:
        raise PreconditionError("factor of the zero polynomial")
    rng = random.Random(0x5EED)
    found = []
    for g, mult in squarefree_decomposition(f):
        for h, d in distinct_degree_factorization(g):
            for piece in equal_degree_factorization(h, d, rng):
                found.append((piece, mult))
    found.sort(key=lambda t: (t[0].degree, _coeff_key(t[0])))
    return found


def is_irreducible(f: Poly) -> bool:
    """Rabin's test over F_q."""
    field = f.ring
    n = f.degree
    if n < 1:
        return False
    if n == 1:
        return True
    q = field.order
    x = Poly(field, [field.zero(), field.one()])
    from .ntheory import prime_divisors

    for ell in prime_divisors(n):
        h = poly_powmod(x, q ** (n // ell), f)
        if poly_gcd(h - x, f).degree != 0:
            return False
    return poly_powmod(x, q**n, f) == x % f


def roots_in_field(f: Poly) -> list:
    """All roots of f in its coefficient field, sorted by coefficient
    tuple — the order a direct field scan produces."""
    field = f.ring
    if f.is_zero() or field.order <= 512:
        return [a for a in field if field.is_zero(f(a))]
    x = Poly(field, [field.zero(), field.one()])
    g = poly_gcd(poly_powmod(x, field.order, f) - x, f)
    roots = []
    if g.degree >= 1:
        rng = random.Random(0x5EED)
        for piece in equal_degree_factorization(g, 1, rng):
            roots.append(-piece.coeff(0))
    roots.sort(key=lambda a: a.coeffs)
    return roots
