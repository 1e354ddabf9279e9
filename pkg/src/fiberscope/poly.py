"""Dense univariate polynomials over a pluggable coefficient ring.

The ring object supplies element factories and predicates (`zero`, `one`,
`coerce`, `is_zero`, `inv`); elements supply arithmetic operators.  FqField,
PadicRing and UnramifiedRing all implement this little protocol, as do the
ExactRing adapters below for plain integers and fractions.

Also here: resultants by Sylvester determinant (exact, fraction-based
elimination) and Newton polygons for polynomials whose coefficients carry
p-adic valuation data.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import BelowPrecisionError, PreconditionError


class ExactRing:
    """Integers or rationals viewed through the coefficient-ring protocol."""

    def __init__(self, make):
        self.make = make

    def zero(self):
        return self.make(0)

    def one(self):
        return self.make(1)

    def coerce(self, x):
        if isinstance(x, int):
            return self.make(x)
        if isinstance(x, Fraction) and self.make is Fraction:
            return x
        raise PreconditionError(f"cannot coerce {x!r} into {self!r}")

    def is_zero(self, x):
        return x == 0

    def inv(self, x):
        if self.make is Fraction:
            return Fraction(1) / x
        if x in (1, -1):
            return x
        raise PreconditionError("integer leading coefficient is not a unit")

    def __repr__(self):
        return "ZZ" if self.make is int else "QQ"


ZZ = ExactRing(int)
QQ = ExactRing(Fraction)


class Poly:
    """A dense polynomial, low-degree coefficients first."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        cs = [ring.coerce(c) for c in coeffs]
        while cs and ring.is_zero(cs[-1]):
            cs.pop()
        self.ring = ring
        self.coeffs = cs

    # -- basic queries ------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with deg 0 = -1 by convention."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        if self.is_zero():
            raise PreconditionError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.zero()

    def is_monic(self) -> bool:
        return not self.is_zero() and self.ring.is_zero(
            self.leading() - self.ring.one()
        )

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(
            self.ring, [self.coeff(i) + other.coeff(i) for i in range(n)]
        )

    def __neg__(self) -> "Poly":
        return Poly(self.ring, [-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scalar_mul(other)
        if self.is_zero() or other.is_zero():
            return Poly(self.ring, [])
        out = [self.ring.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.ring, out)

    def __rmul__(self, other) -> "Poly":
        return self.scalar_mul(other)

    def scalar_mul(self, c) -> "Poly":
        c = self.ring.coerce(c)
        return Poly(self.ring, [c * a for a in self.coeffs])

    def __pow__(self, n: int) -> "Poly":
        result = Poly(self.ring, [self.ring.one()])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x):
        """Horner evaluation at a ring element."""
        x = self.ring.coerce(x)
        acc = self.ring.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod_by(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Quotient and remainder; the divisor's leading coefficient must
        be invertible in the ring."""
        if other.is_zero():
            raise PreconditionError("division by the zero polynomial")
        inv_lc = self.ring.inv(other.leading())
        rem = list(self.coeffs)
        quo = [self.ring.zero()] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k] * inv_lc
            if not self.ring.is_zero(c):
                quo[k - d] = c
                for i, b in enumerate(other.coeffs):
                    rem[k - d + i] = rem[k - d + i] - c * b
        return Poly(self.ring, quo), Poly(self.ring, rem[:d] if d > 0 else [])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod_by(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod_by(other)[1]

    # -- calculus and substitution ---------------------------------------------

    def derivative(self) -> "Poly":
        return Poly(
            self.ring,
            [i * c for i, c in enumerate(self.coeffs)][1:],
        )

    def shift(self, a) -> "Poly":
        """The polynomial f(z + a), by iterated synthetic division."""
        a = self.ring.coerce(a)
        cs = list(self.coeffs)
        for i in range(len(cs)):
            for j in range(len(cs) - 2, i - 1, -1):
                cs[j] = cs[j] + a * cs[j + 1]
        return Poly(self.ring, cs)

    def scale(self, c) -> "Poly":
        """The polynomial f(c·z)."""
        c = self.ring.coerce(c)
        out, power = [], self.ring.one()
        for a in self.coeffs:
            out.append(power * a)
            power = power * c
        return Poly(self.ring, out)

    def monic(self) -> "Poly":
        inv = self.ring.inv(self.leading())
        return self.scalar_mul(inv)

    def map_coeffs(self, fn, ring) -> "Poly":
        """A new polynomial over `ring` with coefficients fn(c)."""
        return Poly(ring, [fn(c) for c in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(tuple(repr(c) for c in self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if self.ring.is_zero(c):
                continue
            if i == 0:
                terms.append(f"({c!r})")
            elif i == 1:
                terms.append(f"({c!r})*z")
            else:
                terms.append(f"({c!r})*z^{i}")
        return " + ".join(terms)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd over a coefficient field (every nonzero element a unit)."""
    while not g.is_zero():
        f, g = g, f % g
    if f.is_zero():
        return f
    return f.monic()


def squarefree_part_exact(f: Poly) -> Poly:
    """f / gcd(f, f') over a field of characteristic zero."""
    return (f // poly_gcd(f, f.derivative())).monic()


# ---------------------------------------------------------------------------
# resultants
# ---------------------------------------------------------------------------


def _sylvester_rows(fc, gc):
    m, n = len(fc) - 1, len(gc) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(reversed(fc)) + [0] * (n - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(reversed(gc)) + [0] * (m - 1 - i))
    assert all(len(r) == size for r in rows)
    return rows


def resultant(f: Poly, g: Poly):
    """res(f, g) with the convention res(f, g) = ∏_{f(α)=0} g(α) for monic f
    (i.e. the Sylvester determinant normalized by lc(f)^deg g).

    Exact coefficients only (integers or fractions); returns an int when the
    value is integral.
    """
    if f.is_zero() or g.is_zero():
        return 0
    if f.degree == 0:
        return 1  # empty product over the roots of f
    if g.degree == 0:
        return _as_int(Fraction(g.coeffs[0]) ** f.degree)
    fc = [Fraction(c) for c in f.coeffs]
    gc = [Fraction(c) for c in g.coeffs]
    det = _det_fraction(_sylvester_rows(fc, gc))
    # Sylvester determinant = lc(f)^{deg g} ∏ g(α); normalize away lc(f)
    return _as_int(det / fc[-1] ** (len(gc) - 1))


def _det_fraction(rows) -> Fraction:
    """Determinant by fraction-based Gaussian elimination with pivoting."""
    n = len(rows)
    rows = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        inv = Fraction(1) / rows[col][col]
        for r in range(col + 1, n):
            factor = rows[r][col] * inv
            if factor:
                for c in range(col, n):
                    rows[r][c] -= factor * rows[col][c]
    return det


def _as_int(x: Fraction):
    return int(x) if x.denominator == 1 else x


def discriminant(f: Poly):
    """disc(f) = (−1)^{d(d−1)/2} · Sylvester-res(f, f') / lc(f).

    resultant() here is already normalized by lc(f)^{deg f'}, hence the
    lc^{d-2} correction; exact coefficients only.
    """
    d = f.degree
    if d < 1:
        raise PreconditionError("discriminant needs degree >= 1")
    r = resultant(f, f.derivative())
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    value = Fraction(sign) * Fraction(r) * Fraction(f.leading()) ** (d - 2)
    return _as_int(value)


# ---------------------------------------------------------------------------
# Newton polygons
# ---------------------------------------------------------------------------


class NewtonPolygon:
    """Lower convex hull of the coefficient valuations of a p-adic polynomial.

    `segments` lists (slope, length) pairs with slope = the common valuation
    of the roots on that segment (a positive slope means roots of positive
    valuation), sorted by increasing slope.  `vanishing_order` counts exact
    zero low coefficients stripped before taking the hull, so that
    sum of lengths + vanishing_order = deg f.
    """

    def __init__(self, segments, vanishing_order: int, vertices):
        self.segments = segments
        self.vanishing_order = vanishing_order
        self.vertices = vertices

    def __eq__(self, other):
        return (
            isinstance(other, NewtonPolygon)
            and self.segments == other.segments
            and self.vanishing_order == other.vanishing_order
        )

    def __repr__(self):
        return f"NewtonPolygon({self.segments}, z^{self.vanishing_order})"

    def single_slope(self):
        """The (slope, length) pair if there is exactly one segment."""
        if len(self.segments) != 1:
            raise PreconditionError("polygon has more than one segment")
        return self.segments[0]


def newton_polygon(f: Poly) -> NewtonPolygon:
    """Newton polygon of f over a p-adic coefficient ring.

    The ring must implement val_info(c) -> ("exact_zero", None) |
    ("val", v) | ("at_least", N), the last meaning val(c) >= N with the
    exact value undetermined at working precision.  Raises
    BelowPrecisionError whenever an undetermined coefficient could change
    the hull.
    """
    if f.is_zero() and not f.coeffs:
        raise PreconditionError("newton polygon of the zero polynomial")
    info = [f.ring.val_info(c) for c in f.coeffs]

    # strip exact zeros at the bottom: they are honest roots at z = 0
    start = 0
    while start < len(info) and info[start][0] == "exact_zero":
        start += 1
    if start == len(info):
        raise PreconditionError("newton polygon of the zero polynomial")
    if info[start][0] == "at_least":
        raise BelowPrecisionError(
            "lowest coefficient is zero at working precision; "
            "its valuation is undetermined"
        )

    known = []   # (i, val) with val certain
    fuzzy = []   # (i, N) with val >= N only
    for i in range(start, len(info)):
        kind, v = info[i]
        if kind == "val":
            known.append((i - start, v))
        elif kind == "at_least":
            fuzzy.append((i - start, v))
        # exact zeros above `start` impose no constraint at all

    if len(known) < 1 or known[-1][0] != len(info) - 1 - start:
        raise BelowPrecisionError("leading coefficient valuation undetermined")

    hull = _lower_hull(known)

    # a coefficient known only as "0 mod p^N" must sit strictly above the hull
    for i, bound in fuzzy:
        if Fraction(bound) <= _hull_height(hull, i):
            raise BelowPrecisionError(
                f"coefficient of z^{i + start} is zero at precision {bound}, "
                "which could touch the Newton polygon"
            )

    segments = []
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        slope = Fraction(y0 - y1, x1 - x0)  # root valuation on this segment
        segments.append((slope, x1 - x0))
    segments.sort(key=lambda s: s[0])
    return NewtonPolygon(segments, start, hull)


def _lower_hull(points):
    """Lower convex hull of (x, y) points with strictly increasing x."""
    hull = []
    for x, y in points:
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            # drop the middle point if it is not strictly below the chord
            if (y1 - y0) * (x - x0) >= (y - y0) * (x1 - x0):
                hull.pop()
            else:
                break
        hull.append((x, y))
    return hull


def _hull_height(hull, x) -> Fraction:
    """Height of the hull's lower boundary above abscissa x; callers only
    query between the first and last hull vertex."""
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        if x0 <= x <= x1:
            return Fraction(y0) + Fraction(y1 - y0, x1 - x0) * (x - x0)
    raise AssertionError("abscissa outside the polygon")  # pragma: no cover