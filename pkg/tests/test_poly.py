"""Dense polynomials over exact and finite coefficient rings, resultants,
and Newton polygons."""

from fractions import Fraction

import pytest

from fiberscope.errors import PreconditionError
from fiberscope.fields import make_field
from fiberscope.padic import PadicRing
from fiberscope.poly import (
    QQ,
    ZZ,
    Poly,
    discriminant,
    newton_polygon,
    poly_gcd,
    resultant,
    squarefree_part_exact,
)


def test_construction_strips_leading_zeros():
    f = Poly(ZZ, [1, 2, 0, 0])
    assert f.degree == 1
    assert f.coeffs == [1, 2]
    assert Poly(ZZ, [0, 0]).is_zero()


def test_arithmetic():
    f = Poly(ZZ, [1, 1])           # 1 + z
    g = Poly(ZZ, [-1, 1])          # -1 + z
    assert (f * g).coeffs == [-1, 0, 1]
    assert (f + g).coeffs == [0, 2]
    assert (f - g).coeffs == [2]
    assert (f ** 3).coeffs == [1, 3, 3, 1]
    assert f(4) == 5


def test_divmod():
    f = Poly(QQ, [Fraction(c) for c in (2, 0, -3, 1)])
    g = Poly(QQ, [Fraction(-1), Fraction(1)])
    q, r = f.divmod_by(g)
    assert q * g + r == f
    assert r.degree <= 0
    assert f % g == r
    assert f // g == q


def test_monic_and_scale():
    f = Poly(QQ, [Fraction(2), Fraction(4)])
    assert f.monic().coeffs == [Fraction(1, 2), Fraction(1)]
    g = Poly(ZZ, [1, 1]).scale(2)       # f(2z)
    assert g.coeffs == [1, 2]
    h = Poly(ZZ, [0, 0, 1]).shift(3)    # (z + 3)^2
    assert h.coeffs == [9, 6, 1]


def test_derivative():
    f = Poly(ZZ, [5, 4, 3, 2])
    assert f.derivative().coeffs == [4, 6, 6]


def test_gcd():
    field = make_field(5, 1)
    mk = lambda cs: Poly(field, [field.from_int(c) for c in cs])
    f = mk([1, 1]) * mk([2, 1]) * mk([3, 1])
    g = mk([2, 1]) * mk([4, 1])
    assert poly_gcd(f, g) == mk([2, 1])
    over_q = poly_gcd(Poly(QQ, [Fraction(-1), Fraction(0), Fraction(1)]),
                      Poly(QQ, [Fraction(-1), Fraction(1)]))
    assert over_q.coeffs == [Fraction(-1), Fraction(1)]


def test_squarefree_part():
    f = Poly(QQ, [Fraction(c) for c in (0, 0, 1)])      # z^2
    assert squarefree_part_exact(f).degree == 1


def test_resultant_of_linear_factors():
    # res(z - a, z - b) = a - b with this row convention
    f = Poly(ZZ, [-3, 1])
    g = Poly(ZZ, [-5, 1])
    assert resultant(f, g) == 3 - 5
    assert resultant(g, f) == 5 - 3


def test_resultant_multiplicative():
    f = Poly(ZZ, [-1, 1]) * Poly(ZZ, [-2, 1])
    g = Poly(ZZ, [-4, 1])
    assert resultant(f, g) == (1 - 4) * (2 - 4)


def test_discriminant_quadratic_and_cubic():
    # disc(z^2 + bz + c) = b^2 - 4c
    f = Poly(ZZ, [3, 5, 1])
    assert discriminant(f) == 25 - 12
    # disc(z^3 + pz + q) = -4p^3 - 27q^2
    g = Poly(ZZ, [2, 1, 0, 1])
    assert discriminant(g) == -4 - 27 * 4
    # repeated root
    h = Poly(ZZ, [1, 2, 1])
    assert discriminant(h) == 0


def test_newton_polygon_slopes():
    ring = PadicRing(5, 20)
    # 25 + 5z + z^3: vertices (0,2),(1,1),(3,0): slopes 1 and 1/2
    f = Poly(ring, [ring.exact(25), ring.exact(5), ring.exact(0),
                    ring.exact(1)])
    np_data = newton_polygon(f)
    segs = [(Fraction(s), length) for s, length in np_data.segments]
    assert segs == [(Fraction(1, 2), 2), (Fraction(1), 1)]
    assert np_data.vanishing_order == 0


def test_newton_polygon_vanishing_order():
    ring = PadicRing(5, 20)
    f = Poly(ring, [ring.exact(0), ring.exact(0), ring.exact(5),
                    ring.exact(1)])
    np_data = newton_polygon(f)
    assert np_data.vanishing_order == 2
    assert [(Fraction(s), n) for s, n in np_data.segments] == [(Fraction(1), 1)]


def test_newton_polygon_undetermined_low_coefficient():
    ring = PadicRing(5, 4)
    f = Poly(ring, [ring.inexact(0), ring.exact(1)])
    from fiberscope.errors import BelowPrecisionError
    with pytest.raises(BelowPrecisionError):
        newton_polygon(f)


def test_integer_leading_unit_division():
    f = Poly(ZZ, [2, 0, 1])
    g = Poly(ZZ, [1, 1])
    q, r = f.divmod_by(g)
    assert q * g + r == f
    with pytest.raises(PreconditionError):
        f.divmod_by(Poly(ZZ, [1, 2]))      # non-unit leading coefficient
