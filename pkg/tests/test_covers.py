"""Cover specifications: discriminants, branch loci, charts, and the
good-reduction certificate."""

from fractions import Fraction

import pytest

from fiberscope.covers import CoverSpec, bad_primes, check_good_reduction
from fiberscope.errors import PreconditionError

from conftest import (
    cover_genus1,
    cover_quartic,
    cover_sextic,
    cover_trinomial,
    cover_z2_t,
    cover_z3_t,
)


def test_cover_shape_validation():
    with pytest.raises(PreconditionError):
        CoverSpec([[0, -1], [1]])                 # z-degree 1
    with pytest.raises(PreconditionError):
        CoverSpec([[0, -1], [0], [2]])            # not monic in z
    with pytest.raises(PreconditionError):
        CoverSpec([[0, -1], [0], [0, 1]])         # leading coeff not constant


def test_structural_data(z2_t, quartic):
    assert z2_t.d == 2 and z2_t.t_degree == 1
    assert quartic.d == 4
    assert quartic.coefficient_matrix() == [
        [4, -1], [0, 0], [-4, 0], [0, 0], [1, 0]
    ]


def test_discriminant_and_radical(z2_t, quartic, sextic, trinomial, genus1):
    # disc_z(z^2 - t) = 4t; radicals are primitive with positive lead
    assert z2_t.disc_z().coeffs == [0, 4]
    assert z2_t.radical().coeffs == [0, 1]
    assert quartic.disc_z().coeffs == [0, 0, 1024, -256]
    assert quartic.radical().coeffs == [0, -4, 1]
    assert sextic.radical().coeffs == [0, 8, 1]
    assert trinomial.radical().coeffs == [4, 0, 27]     # 27t^2 + 4
    assert genus1.radical().coeffs == [0, -6, 11, -6, 1]


def test_branch_multiplicity_parts(quartic, sextic):
    # Yun decomposition of the discriminant: simple zero at the generic
    # branch point, higher-order zero under the deep clusters at t = 0
    assert [(part.coeffs, k) for part, k in
            quartic.branch_multiplicity_parts()] == [([-4, 1], 1), ([0, 1], 2)]
    assert [(part.coeffs, k) for part, k in
            sextic.branch_multiplicity_parts()] == [([8, 1], 1), ([0, 1], 4)]


def test_specialize_exact(z2_t, genus1):
    assert z2_t.specialize_exact(7).coeffs == [-7, 0, 1]
    g = genus1.specialize_exact(Fraction(1, 2))
    assert g.coeffs == [Fraction(15, 16), Fraction(0), Fraction(1)]


def test_fq_fiber_poly(z2_t):
    from fiberscope.fields import make_field
    field = make_field(5, 1)
    fiber = z2_t.fq_fiber_poly(field, 3)
    assert [c.lift() for c in fiber.coeffs] == [2, 0, 1]


def test_padic_fiber_poly_rejects_negative_valuation(z2_t):
    from fiberscope.padic import PadicRing
    ring = PadicRing(5, 12)
    with pytest.raises(PreconditionError):
        z2_t.padic_fiber_poly(ring, Fraction(1, 5))


def test_infinity_chart(z2_t, z3_t, genus1):
    # z^2 - t becomes w^2 - t again (degree-1 branch at infinity)
    assert z2_t.infinity_chart().coefficient_matrix() == [
        [0, -1], [0, 0], [1, 0]
    ]
    # z^3 - t needs w = tz, giving w^3 - t^2
    assert z3_t.infinity_chart().coefficient_matrix() == [
        [0, 0, -1], [0, 0, 0], [0, 0, 0], [1, 0, 0]
    ]
    assert genus1.infinity_chart().coefficient_matrix() == [
        [-1, 6, -11, 6], [0, 0, 0, 0], [1, 0, 0, 0]
    ]


def test_irreducibility_witness(z2_t, trinomial, genus1):
    assert z2_t.irreducibility_witness == (3, 2)
    assert trinomial.irreducibility_witness == (2, 1)
    assert genus1.irreducibility_witness == (7, 4)


def test_good_reduction_report(quartic, sextic):
    rep = check_good_reduction(quartic, 7)
    assert rep.good and rep.failure_reasons == []
    assert rep.branch_points_mod_p == [0, 4]
    assert rep.ramification_table == {
        0: [(1, 2), (1, 2)], 4: [(1, 1), (1, 1), (1, 2)]
    }
    doc = rep.to_json()
    assert doc["p"] == 7 and doc["good"] is True
    assert doc["ramification_table"]["4"] == [(1, 1), (1, 1), (1, 2)]

    # 5 divides 6! so the conservative bad-prime superset flags it, yet the
    # pointwise certificate still proves good reduction
    rep5 = check_good_reduction(sextic, 5)
    assert rep5.good
    assert rep5.ramification_table == {0: [(2, 3)], 2: [(1, 2), (4, 1)]}


def test_bad_reduction_reasons(z2_t, genus1):
    rep = check_good_reduction(z2_t, 2)
    assert not rep.good
    assert "p divides deg_z = 2" in rep.failure_reasons
    assert any("wild ramification" in msg for msg in rep.failure_reasons)

    rep3 = check_good_reduction(genus1, 3)
    assert not rep3.good
    assert rep3.failure_reasons == ["branch locus not squarefree mod p"]


def test_bad_primes_sets():
    expected = {
        cover_z2_t: {2},
        cover_z3_t: {2, 3},
        cover_quartic: {2, 3},
        cover_sextic: {2, 3, 5},
        cover_trinomial: {2, 3},
        cover_genus1: {2, 3},
    }
    for make, primes in expected.items():
        assert bad_primes(make(), 20) == primes
