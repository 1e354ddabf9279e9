"""Shared cover constructors for the test suite.

Coefficient matrices are indexed by z-degree (rows) and t-degree
(columns), matching the cover-file format.
"""

import pytest

from fiberscope.covers import CoverSpec


def cover_z2_t():
    """z^2 - t: the double cover branched at 0 and infinity."""
    return CoverSpec([[0, -1], [0], [1]])


def cover_z3_t():
    """z^3 - t."""
    return CoverSpec([[0, -1], [0], [0], [1]])


def cover_quartic():
    """(z^2 - 2)^2 - t: an (e, f) = (2, 2) block over t = 0 when 2 is a
    non-residue mod p."""
    return CoverSpec([[4, -1], [0], [-4], [0], [1]])


def cover_sextic():
    """(z^2 - 2)^3 - t: an (e, f) = (3, 2) block over t = 0."""
    return CoverSpec([[-8, -1], [0], [12], [0], [-6], [0], [1]])


def cover_trinomial():
    """z^3 + z + t: generic S_3 monodromy, irrational branch locus."""
    return CoverSpec([[0, 1], [1], [0], [1]])


def cover_genus1():
    """z^2 - t(t-1)(t-2)(t-3): four rational affine branch points."""
    return CoverSpec([[0, 6, -11, 6, -1], [0], [1]])


@pytest.fixture
def z2_t():
    return cover_z2_t()


@pytest.fixture
def z3_t():
    return cover_z3_t()


@pytest.fixture
def quartic():
    return cover_quartic()


@pytest.fixture
def sextic():
    return cover_sextic()


@pytest.fixture
def trinomial():
    return cover_trinomial()


@pytest.fixture
def genus1():
    return cover_genus1()


ALL_COVERS = {
    "z2-t": cover_z2_t,
    "z3-t": cover_z3_t,
    "quartic": cover_quartic,
    "sextic": cover_sextic,
    "trinomial": cover_trinomial,
    "genus1": cover_genus1,
}
