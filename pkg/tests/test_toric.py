import random
from fractions import Fraction as F
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fanomld.catalog import WeightedProjectiveSpec, wps_cone
from fanomld.mld import mld_eq1, mld_eq2
from fanomld.orbifold import FanoConeData, QuotientChart, age_base, element_theta, validate_cone
from fanomld.toric import (
    NonIsolatedError,
    QuotientLattice,
    box_points,
    chart_from_cone,
    cone_from_cyclic_quotient,
    cone_from_lattice,
    fano_index_r,
    mld_oracle_chart,
    mld_oracle_cone,
    mld_oracle_quotient,
    primitive_ray,
    star_subdivision,
)

from conftest import cyclic_quotients, random_valid_chart


def brute_box(m, a):
    """Independent enumeration: multiples k/m * a reduced into (0, 1]."""
    pts = set()
    for k in range(m):
        pts.add(tuple(F(k * x % m, m) or F(1) for x in a))
    return sorted(pts)


def test_box_points_examples():
    assert box_points(QuotientLattice.standard(2)) == [(1, 1)]
    assert box_points(QuotientLattice.cyclic(3, (1, 1))) == [(F(1, 3), F(1, 3)), (F(2, 3), F(2, 3)), (1, 1)]
    assert box_points(QuotientLattice.cyclic(3, (1, 2))) == [(F(1, 3), F(2, 3)), (F(2, 3), F(1, 3)), (1, 1)]


@settings(max_examples=200, deadline=None)
@given(cyclic_quotients())
def test_box_points_match_brute_force(q):
    m, a = q
    L = QuotientLattice.cyclic(m, a)
    pts = box_points(L)
    assert pts == brute_box(m, a)
    assert len(pts) == L.index == m
    assert (1,) * len(a) in pts


def test_oracle_quotient_examples():
    assert mld_oracle_quotient(QuotientLattice.standard(3)) == 3
    assert mld_oracle_quotient(QuotientLattice.cyclic(3, (1, 1))) == F(2, 3)
    assert mld_oracle_quotient(QuotientLattice.cyclic(3, (1, 2))) == 1


def test_oracle_quotient_rejects_non_isolated():
    with pytest.raises(NonIsolatedError):
        mld_oracle_quotient(QuotientLattice.cyclic(4, (1, 2)))


def test_oracle_chart_examples():
    # a trivial chart only sees the zero-section valuation (1, 0, ..., 0)
    assert mld_oracle_chart(QuotientChart.trivial(2), 2) == 2
    assert mld_oracle_cone(FanoConeData(2, 2, (QuotientChart.trivial(2),))) == 2
    assert mld_oracle_chart(QuotientChart.cyclic(3, [1, 1]), 5) == 2
    assert mld_oracle_chart(QuotientChart.cyclic(5, [1, 3, 2]), 10) == 3


def test_primitive_ray_examples():
    assert primitive_ray(QuotientLattice.standard(2), (1, 1)) == (1, 1)
    assert primitive_ray(QuotientLattice.cyclic(3, (1, 1)), (1, 1)) == (F(1, 3), F(1, 3))
    assert primitive_ray(QuotientLattice.cyclic(3, (1, 2)), (1, 1)) == (1, 1)
    assert primitive_ray(QuotientLattice.standard(3), (2, 3, 5)) == (2, 3, 5)
    assert primitive_ray(QuotientLattice.standard(2), (2, 4)) == (1, 2)


@settings(max_examples=150, deadline=None)
@given(cyclic_quotients(n_max=3, m_max=20), st.lists(st.integers(1, 6), min_size=3, max_size=3))
def test_primitive_ray_is_minimal(q, xi):
    m, a = q
    L = QuotientLattice.cyclic(m, a)
    xi = xi[: len(a)]
    ray = primitive_ray(L, xi)
    assert L.contains(ray)
    t = ray[0] / xi[0]
    assert all(r == t * x for r, x in zip(ray, xi))
    # no smaller positive multiple on the grid (1/(D gcd xi)) Z lies in the lattice
    step = L.denominator * gcd(*xi)
    for s in range(1, int(t * step)):
        assert not L.contains(tuple(F(s, step) * x for x in xi))


def test_fano_index_examples():
    assert fano_index_r((1, 1, 1)) == 3
    assert cone_from_cyclic_quotient(3, (1, 1)).r == F(2, 3)
    assert cone_from_cyclic_quotient(3, (1, 2)).r == 2


def test_star_subdivision_examples():
    charts = star_subdivision(QuotientLattice.standard(2), (1, 1))
    assert [c.rays for c in charts] == [((1, 1), (0, 1)), ((1, 0), (1, 1))]
    L = QuotientLattice.cyclic(3, (1, 1))
    assert [c.determinant(L) for c in star_subdivision(L, primitive_ray(L, (1, 1)))] == [1, 1]
    L = QuotientLattice.cyclic(3, (1, 2))
    assert [c.determinant(L) for c in star_subdivision(L, (1, 1))] == [3, 3]


@settings(max_examples=100, deadline=None)
@given(cyclic_quotients(m_max=25))
def test_chart_orders_match_determinants(q):
    m, a = q
    L = QuotientLattice.cyclic(m, a)
    for c in star_subdivision(L, primitive_ray(L, (1,) * len(a))):
        assert chart_from_cone(c, L).order == c.determinant(L)


def test_chart_from_cone_examples():
    L = QuotientLattice.standard(2)
    assert chart_from_cone(star_subdivision(L, (1, 1))[0], L).is_trivial
    L = QuotientLattice.cyclic(3, (1, 2))
    chart = chart_from_cone(star_subdivision(L, (1, 1))[1], L)
    assert chart.factors == ((3, (1, 1)),)
    L = QuotientLattice.standard(3)
    chart = chart_from_cone(star_subdivision(L, (2, 3, 5))[1], L)
    assert chart.signature() == QuotientChart.cyclic(3, [1, 1, 1]).signature()


def test_cone_from_cyclic_quotient_examples():
    smooth = cone_from_cyclic_quotient(1, (1, 1))
    assert smooth.r == 2 and mld_eq2(smooth).value == 2
    c = cone_from_cyclic_quotient(3, (1, 1))
    assert all(ch.is_trivial for ch in c.charts) and mld_eq2(c).value == F(2, 3)
    c = cone_from_cyclic_quotient(3, (1, 2))
    assert [ch.factors for ch in c.charts] == [((3, (1, 1)),)] * 2 and mld_eq2(c).value == 1
    with pytest.raises(NonIsolatedError):
        cone_from_cyclic_quotient(6, (1, 2))


@settings(max_examples=150, deadline=None)
@given(cyclic_quotients(m_max=40))
def test_converter_matches_lattice_oracle(q):
    m, a = q
    cone = cone_from_cyclic_quotient(m, a)
    assert validate_cone(cone).ok
    assert mld_eq2(cone).value == mld_oracle_quotient(QuotientLattice.cyclic(m, a))


@settings(max_examples=60, deadline=None)
@given(cyclic_quotients(n_max=3, m_max=12), st.lists(st.integers(1, 5), min_size=3, max_size=3))
def test_converter_with_general_reeb_vector(q, xi):
    m, a = q
    xi = xi[: len(a)]
    cone = cone_from_cyclic_quotient(m, a, xi)
    assert validate_cone(cone).ok
    assert mld_eq2(cone).value == mld_eq1(cone).value == mld_oracle_cone(cone)
    # the mld of the singularity does not depend on the Reeb vector
    assert mld_eq2(cone).value == mld_oracle_quotient(QuotientLattice.cyclic(m, a))


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 4))
def test_chart_level_equivalence(seed, n):
    rng = random.Random(seed)
    chart = random_valid_chart(rng, n, 60)
    r = F(rng.randint(1, 40), rng.randint(1, 9))
    direct = min(
        [r] + [r * element_theta(g)[0] + age_base(g) for g in chart.elements() if not g.is_identity]
    )
    assert direct == min(r, mld_oracle_chart(chart, r))


def test_wps_toric_route_matches_formula():
    for w in [(2, 3), (2, 3, 5), (1, 2, 2), (3, 4, 5, 7)]:
        spec = WeightedProjectiveSpec(w)
        direct, toric = wps_cone(spec), cone_from_lattice(QuotientLattice.standard(len(w)), w, spec.name)
        assert toric.r == direct.r
        assert [c.signature() for c in toric.charts] == [c.signature() for c in direct.charts]
