"""Genuine Fano cone data: weighted projective cones, isolated cyclic
quotients, and the two worked examples over P(2,3) and P(2,3,5)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, Sequence

from .curves import TwistedMapDatum, admissible_k_for
from .orbifold import FamilyTooLarge, FanoConeData, QuotientChart, max_order_default
from .toric import QuotientLattice, cone_from_cyclic_quotient, cone_from_lattice


@dataclass(frozen=True)
class WeightedProjectiveSpec:
    weights: tuple[int, ...]

    def __post_init__(self):
        w = tuple(sorted(int(a) for a in self.weights))
        if len(w) < 2 or w[0] < 1:
            raise ValueError("need at least two positive weights")
        object.__setattr__(self, "weights", w)

    @classmethod
    def parse(cls, text: str) -> "WeightedProjectiveSpec":
        return cls(tuple(int(x) for x in text.replace(" ", "").split(",") if x))

    @property
    def reduced(self) -> bool:
        """``gcd`` of all weights is 1, so ``C^*`` acts effectively."""
        return gcd(*self.weights) == 1

    @property
    def well_formed(self) -> bool:
        """Every set of all-but-one weights is coprime."""
        w = self.weights
        return all(gcd(*(w[:i] + w[i + 1 :])) == 1 for i in range(len(w)))

    @property
    def name(self) -> str:
        return f"P({','.join(map(str, self.weights))})"


def wps_cone(spec: WeightedProjectiveSpec) -> FanoConeData:
    """The affine cone ``C^{n+1}`` over ``P(a_0, ..., a_n)`` with ``L = O(1)``.

    ``r = sum a_i``; the chart at the ``i``-th coordinate point is
    ``(1/a_i)(1; -a_j mod a_i for j != i)``.
    """
    if not spec.reduced:
        raise ValueError(f"{spec.name}: weights share a common factor")
    w = spec.weights
    charts = []
    for i, a in enumerate(w):
        base = [-b % a for j, b in enumerate(w) if j != i]
        charts.append(QuotientChart.cyclic(a, [1 % a] + base, f"{spec.name}@{i}"))
    return FanoConeData(
        Fraction(sum(w)),
        len(w),
        tuple(charts),
        spec.name,
        ambient=QuotientLattice.standard(len(w)),
        catalog=True,
    )


def wps_cone_toric(spec: WeightedProjectiveSpec) -> FanoConeData:
    """Same cone through the toric route (star subdivision along ``xi = weights``)."""
    return cone_from_lattice(QuotientLattice.standard(len(spec.weights)), spec.weights, spec.name)


def coordinate_chart_coverage_check(spec: WeightedProjectiveSpec) -> bool:
    """Every stabilizer ``mu_s`` on ``P_w`` sits inside a coordinate chart.

    Points with support ``S`` have stabilizer of order ``gcd(a_S)``, which
    must divide ``a_i`` for some ``i`` in ``S``.
    """
    w = spec.weights
    for size in range(1, len(w) + 1):
        for S in itertools.combinations(range(len(w)), size):
            s = gcd(*(w[i] for i in S))
            if not any(w[i] % s == 0 for i in S):
                return False
    return True


def wps_family(max_weight: int, sizes: Sequence[int] = (2, 3, 4, 5)) -> Iterator[WeightedProjectiveSpec]:
    """Reduced weight vectors (sorted) with the given lengths and entries <= max_weight."""
    for size in sizes:
        for w in itertools.combinations_with_replacement(range(1, max_weight + 1), size):
            if gcd(*w) == 1:
                yield WeightedProjectiveSpec(w)


def quotient_representatives(n: int, m_max: int, m_min: int = 2) -> Iterator[tuple[int, tuple[int, ...]]]:
    """Isolated ``(1/m)(a)`` up to permutation and ``a -> c*a`` (``c`` a unit mod m).

    The representative is the lexicographically smallest sorted tuple in
    the orbit, which always starts with 1.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if m_max > max_order_default():
        raise FamilyTooLarge(f"family too large: m_max={m_max}")
    for m in range(max(m_min, 2), m_max + 1):
        units = [u for u in range(1, m) if gcd(u, m) == 1]
        for rest in itertools.combinations_with_replacement(units, n - 1):
            a = (1,) + rest
            if all(tuple(sorted(x * u % m for x in a)) >= a for u in units):
                yield m, a


def isolated_quotient_family(n: int, m_max: int) -> Iterator[FanoConeData]:
    for m, a in quotient_representatives(n, m_max):
        yield cone_from_cyclic_quotient(m, a)


@dataclass(frozen=True)
class ExampleFixture:
    name: str
    cone: FanoConeData
    datum: TwistedMapDatum
    expected_d: Fraction
    relation: str  # "=" or ">" against dim Y + 1

    @property
    def dim_plus_one(self) -> int:
        return self.cone.dim


def _chart_of_order(cone: FanoConeData, order: int) -> QuotientChart:
    return next(c for c in cone.charts if c.order == order)


def worked_example_fixtures() -> list[ExampleFixture]:
    p23 = wps_cone(WeightedProjectiveSpec((2, 3)))
    p235 = wps_cone(WeightedProjectiveSpec((2, 3, 5)))

    def datum(cone, order, exponent, k):
        g = _chart_of_order(cone, order).element(exponent)
        return TwistedMapDatum(g.order(), g, k, cone.r, cone.dim - 1)

    return [
        ExampleFixture("P(2,3) family, l=2", p23, datum(p23, 2, 1, -1), Fraction(3), ">"),
        ExampleFixture("P(2,3) broken, l=3", p23, datum(p23, 3, 2, -1), Fraction(2), "="),
        ExampleFixture("P(2,3,5) family, l=3", p235, datum(p235, 3, 2, -1), Fraction(4), ">"),
        ExampleFixture("P(2,3,5) broken, l=5", p235, datum(p235, 5, 4, -1), Fraction(3), "="),
    ]


def twisted_map_data(cone: FanoConeData, depth: int = 3, max_order=None) -> Iterator[TwistedMapDatum]:
    """Admissible curve data for every sector of every chart.

    Untwisted curves (``l = 1``) are attached to each chart's identity;
    ``depth`` admissible degrees ``k_max, k_max - l, ...`` are produced per sector.
    """
    for chart in cone.charts:
        for g in chart.elements(max_order):
            ell = 1 if g.is_identity else g.order()
            for k in admissible_k_for(g).values(depth):
                yield TwistedMapDatum(ell, g, k, cone.r, cone.dim - 1)
