"""Toric model of the extraction and the lattice-point mld oracle.

An isolated quotient ``C^n / G`` is the positive orthant with the overlattice
``L' = Z^n + sum_j Z * g_j`` (``g_j`` rational).  A quasi-regular Reeb ray
``xi`` picks the exceptional ray of the extraction; star-subdividing the
orthant along it yields ``n`` simplicial charts, each a finite quotient read
off by Smith normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Sequence

from . import normal_forms as nf
from .orbifold import (
    FamilyTooLarge,
    FanoConeData,
    QuotientChart,
    max_order_default,
)

Vector = tuple[Fraction, ...]


class NonIsolatedError(ValueError):
    """The quotient singularity is not isolated."""


def _frac_vec(v: Sequence) -> Vector:
    return tuple(Fraction(x) for x in v)


@dataclass(frozen=True)
class QuotientLattice:
    n: int
    extra_generators: tuple[Vector, ...] = ()

    def __post_init__(self):
        gens = tuple(tuple(Fraction(x) % 1 for x in g) for g in self.extra_generators)
        for g in gens:
            if len(g) != self.n:
                raise ValueError(f"generator {g} does not have length {self.n}")
        object.__setattr__(self, "extra_generators", gens)

    @classmethod
    def cyclic(cls, m: int, weights: Sequence[int]) -> "QuotientLattice":
        """``Z^n + Z * (1/m)(a_1, ..., a_n)``."""
        return cls(len(weights), (tuple(Fraction(a, m) for a in weights),))

    @classmethod
    def standard(cls, n: int) -> "QuotientLattice":
        return cls(n, ())

    @cached_property
    def denominator(self) -> int:
        return lcm(1, *(x.denominator for g in self.extra_generators for x in g))

    @cached_property
    def hnf(self) -> nf.Matrix:
        """HNF basis of ``D * L'`` with ``D`` the common denominator."""
        D = self.denominator
        rows = [[D * int(i == j) for j in range(self.n)] for i in range(self.n)]
        rows += [[int(x * D) for x in g] for g in self.extra_generators]
        return nf.hermite_rows(rows, self.n)

    @cached_property
    def index(self) -> int:
        """``[L' : Z^n]``."""
        det = 1
        for i, row in enumerate(self.hnf):
            det *= row[i]
        return self.denominator**self.n // det

    @property
    def is_unimodular(self) -> bool:
        return self.index == 1

    def contains(self, x: Sequence) -> bool:
        D = self.denominator
        y = []
        for c in x:
            c = Fraction(c) * D
            if c.denominator != 1:
                return False
            y.append(c.numerator)
        return self.contains_numerators(y)

    def contains_numerators(self, y: Sequence[int]) -> bool:
        """Membership of ``y / D`` for an integer vector ``y``."""
        return nf.solve_in_lattice(self.hnf, y) is not None

    def coset_numerators(self, max_order: int | None = None) -> list[tuple[int, ...]]:
        """Representatives of ``L' / Z^n`` as numerators over :attr:`denominator`.

        Found by closing ``{0}`` under the generators mod ``Z^n``.
        """
        bound = max_order_default() if max_order is None else max_order
        if self.index > bound:
            raise FamilyTooLarge(f"family too large: lattice index {self.index} > {bound}")
        D = self.denominator
        steps = [tuple(int(x * D) for x in g) for g in self.extra_generators]
        seen = {(0,) * self.n}
        frontier = list(seen)
        while frontier:
            nxt = []
            for p in frontier:
                for s in steps:
                    q = tuple((a + b) % D for a, b in zip(p, s))
                    if q not in seen:
                        seen.add(q)
                        nxt.append(q)
            frontier = nxt
        return sorted(seen)


def box_points(L: QuotientLattice, max_order: int | None = None) -> list[Vector]:
    """``L' ∩ (0, 1]^n`` in lexicographic order; always contains ``(1, ..., 1)``."""
    D = L.denominator
    pts = [
        tuple(Fraction(t, D) if t else Fraction(1) for t in rep)
        for rep in L.coset_numerators(max_order)
    ]
    return sorted(pts)


def mld_oracle_quotient(L: QuotientLattice, max_order: int | None = None) -> Fraction:
    """mld of the isolated quotient ``C^n / G`` at the origin.

    Minimum coordinate sum over the box points (discrepancy of the toric
    valuations through the origin).
    """
    pts = box_points(L, max_order)
    one = (Fraction(1),) * L.n
    for v in pts:
        if v != one and any(x == 1 for x in v):
            raise NonIsolatedError(f"{v} has a coordinate fixed by a non-identity element")
    return min(sum(v) for v in pts)


def chart_lattice(chart: QuotientChart) -> QuotientLattice:
    return QuotientLattice(
        chart.n, tuple(tuple(Fraction(w, d) for w in ws) for d, ws in chart.factors)
    )


def mld_oracle_chart(chart: QuotientChart, r, max_order: int | None = None) -> Fraction:
    """Minimum of ``r*x_1 + x_2 + ... + x_n`` over lattice points of the chart.

    The points range over ``L'`` with ``0 < x_1 <= 1`` and ``0 <= x_i <= 1``
    for the base coordinates: exactly the toric valuations centred inside
    the zero section, up to translation by ``Z^n`` (which only increases the
    value).  The point ``(1, 0, ..., 0)`` is ``ord`` of the zero section
    itself and contributes ``r``.
    """
    r = Fraction(r)
    L = chart_lattice(chart)
    D = L.denominator
    best = None
    for rep in L.coset_numerators(max_order):
        x1 = Fraction(rep[0], D) if rep[0] else Fraction(1)
        base_min = Fraction(0)
        for t in rep[1:]:
            options = [Fraction(t, D)] + ([Fraction(1)] if t == 0 else [])
            base_min += min(options)
        value = r * x1 + base_min
        if best is None or value < best:
            best = value
    return best


def mld_oracle_cone(data: FanoConeData, max_order: int | None = None) -> Fraction:
    values = [data.r] + [mld_oracle_chart(c, data.r, max_order) for c in data.charts]
    return min(values)


def primitive_ray(L: QuotientLattice, xi: Sequence[int]) -> Vector:
    """Smallest positive multiple of ``xi`` lying in ``L'``."""
    xi = [int(x) for x in xi]
    if len(xi) != L.n or any(x <= 0 for x in xi):
        raise ValueError(f"xi must be a strictly positive integer vector of length {L.n}")
    # t * xi in (1/D) Z^n forces t in (1/(D * gcd(xi))) Z
    D = L.denominator
    step = D * gcd(*xi)
    for s in range(1, step + 1):
        scaled = [s * x * D for x in xi]
        if any(y % step for y in scaled):
            continue
        if L.contains_numerators([y // step for y in scaled]):
            return tuple(Fraction(s * x, step) for x in xi)
    raise AssertionError("xi itself lies in the lattice")


def fano_index_r(ray: Sequence) -> Fraction:
    """Log discrepancy of the exceptional divisor: coordinate sum of its ray."""
    return sum((Fraction(x) for x in ray), Fraction(0))


@dataclass(frozen=True)
class SimplicialChart:
    rays: tuple[Vector, ...]
    distinguished: int

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(_frac_vec(r) for r in self.rays))

    def determinant(self, L: QuotientLattice) -> int:
        """Index of the span of the rays inside ``L'``."""
        det = abs(nf.determinant(self.rays)) * L.index
        if det.denominator != 1:
            raise ArithmeticError("rays do not lie in the lattice")
        return det.numerator


def star_subdivision(L: QuotientLattice, ray: Sequence) -> list[SimplicialChart]:
    """Charts ``{ray} ∪ {u_i : i != j}``, ``u_i`` the primitive coordinate rays."""
    ray = _frac_vec(ray)
    if any(x <= 0 for x in ray):
        raise ValueError("the subdivision ray must lie in the interior of the orthant")
    units = [_coordinate_ray(L, j) for j in range(L.n)]
    charts = []
    for j in range(L.n):
        rays = list(units)
        rays[j] = ray
        charts.append(SimplicialChart(tuple(rays), j))
    return charts


def _coordinate_ray(L: QuotientLattice, j: int) -> Vector:
    D = L.denominator
    for s in range(1, D + 1):
        if L.contains_numerators([s if i == j else 0 for i in range(L.n)]):
            return tuple(Fraction(s, D) if i == j else Fraction(0) for i in range(L.n))
    raise AssertionError("unreachable")


def chart_from_cone(c: SimplicialChart, L: QuotientLattice, label: str = "") -> QuotientChart:
    """The finite quotient ``L' / span(rays)`` as a diagonal chart.

    Coordinates are taken in the ray basis, with the distinguished ray moved
    to the fiber slot.  The group comes out in invariant-factor form.
    """
    n = L.n
    try:
        Rinv = nf.inverse(c.rays)
    except ZeroDivisionError as exc:
        raise ValueError("degenerate cone: rays are not linearly independent") from exc

    def to_ray_coords(x: Sequence[Fraction]) -> list[Fraction]:
        return [sum((x[i] * Rinv[i][j] for i in range(n)), Fraction(0)) for j in range(n)]

    # e_i in ray coordinates is row i of R^-1
    gens = [list(row) for row in Rinv] + [to_ray_coords(g) for g in L.extra_generators]
    Dp = lcm(1, *(x.denominator for g in gens for x in g))
    H = nf.hermite_rows([[int(x * Dp) for x in g] for g in gens], n)
    # span(H) = sum s_i Z f_i with f_i the rows of V^-1, and it contains Dp Z^n,
    # so the group is sum Z/(Dp/s_i) generated by s_i f_i / Dp
    S, _, _, Vi = nf.smith(H)

    order = [c.distinguished] + [i for i in range(n) if i != c.distinguished]
    factors = []
    for i in reversed(range(n)):
        s_i = S[i][i]
        d = Dp // s_i
        if d <= 1:
            continue
        weights = tuple(s_i * Vi[i][j] % Dp // s_i for j in order)
        factors.append((d, weights))
    return QuotientChart(n, tuple(factors), label)


def cone_from_lattice(
    L: QuotientLattice,
    xi: Sequence[int] | None = None,
    name: str = "",
    max_order: int | None = None,
) -> FanoConeData:
    """Fano cone chart data of ``(C^n / G, xi)`` through the star subdivision."""
    xi = [1] * L.n if xi is None else list(xi)
    if L.index > (max_order_default() if max_order is None else max_order):
        raise FamilyTooLarge(f"family too large: lattice index {L.index}")
    ray = primitive_ray(L, xi)
    charts = tuple(
        chart_from_cone(c, L, f"{name}#{j}" if name else f"#{j}")
        for j, c in enumerate(star_subdivision(L, ray))
    )
    return FanoConeData(fano_index_r(ray), L.n, charts, name, ambient=L, catalog=True)


def cone_from_cyclic_quotient(
    m: int,
    a: Sequence[int],
    xi: Sequence[int] | None = None,
    max_order: int | None = None,
) -> FanoConeData:
    """Cone data for ``C^n / (1/m)(a_1, ..., a_n)`` with Reeb vector ``xi``."""
    a = [int(x) % m for x in a]
    if m < 1:
        raise ValueError("m must be positive")
    bad = [x for x in a if gcd(x, m) != 1] if m > 1 else []
    if bad:
        raise NonIsolatedError(f"(1/{m})({','.join(map(str, a))}) is not isolated: gcd(a_i, m) != 1")
    name = f"C{len(a)}/(1/{m})({','.join(map(str, a))})"
    if xi is not None and any(int(x) != 1 for x in xi):
        name += f"[xi={','.join(map(str, xi))}]"
    return cone_from_lattice(QuotientLattice.cyclic(m, a), xi, name, max_order)
