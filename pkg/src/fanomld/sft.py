"""Reeb orbits on the link and their lSFT indices.

Orbits are indexed by an inertia element ``g`` plus ``j >= 0`` extra
principal rounds.  With the principal period normalised to 1, ``gamma_g``
has period ``theta_1(g)`` for ``g != 1`` and the principal orbit has period 1.
A capping curve in the zero section then has ``L``-degree
``c(g) + j`` where ``c(g) = 1 - theta_1(g)`` (and ``c(1) = 1``).

The index is assembled from the degeneration into a fiber disk plus a
curve in the zero section:

* fiber disk through ``l = j + 1`` rounds: real vdim ``2l - 2``;
* curve in the zero section, lifted to the disk bundle: real vdim of the
  pointed space on ``Y`` plus the normal Cauchy-Riemann index ``2 - 2l``;
* gluing along the node: ``+2`` (codimension-2 nodal stratum, fiber product
  over ``Y_g``).

Summing gives ``lSFT = 2 * vdim_C(pointed) + 2``, i.e.
``2 * (r * (j + c(g)) + age(g^-1) - 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curves import vdim_pointed
from .mld import mld_eq2
from .orbifold import (
    FanoConeData,
    GroupElement,
    QuotientChart,
    age_base,
    element_theta,
    require_valid,
)


@dataclass(frozen=True)
class ReebOrbitSpec:
    sector: GroupElement
    extra_rounds: int = 0

    def __post_init__(self):
        if self.extra_rounds < 0:
            raise ValueError("extra_rounds must be nonnegative")

    @property
    def period(self) -> Fraction:
        g = self.sector
        base = Fraction(1) if g.is_identity else element_theta(g)[0]
        return base + self.extra_rounds

    @property
    def degree_fraction(self) -> Fraction:
        """``L``-degree of the capping curve: ``c(g) + j``."""
        g = self.sector
        c = Fraction(1) if g.is_identity else 1 - element_theta(g)[0]
        return c + self.extra_rounds


def fiber_disk_vdim(rounds: int) -> int:
    """Real vdim of the fiber (orbifold) disk winding ``rounds`` times."""
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    return 2 * rounds - 2


def normal_index(rounds: int) -> int:
    """Fredholm index of the normal Cauchy-Riemann operator along the zero section."""
    return 2 - 2 * rounds


def lsft_index(orbit: ReebOrbitSpec, r) -> Fraction:
    r = Fraction(r)
    if r <= 0:
        raise ValueError("r must be positive")
    g = orbit.sector
    if not g.is_identity and element_theta(g)[0] == 0:
        raise ValueError("orbit sector fixes the fiber direction (non-isolated chart)")
    dim_Y = g.chart.n - 1
    rounds = orbit.extra_rounds + 1
    vdim_Y = vdim_pointed(r * orbit.degree_fraction, dim_Y, g)
    curve_in_bundle = 2 * vdim_Y + normal_index(rounds)
    return 2 + fiber_disk_vdim(rounds) + curve_in_bundle


def lsft_closed_form(orbit: ReebOrbitSpec, r) -> Fraction:
    return 2 * (Fraction(r) * orbit.degree_fraction + age_base(orbit.sector.inverse()) - 1)


@dataclass(frozen=True)
class OrbitRow:
    chart: str
    element: tuple[int, ...]
    period: Fraction
    lsft: Fraction

    @property
    def half_plus_one(self) -> Fraction:
        return self.lsft / 2 + 1


def orbit_table(cone: FanoConeData, max_order=None) -> list[OrbitRow]:
    """All ``j = 0`` orbits; the principal orbit is listed once, first."""
    require_valid(cone, max_order)
    principal = QuotientChart.trivial(cone.dim, "principal").identity()
    rows = [OrbitRow("principal", (), Fraction(1), lsft_index(ReebOrbitSpec(principal), cone.r))]
    for chart in cone.charts:
        for g in chart.elements(max_order):
            if g.is_identity:
                continue
            orbit = ReebOrbitSpec(g)
            rows.append(OrbitRow(chart.label, g.exponents, orbit.period, lsft_index(orbit, cone.r)))
    return rows


def mld_from_sft(cone: FanoConeData, max_order=None) -> Fraction:
    """``1/2 * min lSFT + 1``.

    ``lsft_index`` grows by ``2r > 0`` per extra round, so the minimum is
    among the ``j = 0`` orbits.
    """
    return min(row.lsft for row in orbit_table(cone, max_order)) / 2 + 1


def sft_scan(cone: FanoConeData, max_order=None) -> tuple[Fraction, bool]:
    """``(1/2 min lSFT + 1, term-by-term agreement)`` over ``j = 0`` orbits.

    Same composition as :func:`lsft_index`, carried out on integer
    numerators over ``q * D`` (``r = p/q``, ``D`` the chart exponent) so
    whole catalogs can be checked.  Each term is compared with the
    mld_eq2 minimand ``r*(1 - theta_1) + age(g^-1)`` on the same scale.
    """
    r = Fraction(cone.r)
    p, q = r.numerator, r.denominator
    dim_Y = cone.dim - 1
    best = r
    agree = True
    for chart in cone.charts:
        D = chart.exponent
        scale = q * D
        glue = 2 * scale
        disk = fiber_disk_vdim(1) * scale
        normal = normal_index(1) * scale
        chart_min = None
        for g in chart.elements(max_order):
            if g.is_identity:
                continue
            t = chart.theta_numerators(g.exponents)
            if t[0] == 0:
                raise ValueError("orbit sector fixes the fiber direction (non-isolated chart)")
            base = t[1:]
            # pointed vdim: A + dim Y - 2 - age(g) - dim Y_g, with A = r * (1 - theta_1)
            vdim = p * (D - t[0]) + scale * (dim_Y - 2) - q * sum(base) - scale * base.count(0)
            lsft = glue + disk + 2 * vdim + normal
            eq2 = p * (D - t[0]) + q * sum((D - x) % D for x in base)
            agree = agree and lsft + 2 * scale == 2 * eq2
            if chart_min is None or lsft < chart_min:
                chart_min = lsft
        if chart_min is not None:
            best = min(best, Fraction(chart_min + 2 * scale, 2 * scale))
    return best, agree


def sft_consistency(cone: FanoConeData, max_order=None, mld=None) -> bool:
    """Minimum and term-by-term agreement with the mld_eq2 minimands.

    ``mld`` may carry an already computed mld_eq2 value.
    """
    require_valid(cone, max_order)
    value, agree = sft_scan(cone, max_order)
    if mld is None:
        mld = mld_eq2(cone, max_order, check=False).value
    return agree and value == mld
