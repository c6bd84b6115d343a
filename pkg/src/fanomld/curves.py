"""Numerics of orbifold rational curves ``P^1(1, l) -> Y``.

Twisted maps are only ever represented by their numerical shadow: the
orbifold order ``l`` at infinity, the sector ``g`` hit there, and the degree
``k < 0`` of the pulled-back line bundle ``f^* L^{-1} = O(k)``.  Nothing here
builds a moduli space; the functions evaluate dimension formulas and the
inequalities that bound the mld by them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .orbifold import (
    FanoConeData,
    GroupElement,
    age_base,
    element_theta,
    fixed_dim_base,
)
from .mld import mld_eq2


class CurveDataError(ValueError):
    """Inconsistent twisted-map data."""


def chi_orb_line(b: int, ell: int) -> Fraction:
    """``chi(O(b))`` on ``P^1(1, l)``: ``1 + b/l - (b mod l)/l``."""
    if ell <= 0:
        raise ValueError("ell must be positive")
    return 1 + Fraction(b, ell) - Fraction(b % ell, ell)


def h0_monomial_oracle(b: int, ell: int) -> int:
    """Count monomials ``x^i y^j`` of weighted degree ``i + l*j = b``."""
    if b < 0:
        raise ValueError("b must be nonnegative")
    return sum(1 for j in range(b // ell + 1) for i in range(b + 1) if i + ell * j == b)


@dataclass(frozen=True)
class MarkedCurveSpec:
    genus: int
    minusK_degree: Fraction
    marks: tuple[tuple[Fraction, int], ...]
    dim_Y: int

    def __post_init__(self):
        marks = tuple((Fraction(a), int(f)) for a, f in self.marks)
        for age, fixed in marks:
            if age < 0 or not 0 <= fixed <= self.dim_Y:
                raise ValueError(f"bad mark (age={age}, fixed_dim={fixed})")
        object.__setattr__(self, "marks", marks)
        object.__setattr__(self, "minusK_degree", Fraction(self.minusK_degree))


def rr_lower_bound(spec: MarkedCurveSpec) -> Fraction:
    """Riemann-Roch lower bound for the dimension of maps with fixed marked images."""
    return (
        spec.minusK_degree
        + (1 - spec.genus) * spec.dim_Y
        - sum((age + fixed for age, fixed in spec.marks), Fraction(0))
    )


@dataclass(frozen=True)
class AdmissibleK:
    residue: int
    modulus: int
    k_max: int

    def values(self, count: int) -> list[int]:
        return [self.k_max - self.modulus * t for t in range(count)]


def admissible_k(m: int, p: int, ell: int) -> AdmissibleK:
    """Allowed pullback degrees for fiber weight ``p`` in ``Z_m`` and orbifold order ``l``.

    ``k = p*l/m (mod l)`` and ``k <= p*l/m - l``.
    """
    if not 0 <= p < m:
        raise CurveDataError(f"fiber weight p={p} must lie in [0, {m})")
    if (p * ell) % m:
        raise CurveDataError(f"m={m} does not divide p*l={p * ell}")
    base = p * ell // m
    return AdmissibleK(base % ell, ell, base - ell)


def admissible_k_for(g: GroupElement) -> AdmissibleK:
    theta1 = element_theta(g)[0]
    ell = g.order()
    return admissible_k(theta1.denominator, theta1.numerator, ell) if theta1 else admissible_k(1, 0, ell)


def minusK_degree(r, k: int, ell: int) -> Fraction:
    """``-K_Y . f_*C = r * (-k) / l``."""
    if k >= 0:
        raise CurveDataError("k must be negative")
    return Fraction(r) * (-k) / ell


@dataclass(frozen=True)
class TwistedMapDatum:
    ell: int
    target: GroupElement
    k: int
    r: Fraction
    dim_Y: int

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r))
        g = self.target
        expected = 1 if g.is_identity else g.order()
        if self.ell != expected:
            raise CurveDataError(f"ell={self.ell} but the sector element has order {expected}")
        if self.dim_Y != g.chart.n - 1:
            raise CurveDataError("dim_Y must be the chart dimension minus one")
        adm = admissible_k_for(g)
        if self.k % self.ell != adm.residue:
            raise CurveDataError(f"k={self.k} violates k = {adm.residue} (mod {self.ell})")
        if self.k > adm.k_max:
            raise CurveDataError(f"k={self.k} exceeds k_max={adm.k_max}")

    @property
    def k_max(self) -> int:
        return admissible_k_for(self.target).k_max


@dataclass(frozen=True)
class DInvariant:
    value: Fraction
    lower_bound: Fraction
    tight: bool


def d_invariant(datum: TwistedMapDatum) -> DInvariant:
    """``d = -K.f_*C + age(g^-1)`` and its lower bound ``r(1 - theta_1(g)) + age(g^-1)``."""
    g = datum.target
    age_inv = age_base(g.inverse())
    value = minusK_degree(datum.r, datum.k, datum.ell) + age_inv
    bound = datum.r * (1 - element_theta(g)[0]) + age_inv
    if value < bound:
        raise AssertionError(f"d={value} below its lower bound {bound}")
    return DInvariant(value, bound, value == bound)


@dataclass(frozen=True)
class CurveBoundCheck:
    mld: Fraction
    d: Fraction
    slack: Fraction
    ok: bool


def mld_upper_from_curve(cone: FanoConeData, datum: TwistedMapDatum, max_order=None) -> CurveBoundCheck:
    """Check ``mld(o, X) <= d_{g^-1}(f)`` for a curve into one of the cone's charts."""
    if datum.target.chart not in cone.charts:
        raise CurveDataError(f"chart {datum.target.chart.label!r} is not a chart of {cone.name!r}")
    if datum.r != cone.r or datum.dim_Y != cone.dim - 1:
        raise CurveDataError("datum does not match the cone's r / dimension")
    mld = mld_eq2(cone, max_order).value
    d = d_invariant(datum).value
    return CurveBoundCheck(mld, d, d - mld, mld <= d)


def vdim_multi(A_degree, dim_Y: int, ages: Sequence) -> Fraction:
    """Complex virtual dimension of genus-0 orbifold maps with ``len(ages)`` marks."""
    ages = [Fraction(a) for a in ages]
    return Fraction(A_degree) + dim_Y + len(ages) - 3 - sum(ages, Fraction(0))


def vdim_pointed(A_degree, dim_Y: int, g: GroupElement) -> Fraction:
    """Virtual dimension of ``P^1(1, l)`` curves with the orbifold point at a fixed point of ``Y_g``."""
    return vdim_pointed_numeric(A_degree, dim_Y, age_base(g), fixed_dim_base(g))


def vdim_pointed_numeric(A_degree, dim_Y: int, age, fixed_dim: int) -> Fraction:
    A_degree = Fraction(A_degree)
    if A_degree <= 0:
        raise ValueError("curve degree must be positive")
    return A_degree + dim_Y - 2 - Fraction(age) - fixed_dim


def splitting_enumerate(ell: int, a: Sequence[int], d: int | None = None) -> list[tuple[int, ...]]:
    """All ``b`` with ``b_i >= 1``, ``b_i = a_i (mod l)`` and ``sum chi(O(b_i)) - d = n + 1``.

    ``n = len(a)`` and ``d`` counts the ``a_i`` equal to ``l``.  Every chi
    term is at least 1, so ``b_i <= a_i + l*(n+1)`` bounds the search.
    """
    a = tuple(int(x) for x in a)
    n = len(a)
    if any(not 1 <= x <= ell for x in a) or list(a) != sorted(a):
        raise CurveDataError(f"weights must be sorted and lie in [1, {ell}]")
    fixed = sum(1 for x in a if x == ell)
    if d is None:
        d = fixed
    elif d != fixed:
        raise CurveDataError(f"d={d} but {fixed} weights equal l={ell}")
    target = n + 1 + d
    ranges = [range(x, x + ell * (n + 1) + 1, ell) for x in a]
    # chi grows along each residue class, so a branch stops once the
    # partial sum plus the smallest possible remainder overshoots
    floor = [chi_orb_line(x, ell) for x in a]
    rest = [sum(floor[i:], Fraction(0)) for i in range(n + 1)]
    found: list[tuple[int, ...]] = []

    def extend(i: int, prefix: tuple[int, ...], total: Fraction) -> None:
        if i == n:
            if total == target:
                found.append(prefix)
            return
        for b in ranges[i]:
            c = chi_orb_line(b, ell)
            if total + c + rest[i + 1] > target:
                break
            extend(i + 1, prefix + (b,), total + c)

    extend(0, (), Fraction(0))
    return found


def splitting_bruteforce(ell: int, a: Sequence[int], d: int | None = None) -> list[tuple[int, ...]]:
    """Unpruned enumeration of the same box; reference for :func:`splitting_enumerate`."""
    a = tuple(int(x) for x in a)
    n = len(a)
    fixed = sum(1 for x in a if x == ell)
    target = n + 1 + (fixed if d is None else d)
    ranges = [range(x, x + ell * (n + 1) + 1, ell) for x in a]
    return [b for b in itertools.product(*ranges) if sum(chi_orb_line(x, ell) for x in b) == target]


def splitting_uniqueness_check(solutions, ell: int, a: Sequence[int]) -> bool:
    """Every solution raises exactly one ``a_i`` by ``l`` and keeps the rest."""
    a = tuple(a)
    for b in solutions:
        diff = [x - y for x, y in zip(b, a)]
        if sorted(diff) != [0] * (len(a) - 1) + [ell]:
            return False
    return True
