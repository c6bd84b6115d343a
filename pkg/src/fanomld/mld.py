"""Minimal log discrepancy of a Fano cone from its quotient charts.

Two equivalent minimisations over group elements:

* ``mld_eq1``: ``min(r, r*theta_1(g) + age(g))`` over ``g != 1``;
* ``mld_eq2``: ``min(r*(1 - theta_1(g)) + age(g^-1))`` over all ``g``,
  the identity contributing ``r``.

``mld_eq2`` is the canonical route; the other is kept as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .orbifold import (
    FanoConeData,
    GroupElement,
    QuotientChart,
    age_base,
    element_theta,
    require_valid,
)

R_TERM = "r-term"


@dataclass(frozen=True)
class Term:
    chart: str
    element: tuple[int, ...]
    value: Fraction


@dataclass(frozen=True)
class MldResult:
    value: Fraction
    witness: str | tuple[str, tuple[int, ...]]
    terms: tuple[Term, ...]

    @property
    def witness_chart(self) -> str:
        return "" if self.witness == R_TERM else self.witness[0]

    @property
    def witness_element(self) -> str:
        return "" if self.witness == R_TERM else ",".join(map(str, self.witness[1]))


def _chart_terms(chart: QuotientChart, r: Fraction, inverse_form: bool, max_order):
    """Yield ``(exponents, value)`` for every non-identity element.

    Values are formed over the common denominator ``q * D`` so each element
    costs one Fraction construction.
    """
    D = chart.exponent
    p, q = r.numerator, r.denominator
    for g in chart.elements(max_order):
        if g.is_identity:
            continue
        t = chart.theta_numerators(g.exponents)
        if inverse_form:
            # r*(1 - theta_1(g)) + age(g^-1), base thetas of g^-1 are (D - t) mod D
            base = sum((D - x) % D for x in t[1:])
            num = p * (D - t[0]) + q * base
        else:
            num = p * t[0] + q * sum(t[1:])
        yield g.exponents, Fraction(num, q * D)


def _minimise(data: FanoConeData, inverse_form: bool, max_order, check: bool) -> MldResult:
    if check:
        require_valid(data, max_order)
    best, witness = data.r, R_TERM
    terms = []
    for chart in data.charts:
        if inverse_form:
            terms.append(Term(chart.label, chart.identity().exponents, data.r))
        for exps, value in _chart_terms(chart, data.r, inverse_form, max_order):
            terms.append(Term(chart.label, exps, value))
            if value < best:
                best, witness = value, (chart.label, exps)
    return MldResult(best, witness, tuple(terms))


def mld_eq1(data: FanoConeData, max_order: int | None = None, check: bool = True) -> MldResult:
    return _minimise(data, False, max_order, check)


def mld_eq2(data: FanoConeData, max_order: int | None = None, check: bool = True) -> MldResult:
    return _minimise(data, True, max_order, check)


def eq2_term(g: GroupElement, r) -> Fraction:
    """The mld_eq2 minimand ``r*(1 - theta_1(g)) + age(g^-1)`` (``r`` at ``g = 1``)."""
    r = Fraction(r)
    if g.is_identity:
        return r
    return r * (1 - element_theta(g)[0]) + age_base(g.inverse())


@dataclass(frozen=True)
class BoundCheck:
    mld: Fraction
    bound: int
    ok: bool


def theorem_bound_check(data: FanoConeData, max_order: int | None = None) -> BoundCheck:
    value = mld_eq2(data, max_order).value
    return BoundCheck(value, data.dim, value <= data.dim)


@dataclass(frozen=True)
class EqualityReport:
    mld: Fraction
    dim: int
    equality: bool
    smooth: bool
    counterexample: bool

    @property
    def message(self) -> str:
        if not self.equality:
            return f"mld {self.mld} < {self.dim}"
        if self.smooth:
            return f"mld = {self.dim} at a smooth point"
        return f"mld = {self.dim} with non-smooth lattice data (counterexample record)"


def is_smooth(data: FanoConeData) -> bool:
    """Smoothness of the total space.

    Uses the ambient lattice when the cone records one (unimodular means
    smooth); otherwise falls back to all charts being trivial.
    """
    ambient = data.ambient
    if ambient is not None:
        return ambient.is_unimodular
    return all(c.is_trivial for c in data.charts)


def equality_diagnostic(data: FanoConeData, max_order: int | None = None) -> EqualityReport:
    value = mld_eq2(data, max_order).value
    equality = value == data.dim
    smooth = is_smooth(data)
    return EqualityReport(value, data.dim, equality, smooth, equality and not smooth)
