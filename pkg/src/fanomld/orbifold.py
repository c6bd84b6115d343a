"""Quotient charts, group elements, ages and cone validation.

A chart models ``C (fiber) x C^{n-1} (base) / G`` with ``G`` a finite abelian
group acting diagonally.  ``G`` is given as a list of cyclic factors
``(order, weights)``; the element with exponents ``(k_1, ..., k_s)`` rotates
coordinate ``i`` by ``exp(2 pi i theta_i)`` with

    theta_i = frac(sum_j k_j * w_{j,i} / d_j).

Coordinate 0 is always the fiber direction.  All values are exact
:class:`fractions.Fraction` objects.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm, prod
from typing import Iterator, Sequence

DEFAULT_MAX_ORDER = 10**6


class FamilyTooLarge(RuntimeError):
    """An enumeration would exceed the configured order bound."""


class InvalidConeError(ValueError):
    """Raised when an operation needs a cone that passes :func:`validate_cone`."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__(report.summary())


def max_order_default() -> int:
    value = os.environ.get("MLD_MAX_ORDER")
    return int(value) if value else DEFAULT_MAX_ORDER


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; integers and fractions pass through."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r}")
    s = text.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        if int(den) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def format_rational(x: Fraction | int) -> str:
    """``"p/q"`` in lowest terms, or ``"p"`` for integers."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class QuotientChart:
    n: int
    factors: tuple[tuple[int, tuple[int, ...]], ...]
    label: str = ""

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("chart dimension must be positive")
        normalized = []
        for order, weights in self.factors:
            order = int(order)
            weights = tuple(int(w) for w in weights)
            if order < 1:
                raise ValueError(f"chart {self.label!r}: factor order must be >= 1")
            if len(weights) != self.n:
                raise ValueError(
                    f"chart {self.label!r}: expected {self.n} weights, got {len(weights)}"
                )
            normalized.append((order, tuple(w % order for w in weights)))
        object.__setattr__(self, "factors", tuple(normalized))

    @classmethod
    def cyclic(cls, m: int, weights: Sequence[int], label: str = "") -> "QuotientChart":
        """The chart ``(1/m)(w_1; w_2, ..., w_n)``."""
        return cls(len(weights), ((m, tuple(weights)),), label)

    @classmethod
    def trivial(cls, n: int, label: str = "") -> "QuotientChart":
        return cls(n, (), label)

    @property
    def order(self) -> int:
        return prod(d for d, _ in self.factors)

    @property
    def exponent(self) -> int:
        """Common denominator of every theta value in the chart."""
        return lcm(*(d for d, _ in self.factors)) if self.factors else 1

    @property
    def is_trivial(self) -> bool:
        return all(d == 1 for d, _ in self.factors)

    @cached_property
    def _scaled_weights(self) -> tuple[tuple[int, tuple[int, ...]], ...]:
        D = self.exponent
        return tuple((d, tuple(w * (D // d) for w in ws)) for d, ws in self.factors)

    def theta_numerators(self, exponents: Sequence[int]) -> tuple[int, ...]:
        """Integer numerators of theta over :attr:`exponent`."""
        D = self.exponent
        out = [0] * self.n
        for k, (_, ws) in zip(exponents, self._scaled_weights):
            if k:
                for i, w in enumerate(ws):
                    out[i] += k * w
        return tuple(t % D for t in out)

    def elements(self, max_order: int | None = None) -> Iterator["GroupElement"]:
        """All group elements, identity first, lexicographic in exponents."""
        bound = max_order_default() if max_order is None else max_order
        if self.order > bound:
            raise FamilyTooLarge(
                f"family too large: chart {self.label!r} has order {self.order} > {bound}"
            )
        for exps in itertools.product(*(range(d) for d, _ in self.factors)):
            yield GroupElement(self, exps)

    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * len(self.factors))

    def element(self, *exponents: int) -> "GroupElement":
        return GroupElement(self, tuple(exponents))

    def signature(self) -> tuple[tuple[Fraction, ...], ...]:
        """Sorted theta vectors of all elements.

        Two charts with equal signatures are the same subgroup of
        ``(Q/Z)^n``, whatever their factor presentation.
        """
        return tuple(sorted({element_theta(g) for g in self.elements()}))


@dataclass(frozen=True)
class GroupElement:
    chart: QuotientChart
    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(int(k) for k in self.exponents)
        if len(exps) != len(self.chart.factors):
            raise ValueError("exponent count does not match the chart's factors")
        exps = tuple(k % d for k, (d, _) in zip(exps, self.chart.factors))
        object.__setattr__(self, "exponents", exps)

    @property
    def is_identity(self) -> bool:
        return not any(self.exponents)

    def inverse(self) -> "GroupElement":
        return GroupElement(
            self.chart, tuple(-k % d for k, (d, _) in zip(self.exponents, self.chart.factors))
        )

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if other.chart != self.chart:
            raise ValueError("elements live in different charts")
        return GroupElement(
            self.chart, tuple(a + b for a, b in zip(self.exponents, other.exponents))
        )

    def order(self) -> int:
        """Smallest ``l >= 1`` with ``g^l = 1`` in the abstract group."""
        return lcm(*(d // gcd(k, d) for k, (d, _) in zip(self.exponents, self.chart.factors)))

    def __str__(self) -> str:
        return ",".join(map(str, self.exponents)) or "()"


def element_theta(g: GroupElement) -> tuple[Fraction, ...]:
    D = g.chart.exponent
    return tuple(Fraction(t, D) for t in g.chart.theta_numerators(g.exponents))


def age_base(g: GroupElement) -> Fraction:
    """Sum of the base thetas (coordinates 2..n)."""
    D = g.chart.exponent
    return Fraction(sum(g.chart.theta_numerators(g.exponents)[1:]), D)


def fixed_dim_base(g: GroupElement) -> int:
    return sum(1 for t in g.chart.theta_numerators(g.exponents)[1:] if t == 0)


def age_duality_check(g: GroupElement) -> bool:
    """``(n-1) - (age(g) + dim Y_g) == age(g^-1)``."""
    n = g.chart.n
    return (n - 1) - (age_base(g) + fixed_dim_base(g)) == age_base(g.inverse())


@dataclass(frozen=True)
class InertiaRecord:
    element: GroupElement
    theta: tuple[Fraction, ...]
    age_base: Fraction
    fixed_dim_base: int

    @property
    def theta_fiber(self) -> Fraction:
        return self.theta[0]


def inertia_table(chart: QuotientChart, max_order: int | None = None) -> list[InertiaRecord]:
    table = []
    for g in chart.elements(max_order):
        theta = element_theta(g)
        table.append(
            InertiaRecord(
                element=g,
                theta=theta,
                age_base=sum(theta[1:], Fraction(0)),
                fixed_dim_base=sum(1 for t in theta[1:] if t == 0),
            )
        )
    return table


@dataclass(frozen=True)
class FanoConeData:
    """Fano index plus the quotient charts covering the zero section.

    ``ambient`` optionally records the lattice the cone was built from
    (a :class:`fanomld.toric.QuotientLattice`); it is only used by
    diagnostics that need the total space.  ``catalog`` marks data built by
    the catalog constructors, on which the mld <= n bound is asserted rather
    than just reported.
    """

    r: Fraction
    dim: int
    charts: tuple[QuotientChart, ...]
    name: str = ""
    ambient: object | None = field(default=None, compare=False)
    catalog: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "r", parse_rational(self.r))
        object.__setattr__(self, "charts", tuple(self.charts))
        object.__setattr__(self, "dim", int(self.dim))

    def chart(self, label: str) -> QuotientChart:
        for c in self.charts:
            if c.label == label:
                return c
        raise KeyError(label)


@dataclass(frozen=True)
class Violation:
    rule: str
    chart: str | None
    element: tuple[int, ...] | None
    detail: str

    def __str__(self) -> str:
        where = f" chart={self.chart}" if self.chart is not None else ""
        elt = f" element=({','.join(map(str, self.element))})" if self.element is not None else ""
        return f"{self.rule}:{where}{elt} {self.detail}".rstrip()


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def status(self) -> str:
        return "PASS" if self.ok else "FAIL"

    def summary(self) -> str:
        if self.ok:
            return "PASS"
        return "FAIL\n" + "\n".join(f"  {v}" for v in self.violations)


def validate_cone(data: FanoConeData, max_order: int | None = None) -> ValidationReport:
    """Check positivity of r, effectiveness and isolatedness of every chart."""
    found: list[Violation] = []
    if data.r <= 0:
        found.append(Violation("positivity", None, None, f"r={format_rational(data.r)} must be > 0"))
    if data.dim < 1:
        found.append(Violation("dimension", None, None, f"dim={data.dim} must be positive"))
    for chart in data.charts:
        if chart.n != data.dim:
            found.append(
                Violation("dimension", chart.label, None, f"chart has n={chart.n}, cone has {data.dim}")
            )
            continue
        D = chart.exponent
        for g in chart.elements(max_order):
            if g.is_identity:
                continue
            t = chart.theta_numerators(g.exponents)
            if not any(t):
                found.append(Violation("effectiveness", chart.label, g.exponents, "acts trivially"))
            elif t[0] == 0:
                found.append(
                    Violation(
                        "isolatedness",
                        chart.label,
                        g.exponents,
                        f"fixes the fiber line (theta_1=0, base thetas {[str(Fraction(x, D)) for x in t[1:]]})",
                    )
                )
    return ValidationReport(tuple(found))


def require_valid(data: FanoConeData, max_order: int | None = None) -> None:
    report = validate_cone(data, max_order)
    if not report.ok:
        raise InvalidConeError(report)
