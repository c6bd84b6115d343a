import random
from fractions import Fraction
from math import gcd

from hypothesis import strategies as st

from fanomld.orbifold import FanoConeData, QuotientChart, validate_cone


def random_valid_chart(rng: random.Random, n: int, max_order: int = 100, label: str = "") -> QuotientChart:
    """Cyclic chart with a unit fiber weight, or a two-factor chart filtered for validity."""
    while True:
        if rng.random() < 0.7:
            m = rng.randint(1, max_order)
            units = [u for u in range(1, m + 1) if gcd(u, m) == 1]
            weights = [rng.choice(units)] + [rng.randrange(m) for _ in range(n - 1)]
            return QuotientChart.cyclic(m, weights, label)
        d1 = rng.randint(2, 10)
        d2 = d1 * rng.randint(1, max(1, max_order // (d1 * d1)))
        factors = tuple((d, tuple(rng.randrange(d) for _ in range(n))) for d in (d1, d2))
        chart = QuotientChart(n, factors, label)
        if chart.order <= max_order and validate_cone(FanoConeData(1, n, (chart,))).ok:
            return chart


def random_valid_cone(rng: random.Random, max_order: int = 100) -> FanoConeData:
    n = rng.randint(2, 4)
    charts = tuple(random_valid_chart(rng, n, max_order, f"c{i}") for i in range(rng.randint(1, 3)))
    r = Fraction(rng.randint(1, 60), rng.randint(1, 12))
    return FanoConeData(r, n, charts, "random")


@st.composite
def valid_cones(draw, max_order: int = 60):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_valid_cone(random.Random(seed), max_order)


@st.composite
def cyclic_quotients(draw, n_max: int = 4, m_max: int = 30):
    n = draw(st.integers(2, n_max))
    m = draw(st.integers(2, m_max))
    units = [u for u in range(1, m) if gcd(u, m) == 1]
    a = tuple(draw(st.sampled_from(units)) for _ in range(n))
    return m, a
