"""Catalog scans and the identity cross-check driver."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .catalog import WeightedProjectiveSpec, quotient_representatives, wps_cone, wps_family
from .mld import is_smooth, mld_eq1, mld_eq2
from .orbifold import FanoConeData, format_rational, require_valid
from .sft import mld_from_sft
from .toric import QuotientLattice, cone_from_cyclic_quotient, mld_oracle_cone, mld_oracle_quotient


@dataclass(frozen=True)
class ScanConfig:
    n_values: tuple[int, ...] = ()
    m_max: int = 0
    wps_max_weight: int = 0
    wps_sizes: tuple[int, ...] = (2, 3, 4, 5)
    max_order: int | None = None


@dataclass(frozen=True)
class ScanRow:
    name: str
    n: int
    r: str
    mld: str
    ok: bool
    equality: bool
    smooth: bool
    witness_chart: str
    witness_element: str

    def as_record(self) -> dict:
        return asdict(self)


@dataclass
class ScanReport:
    rows: list[ScanRow] = field(default_factory=list)

    @property
    def violations(self) -> list[ScanRow]:
        return [row for row in self.rows if not row.ok]

    @property
    def counterexamples(self) -> list[ScanRow]:
        return [row for row in self.rows if row.equality and not row.smooth]

    def summary(self) -> dict:
        rows = self.rows
        lowest = min(rows, key=lambda row: Fraction(row.mld) / row.n, default=None)
        return {
            "cones": len(rows),
            "bound_ok": sum(row.ok for row in rows),
            "violations": len(self.violations),
            "equality": sum(row.equality for row in rows),
            "equality_smooth": sum(row.equality and row.smooth for row in rows),
            "counterexamples": len(self.counterexamples),
            "lowest_mld_ratio": None if lowest is None else f"{lowest.name} mld={lowest.mld} n={lowest.n}",
        }


def scan_items(config: ScanConfig) -> list[tuple]:
    """Work items in canonical order: quotients by (n, m, a), then weighted projective cones."""
    items: list[tuple] = []
    for n in config.n_values:
        items.extend(("quotient", m, a) for m, a in quotient_representatives(n, config.m_max))
    if config.wps_max_weight > 0:
        items.extend(("wps", spec.weights) for spec in wps_family(config.wps_max_weight, config.wps_sizes))
    return items


def build_cone(item: tuple) -> FanoConeData:
    if item[0] == "quotient":
        return cone_from_cyclic_quotient(item[1], item[2])
    if item[0] == "wps":
        return wps_cone(WeightedProjectiveSpec(item[1]))
    raise ValueError(f"unknown scan item {item!r}")


def scan_row(cone: FanoConeData, max_order=None) -> ScanRow:
    result = mld_eq2(cone, max_order)
    equality = result.value == cone.dim
    return ScanRow(
        cone.name,
        cone.dim,
        format_rational(cone.r),
        format_rational(result.value),
        result.value <= cone.dim,
        equality,
        is_smooth(cone),
        result.witness_chart,
        result.witness_element,
    )


def _work(args) -> ScanRow:
    item, max_order = args
    return scan_row(build_cone(item), max_order)


def run_scan(config: ScanConfig, jobs: int = 1) -> ScanReport:
    """Rows come back in item order regardless of ``jobs``."""
    work = [(item, config.max_order) for item in scan_items(config)]
    if jobs <= 1 or len(work) < 2:
        return ScanReport([_work(w) for w in work])
    chunk = max(1, len(work) // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return ScanReport(list(pool.map(_work, work, chunksize=chunk)))


@dataclass(frozen=True)
class IdentityResult:
    name: str
    status: str  # PASS, FAIL or SKIP
    detail: str = ""


def crosscheck(cone: FanoConeData, max_order=None) -> list[IdentityResult]:
    """mld_eq2 against mld_eq1, the chart-level lattice oracle, the SFT
    bridge, and the ambient lattice oracle when the cone carries one.

    Validation failures raise ``InvalidConeError`` before any identity runs.
    """
    require_valid(cone, max_order)
    canonical = mld_eq2(cone, max_order, check=False).value
    others = [
        ("mld_eq1 = mld_eq2", lambda: mld_eq1(cone, max_order, check=False).value),
        ("chart oracle = mld_eq2", lambda: mld_oracle_cone(cone, max_order)),
        ("sft bridge = mld_eq2", lambda: mld_from_sft(cone, max_order)),
    ]
    out = []
    for name, compute in others:
        out.append(_compare(name, canonical, compute()))
    name = "lattice oracle = mld_eq2"
    if isinstance(cone.ambient, QuotientLattice):
        out.append(_compare(name, canonical, mld_oracle_quotient(cone.ambient, max_order)))
    else:
        out.append(IdentityResult(name, "SKIP", "no ambient lattice recorded"))
    return out


def _compare(name: str, expected: Fraction, got: Fraction) -> IdentityResult:
    if got == expected:
        return IdentityResult(name, "PASS", format_rational(got))
    return IdentityResult(name, "FAIL", f"mld_eq2={format_rational(expected)} other={format_rational(got)}")


def crosscheck_many(cones: Iterable[FanoConeData], max_order=None) -> tuple[int, FanoConeData | None, list[IdentityResult]]:
    """Run ``crosscheck`` over a stream; stops at the first failing cone."""
    count = 0
    for cone in cones:
        results = crosscheck(cone, max_order)
        count += 1
        if any(r.status == "FAIL" for r in results):
            return count, cone, results
    return count, None, []


def parse_int_list(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x.strip())


def rows_text(rows: Sequence[ScanRow]) -> str:
    lines = []
    for row in rows:
        flags = ("ok" if row.ok else "VIOLATION") + (" equality" if row.equality else "") + (
            " smooth" if row.smooth else ""
        )
        witness = f"{row.witness_chart}[{row.witness_element}]" if row.witness_chart else "r-term"
        lines.append(f"{row.name}\tn={row.n}\tr={row.r}\tmld={row.mld}\t{flags}\twitness={witness}")
    return "\n".join(lines)
