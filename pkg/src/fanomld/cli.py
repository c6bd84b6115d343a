"""Command-line front end.

Exit codes: 0 ok, 1 parse error, 2 validation failure, 3 enumeration bound
exceeded, 4 identity failure or theorem-bound violation, 5 fixture mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict
from pathlib import Path

from . import curves
from .catalog import WeightedProjectiveSpec, worked_example_fixtures, wps_cone
from .mld import mld_eq1, mld_eq2
from .orbifold import (
    FamilyTooLarge,
    FanoConeData,
    InvalidConeError,
    format_rational,
    parse_rational,
    validate_cone,
)
from .scan import ScanConfig, crosscheck, parse_int_list, rows_text, run_scan, scan_row
from .schema import (
    SchemaError,
    cone_to_dict,
    dump_cone,
    load_cone,
    mld_result_to_dict,
    parse_quotient,
    rows_to_csv,
)
from .sft import orbit_table
from .toric import cone_from_cyclic_quotient

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_BOUND, EXIT_IDENTITY, EXIT_FIXTURE = range(6)


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _rational(text: str):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _int_list(text: str):
    try:
        return parse_int_list(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from exc


def _cone_from_args(args) -> FanoConeData:
    sources = [s for s in (args.quotient, args.wps, args.file) if s is not None]
    if len(sources) != 1:
        raise CliError(EXIT_PARSE, "give exactly one of --quotient, --wps, --file")
    try:
        if args.file is not None:
            return load_cone(args.file)
        if args.quotient is not None:
            m, a = parse_quotient(args.quotient)
        else:
            try:
                spec = WeightedProjectiveSpec.parse(args.wps)
            except ValueError as exc:
                raise SchemaError("--wps", str(exc)) from exc
    except SchemaError as exc:
        raise CliError(EXIT_PARSE, f"parse error: {exc}") from exc
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {args.file}: {exc.strerror}") from exc
    try:
        return cone_from_cyclic_quotient(m, a) if args.quotient is not None else wps_cone(spec)
    except (ValueError, ArithmeticError) as exc:
        raise CliError(EXIT_INVALID, f"invalid input: {exc}") from exc


def _require_valid(cone: FanoConeData, max_order) -> None:
    report = validate_cone(cone, max_order)
    if not report.ok:
        raise CliError(EXIT_INVALID, f"validation: FAIL\n{report.summary()}")


def _emit(text: str, output: str | None = None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_mld(args) -> int:
    cone = _cone_from_args(args)
    _require_valid(cone, args.max_order)
    eq2 = mld_eq2(cone, args.max_order, check=False)
    eq1 = mld_eq1(cone, args.max_order, check=False)
    if args.format == "json":
        _emit(json.dumps(mld_result_to_dict(cone.name, eq2, eq1), indent=2) + "\n")
    elif args.format == "csv":
        _emit(rows_to_csv([scan_row(cone, args.max_order).as_record()]))
    else:
        witness = "r-term" if not eq2.witness_chart else f"{eq2.witness_chart} [{eq2.witness_element}]"
        _emit(
            f"cone: {cone.name}\n"
            f"mld: {format_rational(eq2.value)}\n"
            f"mld (mld_eq1): {format_rational(eq1.value)}\n"
            f"witness: {witness}\n"
            f"bound mld <= {cone.dim}: {'ok' if eq2.value <= cone.dim else 'violated'}\n"
            f"validation: PASS\n"
        )
    return EXIT_OK


def cmd_scan(args) -> int:
    config = ScanConfig(
        n_values=args.n,
        m_max=args.m_max,
        wps_max_weight=args.wps_max,
        wps_sizes=args.wps_sizes,
        max_order=args.max_order,
    )
    report = run_scan(config, jobs=args.jobs)
    summary = report.summary()
    if args.format == "csv":
        _emit(rows_to_csv(row.as_record() for row in report.rows), args.output)
    elif args.format == "json":
        body = {"rows": [row.as_record() for row in report.rows], "summary": summary}
        _emit(json.dumps(body, indent=2) + "\n", args.output)
    else:
        lines = rows_text(report.rows)
        tail = "\n".join(f"{k}: {v}" for k, v in summary.items())
        _emit((lines + "\n" if lines else "") + tail + "\n", args.output)
    if report.violations:
        print(f"theorem bound violated by {len(report.violations)} cone(s)", file=sys.stderr)
        return EXIT_IDENTITY
    return EXIT_OK


def cmd_crosscheck(args) -> int:
    cone = _cone_from_args(args)
    _require_valid(cone, args.max_order)
    results = crosscheck(cone, args.max_order)
    counted = [r for r in results if r.status != "SKIP"]
    passed = sum(r.status == "PASS" for r in counted)
    if args.format == "json":
        body = {"name": cone.name, "identities": [asdict(r) for r in results], "passed": passed, "total": len(counted)}
        _emit(json.dumps(body, indent=2) + "\n")
    else:
        out = [f"{r.status} {r.name}: {r.detail}" for r in results]
        out.append(f"{passed}/{len(counted)} PASS")
        _emit("\n".join(out) + "\n")
    return EXIT_OK if passed == len(counted) else EXIT_IDENTITY


def cmd_sft(args) -> int:
    if args.conefile is not None:
        if args.file is not None:
            raise CliError(EXIT_PARSE, "give the cone file once")
        args.file = args.conefile
    cone = _cone_from_args(args)
    _require_valid(cone, args.max_order)
    rows = orbit_table(cone, args.max_order)
    mld = min(row.half_plus_one for row in rows)
    records = [
        {
            "chart": row.chart,
            "element": ",".join(map(str, row.element)),
            "period": format_rational(row.period),
            "lsft": format_rational(row.lsft),
            "half_plus_one": format_rational(row.half_plus_one),
        }
        for row in rows
    ]
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(records[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(records)
        _emit(buf.getvalue())
    elif args.format == "json":
        _emit(json.dumps({"name": cone.name, "orbits": records, "mld": format_rational(mld)}, indent=2) + "\n")
    else:
        out = [f"{'sector':<24}{'period':>10}{'lSFT':>10}{'lSFT/2+1':>10}"]
        for rec in records:
            sector = rec["chart"] + (f"[{rec['element']}]" if rec["element"] else "")
            out.append(f"{sector:<24}{rec['period']:>10}{rec['lsft']:>10}{rec['half_plus_one']:>10}")
        out.append(f"mld: {format_rational(mld)}")
        _emit("\n".join(out) + "\n")
    return EXIT_OK


def cmd_examples(args) -> int:
    failures = 0
    out = []
    for fx in worked_example_fixtures():
        d = curves.d_invariant(fx.datum).value
        check = curves.mld_upper_from_curve(fx.cone, fx.datum)
        dim = fx.dim_plus_one
        relation = "=" if d == dim else (">" if d > dim else "<")
        ok = d == fx.expected_d and relation == fx.relation and check.ok
        failures += not ok
        out.append(
            f"{'ok' if ok else 'MISMATCH'} {fx.name}: d={format_rational(d)} "
            f"(expected {format_rational(fx.expected_d)}) {relation} dim+1={dim}; mld={format_rational(check.mld)}"
        )
    total = len(out)
    out.append(f"{total - failures}/{total} fixtures reproduced")
    _emit("\n".join(out) + "\n")
    return EXIT_FIXTURE if failures else EXIT_OK


def cmd_curves(args) -> int:
    what = args.what
    if what == "chi":
        value = curves.chi_orb_line(args.b, args.ell)
    elif what == "h0":
        value = curves.h0_monomial_oracle(args.b, args.ell)
    elif what == "k":
        adm = curves.admissible_k(args.m, args.p, args.ell)
        _emit(f"k = {adm.residue} (mod {adm.modulus})\nk_max: {adm.k_max}\n")
        return EXIT_OK
    elif what == "degree":
        value = curves.minusK_degree(args.r, args.k, args.ell)
    elif what == "d":
        value = curves.minusK_degree(args.r, args.k, args.ell) + args.age_inv
    elif what == "rr":
        spec = curves.MarkedCurveSpec(args.genus, args.deg, tuple(args.mark), args.dim_y)
        value = curves.rr_lower_bound(spec)
    elif what == "vdim":
        value = curves.vdim_multi(args.deg, args.dim_y, args.ages)
    elif what == "pointed":
        value = curves.vdim_pointed_numeric(args.deg, args.dim_y, args.age, args.fixed_dim)
    else:
        solutions = curves.splitting_enumerate(args.ell, args.a, args.d)
        unique = curves.splitting_uniqueness_check(solutions, args.ell, args.a)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([f"b{i}" for i in range(len(args.a))])
        writer.writerows(solutions)
        _emit(buf.getvalue() + f"# unique splitting: {str(unique).lower()}\n")
        return EXIT_OK
    _emit(format_rational(value) + "\n")
    return EXIT_OK


def cmd_catalog(args) -> int:
    try:
        if args.what == "wps":
            cone = wps_cone(WeightedProjectiveSpec.parse(args.spec))
            _emit(dump_cone(cone) + "\n")
        elif args.what == "quotient":
            m, a = parse_quotient(args.spec)
            _emit(dump_cone(cone_from_cyclic_quotient(m, a)) + "\n")
        else:
            body = [
                {
                    "name": fx.name,
                    "cone": cone_to_dict(fx.cone),
                    "sector": {"chart": fx.datum.target.chart.label, "element": list(fx.datum.target.exponents)},
                    "ell": fx.datum.ell,
                    "k": fx.datum.k,
                    "expected_d": format_rational(fx.expected_d),
                    "relation": fx.relation,
                }
                for fx in worked_example_fixtures()
            ]
            _emit(json.dumps(body, indent=2) + "\n")
    except SchemaError as exc:
        raise CliError(EXIT_PARSE, f"parse error: {exc}") from exc
    except ValueError as exc:
        raise CliError(EXIT_INVALID, f"invalid input: {exc}") from exc
    return EXIT_OK


def _mark(text: str):
    try:
        age, fixed = text.split(":")
        return parse_rational(age), int(fixed)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected AGE:FIXED_DIM, got {text!r}") from exc


def _rational_list(text: str):
    return [_rational(x) for x in text.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-order", type=int, default=None, help="enumeration bound (default $MLD_MAX_ORDER or 10^6)")
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--quotient", metavar="m:a1,...", help="cyclic quotient C^n/(1/m)(a)")
    source.add_argument("--wps", metavar="a0,a1,...", help="affine cone over a weighted projective space")
    source.add_argument("--file", metavar="PATH", help="cone file in the JSON schema")

    parser = argparse.ArgumentParser(prog="fanomld", description="Exact mld computations for Fano cone singularities.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mld", parents=[common, source], help="mld of one cone")
    p.set_defaults(func=cmd_mld)

    p = sub.add_parser("crosscheck", parents=[common, source], help="check the mld identities on one cone")
    p.set_defaults(func=cmd_crosscheck)

    p = sub.add_parser("sft", parents=[common, source], help="Reeb orbit table and SFT-side mld")
    p.add_argument("conefile", nargs="?")
    p.set_defaults(func=cmd_sft)

    p = sub.add_parser("scan", parents=[common], help="scan the catalog families")
    p.add_argument("--n", type=_int_list, default=(), help="quotient dimensions, e.g. 2,3,4")
    p.add_argument("--m-max", type=int, default=10)
    p.add_argument("--wps-max", type=int, default=0, help="largest weight (0 skips weighted projective cones)")
    p.add_argument("--wps-sizes", type=_int_list, default=(2, 3, 4, 5))
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output", metavar="PATH")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("examples", parents=[common], help="reproduce the worked example values")
    p.set_defaults(func=cmd_examples)

    p = sub.add_parser("curves", parents=[common], help="orbifold curve numerics")
    csub = p.add_subparsers(dest="what", required=True)
    c = csub.add_parser("chi")
    c.add_argument("--b", type=int, required=True)
    c.add_argument("--ell", type=int, required=True)
    c = csub.add_parser("h0")
    c.add_argument("--b", type=int, required=True)
    c.add_argument("--ell", type=int, required=True)
    c = csub.add_parser("k")
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--ell", type=int, required=True)
    c = csub.add_parser("degree")
    c.add_argument("--r", type=_rational, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--ell", type=int, required=True)
    c = csub.add_parser("d")
    c.add_argument("--r", type=_rational, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--ell", type=int, required=True)
    c.add_argument("--age-inv", type=_rational, required=True)
    c = csub.add_parser("rr")
    c.add_argument("--genus", type=int, default=0)
    c.add_argument("--deg", type=_rational, required=True)
    c.add_argument("--dim-y", type=int, required=True)
    c.add_argument("--mark", type=_mark, action="append", default=[], metavar="AGE:FIXED_DIM")
    c = csub.add_parser("vdim")
    c.add_argument("--deg", type=_rational, required=True)
    c.add_argument("--dim-y", type=int, required=True)
    c.add_argument("--ages", type=_rational_list, default=[])
    c = csub.add_parser("pointed")
    c.add_argument("--deg", type=_rational, required=True)
    c.add_argument("--dim-y", type=int, required=True)
    c.add_argument("--age", type=_rational, required=True)
    c.add_argument("--fixed-dim", type=int, required=True)
    c = csub.add_parser("split")
    c.add_argument("--ell", type=int, required=True)
    c.add_argument("--a", type=_int_list, required=True)
    c.add_argument("--d", type=int, default=None)
    p.set_defaults(func=cmd_curves)

    p = sub.add_parser("catalog", parents=[common], help="emit catalog cones as JSON cone files")
    p.add_argument("what", choices=("wps", "quotient", "examples"))
    p.add_argument("spec", nargs="?", default="")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    try:
        return args.func(args)
    except CliError as exc:
        print(exc, file=sys.stderr)
        return exc.code
    except InvalidConeError as exc:
        print(f"validation: FAIL\n{exc.report.summary()}", file=sys.stderr)
        return EXIT_INVALID
    except FamilyTooLarge as exc:
        print(f"resource bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except curves.CurveDataError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
