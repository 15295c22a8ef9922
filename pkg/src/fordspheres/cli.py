"""Command-line front end.

Human-readable tables go to stdout; machine artifacts (CSV or JSON, always
with a metadata header carrying the tool version, the full configuration
echo, the constants bundle, and the seed) go to files.  Identical
configurations produce byte-identical artifacts apart from the elapsed_s
timing column, for any --threads value.

Exit codes: 0 success, 2 usage or parse error, 3 numeric domain or cap
violation, 4 verification failure, 5 unwritable output path.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass
from typing import Any, Sequence

from . import __version__, arith, farey, moment, region, verify
from .gint import DomainError, GInt, ParseError, norm, parse_gint

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_VERIFY = 4
EXIT_IO = 5


@dataclass(frozen=True)
class RunConfig:
    """Everything needed to reproduce a run; echoed into every artifact."""

    command: str
    parameters: dict[str, Any]
    seed: int
    threads: int
    output_format: str
    output_path: str | None

    def to_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)


def _metadata(config: RunConfig, include_constants: bool = True) -> dict[str, Any]:
    meta: dict[str, Any] = {
        "tool": "fordspheres",
        "version": __version__,
        "config": config.to_dict(),
    }
    if include_constants:
        bundle = moment.constants_bundle()
        meta["constants"] = {
            "C": bundle.C,
            "zeta_i_2": bundle.zeta_i_2,
            "zeta_i_inv_2": bundle.zeta_i_inv_2,
            "main_coeff": bundle.main_coeff,
            "z1": bundle.z1,
            "zeta_radius": bundle.zeta_radius,
        }
    return meta


REPORT_COLUMNS = ("S", "method", "normalization", "value", "main_term", "residual", "elapsed_s")


def report_rows(reports: Sequence[moment.MomentReport]) -> list[dict[str, Any]]:
    return [
        {
            "S": r.S,
            "method": r.method,
            "normalization": r.normalization,
            "value": r.value,
            "main_term": r.main_term,
            "residual": r.residual,
            "elapsed_s": r.elapsed,
        }
        for r in reports
    ]


def write_csv(path: str, meta: dict[str, Any], columns: Sequence[str], rows: list[dict[str, Any]]) -> None:
    import csv
    import io

    buf = io.StringIO()
    buf.write(f"# {json.dumps(meta, sort_keys=True)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row[c]) for c in columns])
    _write_text(path, buf.getvalue())


def write_json(path: str, meta: dict[str, Any], rows: list[dict[str, Any]]) -> None:
    _write_text(path, json.dumps({"meta": meta, "rows": rows}, sort_keys=True, indent=2) + "\n")


def read_artifact(path: str) -> tuple[dict[str, Any], list[dict[str, Any]]]:
    """Parse either artifact format back into (meta, rows)."""
    import csv

    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        payload = json.loads(text)
        return payload["meta"], payload["rows"]
    lines = [ln for ln in text.splitlines() if ln.strip()]
    meta = json.loads(lines[0][2:]) if lines and lines[0].startswith("# ") else {}
    parsed = list(csv.reader(lines[1:]))
    header = parsed[0]
    rows = []
    for cells in parsed[1:]:
        row: dict[str, Any] = {}
        for key, cell in zip(header, cells):
            try:
                row[key] = int(cell)
            except ValueError:
                try:
                    row[key] = float(cell)
                except ValueError:
                    row[key] = cell
        rows.append(row)
    return meta, rows


def _cell(v: Any) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise _IoFailure(str(exc)) from exc


class _IoFailure(Exception):
    pass


def _emit(config: RunConfig, meta: dict, columns: Sequence[str], rows: list[dict]) -> None:
    if config.output_path:
        if config.output_format == "json":
            write_json(config.output_path, meta, rows)
        else:
            write_csv(config.output_path, meta, columns, rows)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_enumerate(args, config: RunConfig) -> int:
    fractions = farey.enumerate_gs(args.S)
    for f in fractions:
        print(f)
    if args.json or config.output_path:
        rows = []
        for f in fractions:
            sphere = f.sphere()
            rows.append(
                {
                    "fraction": str(f),
                    "base_re": str(sphere.base_re),
                    "base_im": str(sphere.base_im),
                    "radius": str(sphere.radius),
                }
            )
        meta = _metadata(config, include_constants=False)
        if config.output_path:
            write_json(config.output_path, meta, rows)
        else:
            print(json.dumps({"meta": meta, "rows": rows}, sort_keys=True, indent=2))
    return EXIT_OK


def cmd_constants(args, config: RunConfig) -> int:
    bundle = moment.constants_bundle(zeta_radius=args.zeta_radius, with_z2=args.with_z2)
    payload = {
        "C": bundle.C,
        "zeta_i_2": bundle.zeta_i_2,
        "zeta_i_inv_2": bundle.zeta_i_inv_2,
        "main_coeff": bundle.main_coeff,
        "z1": bundle.z1,
        "z2_estimate": bundle.z2_estimate,
        "zeta_radius": bundle.zeta_radius,
        "zeta_tail_allowance": 20.0 / (bundle.zeta_radius**2),
    }
    text = json.dumps(payload, sort_keys=True, indent=2)
    print(text)
    if config.output_path:
        write_json(config.output_path, _metadata(config), [payload])
    return EXIT_OK


def cmd_area(args, config: RunConfig) -> int:
    s = parse_gint(args.s)
    from .gint import canonical

    spec = region.OmegaSpec(canonical(s), args.S)
    payload = {
        "s": str(spec.s),
        "S": spec.S,
        "area_closed_form": region.omega_area(spec),
        "lattice_count": region.omega_lattice_count(spec, coprime_filter=False),
        "lattice_count_coprime": region.omega_lattice_count(spec, coprime_filter=True),
        "prediction": region.coprime_count_prediction(spec),
    }
    print(json.dumps(payload, sort_keys=True, indent=2))
    if config.output_path:
        write_json(config.output_path, _metadata(config), [payload])
    return EXIT_OK


def _print_report_table(reports):
    header = f"{'S':>6} {'method':>10} {'normalization':>14} {'value':>18} {'main_term':>18} {'residual':>14} {'elapsed_s':>10}"
    print(header)
    for r in reports:
        print(
            f"{r.S:>6} {r.method:>10} {r.normalization:>14} {r.value:>18.8f} "
            f"{r.main_term:>18.8f} {r.residual:>14.6f} {r.elapsed:>10.3f}"
        )


def _calibration_meta() -> dict[str, Any]:
    ratios = moment.calibration_ratios()
    return {
        "full_over_direct": {str(S): r for S, r in ratios.items()},
        "band": [min(ratios.values()), max(ratios.values())],
    }


def cmd_moment(args, config: RunConfig) -> int:
    method = args.method.replace("-", "_")
    normalization = args.normalization.replace("-", "_")
    if method == "direct":
        reports = [moment.moment_first_direct(args.S, cap=args.direct_cap)]
    elif method == "counting":
        reports = [
            moment.moment_first_counting(
                args.S, normalization=normalization, threads=config.threads, cap=args.counting_cap
            )
        ]
    else:
        reports = [moment.moment_main_term_report(args.S)]
    _print_report_table(reports)
    meta = _metadata(config)
    if args.with_calibration:
        meta["calibration"] = _calibration_meta()
    _emit(config, meta, REPORT_COLUMNS, report_rows(reports))
    return EXIT_OK


def cmd_report(args, config: RunConfig) -> int:
    if args.kind == "arith":
        sieve = arith.get_sieve(args.radius * args.radius)
        sl = sieve.upto(args.radius)
        rows = []
        for x, y, n, mu, phi in zip(
            sieve.re[sl], sieve.im[sl], sieve.norms[sl], sieve.mu[sl], sieve.phi[sl]
        ):
            rows.append(
                {"q": str(GInt(int(x), int(y))), "norm": int(n), "mu_i": int(mu), "phi_i": int(phi)}
            )
        print(f"{len(rows)} canonical values with |q| <= {args.radius}")
        _emit(config, _metadata(config, include_constants=False), ("q", "norm", "mu_i", "phi_i"), rows)
        return EXIT_OK
    if args.kind == "bsum":
        S_values = [int(tok) for tok in args.S_values.split(",") if tok]
        eps = args.epsilon
        rows = []
        print(f"{'S':>6} {'B':>16} {'B/S^(1+eps)':>14}   eps = {eps}")
        for S, normalized in moment.sum_B_growth(S_values, epsilon=eps):
            b_val = normalized * S ** (1.0 + eps)
            rows.append({"S": S, "epsilon": eps, "B": b_val, "B_over_S_1_eps": normalized})
            print(f"{S:>6} {b_val:>16.4f} {normalized:>14.4f}")
        meta = _metadata(config, include_constants=False)
        meta["boundary_surrogate"] = "8*pi*S"
        _emit(config, meta, ("S", "epsilon", "B", "B_over_S_1_eps"), rows)
        return EXIT_OK
    S_values = [int(tok) for tok in args.S_values.split(",") if tok]
    methods = [tok.replace("-", "_") for tok in args.methods.split(",") if tok]
    sweep = moment.report_sweep(
        S_values,
        methods=methods,
        normalization=args.normalization.replace("-", "_"),
        threads=config.threads,
        direct_cap=args.direct_cap,
        counting_cap=args.counting_cap,
    )
    _print_report_table(sweep.reports)
    for S, m, msg in sweep.errors:
        print(f"row failed: S={S} method={m}: {msg}", file=sys.stderr)
    meta = _metadata(config)
    meta["row_errors"] = [{"S": S, "method": m, "error": msg} for S, m, msg in sweep.errors]
    if args.with_calibration:
        meta["calibration"] = _calibration_meta()
    _emit(config, meta, REPORT_COLUMNS, report_rows(sweep.reports))
    return EXIT_OK


def cmd_verify(args, config: RunConfig) -> int:
    results = verify.run_suite(args.suite)
    failed = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"[{res.suite:>6}] {status}  {res.name}  ({res.elapsed:.2f}s)\n         {res.detail}")
        failed += 0 if res.passed else 1
    print(f"\n{len(results) - failed}/{len(results)} checks passed in suite '{args.suite}'")
    if config.output_path:
        rows = [
            {
                "suite": r.suite,
                "name": r.name,
                "passed": int(r.passed),
                "detail": r.detail,
                "elapsed_s": r.elapsed,
            }
            for r in results
        ]
        _emit(config, _metadata(config, include_constants=False),
              ("suite", "name", "passed", "detail", "elapsed_s"), rows)
    return EXIT_OK if failed == 0 else EXIT_VERIFY


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _env_int(name: str, default: int) -> int:
    import os

    raw = os.environ.get(name)
    return int(raw) if raw else default


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fordspheres",
        description="Exact enumeration and asymptotic verification of consecutive "
        "Ford sphere radius sums over the Gaussian integers.",
    )
    direct_cap = _env_int("FORDSPHERES_DIRECT_CAP", moment.DIRECT_CAP_DEFAULT)
    counting_cap = _env_int("FORDSPHERES_COUNTING_CAP", moment.COUNTING_CAP_DEFAULT)
    parser.add_argument("--version", action="version", version=f"fordspheres {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0, help="seed recorded in artifacts (default 0)")
        p.add_argument("--threads", type=int, default=1, help="worker processes for sweeps")
        p.add_argument("--out", choices=("csv", "json"), default="csv", help="artifact format")
        p.add_argument("--out-path", default=None, help="artifact file path")

    p = sub.add_parser("enumerate", help="list the fractions at level S")
    p.add_argument("--S", type=int, required=True)
    p.add_argument("--json", action="store_true", help="also print sphere data as JSON")
    common(p)

    p = sub.add_parser("constants", help="print the constants bundle as JSON")
    p.add_argument("--zeta-radius", type=float, default=moment.ZETA_RADIUS_DEFAULT)
    p.add_argument("--with-z2", action="store_true", help="fit the z2 intercept (slow)")
    common(p)

    p = sub.add_parser("area", help="region area and lattice counts for one denominator")
    p.add_argument("--s", required=True, help="denominator in a+bi notation")
    p.add_argument("--S", type=int, required=True)
    common(p)

    p = sub.add_parser("moment", help="one moment evaluation")
    p.add_argument("--S", type=int, required=True)
    p.add_argument("--method", choices=("direct", "counting", "main-term"), default="counting")
    p.add_argument("--normalization", choices=("omega-full", "omega-quarter"), default="omega-full")
    p.add_argument("--epsilon", type=float, default=0.1, help="exponent used by B-sum diagnostics")
    p.add_argument("--direct-cap", type=int, default=direct_cap)
    p.add_argument("--counting-cap", type=int, default=counting_cap)
    p.add_argument(
        "--with-calibration", action="store_true",
        help="embed the measured counting/direct calibration ratios in the artifact metadata",
    )
    common(p)

    p = sub.add_parser("report", help="multi-row sweeps, arithmetic tables, B-sum diagnostics")
    p.add_argument("--kind", choices=("sweep", "arith", "bsum"), default="sweep")
    p.add_argument("--S-values", default="1,2,4,8", help="comma-separated levels (sweep, bsum)")
    p.add_argument("--methods", default="direct,counting", help="comma-separated methods (sweep)")
    p.add_argument("--normalization", choices=("omega-full", "omega-quarter"), default="omega-full")
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--direct-cap", type=int, default=direct_cap)
    p.add_argument("--counting-cap", type=int, default=counting_cap)
    p.add_argument("--radius", type=int, default=20, help="|q| bound for the arith table")
    p.add_argument(
        "--with-calibration", action="store_true",
        help="embed the measured counting/direct calibration ratios in the artifact metadata",
    )
    common(p)

    p = sub.add_parser("verify", help="run the named verification checks")
    p.add_argument("--suite", choices=tuple(verify.suites()) + ("all",), default="all")
    common(p)

    return parser


_COMMANDS = {
    "enumerate": cmd_enumerate,
    "constants": cmd_constants,
    "area": cmd_area,
    "moment": cmd_moment,
    "report": cmd_report,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = RunConfig(
        command=args.command,
        parameters={
            k: v
            for k, v in vars(args).items()
            if k not in ("command", "seed", "threads", "out", "out_path")
        },
        seed=args.seed,
        threads=args.threads,
        output_format=args.out,
        output_path=args.out_path,
    )
    try:
        return _COMMANDS[args.command](args, config)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except _IoFailure as exc:
        print(f"error: cannot write artifact: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
