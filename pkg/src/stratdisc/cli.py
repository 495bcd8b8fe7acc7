"""Command-line interface: tables, ratio curves, samples, MC runs, verification.

All output is plain CSV or JSON with floats printed to 12 significant
digits, so identical invocations produce byte-identical bytes.  The
`STRATDISC_THREADS` environment variable caps row-level parallelism for the
table commands; results are collected in input order and do not depend on
the thread count.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from . import asymptotics, estimators, exactform, lowdisc, partition, qgeometry

TABLE1_NS = (4, 6, 8, 10, 12, 14, 16, 32, 48, 64, 80, 96, 112, 128)
RATIO_DEFAULT_NS = (4, 8, 16, 32, 64, 128)
ODD_MARKER = "error:odd-n"

_ODD_NOTE = (
    "note: the exact closed form needs even n; odd rows carry a marker. "
    "For large n the odd-n expectation approaches the same 5/(72n) behavior."
)


@dataclass(frozen=True)
class RunConfig:
    """Parsed invocation: which command, on which n, with what knobs."""

    command: str
    n_values: tuple[int, ...] = ()
    m_nodes: int = 40000
    replicates: int = 10000
    seed: int = 0
    partition: str = "diagonal"
    format: str = "csv"
    out: str | None = None
    fault: str | None = None

    def __post_init__(self) -> None:
        if any(n < 2 for n in self.n_values):
            raise ValueError("n values must be >= 2")
        if self.m_nodes < 1:
            raise ValueError("m_nodes must be >= 1")


def fmt(value: float) -> str:
    """Canonical float rendering: 12 significant digits, '.' separator."""
    return format(value, ".12g")


def _jnum(value: float) -> float:
    """Float rounded to the printed precision, for JSON emission."""
    return float(fmt(value))


def thread_cap() -> int:
    raw = os.environ.get("STRATDISC_THREADS")
    if raw is None:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        print(f"error: STRATDISC_THREADS must be an integer, got {raw!r}", file=sys.stderr)
        raise SystemExit(2)


def _map_rows(fn: Callable[[int], Any], items: Sequence[int]) -> list[Any]:
    cap = thread_cap()
    if cap <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(cap, len(items))) as pool:
        return list(pool.map(fn, items))


def _csv(header: str, rows: Iterable[Sequence[str]]) -> str:
    lines = [header]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def cmd_table(config: RunConfig) -> str:
    """Per-n expected discrepancy by every method, plus the baselines."""
    ns = config.n_values or TABLE1_NS
    nodes = lowdisc.halton(lowdisc.HaltonConfig(count=config.m_nodes))

    def row(n: int) -> dict[str, Any]:
        try:
            exact = exactform.expected_l2_sq_exact(n).value
        except ValueError:
            exact = None
        return {
            "n": n,
            "exact": exact,
            "qmc": estimators.expected_l2_sq_qmc(n, nodes).value,
            "asymptotic": exactform.expected_l2_sq_asymptotic(n),
            "random": estimators.random_baseline(n),
            "vertical": estimators.vertical_baseline(n),
        }

    rows = _map_rows(row, ns)
    if any(r["exact"] is None for r in rows):
        print(_ODD_NOTE, file=sys.stderr)
    if config.format == "json":
        payload = [
            {key: (_jnum(v) if isinstance(v, float) else v) for key, v in r.items()}
            for r in rows
        ]
        return json.dumps({"rows": payload}, indent=2) + "\n"
    return _csv(
        "n,exact,qmc,asymptotic,random,vertical",
        (
            [
                str(r["n"]),
                ODD_MARKER if r["exact"] is None else fmt(r["exact"]),
                fmt(r["qmc"]),
                fmt(r["asymptotic"]),
                fmt(r["random"]),
                fmt(r["vertical"]),
            ]
            for r in rows
        ),
    )


def cmd_ratio(config: RunConfig) -> str:
    """Ratio of the i.i.d. baseline to the exact diagonal expectation."""
    ns = config.n_values or RATIO_DEFAULT_NS

    def row(n: int) -> tuple[int, float | None]:
        try:
            est = exactform.expected_l2_sq_exact(n)
        except ValueError:
            return n, None
        return n, estimators.ratio_to_random(n, est)

    rows = _map_rows(row, ns)
    if any(r[1] is None for r in rows):
        print(_ODD_NOTE, file=sys.stderr)
    if config.format == "json":
        payload = [{"n": n, "ratio": None if v is None else _jnum(v)} for n, v in rows]
        return json.dumps({"rows": payload}, indent=2) + "\n"
    return _csv(
        "n,ratio",
        ([str(n), ODD_MARKER if v is None else fmt(v)] for n, v in rows),
    )


def cmd_sample(config: RunConfig) -> str:
    """One stratified sample: rows of (x, y, cell)."""
    n = config.n_values[0]
    if config.partition == "diagonal":
        sample = partition.sample_stratified(partition.generating_set(n), config.seed)
    elif config.partition == "vertical":
        sample = partition.sample_vertical(n, config.seed)
    else:
        m = math.isqrt(n)
        if m * m != n:
            raise ValueError(f"jittered partition needs a square point count, got n={n}")
        sample = partition.sample_jittered(m, config.seed)
    if config.format == "json":
        payload = {
            "n": n,
            "seed": config.seed,
            "partition": config.partition,
            "points": [
                {"x": _jnum(p.x), "y": _jnum(p.y), "cell": c}
                for p, c in zip(sample.points, sample.cells)
            ],
        }
        return json.dumps(payload, indent=2) + "\n"
    return _csv(
        "x,y,cell",
        ([fmt(p.x), fmt(p.y), str(c)] for p, c in zip(sample.points, sample.cells)),
    )


def cmd_mc(config: RunConfig) -> str:
    """Monte Carlo estimate over stratified replicates, with standard error."""
    n = config.n_values[0]
    est = estimators.expected_l2_sq_mc(n, config.replicates, config.seed, config.partition)
    assert est.std_error is not None
    if config.format == "json":
        return json.dumps(
            {
                "n": n,
                "partition": config.partition,
                "replicates": config.replicates,
                "seed": config.seed,
                "value": _jnum(est.value),
                "std_error": _jnum(est.std_error),
            },
            indent=2,
        ) + "\n"
    return _csv(
        "n,partition,replicates,seed,value,std_error",
        [[str(n), config.partition, str(config.replicates), str(config.seed), fmt(est.value), fmt(est.std_error)]],
    )


# ---------------------------------------------------------------------------
# verification suite


@dataclass
class _Checks:
    results: list[dict[str, Any]] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str) -> None:
        self.results.append({"name": name, "passed": bool(passed), "detail": detail})

    @property
    def all_passed(self) -> bool:
        return all(r["passed"] for r in self.results)


def _verify_sqrt_sum_orders(checks: _Checks) -> None:
    for k in (0.5, 1.0, 1.5, 2.0, 2.5):
        report = asymptotics.power_sqrt_order_report(k)
        ok = min(
            abs(report.fitted_order - report.claimed_order),
            abs(report.adjusted_order - report.claimed_order),
        ) <= 0.25
        checks.add(
            f"sqrt-sum-order k={fmt(k)}",
            ok,
            f"claimed {fmt(report.claimed_order)}, fitted {fmt(report.fitted_order)}, "
            f"measured offset {fmt(report.constant_offset)}, adjusted {fmt(report.adjusted_order)}",
        )


def _verify_harmonic(checks: _Checks, fault: str | None) -> None:
    ns = asymptotics.DEFAULT_FIT_NS
    for k in (0.5, 1.5, 2.5):
        worst = max(
            abs(asymptotics.power_sum_approx(n, k) - asymptotics.power_sum(n, k)) / n ** (k - 2.0)
            for n in ns
        )
        checks.add(
            f"harmonic-bound k={fmt(k)}",
            worst <= 1.0,
            f"max |error|/n^(k-2) = {fmt(worst)} (bound 1)",
        )
    drift = 1e-3 if fault == "constant-drift" else 0.0
    for k in (1.0, 2.0):
        worst = max(
            abs((asymptotics.power_sum_approx(n, k) + drift) - asymptotics.power_sum(n, k))
            / asymptotics.power_sum(n, k)
            for n in ns
        )
        checks.add(
            f"harmonic-exact k={fmt(k)}",
            worst <= 1e-12,
            f"max relative error {fmt(worst)}",
        )
    # k=3 is exact up to the constant remainder 1/120
    worst = max(
        abs(asymptotics.power_sum_approx(n, 3.0) - asymptotics.power_sum(n, 3.0))
        - 1e-12 * asymptotics.power_sum(n, 3.0)
        for n in ns
    )
    checks.add("harmonic-constant k=3", worst <= 1.0 / 120.0 + 1e-6, f"max |error| - fp slack = {fmt(worst)}")


def _verify_components(checks: _Checks, ns: Sequence[int]) -> None:
    for n in (8, 16, 64):
        worst = max(
            abs(
                asymptotics.paired_strip_integral(n, i)
                - (exactform.strip_integral_lower(n, i) + exactform.strip_integral_upper(n, n + 1 - i))
            )
            for i in range(2, n // 2 + 1)
        )
        checks.add(f"pair-identity n={n}", worst <= 1e-10, f"max |pair - (lower+upper)| = {fmt(worst)}")
    worst_cubic = 0.0
    worst_total = 0.0
    for n in ns:
        comps = asymptotics.component_sums(n)
        worst_cubic = max(worst_cubic, abs(comps.cubic - asymptotics.cubic_component_closed_form(n)))
        worst_total = max(worst_total, abs(math.fsum(comps) - asymptotics.interior_strip_sum(n)))
    checks.add(
        f"component-cubic-closed n={{{','.join(map(str, ns))}}}",
        worst_cubic <= 1e-9,
        f"max |direct - closed| = {fmt(worst_cubic)}",
    )
    checks.add(
        f"component-identity n={{{','.join(map(str, ns))}}}",
        worst_total <= 1e-8,
        f"max |sum(components) - interior sum| = {fmt(worst_total)}",
    )


def _verify_collapse(checks: _Checks, ns: Sequence[int]) -> None:
    normalized = []
    for n in ns:
        report = asymptotics.interior_sum_check(n)
        normalized.append(report.abs_error / math.sqrt(n))
    ok = all(
        later <= 2.0 * earlier for earlier, later in zip(normalized, normalized[1:])
    )
    checks.add(
        "collapse-order",
        ok and all(math.isfinite(v) for v in normalized),
        "normalized |interior - 13n/72|/sqrt(n): " + ", ".join(fmt(v) for v in normalized),
    )


def _verify_strip_quadrature(checks: _Checks) -> None:
    for n in (4, 8):
        profile = qgeometry.OverlapProfile(n=n, gs=partition.generating_set(n))
        table = exactform.strip_integral_table(n)
        worst = max(
            abs(table.values[i - 1] - qgeometry.mean_square_overlap(profile, i, grid=1000))
            for i in range(1, n + 1)
        )
        checks.add(f"strip-quadrature n={n}", worst <= 1e-4, f"max |closed - quadrature| = {fmt(worst)}")


def _verify_cross_method(checks: _Checks) -> None:
    nodes = lowdisc.halton(lowdisc.HaltonConfig(count=20000))
    worst = 0.0
    for n in (4, 16, 64):
        exact = exactform.expected_l2_sq_exact(n).value
        qmc = estimators.expected_l2_sq_qmc(n, nodes).value
        worst = max(worst, abs(qmc - exact) / exact)
    checks.add("exact-vs-qmc", worst <= 0.01, f"max relative gap {fmt(worst)} over n in {{4,16,64}}")


def _verify_point_checks(checks: _Checks) -> None:
    profile = qgeometry.OverlapProfile(n=4, gs=partition.generating_set(4))
    got = [qgeometry.overlap_fraction(profile, i, 0.4, 0.8) for i in range(1, 5)]
    want = (0.8114, 0.3886, 0.08, 0.0)
    worst = max(abs(g - w) for g, w in zip(got, want))
    checks.add("worked-example", worst <= 5e-4, f"q = ({', '.join(fmt(v) for v in got)})")

    corner = lowdisc.l2_discrepancy_sq(lowdisc.PointSet(np.array([[1.0, 1.0]])))
    origin = lowdisc.l2_discrepancy_sq(lowdisc.PointSet(np.array([[0.0, 0.0]])))
    checks.add(
        "pairwise-anchors",
        abs(corner - 1.0 / 9.0) <= 1e-12 and abs(origin - 11.0 / 18.0) <= 1e-12,
        f"(1,1) -> {fmt(corner)}, (0,0) -> {fmt(origin)}",
    )

    rng = np.random.default_rng(20240817)
    worst = 0.0
    for _ in range(5):
        pts = lowdisc.PointSet(rng.random((int(rng.integers(1, 33)), 2)))
        worst = max(worst, abs(lowdisc.l2_discrepancy_sq(pts) - lowdisc.brute_force_l2_sq(pts, 1000)))
    checks.add("pairwise-vs-brute", worst <= 1e-3, f"max |pairwise - brute| = {fmt(worst)}")

    worst = 0.0
    pts = rng.random((2000, 2))
    for n in (4, 16):
        prof = qgeometry.OverlapProfile(n=n, gs=partition.generating_set(n))
        for x, y in pts:
            total = math.fsum(qgeometry.overlap_vector(prof, x, y).tolist())
            worst = max(worst, abs(total - n * x * y))
    checks.add("telescoping", worst <= 1e-10, f"max |sum q_i - n*x*y| = {fmt(worst)}")


def run_verify(config: RunConfig) -> tuple[str, bool]:
    component_ns = config.n_values or (4, 16, 64, 256)
    collapse_ns = config.n_values or tuple(2**j for j in range(6, 13))
    checks = _Checks()
    _verify_sqrt_sum_orders(checks)
    _verify_harmonic(checks, config.fault)
    _verify_components(checks, component_ns)
    _verify_collapse(checks, collapse_ns)
    _verify_strip_quadrature(checks)
    _verify_cross_method(checks)
    _verify_point_checks(checks)

    if config.format == "json":
        text = json.dumps({"checks": checks.results, "passed": checks.all_passed}, indent=2) + "\n"
    else:
        lines = [
            f"{'PASS' if r['passed'] else 'FAIL'} {r['name']}: {r['detail']}"
            for r in checks.results
        ]
        passed = sum(r["passed"] for r in checks.results)
        lines.append(f"{passed}/{len(checks.results)} checks passed")
        text = "\n".join(lines) + "\n"
    return text, checks.all_passed


# ---------------------------------------------------------------------------
# argument parsing


def _parse_n_list(raw: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in raw.replace(" ", "").split(",") if part)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {raw!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one value")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stratdisc",
        description="Expected L2 discrepancy of diagonally stratified samples of the unit square.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", metavar="PATH", default=None, help="write output to a file instead of stdout")

    p_table = sub.add_parser("table", help="expected discrepancy by all methods, per n")
    p_table.add_argument("--n", type=_parse_n_list, metavar="LIST", default=None,
                         help=f"comma-separated cell counts (default: {','.join(map(str, TABLE1_NS))})")
    p_table.add_argument("--m-nodes", type=int, default=40000, help="integration node count (default 40000)")
    add_common(p_table)

    p_ratio = sub.add_parser("ratio", help="i.i.d.-to-stratified expectation ratio, per n")
    p_ratio.add_argument("--n", type=_parse_n_list, metavar="LIST", default=None,
                         help=f"comma-separated cell counts (default: {','.join(map(str, RATIO_DEFAULT_NS))})")
    add_common(p_ratio)

    p_sample = sub.add_parser("sample", help="draw one stratified sample")
    p_sample.add_argument("--n", type=_parse_n_list, metavar="N", required=True)
    p_sample.add_argument("--seed", type=int, default=0)
    p_sample.add_argument("--partition", choices=("diagonal", "vertical", "jittered"), default="diagonal")
    add_common(p_sample)

    p_mc = sub.add_parser("mc", help="Monte Carlo estimate over stratified replicates")
    p_mc.add_argument("--n", type=_parse_n_list, metavar="N", required=True)
    p_mc.add_argument("--replicates", type=int, default=10000)
    p_mc.add_argument("--seed", type=int, default=0)
    p_mc.add_argument("--partition", choices=("diagonal", "vertical", "jittered"), default="diagonal")
    add_common(p_mc)

    p_verify = sub.add_parser("verify", help="run the summation and cross-method checks")
    p_verify.add_argument("--n", type=_parse_n_list, metavar="LIST", default=None,
                          help="override n values for the component-sum and collapse checks (even, >= 4)")
    p_verify.add_argument("--inject-fault", dest="fault", choices=("constant-drift",),
                          default=None, help=argparse.SUPPRESS)
    add_common(p_verify)

    return parser


def _config_from_args(parser: argparse.ArgumentParser, args: argparse.Namespace) -> RunConfig:
    n_values = getattr(args, "n", None) or ()
    if args.command in ("sample", "mc") and len(n_values) != 1:
        parser.error(f"{args.command} takes exactly one --n value")
    if args.command == "verify" and any(n < 4 or n % 2 for n in n_values):
        parser.error("verify --n values must be even and >= 4")
    if args.command == "mc" and getattr(args, "replicates") < 2:
        parser.error("--replicates must be >= 2")
    try:
        return RunConfig(
            command=args.command,
            n_values=tuple(n_values),
            m_nodes=getattr(args, "m_nodes", 40000),
            replicates=getattr(args, "replicates", 10000),
            seed=getattr(args, "seed", 0),
            partition=getattr(args, "partition", "diagonal"),
            format=args.format,
            out=args.out,
            fault=getattr(args, "fault", None),
        )
    except ValueError as exc:
        parser.error(str(exc))


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = _config_from_args(parser, args)
    try:
        if config.command == "table":
            _emit(cmd_table(config), config.out)
        elif config.command == "ratio":
            _emit(cmd_ratio(config), config.out)
        elif config.command == "sample":
            _emit(cmd_sample(config), config.out)
        elif config.command == "mc":
            _emit(cmd_mc(config), config.out)
        else:
            text, all_passed = run_verify(config)
            _emit(text, config.out)
            if not all_passed:
                return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
