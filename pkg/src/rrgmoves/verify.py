"""Verification suites: every check compares two independently computed things."""

from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Callable

from rrgmoves import qseries
from rrgmoves.bijection import (
    A_VALUES,
    MoveTrace,
    MoveTriple,
    StuckError,
    base_partition,
    from_triple,
    to_triple,
    valid_triples,
)
from rrgmoves.enumeration import (
    base_weight,
    count_partitions,
    count_table,
    minimal_with_shape,
    NotUnique,
    partitions_of,
)
from rrgmoves.partition import Partition, check_difference, check_modulus, decompose

log = logging.getLogger(__name__)

SUITES = ("theorem", "rrg", "andrews", "bijection", "base", "examples", "sanity")

GOLDEN = {
    (3, "backward"): "example_a3_backward.txt",
    (3, "forward"): "example_a3_forward.txt",
    (2, "backward"): "example_a2_backward.txt",
    (2, "forward"): "example_a2_forward.txt",
}


@dataclass
class CheckRecord:
    name: str
    params: dict[str, Any]
    passed: bool
    expected: str
    actual: str
    elapsed_ms: float = 0.0

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self, timings: bool = False) -> dict:
        out = {
            "name": self.name,
            "params": self.params,
            "status": self.status,
            "expected": self.expected,
            "actual": self.actual,
        }
        if timings:
            out["elapsed_ms"] = round(self.elapsed_ms, 1)
        return out


@dataclass
class VerificationReport:
    suite: str
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def extend(self, other: VerificationReport) -> None:
        self.records.extend(other.records)

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(
            {
                "suite": self.suite,
                "status": self.status,
                "checks": [r.to_dict(timings) for r in self.records],
            },
            indent=2,
        )

    def to_text(self) -> str:
        lines = []
        for r in self.records:
            params = " ".join(f"{k}={v}" for k, v in r.params.items())
            line = f"{r.status.upper()}  {r.name}  {params}".rstrip()
            if not r.passed:
                line += f"  expected: {r.expected}  actual: {r.actual}"
            lines.append(line)
        lines.append(f"{self.suite}: {self.status.upper()} ({sum(r.passed for r in self.records)}/{len(self.records)})")
        return "\n".join(lines) + "\n"


def _run(report: VerificationReport, name: str, params: dict, check: Callable[[], tuple[bool, str, str]]) -> None:
    start = time.perf_counter()
    try:
        passed, expected, actual = check()
    except (StuckError, NotUnique) as exc:
        passed, expected, actual = False, "no error", f"{type(exc).__name__}: {exc}"
    elapsed = (time.perf_counter() - start) * 1000
    log.info("%s %s %s (%.0f ms)", "pass" if passed else "FAIL", name, params, elapsed)
    report.records.append(CheckRecord(name, params, passed, expected, actual, elapsed))


def _first_difference(left: qseries.XQSeries, right: qseries.XQSeries) -> str:
    a, b = dict(((d, e), c) for d, e, c in left.rows()), dict(((d, e), c) for d, e, c in right.rows())
    for key in sorted(set(a) | set(b)):
        if a.get(key, 0) != b.get(key, 0):
            return f"x^{key[0]} q^{key[1]}: {a.get(key, 0)} vs {b.get(key, 0)}"
    return "identical"


def _poly_difference(left: qseries.QPolynomial, right: qseries.QPolynomial) -> str:
    for e, (x, y) in enumerate(zip(left.coefficients, right.coefficients)):
        if x != y:
            return f"q^{e}: {x} vs {y}"
    return "identical"


def _a_values(a: int | None) -> tuple[int, ...]:
    return A_VALUES if a is None else (a,)


def theorem_suite(a: int | None = None, qmax: int = 50, workers: int | None = 1) -> VerificationReport:
    """Series coefficients against brute-force counts of difference-side partitions, cell by cell."""
    report = VerificationReport("theorem")
    for av in _a_values(a):

        def check(av=av):
            series = qseries.t_series(av, qmax, qmax)
            counted = qseries.series_from_counts(count_table(3, av, "difference", qmax, workers=workers))
            ok = series == counted
            return ok, f"{len(counted.rows())} nonzero cells from enumeration", _first_difference(series, counted)

        _run(report, "t_series_matches_enumeration", {"a": av, "qmax": qmax}, check)
    return report


def rrg_suite(a: int | None = None, qmax: int = 200) -> VerificationReport:
    report = VerificationReport("rrg")
    for av in _a_values(a):

        def check(av=av):
            left = qseries.t_series(av, qmax, qmax).at_x_equals_one()
            right = qseries.product_side(3, av, qmax)
            return left == right, "product side", _poly_difference(left, right)

        _run(report, "t_series_at_x1_equals_product", {"a": av, "qmax": qmax}, check)
    return report


def andrews_suite(qmax: int = 200) -> VerificationReport:
    report = VerificationReport("andrews")
    andrews = qseries.andrews_sum_k3(qmax)

    def vs_product():
        right = qseries.product_side(3, 3, qmax)
        return andrews == right, "product side k=3 a=3", _poly_difference(andrews, right)

    def vs_t3():
        right = qseries.t_series(3, qmax, qmax).at_x_equals_one()
        return andrews == right, "T_3 at x=1", _poly_difference(andrews, right)

    _run(report, "andrews_equals_product", {"qmax": qmax}, vs_product)
    _run(report, "andrews_equals_t3_at_x1", {"qmax": qmax}, vs_t3)
    return report


def _is_weakly_decreasing(seq) -> bool:
    return all(seq[i] >= seq[i + 1] for i in range(len(seq) - 1))


def _trace_ok(trace: MoveTrace, a: int, direction: str) -> str | None:
    """Return a complaint about the trace, or None if every step is a legal single move."""
    snaps = trace.snapshots()
    for prev, step in zip(snaps, trace.steps):
        if not check_difference(step.partition, 3, a):
            return f"invalid snapshot {step.partition}"
        delta = step.partition.weight - prev.weight
        expected = (2 if step.kind == "pair" else 1) * (1 if direction == "forward" else -1)
        if delta != expected or step.direction != direction:
            return f"step {prev} -> {step.partition} changed weight by {delta}"
        before, after = decompose(prev), decompose(step.partition)
        if (before.n_pairs, before.n_singletons) != (after.n_pairs, after.n_singletons):
            return f"step {prev} -> {step.partition} changed the pair/singleton counts"
    return None


def _roundtrip_shard(args: tuple[int, int]) -> list[str]:
    a, weight = args
    problems = []
    for lam in partitions_of(weight):
        if not check_difference(lam, 3, a):
            continue
        try:
            triple, trace = to_triple(a, lam)
            back, _ = from_triple(triple)
        except StuckError as exc:
            problems.append(f"{lam}: {exc}")
            continue
        if back != lam:
            problems.append(f"{lam} -> {triple} -> {back}")
        if trace.end != triple.base:
            problems.append(f"{lam}: backward pass ended at {trace.end}")
        complaint = _trace_ok(trace, a, "backward")
        if complaint:
            problems.append(f"{lam}: {complaint}")
        # MoveTriple itself rejects odd or increasing mu and increasing nu
        if lam.weight != triple.base.weight + sum(triple.mu) + sum(triple.nu):
            problems.append(f"{lam}: weight ledger broken")
    return problems


def _triple_shard(args: tuple[int, int]) -> list[str]:
    a, max_weight = args
    problems = []
    for triple in valid_triples(a, max_weight):
        try:
            lam, trace = from_triple(triple)
            again, _ = to_triple(a, lam)
        except StuckError as exc:
            problems.append(f"{triple}: {exc}")
            continue
        if again != triple:
            problems.append(f"{triple} -> {lam} -> {again}")
        complaint = _trace_ok(trace, a, "forward")
        if complaint:
            problems.append(f"{triple}: {complaint}")
    return problems


def _map(fn, jobs, workers):
    if workers and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, jobs))
    return [fn(j) for j in jobs]


def bijection_suite(a: int | None = None, max_weight: int = 35, workers: int | None = 1) -> VerificationReport:
    report = VerificationReport("bijection")
    if workers is None:
        workers = os.cpu_count() or 1
    for av in _a_values(a):

        def backward_then_forward(av=av):
            shards = _map(_roundtrip_shard, [(av, w) for w in range(max_weight + 1)], workers)
            problems = [p for shard in shards for p in shard]
            total = sum(1 for w in range(max_weight + 1) for lam in partitions_of(w) if check_difference(lam, 3, av))
            return not problems, f"{total} partitions round-trip", problems[0] if problems else f"{total} ok"

        def forward_then_backward(av=av):
            problems = _triple_shard((av, max_weight))
            return not problems, "every triple round-trips", problems[0] if problems else "ok"

        _run(report, "partition_roundtrip", {"a": av, "max_weight": max_weight}, backward_then_forward)
        _run(report, "triple_roundtrip", {"a": av, "max_weight": max_weight}, forward_then_backward)
    return report


def base_suite(a: int | None = None, max_shape: int = 6) -> VerificationReport:
    report = VerificationReport("base")
    for av in _a_values(a):

        def check(av=av):
            for m in range(max_shape + 1):
                for n in range(max_shape + 1):
                    found, weight = minimal_with_shape(av, m, n)
                    claimed = base_partition(av, m, n)
                    if found != claimed or weight != base_weight(av, m, n) or claimed.weight != weight:
                        return False, f"{claimed} weight {base_weight(av, m, n)}", f"(m={m}, n={n}) {found} weight {weight}"
            return True, "search minimum = base partition", "all shapes agree"

        _run(report, "base_is_unique_minimum", {"a": av, "max_shape": max_shape}, check)
    return report


def golden_text(a: int, direction: str) -> str:
    return resources.files("rrgmoves.golden").joinpath(GOLDEN[a, direction]).read_text()


def render_chain(trace: MoveTrace, triple: MoveTriple) -> str:
    lines = [str(p) for p in trace.snapshots()]
    lines.append(
        f"base={triple.base} mu={','.join(map(str, triple.mu))} nu={','.join(map(str, triple.nu))}"
    )
    return "\n".join(lines) + "\n"


def _strip_comments(text: str) -> str:
    return "".join(line + "\n" for line in text.splitlines() if not line.startswith("#"))


def run_golden(a: int, direction: str) -> tuple[str, str]:
    """Return (fixture, produced) for one worked example, comments stripped from the fixture."""
    fixture = _strip_comments(golden_text(a, direction))
    if direction == "backward":
        start = Partition.parse(fixture.splitlines()[0])
        triple, trace = to_triple(a, start)
    else:
        summary = dict(tok.split("=") for tok in fixture.splitlines()[-1].split())
        mu = tuple(int(v) for v in summary["mu"].split(","))
        nu = tuple(int(v) for v in summary["nu"].split(","))
        triple = MoveTriple(a, len(mu), len(nu), mu, nu)
        _, trace = from_triple(triple)
    return fixture, render_chain(trace, triple)


def examples_suite(a: int | None = None) -> VerificationReport:
    report = VerificationReport("examples")
    for av in (3, 2) if a is None else (a,):
        for direction in ("backward", "forward"):
            if (av, direction) not in GOLDEN:
                continue

            def check(av=av, direction=direction):
                fixture, produced = run_golden(av, direction)
                return fixture == produced, fixture.splitlines()[-1], produced.splitlines()[-1] if fixture != produced else "byte-identical"

            _run(report, f"worked_example_{direction}", {"a": av}, check)
    return report


def distinct_and_odd_counts(max_n: int) -> tuple[list[int], list[int]]:
    """Counts of partitions into distinct parts and into odd parts, by two separate recurrences."""
    distinct = [1] + [0] * max_n
    for part in range(1, max_n + 1):
        for total in range(max_n, part - 1, -1):
            distinct[total] += distinct[total - part]
    odd = [1] + [0] * max_n
    for part in range(1, max_n + 1, 2):
        for total in range(part, max_n + 1):
            odd[total] += odd[total - part]
    return distinct, odd


def sanity_suite(qmax: int = 100) -> VerificationReport:
    report = VerificationReport("sanity")

    def is_odd(p):
        return all(v % 2 for v in p)

    def is_distinct(p):
        return len(set(p)) == len(p)

    _run(report, "p(4)", {}, lambda: (count_partitions(4) == 5, "5", str(count_partitions(4))))
    _run(
        report,
        "p(5|odd)=p(5|distinct)=3",
        {},
        lambda: (
            count_partitions(5, is_odd) == count_partitions(5, is_distinct) == 3,
            "3 = 3",
            f"{count_partitions(5, is_odd)} = {count_partitions(5, is_distinct)}",
        ),
    )

    def euler():
        distinct, odd = distinct_and_odd_counts(qmax)
        bad = [n for n in range(qmax + 1) if distinct[n] != odd[n]]
        return not bad, "equal for every n", f"first mismatch n={bad[0]}" if bad else "equal"

    _run(report, "euler_odd_equals_distinct", {"max_n": qmax}, euler)

    for label, k, a, expected in (("rr1", 2, 2, 5), ("rr2", 2, 1, 3), ("rrg_k3_a2", 3, 2, 10)):

        def both_sides(k=k, a=a, expected=expected):
            diff = count_partitions(9, lambda p: check_difference(p, k, a))
            mod = count_partitions(9, lambda p: check_modulus(p, k, a))
            return diff == mod == expected, f"{expected} = {expected}", f"{diff} = {mod}"

        _run(report, f"{label}_n9_both_sides", {"k": k, "a": a}, both_sides)
    return report


def run_suite(
    suite: str,
    a: int | None = None,
    qmax: int | None = None,
    max_weight: int = 35,
    max_shape: int = 6,
    workers: int | None = 1,
) -> VerificationReport:
    if suite == "all":
        report = VerificationReport("all")
        for name in SUITES:
            report.extend(run_suite(name, a, qmax, max_weight, max_shape, workers))
        return report
    if suite == "theorem":
        return theorem_suite(a, 50 if qmax is None else qmax, workers)
    if suite == "rrg":
        return rrg_suite(a, 200 if qmax is None else qmax)
    if suite == "andrews":
        return andrews_suite(200 if qmax is None else qmax)
    if suite == "bijection":
        return bijection_suite(a, max_weight, workers)
    if suite == "base":
        return base_suite(a, max_shape)
    if suite == "examples":
        return examples_suite(a)
    if suite == "sanity":
        return sanity_suite(100 if qmax is None else qmax)
    raise ValueError(f"unknown suite {suite!r}")
