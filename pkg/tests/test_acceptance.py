"""Exit criteria. Every comparison is exact integer equality."""

from importlib import resources

import pytest

from conftest import CRITERIA
from rrgmoves.bijection import MoveTriple, base_partition, from_triple, to_triple, valid_triples
from rrgmoves.enumeration import base_weight, count_partitions, count_table, minimal_with_shape, partitions_of
from rrgmoves.partition import Partition, check_difference, check_modulus, decompose
from rrgmoves.qseries import andrews_sum_k3, product_side, series_from_counts, t_series
from rrgmoves.verify import distinct_and_odd_counts, render_chain


@pytest.fixture
def criterion(request):
    key = request.node.get_closest_marker("criterion").args[0]
    CRITERIA[key] = (False, "did not finish")

    def record(passed, detail):
        CRITERIA[key] = (passed, detail)
        assert passed, detail

    return record


@pytest.mark.criterion("1 T_a coefficients = brute-force counts, n <= 50")
def test_series_against_enumeration(criterion):
    mismatches = []
    cells = 0
    for a in (1, 2, 3):
        counted = series_from_counts(count_table(3, a, "difference", 50))
        series = t_series(a, 50, 50)
        for x in range(51):
            for q in range(51):
                cells += 1
                if series.coefficient(x, q) != counted.coefficient(x, q):
                    mismatches.append((a, x, q))
    criterion(not mismatches, f"{cells} cells compared, mismatches: {mismatches[:3]}")


@pytest.mark.criterion("2 T_a(1) = product side, q <= 200")
def test_rrg_product(criterion):
    bad = [a for a in (1, 2, 3) if t_series(a, 200, 200).at_x_equals_one() != product_side(3, a, 200)]
    criterion(not bad, f"a values failing: {bad}")


@pytest.mark.criterion("3 Andrews k=3 sum = product side = T_3(1), q <= 200")
def test_andrews(criterion):
    s = andrews_sum_k3(200)
    ok_product = s == product_side(3, 3, 200)
    ok_t3 = s == t_series(3, 200, 200).at_x_equals_one()
    criterion(ok_product and ok_t3, f"product: {ok_product}, T_3: {ok_t3}")


def _sorted_desc(seq):
    return all(seq[i] >= seq[i + 1] for i in range(len(seq) - 1))


@pytest.mark.criterion("4 bijection round trip, weight <= 35")
def test_bijection_roundtrip(criterion):
    problems, partitions, triples = [], 0, 0
    for a in (1, 2, 3):
        for w in range(36):
            for lam in partitions_of(w):
                if not check_difference(lam, 3, a):
                    continue
                partitions += 1
                triple, trace = to_triple(a, lam)
                if from_triple(triple)[0] != lam:
                    problems.append(("roundtrip", a, lam))
                if not all(check_difference(s, 3, a) for s in trace.snapshots()):
                    problems.append(("snapshot", a, lam))
                if trace.end != base_partition(a, triple.m_pairs, triple.n_singletons):
                    problems.append(("end", a, lam))
                if any(v % 2 for v in triple.mu) or not _sorted_desc(triple.mu) or not _sorted_desc(triple.nu):
                    problems.append(("mu/nu shape", a, lam))
                if lam.weight != triple.base.weight + sum(triple.mu) + sum(triple.nu):
                    problems.append(("weight", a, lam))
        for triple in valid_triples(a, 35):
            triples += 1
            if to_triple(a, from_triple(triple)[0])[0] != triple:
                problems.append(("inverse", a, triple))
    criterion(
        not problems and partitions == triples,
        f"{partitions} partitions, {triples} triples, problems: {problems[:3]}",
    )


def _fixture(name):
    text = resources.files("rrgmoves.golden").joinpath(name).read_text()
    return "".join(line + "\n" for line in text.splitlines() if not line.startswith("#"))


@pytest.mark.criterion("5 worked examples reproduced byte for byte")
def test_golden_traces(criterion):
    results = {}
    triple, trace = to_triple(3, Partition([14, 14, 11, 10, 7, 7, 5, 5, 2, 1]))
    results["a3 backward"] = render_chain(trace, triple) == _fixture("example_a3_backward.txt")
    triple = MoveTriple(3, 3, 4, (10, 4, 4), (3, 3, 0, 0))
    _, trace = from_triple(triple)
    results["a3 forward"] = render_chain(trace, triple) == _fixture("example_a3_forward.txt")
    triple, trace = to_triple(2, Partition([17, 13, 9, 6, 6, 4, 4, 1]))
    results["a2 backward"] = render_chain(trace, triple) == _fixture("example_a2_backward.txt")
    triple = MoveTriple(2, 2, 4, (2, 2), (9, 6, 3, 0))
    lam, trace = from_triple(triple)
    results["a2 forward"] = render_chain(trace, triple) == _fixture("example_a2_forward.txt")
    results["a2 forward ends at lambda"] = lam == Partition([17, 13, 9, 6, 6, 4, 4, 1])
    criterion(all(results.values()), ", ".join(f"{k}={v}" for k, v in results.items()))


@pytest.mark.criterion("6 base partition is the unique minimum, m, n <= 6")
def test_base_minimality(criterion):
    bad = []
    for a in (1, 2, 3):
        for m in range(7):
            for n in range(7):
                found, weight = minimal_with_shape(a, m, n)
                base = base_partition(a, m, n)
                form = decompose(base)
                if found != base or weight != base_weight(a, m, n) or (form.n_pairs, form.n_singletons) != (m, n):
                    bad.append((a, m, n))
    criterion(not bad, f"147 shapes checked, failures: {bad}")


@pytest.mark.criterion("7 introductory sanity ledger")
def test_sanity_ledger(criterion):
    checks = {}
    checks["p(4)=5"] = count_partitions(4) == 5
    odd = count_partitions(5, lambda p: all(v % 2 for v in p))
    distinct = count_partitions(5, lambda p: len(set(p)) == len(p))
    checks["p(5|odd)=p(5|distinct)=3"] = odd == distinct == 3
    d, o = distinct_and_odd_counts(100)
    checks["Euler n<=100"] = d == o
    for name, k, a, want in (("RR1", 2, 2, 5), ("RR2", 2, 1, 3), ("RRG(a,k)=(2,3)", 3, 2, 10)):
        diff = count_partitions(9, lambda p: check_difference(p, k, a))
        mod = count_partitions(9, lambda p: check_modulus(p, k, a))
        checks[f"{name} n=9"] = diff == mod == want
    criterion(all(checks.values()), ", ".join(k for k, v in checks.items() if not v) or "all hold")
