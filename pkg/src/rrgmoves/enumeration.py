"""Brute-force partition generation and counting.

Everything here is deliberately naive: it is the reference that the series
builders and the bijection are checked against.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator

from rrgmoves.partition import Partition, check_difference, check_modulus

SIDES = ("difference", "modulus")


class NotUnique(RuntimeError):
    def __init__(self, weight: int, minima: list[Partition]):
        super().__init__(f"{len(minima)} distinct minima of weight {weight}: {minima}")
        self.weight = weight
        self.minima = minima


def partitions_of(n: int) -> Iterator[Partition]:
    """Yield every partition of ``n`` once, lexicographically decreasing.

    Uses the Zoghbi-Stojmenovic ZS1 successor rule.

    >>> [str(p) for p in partitions_of(4)]
    ['4', '3,1', '2,2', '2,1,1', '1,1,1,1']
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        yield Partition._trusted(())
        return
    x = [1] * (n + 1)
    x[1] = n
    m = h = 1
    yield Partition._trusted(x[1:2])
    while x[1] != 1:
        if x[h] == 2:
            m += 1
            x[h] = 1
            h -= 1
        else:
            r = x[h] - 1
            t = m - h + 1
            x[h] = r
            while t >= r:
                h += 1
                x[h] = r
                t -= r
            if t == 0:
                m = h
            else:
                m = h + 1
                if t > 1:
                    h += 1
                    x[h] = t
        yield Partition._trusted(x[1 : m + 1])


def count_partitions(n: int, predicate: Callable[[Partition], bool] | None = None) -> int:
    if predicate is None:
        return sum(1 for _ in partitions_of(n))
    return sum(1 for p in partitions_of(n) if predicate(p))


def side_checker(side: str, k: int, a: int) -> Callable[[Partition], bool]:
    if side == "difference":
        return lambda p: check_difference(p, k, a)
    if side == "modulus":
        return lambda p: check_modulus(p, k, a)
    raise ValueError(f"side must be one of {SIDES}, got {side!r}")


@dataclass(frozen=True)
class CountTable:
    """Exact counts of weight-n, m-part partitions on one side of an RRG identity."""

    k: int
    a: int
    side: str
    max_weight: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def total(self, n: int) -> int:
        return sum(c for (w, _), c in self.entries.items() if w == n)

    def totals(self) -> list[int]:
        out = [0] * (self.max_weight + 1)
        for (w, _), c in self.entries.items():
            out[w] += c
        return out

    def to_tsv(self) -> str:
        lines = ["n\tm\tcount"]
        lines += [f"{n}\t{m}\t{c}" for (n, m), c in sorted(self.entries.items())]
        return "\n".join(lines) + "\n"

    def totals_tsv(self) -> str:
        lines = ["n\tcount"]
        lines += [f"{n}\t{c}" for n, c in enumerate(self.totals())]
        return "\n".join(lines) + "\n"


def _count_shard(args: tuple[int, int, str, int]) -> Counter:
    k, a, side, n = args
    check = side_checker(side, k, a)
    shard: Counter = Counter()
    for p in partitions_of(n):
        if check(p):
            shard[len(p)] += 1
    return shard


def count_table(k: int, a: int, side: str, max_weight: int, workers: int | None = 1) -> CountTable:
    """Tabulate ``(weight, parts) -> count`` for weights up to ``max_weight``.

    Weights are independent shards; ``workers`` > 1 farms them out to
    processes and ``None`` uses every available CPU. The result does not
    depend on the worker count.
    """
    if not 1 <= a <= k or k < 2:
        raise ValueError(f"need k >= 2 and 1 <= a <= k, got k={k}, a={a}")
    if max_weight < 0:
        raise ValueError("max_weight must be nonnegative")
    side_checker(side, k, a)
    jobs = [(k, a, side, n) for n in range(max_weight + 1)]
    if workers is None:
        workers = os.cpu_count() or 1
    if workers > 1 and max_weight > 20:
        # heaviest shards first so the pool stays busy
        with ProcessPoolExecutor(max_workers=workers) as pool:
            shards = dict(zip(reversed(range(max_weight + 1)), pool.map(_count_shard, reversed(jobs))))
    else:
        shards = {job[3]: _count_shard(job) for job in jobs}
    entries = {}
    for n in range(max_weight + 1):
        for m, c in sorted(shards[n].items()):
            entries[(n, m)] = c
    return CountTable(k=k, a=a, side=side, max_weight=max_weight, entries=entries)


def base_weight(a: int, m: int, n: int) -> int:
    """Exponent of q attached to ``x^(2m+n)`` in the T_a series."""
    tail = {1: n, 2: 0, 3: -2 * m}[a]
    return 4 * (m * (m + 1) // 2) + 2 * m * n + n * (n + 1) // 2 + tail


def _shapes_up_to(a: int, m: int, n: int, bound: int) -> list[Partition]:
    """All difference-valid (k=3, a) partitions with m pairs, n singletons and weight <= bound.

    Parts are placed in increasing order. Pruning uses only the local form of
    the k=3 difference rule (no value three times, nothing adjacent to a pair,
    at most a-1 ones); every survivor is re-checked with check_difference.
    """
    found: list[Partition] = []
    chosen: list[tuple[int, int]] = []

    def floor(last: int, pairs: int, singles: int) -> int:
        # pairs on the smallest free values, then singletons, ignoring adjacency
        lo = 2 * sum(last + i for i in range(1, pairs + 1))
        return lo + sum(last + i for i in range(pairs + 1, pairs + singles + 1))

    def walk(last: int, last_mult: int, pairs: int, singles: int, weight: int) -> None:
        if pairs == 0 and singles == 0:
            parts = [v for v, c in reversed(chosen) for _ in range(c)]
            cand = Partition(parts)
            if check_difference(cand, 3, a):
                found.append(cand)
            return
        u = last + 1
        while weight + floor(u - 1, pairs, singles) <= bound:
            for mult in (2, 1):
                if mult == 2 and pairs == 0 or mult == 1 and singles == 0:
                    continue
                if u == 1 and mult > a - 1:
                    continue
                if last_mult and u == last + 1 and (mult == 2 or last_mult == 2):
                    continue
                if weight + mult * u + floor(u, pairs - (mult == 2), singles - (mult == 1)) > bound:
                    continue
                chosen.append((u, mult))
                walk(u, mult, pairs - (mult == 2), singles - (mult == 1), weight + mult * u)
                chosen.pop()
            u += 1

    walk(0, 0, m, n, 0)
    return found


def minimal_with_shape(a: int, m_pairs: int, n_singletons: int) -> tuple[Partition, int]:
    """Exhaustively find the lightest valid (k=3, a) partition with the given pair/singleton counts.

    The search is bounded by the conjectured minimum weight; if nothing turns
    up under that bound it is doubled until something does. Raises
    :class:`NotUnique` when two different partitions share the minimum.
    """
    if a not in (1, 2, 3):
        raise ValueError("a must be 1, 2 or 3")
    if m_pairs < 0 or n_singletons < 0:
        raise ValueError("counts must be nonnegative")
    bound = base_weight(a, m_pairs, n_singletons)
    while True:
        found = _shapes_up_to(a, m_pairs, n_singletons, bound)
        if found:
            break
        bound = max(1, 2 * bound)
    best = min(p.weight for p in found)
    minima = sorted({p for p in found if p.weight == best}, reverse=True)
    if len(minima) > 1:
        raise NotUnique(best, minima)
    return minima[0], best
