"""Base partitions and forward/backward moves for k=3 Gordon partitions.

A difference-valid partition with k=3 has every value at most twice, and a
value occurring twice (a pair) has both neighbours absent. Such a partition
with ``m`` pairs and ``n`` singletons corresponds to a triple
``(base, mu, nu)``: ``base`` is the lightest valid partition with that many
pairs and singletons, ``mu[i]`` is twice the number of moves made by the
i-th largest pair and ``nu[i]`` the number of moves made by the i-th largest
singleton.

Every move changes the weight by exactly 2 (pairs) or 1 (singletons). When
the plain shift would break validity, a "blocked" move instead carries the
pair (or singleton) across the run of parts in its way and shifts that run
back by one step each, which keeps the weight bookkeeping intact.

For a in {1, 3} pairs jump over runs of consecutive singletons; for a = 2
singletons jump over ladders of pairs spaced two apart.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from rrgmoves.partition import Partition, check_difference, decompose

A_VALUES = (1, 2, 3)


class MoveInapplicable(ValueError):
    pass


class InvalidPartition(ValueError):
    pass


class MalformedTriple(ValueError):
    pass


class StuckError(RuntimeError):
    """An orchestrated pass could not reach its target. Carries the trace so far."""

    def __init__(self, message: str, snapshot: Partition, trace: MoveTrace):
        super().__init__(f"{message}; stuck at {snapshot}")
        self.snapshot = snapshot
        self.trace = trace


def _check_a(a: int) -> None:
    if a not in A_VALUES:
        raise ValueError(f"a must be 1, 2 or 3, got {a}")


def base_partition(a: int, m: int, n: int) -> Partition:
    """Lightest difference-valid (k=3, a) partition with ``m`` pairs and ``n`` singletons.

    >>> str(base_partition(3, 3, 4))
    '10,9,8,7,5,5,3,3,1,1'
    >>> str(base_partition(2, 2, 4))
    '8,8,6,6,4,3,2,1'
    >>> str(base_partition(1, 1, 2))
    '5,4,2,2'
    """
    _check_a(a)
    if m < 0 or n < 0:
        raise ValueError("counts must be nonnegative")
    if a == 3:
        singletons = range(2 * m + n, 2 * m, -1)
        pairs = range(2 * m - 1, 0, -2)
    elif a == 1:
        singletons = range(2 * m + n + 1, 2 * m + 1, -1)
        pairs = range(2 * m, 0, -2)
    else:
        pairs = range(n + 2 * m, n, -2)
        singletons = range(n, 0, -1)
    return Partition.from_multiset([*pairs, *pairs, *singletons])


def _rebuild(counts: Counter, remove: Sequence[int], add: Sequence[int]) -> Partition:
    new = counts.copy()
    new.subtract(remove)
    new.update(add)
    return Partition._trusted(sorted(new.elements(), reverse=True))


def _split(p: Sequence[int]) -> tuple[list[int], list[int]]:
    # unvalidated decompose for the hot path; parts of a valid p occur at most twice
    pairs, singletons = [], []
    i, size = 0, len(p)
    while i < size:
        if i + 1 < size and p[i + 1] == p[i]:
            pairs.append(p[i])
            i += 2
        else:
            singletons.append(p[i])
            i += 1
    return pairs, singletons


def _accept(p: Partition, a: int, shape: tuple[int, int]) -> bool:
    if not check_difference(p, 3, a):
        return False
    pairs, singletons = _split(p)
    return (len(pairs), len(singletons)) == shape


def _shape(counts: Counter) -> tuple[int, int]:
    mults = Counter(counts.values())
    return mults[2], mults[1]


def _require(counts: Counter, value: int, mult: int, what: str) -> None:
    if counts[value] != mult:
        raise MoveInapplicable(f"{what} {value} is not present")


def forward_pair_move(p: Partition, a: int, b: int) -> Partition:
    """Push the pair [b,b] forward; the weight goes up by 2."""
    _check_a(a)
    counts = Counter(p)
    _require(counts, b, 2, "pair")
    shape = _shape(counts)
    if counts[b + 1] == 0:
        simple = _rebuild(counts, [b, b], [b + 1, b + 1])
        if _accept(simple, a, shape):
            return simple
    if a != 2:
        s = 1
        while counts[b + s + 1] == 1:
            s += 1
        if s >= 2:
            run = range(b + 2, b + s + 1)
            moved = _rebuild(counts, [b, b, *run], [b + s, b + s, *range(b, b + s - 1)])
            if _accept(moved, a, shape):
                return moved
    raise MoveInapplicable(f"no forward move for pair {b} in {p} (a={a})")


def backward_pair_move(p: Partition, a: int, c: int) -> Partition:
    """Pull the pair [c,c] back; the weight goes down by 2."""
    _check_a(a)
    counts = Counter(p)
    _require(counts, c, 2, "pair")
    shape = _shape(counts)
    b = c - 1
    if b >= 1 and counts[b] == 0:
        simple = _rebuild(counts, [c, c], [b, b])
        if _accept(simple, a, shape):
            return simple
    if a != 2:
        s = 0
        while b - s - 1 >= 1 and counts[b - s - 1] == 1:
            s += 1
        if s >= 1:
            run = range(b - s, b)
            moved = _rebuild(counts, [c, c, *run], [b - s, b - s, *range(b - s + 2, c + 1)])
            if _accept(moved, a, shape):
                return moved
    raise MoveInapplicable(f"no backward move for pair {c} in {p} (a={a})")


def forward_singleton_move(p: Partition, a: int, b: int) -> Partition:
    """Push the singleton (b) forward; the weight goes up by 1."""
    _check_a(a)
    counts = Counter(p)
    _require(counts, b, 1, "singleton")
    shape = _shape(counts)
    if counts[b + 1] == 0:
        simple = _rebuild(counts, [b], [b + 1])
        if _accept(simple, a, shape):
            return simple
    if a == 2:
        s = 0
        while counts[b + 2 * (s + 1)] == 2:
            s += 1
        if s >= 1:
            ladder = [b + 2 * i for i in range(1, s + 1)]
            moved = _rebuild(counts, [b, *ladder, *ladder], [b + 2 * s + 1, *(2 * [v - 1 for v in ladder])])
            if _accept(moved, a, shape):
                return moved
    raise MoveInapplicable(f"no forward move for singleton {b} in {p} (a={a})")


def backward_singleton_move(p: Partition, a: int, c: int) -> Partition:
    """Pull the singleton (c) back; the weight goes down by 1."""
    _check_a(a)
    counts = Counter(p)
    _require(counts, c, 1, "singleton")
    shape = _shape(counts)
    b = c - 1
    if b >= 1 and counts[b] == 0:
        simple = _rebuild(counts, [c], [b])
        if _accept(simple, a, shape):
            return simple
    if a == 2:
        s = 0
        while b - 2 * s - 1 >= 1 and counts[b - 2 * s - 1] == 2:
            s += 1
        if s >= 1 and b - 2 * s >= 1:
            ladder = [b - 2 * i + 1 for i in range(1, s + 1)]
            moved = _rebuild(counts, [c, *ladder, *ladder], [b - 2 * s, *(2 * [v + 1 for v in ladder])])
            if _accept(moved, a, shape):
                return moved
    raise MoveInapplicable(f"no backward move for singleton {c} in {p} (a={a})")


@dataclass(frozen=True)
class MoveTriple:
    a: int
    m_pairs: int
    n_singletons: int
    mu: tuple[int, ...]
    nu: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mu", tuple(self.mu))
        object.__setattr__(self, "nu", tuple(self.nu))
        if self.a not in A_VALUES:
            raise MalformedTriple(f"a must be 1, 2 or 3, got {self.a}")
        if len(self.mu) != self.m_pairs or len(self.nu) != self.n_singletons:
            raise MalformedTriple(
                f"mu needs {self.m_pairs} entries and nu {self.n_singletons}, "
                f"got {len(self.mu)} and {len(self.nu)}"
            )
        for name, seq in (("mu", self.mu), ("nu", self.nu)):
            if any(v < 0 for v in seq):
                raise MalformedTriple(f"{name} entries must be nonnegative: {seq}")
            if any(seq[i] < seq[i + 1] for i in range(len(seq) - 1)):
                raise MalformedTriple(f"{name} must be weakly decreasing: {seq}")
        if any(v % 2 for v in self.mu):
            raise MalformedTriple(f"mu entries must be even: {self.mu}")

    @property
    def base(self) -> Partition:
        return base_partition(self.a, self.m_pairs, self.n_singletons)

    @property
    def weight(self) -> int:
        return self.base.weight + sum(self.mu) + sum(self.nu)


@dataclass(frozen=True)
class TraceStep:
    partition: Partition
    direction: str
    kind: str
    before: int
    after: int

    def to_dict(self) -> dict:
        return {
            "partition": list(self.partition),
            "kind": self.kind,
            "dir": self.direction,
            "from": self.before,
            "to": self.after,
        }


@dataclass
class MoveTrace:
    start: Partition
    steps: list[TraceStep] = field(default_factory=list)

    def snapshots(self) -> list[Partition]:
        return [self.start] + [s.partition for s in self.steps]

    @property
    def end(self) -> Partition:
        return self.steps[-1].partition if self.steps else self.start

    def __len__(self) -> int:
        return len(self.steps)


_MOVES = {
    ("forward", "pair"): forward_pair_move,
    ("backward", "pair"): backward_pair_move,
    ("forward", "singleton"): forward_singleton_move,
    ("backward", "singleton"): backward_singleton_move,
}


def _value_at_rank(p: Partition, kind: str, rank: int) -> int:
    pairs, singletons = _split(p)
    return (pairs if kind == "pair" else singletons)[rank]


def _step(p: Partition, a: int, direction: str, kind: str, rank: int, trace: MoveTrace) -> Partition:
    # parts of one kind never overtake each other, so rank identifies the moving part
    before = _value_at_rank(p, kind, rank)
    try:
        q = _MOVES[direction, kind](p, a, before)
    except MoveInapplicable as exc:
        raise StuckError(f"{direction} {kind} move on {before} failed: {exc}", p, trace) from exc
    trace.steps.append(TraceStep(q, direction, kind, before, _value_at_rank(q, kind, rank)))
    return q


def _pass_order(a: int, direction: str) -> tuple[str, str]:
    if (a == 2) == (direction == "forward"):
        return ("pair", "singleton")
    return ("singleton", "pair")


def to_triple(a: int, lam: Sequence[int]) -> tuple[MoveTriple, MoveTrace]:
    """Pull ``lam`` back to its base partition, recording how far each part travelled."""
    _check_a(a)
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    if not check_difference(lam, 3, a):
        raise InvalidPartition(f"{lam} does not satisfy the k=3, a={a} difference conditions")
    form = decompose(lam)
    m, n = form.n_pairs, form.n_singletons
    target = decompose(base_partition(a, m, n))
    targets = {"pair": target.pairs, "singleton": target.singletons}
    moves = {"pair": [0] * m, "singleton": [0] * n}
    trace = MoveTrace(lam)
    p = lam
    for kind in _pass_order(a, "backward"):
        for rank in reversed(range(len(moves[kind]))):
            goal = targets[kind][rank]
            while (value := _value_at_rank(p, kind, rank)) != goal:
                if value < goal:
                    raise StuckError(f"{kind} of rank {rank} overshot target {goal}", p, trace)
                p = _step(p, a, "backward", kind, rank, trace)
                moves[kind][rank] += 1
    mu = tuple(2 * c for c in moves["pair"])
    return MoveTriple(a, m, n, mu, tuple(moves["singleton"])), trace


def from_triple(t: MoveTriple) -> tuple[Partition, MoveTrace]:
    """Push the base partition forward as prescribed by ``mu`` and ``nu``."""
    p = t.base
    trace = MoveTrace(p)
    counts = {"pair": [v // 2 for v in t.mu], "singleton": list(t.nu)}
    for kind in _pass_order(t.a, "forward"):
        for rank, times in enumerate(counts[kind]):
            for _ in range(times):
                p = _step(p, t.a, "forward", kind, rank, trace)
    return p, trace


def triple_payload(t: MoveTriple, lam: Partition, trace: MoveTrace | None = None) -> dict:
    payload = {
        "a": t.a,
        "pairs": t.m_pairs,
        "singletons": t.n_singletons,
        "mu": list(t.mu),
        "nu": list(t.nu),
        "lambda": list(lam),
        "base": list(t.base),
    }
    if trace is not None:
        payload["trace"] = [s.to_dict() for s in trace.steps]
    return payload


def triple_json(t: MoveTriple, lam: Partition, trace: MoveTrace | None = None) -> str:
    return json.dumps(triple_payload(t, lam, trace))


def valid_triples(a: int, max_weight: int):
    """Every MoveTriple for ``a`` whose total weight is at most ``max_weight``."""
    from rrgmoves.enumeration import base_weight

    def bounded_parts(length, budget, cap, step):
        # weakly decreasing sequences of `length` multiples of `step`, each <= cap, sum <= budget
        if length == 0:
            yield ()
            return
        top = min(cap, budget)
        top -= top % step
        for first in range(top, -1, -step):
            for rest in bounded_parts(length - 1, budget - first, first, step):
                yield (first, *rest)

    m = 0
    while base_weight(a, m, 0) <= max_weight:
        n = 0
        while base_weight(a, m, n) <= max_weight:
            room = max_weight - base_weight(a, m, n)
            for mu in bounded_parts(m, room, room, 2):
                for nu in bounded_parts(n, room - sum(mu), room, 1):
                    yield MoveTriple(a, m, n, mu, nu)
            n += 1
        m += 1
