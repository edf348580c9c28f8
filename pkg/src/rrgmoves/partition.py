"""Partitions, the Gordon difference/modulus conditions, and the pair/singleton split."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence


class MultiplicityTooHigh(ValueError):
    def __init__(self, value: int):
        super().__init__(f"part {value} occurs three or more times")
        self.value = value


class OverlapError(ValueError):
    def __init__(self, value: int):
        super().__init__(f"value {value} is listed both as a pair and as a singleton")
        self.value = value


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    Instances are immutable; every operation in this package returns a new
    partition instead of editing one in place.

    >>> Partition([3, 1, 2])
    Traceback (most recent call last):
    ...
    ValueError: parts must be weakly decreasing: (3, 1, 2)
    >>> Partition([2, 2, 1]).weight
    5
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()) -> Partition:
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        return tuple.__new__(cls, parts)

    @classmethod
    def _trusted(cls, parts: Iterable[int]) -> Partition:
        # caller guarantees the invariants; used on hot enumeration paths
        return tuple.__new__(cls, parts)

    @classmethod
    def from_multiset(cls, parts: Iterable[int]) -> Partition:
        return cls(sorted(parts, reverse=True))

    @classmethod
    def parse(cls, text: str) -> Partition:
        """Read the canonical comma-separated form; the empty string is the empty partition."""
        text = text.strip()
        if not text:
            return cls(())
        return cls(int(tok) for tok in text.split(","))

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicity(self, value: int) -> int:
        return self.count(value)

    def __str__(self) -> str:
        return ",".join(map(str, self))

    def __repr__(self) -> str:
        return f"Partition({list(self)})"


def check_difference(p: Sequence[int], k: int, a: int) -> bool:
    """Gordon's difference side: ``p[i] >= p[i+k-1] + 2`` and at most ``a-1`` ones."""
    if k < 2 or not 1 <= a <= k:
        raise ValueError(f"need k >= 2 and 1 <= a <= k, got k={k}, a={a}")
    span = k - 1
    for i in range(len(p) - span):
        if p[i] < p[i + span] + 2:
            return False
    ones = 0
    for part in reversed(p):
        if part != 1:
            break
        ones += 1
    return ones <= a - 1


def check_modulus(p: Sequence[int], k: int, a: int) -> bool:
    """Gordon's modulus side: no part congruent to 0 or +-a modulo 2k+1."""
    if k < 2 or not 1 <= a <= k:
        raise ValueError(f"need k >= 2 and 1 <= a <= k, got k={k}, a={a}")
    modulus = 2 * k + 1
    forbidden = {0, a % modulus, (-a) % modulus}
    return all(part % modulus not in forbidden for part in p)


@dataclass(frozen=True)
class PairSingletonForm:
    pairs: tuple[int, ...]
    singletons: tuple[int, ...]

    def __post_init__(self):
        for name in ("pairs", "singletons"):
            values = tuple(getattr(self, name))
            object.__setattr__(self, name, values)
            if any(v < 1 for v in values):
                raise ValueError(f"{name} must be positive: {values}")
            if any(values[i] <= values[i + 1] for i in range(len(values) - 1)):
                raise ValueError(f"{name} must be strictly decreasing: {values}")
        common = set(self.pairs) & set(self.singletons)
        if common:
            raise OverlapError(max(common))

    @property
    def n_pairs(self) -> int:
        return len(self.pairs)

    @property
    def n_singletons(self) -> int:
        return len(self.singletons)


def decompose(p: Sequence[int]) -> PairSingletonForm:
    counts = Counter(p)
    too_many = [v for v, c in counts.items() if c >= 3]
    if too_many:
        raise MultiplicityTooHigh(max(too_many))
    pairs = sorted((v for v, c in counts.items() if c == 2), reverse=True)
    singletons = sorted((v for v, c in counts.items() if c == 1), reverse=True)
    return PairSingletonForm(tuple(pairs), tuple(singletons))


def recompose(f: PairSingletonForm) -> Partition:
    return Partition(sorted(list(f.pairs) * 2 + list(f.singletons), reverse=True))
