"""Truncated q-series with exact integer coefficients, plus the series builders.

A :class:`QPolynomial` holds the coefficients of q^0 .. q^N; nothing above
the truncation order is ever read or produced. An :class:`XQSeries` adds a
second variable x, stored as a map from x-degree to QPolynomial.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from rrgmoves.enumeration import CountTable, base_weight


class TruncationMismatch(ValueError):
    pass


@dataclass(frozen=True)
class QPolynomial:
    coefficients: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))
        if not self.coefficients:
            raise ValueError("a truncated series needs at least the constant term")

    @classmethod
    def zero(cls, order: int) -> QPolynomial:
        return cls((0,) * (order + 1))

    @classmethod
    def one(cls, order: int) -> QPolynomial:
        return cls.monomial(0, order)

    @classmethod
    def monomial(cls, exponent: int, order: int, coeff: int = 1) -> QPolynomial:
        c = [0] * (order + 1)
        if exponent <= order:
            c[exponent] = coeff
        return cls(c)

    @classmethod
    def from_terms(cls, terms: dict[int, int] | Sequence[int], order: int) -> QPolynomial:
        """Build from ``{exponent: coeff}`` or a dense list, dropping anything above ``order``."""
        c = [0] * (order + 1)
        items = terms.items() if isinstance(terms, dict) else enumerate(terms)
        for e, v in items:
            if e <= order:
                c[e] += v
        return cls(c)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, exponent: int) -> int:
        if not 0 <= exponent <= self.order:
            raise IndexError(f"q^{exponent} is outside truncation order {self.order}")
        return self.coefficients[exponent]

    def _check(self, other: QPolynomial) -> None:
        if other.order != self.order:
            raise TruncationMismatch(f"orders differ: {self.order} vs {other.order}")

    def __add__(self, other: QPolynomial) -> QPolynomial:
        self._check(other)
        return QPolynomial(tuple(x + y for x, y in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: QPolynomial) -> QPolynomial:
        self._check(other)
        return QPolynomial(tuple(x - y for x, y in zip(self.coefficients, other.coefficients)))

    def __mul__(self, other: QPolynomial) -> QPolynomial:
        return poly_mul(self, other)

    def shift(self, exponent: int) -> QPolynomial:
        """Multiply by q^exponent."""
        if exponent >= len(self.coefficients):
            return QPolynomial.zero(self.order)
        return QPolynomial((0,) * exponent + self.coefficients[: len(self.coefficients) - exponent])

    def truncate(self, order: int) -> QPolynomial:
        if order > self.order:
            raise TruncationMismatch(f"cannot extend order {self.order} to {order}")
        return QPolynomial(self.coefficients[: order + 1])

    def nonzero(self) -> list[tuple[int, int]]:
        return [(e, c) for e, c in enumerate(self.coefficients) if c]


def poly_mul(p: QPolynomial, r: QPolynomial) -> QPolynomial:
    p._check(r)
    n = p.order
    out = [0] * (n + 1)
    rc = r.coefficients
    for i, ci in enumerate(p.coefficients):
        if ci:
            for j in range(n + 1 - i):
                out[i + j] += ci * rc[j]
    return QPolynomial(out)


def _divide_by_one_minus(coeffs: list[int], step: int) -> None:
    # in place: coeffs <- coeffs / (1 - q^step), as a truncated series
    for e in range(step, len(coeffs)):
        coeffs[e] += coeffs[e - step]


@lru_cache(maxsize=4096)
def inv_pochhammer(alpha: int, m: int, order: int) -> QPolynomial:
    """Truncation of ``1 / (q^alpha; q^alpha)_m`` at q^order."""
    if alpha < 1 or m < 0 or order < 0:
        raise ValueError("need alpha >= 1, m >= 0, order >= 0")
    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    for j in range(1, m + 1):
        if alpha * j <= order:
            _divide_by_one_minus(coeffs, alpha * j)
    return QPolynomial(coeffs)


def product_side(k: int, a: int, order: int) -> QPolynomial:
    """Truncation of the product over n not congruent to 0, +-a (mod 2k+1) of 1/(1-q^n)."""
    if k < 2 or not 1 <= a <= k:
        raise ValueError(f"need k >= 2 and 1 <= a <= k, got k={k}, a={a}")
    modulus = 2 * k + 1
    forbidden = {0, a % modulus, (-a) % modulus}
    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    for n in range(1, order + 1):
        if n % modulus not in forbidden:
            _divide_by_one_minus(coeffs, n)
    return QPolynomial(coeffs)


def andrews_sum_k3(order: int) -> QPolynomial:
    """Andrews-Gordon sum at k=3: sum over m, n of q^((m+n)^2 + n^2) / ((q;q)_m (q;q)_n)."""
    total = [0] * (order + 1)
    m = 0
    while m * m <= order:
        n = 0
        while (m + n) ** 2 + n * n <= order:
            term = (inv_pochhammer(1, m, order) * inv_pochhammer(1, n, order)).shift((m + n) ** 2 + n * n)
            for e, c in enumerate(term.coefficients):
                total[e] += c
            n += 1
        m += 1
    return QPolynomial(total)


@dataclass(frozen=True)
class XQSeries:
    """Finite sum of x^d * P_d(q); missing degrees are zero."""

    order: int
    x_max: int
    terms: dict[int, QPolynomial] = field(default_factory=dict)

    def __post_init__(self):
        for d, poly in self.terms.items():
            if poly.order != self.order:
                raise TruncationMismatch(f"x^{d} has order {poly.order}, series has {self.order}")
            if not 0 <= d <= self.x_max:
                raise ValueError(f"x-degree {d} outside 0..{self.x_max}")

    def coefficient(self, x_degree: int, q_degree: int) -> int:
        poly = self.terms.get(x_degree)
        return 0 if poly is None else poly[q_degree]

    def at_x_equals_one(self) -> QPolynomial:
        total = QPolynomial.zero(self.order)
        for d in sorted(self.terms):
            total = total + self.terms[d]
        return total

    def truncate(self, order: int, x_max: int | None = None) -> XQSeries:
        x_max = self.x_max if x_max is None else x_max
        return XQSeries(
            order, x_max, {d: p.truncate(order) for d, p in self.terms.items() if d <= x_max}
        )

    def rows(self) -> list[tuple[int, int, int]]:
        return [(d, e, c) for d in sorted(self.terms) for e, c in self.terms[d].nonzero()]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, XQSeries):
            return NotImplemented
        return (self.order, self.x_max, self.rows()) == (other.order, other.x_max, other.rows())

    def to_tsv(self) -> str:
        lines = ["xdeg\tqdeg\tcoeff"] + [f"{d}\t{e}\t{c}" for d, e, c in self.rows()]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "truncation": self.order,
            "xmax": self.x_max,
            "terms": [[d, e, str(c)] for d, e, c in self.rows()],
        }
        return json.dumps(payload)

    @classmethod
    def from_json(cls, text: str) -> XQSeries:
        payload = json.loads(text)
        order, x_max = payload["truncation"], payload["xmax"]
        dense: dict[int, list[int]] = {}
        for d, e, c in payload["terms"]:
            dense.setdefault(d, [0] * (order + 1))[e] = int(c)
        return cls(order, x_max, {d: QPolynomial(c) for d, c in dense.items()})


def _accumulate(order: int, x_max: int, contributions: Iterable[tuple[int, QPolynomial]]) -> XQSeries:
    dense: dict[int, list[int]] = {}
    for d, poly in contributions:
        acc = dense.setdefault(d, [0] * (order + 1))
        for e, c in enumerate(poly.coefficients):
            acc[e] += c
    return XQSeries(order, x_max, {d: QPolynomial(c) for d, c in sorted(dense.items())})


def t_series(a: int, order: int, x_max: int) -> XQSeries:
    """The pair/singleton sum for T_a(x), truncated at q^order and x^x_max.

    Term (m, n) is q^E x^(2m+n) / ((q^2;q^2)_m (q;q)_n), E being the base
    partition weight for m pairs and n singletons.
    """
    if a not in (1, 2, 3):
        raise ValueError("a must be 1, 2 or 3")

    def terms():
        m = 0
        while base_weight(a, m, 0) <= order:
            n = 0
            while base_weight(a, m, n) <= order:
                if 2 * m + n <= x_max:
                    poly = inv_pochhammer(2, m, order) * inv_pochhammer(1, n, order)
                    yield 2 * m + n, poly.shift(base_weight(a, m, n))
                n += 1
            m += 1

    return _accumulate(order, x_max, terms())


def series_from_counts(table: CountTable, order: int | None = None, x_max: int | None = None) -> XQSeries:
    """Read a difference-side count table as the series sum count(n, m) x^m q^n."""
    if table.side != "difference":
        raise ValueError("series_from_counts expects a difference-side table")
    order = table.max_weight if order is None else order
    x_max = order if x_max is None else x_max
    contributions = (
        (m, QPolynomial.monomial(n, order, c))
        for (n, m), c in sorted(table.entries.items())
        if n <= order and m <= x_max and c
    )
    return _accumulate(order, x_max, contributions)
