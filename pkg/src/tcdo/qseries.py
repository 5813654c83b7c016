"""Truncated q-series with exact integer coefficients.

Every series here is a formal power series in q cut off at a fixed order
(inclusive), and the order is carried around explicitly so that mixed-order
arithmetic is an error instead of a silent truncation.  Coefficients are
plain Python ints throughout; nothing in this module ever touches floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


class OrderMismatchError(ValueError):
    """Raised when combining two series truncated at different orders."""


@dataclass(frozen=True)
class QSeries:
    """A q-series truncated at ``order`` (coefficient list has order+1 entries)."""

    coeffs: tuple[int, ...]
    order: int

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ValueError(f"truncation order must be >= 0, got {self.order}")
        if len(self.coeffs) != self.order + 1:
            raise ValueError(
                f"need {self.order + 1} coefficients for order {self.order}, "
                f"got {len(self.coeffs)}"
            )
        if not all(isinstance(c, int) for c in self.coeffs):
            raise TypeError("QSeries coefficients must be ints")

    def coeff(self, j: int) -> int:
        if not 0 <= j <= self.order:
            raise IndexError(f"coefficient index {j} outside 0..{self.order}")
        return self.coeffs[j]

    def __add__(self, other: "QSeries") -> "QSeries":
        _check_orders(self, other)
        return QSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.order)

    def __sub__(self, other: "QSeries") -> "QSeries":
        _check_orders(self, other)
        return QSeries(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.order)

    def __rmul__(self, c: int) -> "QSeries":
        if not isinstance(c, int):
            return NotImplemented
        return QSeries(tuple(c * a for a in self.coeffs), self.order)

    def shift(self, p: int) -> "QSeries":
        """Multiply by q^p (p >= 0), staying at the same truncation order."""
        if p < 0:
            raise ValueError("shift exponent must be >= 0")
        coeffs = (0,) * min(p, self.order + 1) + self.coeffs
        return QSeries(coeffs[: self.order + 1], self.order)

    def __str__(self) -> str:
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if j == 0:
                parts.append(str(c))
            else:
                q = "q" if j == 1 else f"q^{j}"
                parts.append(q if c == 1 else f"{c}*{q}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def _check_orders(a: QSeries, b: QSeries) -> None:
    if a.order != b.order:
        raise OrderMismatchError(f"series orders differ: {a.order} != {b.order}")


def series_one(order: int) -> QSeries:
    return QSeries((1,) + (0,) * order, order)


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    """Cauchy product of two series truncated at the same order."""
    _check_orders(a, b)
    n = a.order
    out = [0] * (n + 1)
    for i, ai in enumerate(a.coeffs):
        if ai == 0:
            continue
        for j in range(n + 1 - i):
            out[i + j] += ai * b.coeffs[j]
    return QSeries(tuple(out), n)


def geometric(p: int, order: int) -> QSeries:
    """(1 - q^p)^(-1) truncated at ``order``, for p >= 1."""
    if p < 1:
        raise ValueError("geometric exponent must be >= 1")
    coeffs = tuple(1 if j % p == 0 else 0 for j in range(order + 1))
    return QSeries(coeffs, order)


def eta_inverse_squared(order: int) -> QSeries:
    """prod_{j=1..order} (1 - q^j)^(-2), the 2-colored partition generating series."""
    out = series_one(order)
    for j in range(1, order + 1):
        g = geometric(j, order)
        out = series_mul(out, series_mul(g, g))
    return out


@lru_cache(maxsize=None)
def _eta_coeffs(order: int) -> tuple[int, ...]:
    return eta_inverse_squared(order).coeffs


def count_2colored(j: int) -> int:
    """Number of partitions of j with parts in two colors (1, 2, 5, 10, 20, ...)."""
    if j < 0:
        raise ValueError(f"partition count needs j >= 0, got {j}")
    return _eta_coeffs(j)[j]


def char_L(n: int, order: int) -> QSeries:
    """Graded dimension of the irreducible with integral weight n >= 0.

    (n+1) * (1 - q^(n+1))^(-1) * prod_j (1 - q^j)^(-2); the constant term is
    n+1, the dimension of the corresponding finite-dimensional sl2 module.
    """
    if n < 0:
        raise ValueError(f"char_L is defined for n >= 0, got {n}")
    out = series_mul(geometric(n + 1, order), eta_inverse_squared(order))
    return (n + 1) * out


def char_H1(n: int, order: int) -> QSeries:
    """q^(n+1) * char_L(n): the first-cohomology character for twist n >= 0."""
    return char_L(n, order).shift(n + 1)
