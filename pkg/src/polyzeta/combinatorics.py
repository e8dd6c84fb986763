"""Exact integer and rational combinatorics.

Five triangular tables drive the rest of the package:

* ``stirling2``   S(m, k), set-partition counts
* ``stirling1``   signed: coefficients of x(x-1)...(x-n+1)
* ``eulerian``    e(k, m), ascent counts over permutations of m
* ``b``           coefficients of the theta-operator tower applied to
                  log(z - a):  theta^m log(z-a) = sum_k b(k,m) z^k (z-a)^(-k)
* ``c``           coefficients of theta^m log(z^N - 1) in its pole form

plus Bernoulli numbers in the z/(e^z - 1) convention, i.e. B1 = -1/2.

Everything here is exact (Python ints and Fractions).  Out-of-triangle
indices return 0; they are never an error.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from types import MappingProxyType

from .errors import DomainError

__all__ = [
    "TRIANGLE_NAMES",
    "TriangleTable",
    "stirling2",
    "stirling1_signed",
    "eulerian",
    "b_entry",
    "c_entry",
    "b_table",
    "c_table",
    "triangle",
    "bernoulli",
    "alternating_c_sum",
]

TRIANGLE_NAMES = ("stirling1", "stirling2", "eulerian", "b", "c")


def _check_positive(value, what):
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise DomainError(f"{what} must be a positive integer, got {value!r}")


# --- row recursions (index 0 slot is padding so row[k] means index k) -------


@lru_cache(maxsize=None)
def _stirling2_row(m: int) -> tuple[int, ...]:
    if m == 1:
        return (0, 1)
    prev = _stirling2_row(m - 1)

    def at(k):
        return prev[k] if 0 <= k < len(prev) else 0

    # S(m,k) = S(m-1,k-1) + k S(m-1,k)
    return (0,) + tuple(at(k - 1) + k * at(k) for k in range(1, m + 1))


@lru_cache(maxsize=None)
def _stirling1_row(n: int) -> tuple[int, ...]:
    if n == 1:
        return (0, 1)
    prev = _stirling1_row(n - 1)

    def at(k):
        return prev[k] if 0 <= k < len(prev) else 0

    # multiply the falling factorial by (x - (n-1))
    return (0,) + tuple(at(k - 1) - (n - 1) * at(k) for k in range(1, n + 1))


@lru_cache(maxsize=None)
def _eulerian_row(m: int) -> tuple[int, ...]:
    if m == 1:
        return (0, 1)
    prev = _eulerian_row(m - 1)

    def at(k):
        return prev[k] if 0 <= k < len(prev) else 0

    # e(k,m) = (m-k+1) e(k-1,m-1) + k e(k,m-1)
    return (0,) + tuple((m - k + 1) * at(k - 1) + k * at(k) for k in range(1, m + 1))


@lru_cache(maxsize=None)
def _b_row(m: int) -> tuple[int, ...]:
    if m == 1:
        return (0, 1)
    prev = _b_row(m - 1)

    def at(k):
        return prev[k] if 0 <= k < len(prev) else 0

    # b(k,m) = k b(k,m-1) - (k-1) b(k-1,m-1)
    return (0,) + tuple(k * at(k) - (k - 1) * at(k - 1) for k in range(1, m + 1))


@lru_cache(maxsize=None)
def _c_row(m: int) -> tuple[int, ...]:
    if m == 1:
        return (0, 1)
    prev = _c_row(m - 1)

    def at(k):
        return prev[k] if 0 <= k < len(prev) else 0

    # c(k,m) = -( k c(k,m-1) + (m-k) c(k-1,m-1) )
    return (0,) + tuple(-(k * at(k) + (m - k) * at(k - 1)) for k in range(1, m + 1))


_ROW_BUILDERS = {
    "stirling1": _stirling1_row,
    "stirling2": _stirling2_row,
    "eulerian": _eulerian_row,
    "b": _b_row,
    "c": _c_row,
}


def stirling2(m: int, k: int) -> int:
    """S(m, k): partitions of an m-set into k nonempty blocks."""
    if not isinstance(m, int) or not isinstance(k, int):
        raise DomainError("stirling2 takes integer indices")
    if not (1 <= k <= m):
        return 0
    return _stirling2_row(m)[k]


def stirling1_signed(n: int, k: int) -> int:
    """Coefficient of x^k in the falling factorial x(x-1)...(x-n+1)."""
    if not isinstance(n, int) or not isinstance(k, int):
        raise DomainError("stirling1_signed takes integer indices")
    if not (1 <= k <= n):
        return 0
    return _stirling1_row(n)[k]


def eulerian(k: int, m: int) -> int:
    """e(k, m): permutations of 1..m with exactly k-1 ascents."""
    if not isinstance(k, int) or not isinstance(m, int):
        raise DomainError("eulerian takes integer indices")
    if not (1 <= k <= m):
        return 0
    return _eulerian_row(m)[k]


def b_entry(k: int, m: int) -> int:
    if not (1 <= k <= m):
        return 0
    return _b_row(m)[k]


def c_entry(k: int, m: int) -> int:
    if not (1 <= k <= m):
        return 0
    return _c_row(m)[k]


# --- table objects ----------------------------------------------------------


class TriangleTable:
    """Immutable triangular table of exact entries for 1 <= k <= m <= max_m."""

    __slots__ = ("name", "max_m", "entries")

    def __init__(self, name: str, max_m: int, entries: dict):
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "max_m", max_m)
        object.__setattr__(self, "entries", MappingProxyType(dict(entries)))

    def __setattr__(self, *_):
        raise AttributeError("TriangleTable is immutable")

    def value(self, k: int, m: int) -> int:
        # out-of-triangle reads are 0 by convention, never an error
        return self.entries.get((k, m), 0)

    def rows(self):
        """Yield (k, m, value) in canonical order: m ascending, k ascending."""
        for m in range(1, self.max_m + 1):
            for k in range(1, m + 1):
                yield k, m, self.entries[(k, m)]

    def __eq__(self, other):
        return (
            isinstance(other, TriangleTable)
            and self.name == other.name
            and self.max_m == other.max_m
            and dict(self.entries) == dict(other.entries)
        )

    def __repr__(self):
        return f"TriangleTable(name={self.name!r}, max_m={self.max_m})"


@lru_cache(maxsize=None)
def triangle(name: str, max_m: int) -> TriangleTable:
    """Build (once, cached) the named triangle up to row max_m."""
    if name not in TRIANGLE_NAMES:
        raise DomainError(f"unknown triangle {name!r}; choose from {TRIANGLE_NAMES}")
    _check_positive(max_m, "max_m")
    builder = _ROW_BUILDERS[name]
    entries = {}
    for m in range(1, max_m + 1):
        row = builder(m)
        for k in range(1, m + 1):
            entries[(k, m)] = row[k]
    return TriangleTable(name, max_m, entries)


def b_table(max_m: int) -> TriangleTable:
    return triangle("b", max_m)


def c_table(max_m: int) -> TriangleTable:
    return triangle("c", max_m)


# --- Bernoulli numbers and the alternating-sum identity ---------------------


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2 (generating function z/(e^z - 1))."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise DomainError(f"Bernoulli index must be a nonnegative integer, got {n!r}")
    if n == 0:
        return Fraction(1)
    # sum_{j<=m} C(m+1, j) B_j = 0 for m >= 1
    total = Fraction(0)
    for j in range(n):
        total += comb(n + 1, j) * bernoulli(j)
    return -total / (n + 1)


def alternating_c_sum(n: int) -> Fraction:
    """sum_{k=1..n} (-1)^k c(k, n), for n >= 2.

    Equals (-1)^n 2^n (2^n - 1) B_n / n exactly; n = 1 is excluded because
    the B_1 sign convention breaks the identity there.
    """
    _check_positive(n, "n")
    if n == 1:
        raise DomainError("alternating_c_sum is defined for n >= 2 only")
    row = _c_row(n)
    return Fraction(sum((-1) ** k * row[k] for k in range(1, n + 1)))


def eulerian_row_factorial(m: int) -> int:
    """Reference value for the row-sum invariant: sum_k e(k, m) = m!."""
    _check_positive(m, "m")
    return factorial(m)
