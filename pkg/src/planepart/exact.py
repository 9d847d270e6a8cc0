"""Exact big-integer values of p2(n).

The main route is the sigma2 recurrence n*p2(n) = sum_{j<=n} sigma2(j)*p2(n-j)
(logarithmic derivative of the MacMahon product); p2_enumerate is a brute-force
enumeration used as an independent oracle for small n.
"""

from __future__ import annotations

from dataclasses import dataclass
from operator import mul

from .arith import sigma2_table


@dataclass(frozen=True)
class PlanePartitionTable:
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.values or self.values[0] != 1:
            raise ValueError("table must start with p2(0) = 1")

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)


def p2_exact_table(N: int) -> PlanePartitionTable:
    """Exact p2(0..N) via the sigma2 recurrence; O(N^2) big-integer work."""
    if N < 0:
        raise ValueError("p2_exact_table requires N >= 0")
    sig = sigma2_table(N)
    values = [1]
    for n in range(1, N + 1):
        acc = sum(map(mul, sig[1 : n + 1], values[n - 1 :: -1]))
        q, r = divmod(acc, n)
        if r:
            raise ArithmeticError("sigma2 recurrence produced a non-integer")
        values.append(q)
    return PlanePartitionTable(values=tuple(values))


def _count_fillings(bound: tuple[int, ...], remaining: int) -> int:
    """Rows below a row `bound`, each weakly decreasing and pointwise <= bound."""
    if remaining == 0:
        return 1
    total = 0
    for row in _rows_under(bound, remaining):
        total += _count_fillings(row, remaining - sum(row))
    return total


def _rows_under(bound: tuple[int, ...], limit: int):
    """Non-empty weakly decreasing rows pointwise <= bound with sum <= limit."""
    def extend(prefix: list[int], pos: int, left: int):
        if prefix:
            yield tuple(prefix)
        if pos >= len(bound):
            return
        cap = min(bound[pos], left, prefix[-1] if prefix else left)
        for part in range(cap, 0, -1):
            prefix.append(part)
            yield from extend(prefix, pos + 1, left - part)
            prefix.pop()

    yield from extend([], 0, limit)


def p2_enumerate(n: int) -> int:
    """Count plane partitions of n by exhaustive enumeration (n <= 8)."""
    if not 0 <= n <= 8:
        raise ValueError("p2_enumerate supports 0 <= n <= 8 only")
    if n == 0:
        return 1
    top = tuple([n] * n)  # first row unconstrained up to total n
    total = 0
    for first in _rows_under(top, n):
        total += _count_fillings(first, n - sum(first))
    return total
