"""Random access into the fixed point, without materializing prefixes.

The n-th symbol is 1 exactly when the bottom digit of the regular
representation of n equals k.  Shifting an index by a basis value f_n flips
the symbol only for indices whose low digits match one of two fixed patterns,
which gives a direct description of where a prefix and its shift disagree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import CapExceededError
from .numeration import get_basis, to_digits

POSITION_SCAN_CAP = 50_000_000


def symbol_at(k: int, n: int) -> int:
    """Symbol of the fixed point at index ``n`` (0-based), in O(log n) time."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < 0:
        raise ValueError("index must be >= 0")
    if n <= k:
        # The fixed point starts 0^k 1.
        return 1 if n == k else 0
    basis = get_basis(k)
    top = basis.largest_index_leq(n)
    vals = basis._vals
    rem = n
    for j in range(top + 2, 2, -1):
        f = vals[j]
        d = rem // f
        if d:
            rem -= d * f
    # rem is now the bottom digit (weight f_0 = 1).
    return 1 if rem == k else 0


@dataclass(frozen=True)
class MismatchVerdict:
    """Whether symbols at i and i + f_n differ, and the sign of (new - old)."""

    differs: bool
    sign: int


@lru_cache(maxsize=256)
def _shift_patterns(k: int, n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Digit patterns (positions 0..n) of f_{n+1} - 2 and f_{n+1} - 1."""
    dm2 = to_digits(k, get_basis(k).value(n + 1) - 2)
    dm1 = to_digits(k, get_basis(k).value(n + 1) - 1)
    pat2 = tuple(dm2.digit(i) for i in range(n + 1))
    pat1 = tuple(dm1.digit(i) for i in range(n + 1))
    return pat2, pat1


def mismatch(k: int, i: int, n: int) -> MismatchVerdict:
    """Compare the fixed point at i and i + f_n by digits alone.

    The symbols differ exactly when digits 0..n of i reproduce those of
    f_{n+1} - 2 or f_{n+1} - 1 while the digit of i at position n + 1 stays
    below k.  The sign is (-1)^n on the first pattern and flips on the second.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if i < 0:
        raise ValueError("index must be >= 0")
    d = to_digits(k, i)
    if d.digit(n + 1) == k:
        return MismatchVerdict(False, 0)
    pat2, pat1 = _shift_patterns(k, n)
    low = tuple(d.digit(t) for t in range(n + 1))
    if low == pat2:
        return MismatchVerdict(True, 1 if n % 2 == 0 else -1)
    if low == pat1:
        return MismatchVerdict(True, -1 if n % 2 == 0 else 1)
    return MismatchVerdict(False, 0)


def mismatch_positions(k: int, n: int, limit: int) -> list[int]:
    """All indices i < limit where the fixed point differs from its f_n-shift."""
    if limit < 0:
        raise ValueError("limit must be >= 0")
    if limit > POSITION_SCAN_CAP:
        raise CapExceededError(f"scan limit {limit} exceeds cap {POSITION_SCAN_CAP}")
    return [i for i in range(limit) if mismatch(k, i, n).differs]
