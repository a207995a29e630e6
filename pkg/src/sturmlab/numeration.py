"""Positional numeration on the recurrence f_{i+2} = k*f_{i+1} + f_i.

The basis starts f_{-2} = 1 - k, f_{-1} = 1, f_0 = 1, so positions 0, 1, 2, ...
of a digit vector weight f_0, f_1, f_2, ...  A digit vector is *regular* when
every digit lies in 0..k and a digit equal to k forces a zero just below it;
each non-negative integer then has exactly one regular representation.
"""

from __future__ import annotations

import threading
from bisect import bisect_right
from typing import Iterable, Sequence

from .errors import CapExceededError

_basis_cache: dict[int, "Basis"] = {}
_basis_cache_lock = threading.Lock()


class Basis:
    """Lazily extended table of the recurrence values for one k."""

    __slots__ = ("k", "_vals", "_lock")

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.k = k
        # _vals[j] holds f_{j-2}: indices -2, -1, 0 seed the recurrence.
        self._vals = [1 - k, 1, 1]
        self._lock = threading.Lock()

    def value(self, n: int) -> int:
        """f_n for n >= -2."""
        if n < -2:
            raise ValueError("basis index must be >= -2")
        j = n + 2
        vals = self._vals
        if j >= len(vals):
            with self._lock:
                vals = self._vals
                if j >= len(vals):
                    grown = list(vals)
                    k = self.k
                    while len(grown) <= j:
                        grown.append(k * grown[-1] + grown[-2])
                    self._vals = grown
                    vals = grown
        return vals[j]

    def largest_index_leq(self, x: int) -> int:
        """Largest n >= 0 with f_n <= x, or -1 when x < 1."""
        if x < 1:
            return -1
        self._extend_past(x)
        # f_0, f_1, f_2, ... (table indices 2, 3, 4, ...) strictly increase.
        return bisect_right(self._vals, x, 2) - 3

    def _extend_past(self, x: int) -> None:
        if self._vals[-1] > x:
            return
        with self._lock:
            grown = list(self._vals)
            k = self.k
            while grown[-1] <= x:
                grown.append(k * grown[-1] + grown[-2])
            self._vals = grown


def get_basis(k: int) -> Basis:
    """Shared per-k basis table."""
    b = _basis_cache.get(k)
    if b is None:
        with _basis_cache_lock:
            b = _basis_cache.get(k)
            if b is None:
                b = Basis(k)
                _basis_cache[k] = b
    return b


def basis_value(k: int, n: int) -> int:
    """f_n for the parameter k."""
    return get_basis(k).value(n)


class DigitVector:
    """An immutable little-endian digit vector (position i weights f_i)."""

    __slots__ = ("_d",)

    def __init__(self, digits: Iterable[int] = ()):
        d = tuple(digits)
        if any(x < 0 for x in d):
            raise ValueError("digits must be non-negative")
        while d and d[-1] == 0:
            d = d[:-1]
        self._d = d

    @classmethod
    def _trusted(cls, stripped: tuple[int, ...]) -> "DigitVector":
        dv = object.__new__(cls)
        dv._d = stripped
        return dv

    @property
    def digits(self) -> tuple[int, ...]:
        return self._d

    def digit(self, i: int) -> int:
        """Digit at position ``i`` (zero beyond the stored length)."""
        if i < 0:
            raise ValueError("position must be >= 0")
        return self._d[i] if i < len(self._d) else 0

    def __len__(self) -> int:
        return len(self._d)

    def __iter__(self):
        return iter(self._d)

    def __eq__(self, other) -> bool:
        if isinstance(other, DigitVector):
            return self._d == other._d
        if isinstance(other, (tuple, list)):
            trimmed = tuple(other)
            while trimmed and trimmed[-1] == 0:
                trimmed = trimmed[:-1]
            return self._d == trimmed
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._d)

    def is_regular(self, k: int) -> bool:
        """True when digits lie in 0..k and a digit k has a 0 below it."""
        d = self._d
        for i, x in enumerate(d):
            if x > k:
                return False
            if x == k and i > 0 and d[i - 1] != 0:
                return False
        return True

    def to_csv(self) -> str:
        """Comma-separated digits, least significant first."""
        return ",".join(str(x) for x in self._d)

    @classmethod
    def from_csv(cls, text: str) -> "DigitVector":
        text = text.strip()
        if not text:
            return cls(())
        return cls(int(t) for t in text.split(","))

    def __repr__(self) -> str:
        return f"DigitVector({list(self._d)})"


def to_digits(k: int, n: int) -> DigitVector:
    """The unique regular digit vector of value ``n`` (greedy, most significant first)."""
    if n < 0:
        raise ValueError("value must be >= 0")
    if n == 0:
        return DigitVector._trusted(())
    basis = get_basis(k)
    top = basis.largest_index_leq(n)
    vals = basis._vals
    out = [0] * (top + 1)
    rem = n
    for i in range(top, -1, -1):
        f = vals[i + 2]
        d = rem // f
        if d:
            out[i] = d
            rem -= d * f
    if rem:
        raise AssertionError("greedy digitization failed to exhaust the value")
    return DigitVector._trusted(tuple(out))


def from_digits(k: int, digits: Sequence[int] | DigitVector) -> int:
    """Value of a digit vector (digits need not be regular)."""
    if isinstance(digits, DigitVector):
        seq = digits.digits
    else:
        seq = tuple(digits)
        if any(x < 0 for x in seq):
            raise ValueError("digits must be non-negative")
    if not seq:
        return 0
    basis = get_basis(k)
    basis.value(len(seq) - 1)
    vals = basis._vals
    return sum(x * vals[i + 2] for i, x in enumerate(seq) if x)


def digit_at(k: int, n: int, i: int) -> int:
    """Digit at position ``i`` of the regular representation of ``n``."""
    return to_digits(k, n).digit(i)


def congruent(k: int, m: int, n: int, j: int) -> bool:
    """True when m and n share all regular digits at positions < j."""
    if j < 0:
        raise ValueError("position bound must be >= 0")
    dm, dn = to_digits(k, m), to_digits(k, n)
    return all(dm.digit(i) == dn.digit(i) for i in range(j))


def normalize(k: int, digits: Sequence[int] | DigitVector) -> DigitVector:
    """Regularize a digit vector without changing its value.

    Repeatedly clears the highest violation: a digit k at position i0+1 over a
    non-zero digit at i0.  One unit is borrowed at i0, the alternating run of
    k's above is zeroed, and a carry lands just past the run; the identity
    k*f_{i+1} = f_{i+2} - f_i telescoped along the run keeps the value fixed.
    Digits must already lie in 0..k.
    """
    if isinstance(digits, DigitVector):
        d = list(digits.digits)
    else:
        d = list(digits)
    if any(x < 0 for x in d):
        raise ValueError("digits must be non-negative")
    if any(x > k for x in d):
        raise ValueError("digits must be <= k; only the adjacency rule is repaired")
    value_before = from_digits(k, d)
    d.append(0)  # room for a final carry
    max_steps = 10 * len(d) * len(d) + 16
    for _ in range(max_steps):
        i0 = -1
        for i in range(len(d) - 2, -1, -1):
            if d[i + 1] == k and d[i] != 0:
                i0 = i
                break
        if i0 < 0:
            break
        j0 = i0 + 1
        while j0 + 2 < len(d) and d[j0 + 2] == k:
            j0 += 2
        d[i0] -= 1
        for pos in range(i0 + 1, j0 + 1, 2):
            d[pos] = 0
        if j0 + 1 == len(d):
            d.append(0)
        d[j0 + 1] += 1
        if d[j0 + 1] > k:
            raise AssertionError("carry overflowed a digit during normalization")
    else:
        raise AssertionError("normalization did not settle within the step cap")
    out = DigitVector(d)
    if from_digits(k, out) != value_before:
        raise AssertionError("normalization changed the represented value")
    if not out.is_regular(k):
        raise AssertionError("normalization left an irregular vector")
    return out


def uniqueness_oracle(k: int, bound: int) -> bool:
    """Exhaustively confirm each value below ``bound`` has exactly one regular vector.

    Enumerates every digit vector over positions 0..M (M chosen so that any
    regular vector of value < bound fits) that obeys the digit rule, tallies
    values, and checks each value in range is hit exactly once.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if bound > 5_000_000:
        raise CapExceededError("uniqueness sweep bound is capped at 5_000_000")
    basis = get_basis(k)
    width = basis.largest_index_leq(bound - 1) + 1
    vals = [basis.value(i) for i in range(width)]
    counts = bytearray(bound)

    # Depth-first over positions, most significant first.  Partial values only
    # grow, so any branch reaching ``bound`` is pruned whole.
    def walk(pos: int, acc: int, above_is_k: bool) -> None:
        if pos < 0:
            if counts[acc] < 2:
                counts[acc] += 1
            return
        f = vals[pos]
        top = 0 if above_is_k else k
        for dd in range(top + 1):
            nacc = acc + dd * f
            if nacc >= bound:
                break
            walk(pos - 1, nacc, dd == k)

    walk(width - 1, 0, False)
    return all(c == 1 for c in counts)
