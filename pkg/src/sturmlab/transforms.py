"""Exponent-preserving sequence transforms and their certified value identities.

Covers the mod-2 difference operator, the coded pair-with-shift product, the
affine form every pair coding takes on a three-block binary word, and the
golden-rotation power sum whose affine tie to the k=1 value is settled here
by exact enclosures.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .approximants import SeriesTruncation, fixed_point_series, series_truncation
from .errors import (
    DegenerateSystemError,
    IndecisiveEnclosureError,
    MissingCodingError,
    NonSturmianError,
    NonSturmianWarning,
)
from .words import GeneralWord, Word

PairCoding = dict[tuple[int, int], int]


def difference(u: GeneralWord, order: int = 1) -> Word:
    """Iterated adjacent difference mod 2; order 0 returns the word unchanged."""
    if order < 0:
        raise ValueError("order must be >= 0")
    if order >= len(u):
        raise ValueError("order must be smaller than the word length")
    sym = u.symbols
    if max(sym, default=0) > 1:
        raise ValueError("difference is defined on binary words")
    for _ in range(order):
        sym = bytes(x ^ y for x, y in zip(sym, sym[1:]))
    return Word._wrap(sym)


def difference_by_binomial(u: GeneralWord, order: int = 1) -> Word:
    """Same operator evaluated directly: position i sums C(order, j)*u[i+j] mod 2.

    The binomial coefficient is odd exactly when j's bits lie inside order's,
    so each output symbol is an XOR over that fixed index mask.  Serves as an
    independent oracle for :func:`difference`.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    if order >= len(u):
        raise ValueError("order must be smaller than the word length")
    sym = u.symbols
    if max(sym, default=0) > 1:
        raise ValueError("difference is defined on binary words")
    mask = [j for j in range(order + 1) if (j & order) == j]
    out = bytearray(len(sym) - order)
    for i in range(len(out)):
        acc = 0
        for j in mask:
            acc ^= sym[i + j]
        out[i] = acc
    return Word._wrap(bytes(out))


def default_pair_coding() -> PairCoding:
    """The coding (x, y) -> 2x + y, injective on all four binary blocks."""
    return {(x, y): 2 * x + y for x in (0, 1) for y in (0, 1)}


def shift_product(u: GeneralWord, coding: PairCoding | None = None) -> GeneralWord:
    """The coded sequence of adjacent pairs: symbol i = coding[(u_i, u_{i+1})]."""
    if len(u) < 2:
        raise ValueError("word must have length >= 2")
    if coding is None:
        coding = default_pair_coding()
    sym = u.symbols
    codes: dict[tuple[int, int], int] = {}
    for block, code in coding.items():
        if code < 0:
            raise ValueError("codes must be non-negative integers")
        codes[block] = code
    out = bytearray(len(sym) - 1)
    try:
        for i in range(len(out)):
            out[i] = codes[(sym[i], sym[i + 1])]
    except KeyError as exc:
        raise MissingCodingError(f"no code for block {exc.args[0]}") from None
    return GeneralWord._wrap(bytes(out), max(codes.values()) + 1)


@dataclass(frozen=True)
class AffineDecomposition:
    """Coefficients with code(x, y) = a0*x + a1*y + a2 on the observed blocks."""

    a0: Fraction
    a1: Fraction
    a2: Fraction
    coding: PairCoding
    blocks_present: tuple[tuple[int, int], ...]

    @property
    def eventually_periodic_capable(self) -> bool:
        """True when the coded product collapses to a constant (a0 = a1 = 0)."""
        return self.a0 == 0 and self.a1 == 0


def _observed_blocks(u: GeneralWord, prefix_len: int | None) -> tuple[tuple[int, int], ...]:
    sym = u.symbols if prefix_len is None else u.symbols[:prefix_len]
    if len(sym) < 2:
        raise ValueError("need at least two symbols to observe blocks")
    return tuple(sorted({(sym[i], sym[i + 1]) for i in range(len(sym) - 1)}))


def _affine_solution(
    blocks: tuple[tuple[int, int], ...], coding: PairCoding
) -> tuple[Fraction, Fraction, Fraction]:
    """Solve a0*x + a1*y + a2 = code(x, y) over the given blocks.

    Underdetermined systems (fewer than three blocks) set the free
    coefficients to zero; four blocks must already be affinely consistent.
    """
    rows = []
    for block in blocks:
        if block not in coding:
            raise MissingCodingError(f"no code for block {block}")
        x, y = block
        rows.append((Fraction(x), Fraction(y), Fraction(1), Fraction(coding[block])))
    # Gaussian elimination over columns (a0, a1, a2); free columns stay zero.
    solution = [Fraction(0), Fraction(0), Fraction(0)]
    pivots: list[tuple[int, list[Fraction]]] = []
    reduced = [list(r) for r in rows]
    col = 0
    for col in range(3):
        pivot_row = None
        for r in reduced:
            if r[col] != 0 and all(r[c] == 0 for c in range(col)):
                pivot_row = r
                break
        if pivot_row is None:
            continue
        reduced.remove(pivot_row)
        pivot_row = [v / pivot_row[col] for v in pivot_row]
        pivots.append((col, pivot_row))
        reduced = [
            [rv - r[col] * pv for rv, pv in zip(r, pivot_row)] for r in reduced
        ]
    for r in reduced:
        if all(v == 0 for v in r[:3]) and r[3] != 0:
            raise NonSturmianError(
                "no affine form reproduces the coding on the observed blocks"
            )
    for col, row in reversed(pivots):
        acc = row[3]
        for c in range(col + 1, 3):
            acc -= row[c] * solution[c]
        solution[col] = acc
    for x, y, _one, code in rows:
        if solution[0] * x + solution[1] * y + solution[2] != code:
            raise DegenerateSystemError("affine solve failed to reproduce a code")
    return solution[0], solution[1], solution[2]


def affine_decompose(
    u: GeneralWord, coding: PairCoding, prefix_len: int | None = None
) -> AffineDecomposition:
    """Express the pair coding affinely over the three blocks a Sturmian word has.

    Demands exactly three distinct length-2 blocks in the inspected prefix;
    the three equations then pin (a0, a1, a2) uniquely (any three distinct
    points of the unit square are affinely independent), and the identity
    holds at every position because it holds per block.
    """
    blocks = _observed_blocks(u, prefix_len)
    if len(blocks) != 3:
        raise NonSturmianError(
            f"expected exactly 3 distinct length-2 blocks, found {len(blocks)}"
        )
    a0, a1, a2 = _affine_solution(blocks, coding)
    return AffineDecomposition(
        a0=a0, a1=a1, a2=a2, coding=dict(coding), blocks_present=blocks
    )


@dataclass(frozen=True)
class ValueRelationReport:
    """Certified comparison of the coded product's value against its affine image.

    Writes V(w) for the series sum of w's symbols against 1/b^i.  The claim
    is V(v) = a0*V(u) + a1*b*(V(u) - u_0) + a2*b/(b-1) for v the coded pair
    sequence of u; with finite truncations both sides become intervals, and
    ``consistent`` says they can still be equal.  ``gap_bound`` bounds the
    true two-sided difference regardless.
    """

    a0: Fraction
    a1: Fraction
    a2: Fraction
    b: int
    depth: int
    left: SeriesTruncation
    residual: Fraction
    allowance: tuple[Fraction, Fraction]
    gap_bound: Fraction
    consistent: bool


def value_affine_relation(
    u: GeneralWord, coding: PairCoding, b: int, depth: int
) -> ValueRelationReport:
    """Check the affine law tying the coded pair sequence's value to u's value."""
    if b < 2:
        raise ValueError("base must be >= 2")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if len(u) < depth + 1:
        raise ValueError("word must supply depth + 1 symbols")
    head = u[: depth + 1]
    blocks = _observed_blocks(head, None)
    a0, a1, a2 = _affine_solution(blocks, coding)
    v = shift_product(head, coding)
    # Truncations: u cut at `depth` symbols, v naturally has `depth` symbols.
    su = series_truncation(head[:depth], b, digit_cap=1)
    sv = series_truncation(v, b, digit_cap=max(coding.values()))
    u0 = head[0]
    r0 = a0 * su.value + a1 * b * (su.value - u0) + a2 * Fraction(b, b - 1)
    c = a0 + a1 * b
    c_tail = c * su.tail_bound
    residual = sv.value - r0
    allow_lo = min(Fraction(0), c_tail) - sv.tail_bound
    allow_hi = max(Fraction(0), c_tail)
    gap_bound = abs(residual) + sv.tail_bound + abs(c_tail)
    return ValueRelationReport(
        a0=a0, a1=a1, a2=a2, b=b, depth=depth, left=sv,
        residual=residual, allowance=(allow_lo, allow_hi),
        gap_bound=gap_bound, consistent=allow_lo <= residual <= allow_hi,
    )


def block_determinism(
    u: GeneralWord, order: int, prefix_len: int | None = None
) -> tuple[int, dict[Word, int]]:
    """Map each length-(order+1) block to the difference symbol it forces.

    The order-th difference at position i depends only on the block
    u_i..u_{i+order}, through the parity mask of binomial coefficients.  The
    table is rebuilt from the mask and cross-checked against the iterated
    operator at every position; a Sturmian word shows exactly order+2 blocks
    (warned otherwise, not raised).
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    head = u if prefix_len is None else u[:prefix_len]
    if len(head) <= order:
        raise ValueError("prefix must be longer than the order")
    sym = head.symbols
    if max(sym) > 1:
        raise ValueError("block determinism is defined on binary words")
    mask = [j for j in range(order + 1) if (j & order) == j]
    diff = difference(head, order).symbols
    table: dict[Word, int] = {}
    for i in range(len(sym) - order):
        block = Word._wrap(sym[i : i + order + 1])
        acc = 0
        for j in mask:
            acc ^= sym[i + j]
        if acc != diff[i]:
            raise RuntimeError(
                "binomial-mask evaluation disagrees with the iterated operator"
            )
        seen = table.setdefault(block, acc)
        if seen != acc:
            raise RuntimeError("one block produced two different difference values")
    count = len(table)
    if count != order + 2:
        warnings.warn(
            f"found {count} blocks of length {order + 1}, not {order + 2}",
            NonSturmianWarning,
            stacklevel=2,
        )
    return count, table


def floor_golden(n: int) -> int:
    """Exact floor(n * (1+sqrt(5))/2) by integer square root."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return (n + isqrt(5 * n * n)) // 2


@dataclass(frozen=True)
class RotationSumReport:
    """Which affine pair ties the golden power sum to the k=1 base-b value.

    The sum is (b-1) * sum over n >= 1 of b^(-floor(n*golden)); candidates
    express it as c1 * V + c2 with V the k=1 fixed-point value.  Exactly one
    candidate must survive the interval test for the run to be decisive.
    """

    b: int
    depth: int
    sum_lo: Fraction
    sum_hi: Fraction
    value_lo: Fraction
    value_hi: Fraction
    direct_pair: tuple[Fraction, Fraction]
    shifted_pair: tuple[Fraction, Fraction]
    direct_matches: bool
    shifted_matches: bool
    matching: str  # "direct" or "index_shifted"
    residual_bound: Fraction


def rotation_sum_relation(b: int, depth: int) -> RotationSumReport:
    """Decide which affine pair matches the golden power sum, by enclosures."""
    if b < 2:
        raise ValueError("base must be >= 2")
    if depth < 50:
        raise ValueError("depth must be >= 50")
    # Exact truncation of (b-1) * sum b^{-floor(n*golden)} up to exponent `depth`.
    acc = 0
    n = 1
    while True:
        e = floor_golden(n)
        if e > depth:
            break
        acc += b ** (depth - e)
        n += 1
    sum_lo = Fraction((b - 1) * acc, b**depth)
    # Cut terms have exponents > depth; they sum below (b-1) * b^-depth / (b-1).
    sum_hi = sum_lo + Fraction(1, b**depth)
    xi = fixed_point_series(1, b, depth)
    value_lo, value_hi = xi.value, xi.value + xi.tail_bound
    direct = (Fraction(-(b - 1)), Fraction(1))
    shifted = (Fraction(-(b - 1), b), Fraction(1))

    def match(pair: tuple[Fraction, Fraction]) -> tuple[bool, Fraction]:
        c1, c2 = pair
        lo = c1 * value_hi + c2
        hi = c1 * value_lo + c2
        overlaps = lo <= sum_hi and sum_lo <= hi
        bound = max(abs(sum_hi - lo), abs(hi - sum_lo))
        return overlaps, bound

    direct_ok, direct_bound = match(direct)
    shifted_ok, shifted_bound = match(shifted)
    if direct_ok == shifted_ok:
        raise IndecisiveEnclosureError(
            "enclosures do not separate the candidate pairs; increase depth"
        )
    return RotationSumReport(
        b=b, depth=depth,
        sum_lo=sum_lo, sum_hi=sum_hi,
        value_lo=value_lo, value_hi=value_hi,
        direct_pair=direct, shifted_pair=shifted,
        direct_matches=direct_ok, shifted_matches=shifted_ok,
        matching="direct" if direct_ok else "index_shifted",
        residual_bound=direct_bound if direct_ok else shifted_bound,
    )
