"""Rational approximants read off base-b expansions of the fixed point.

The prefix of length f_n, read as base-b digits, yields p/q with
q = b^{f_n} - 1; the gap q*x - p is a signed series supported exactly on the
indices where the fixed point disagrees with its f_n-shift.  Everything here
is exact: enclosures are rational intervals, and the large-n bound checks
reduce to integer sign evaluations on sparse power sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceededError, IndecisiveEnclosureError
from .numeration import get_basis, to_digits
from .words import GeneralWord, Word, fixed_point_prefix

DEPTH_CAP = 1_000_000
DENSE_AUTO_LIMIT = 300_000

_MAX_POWER_BITS = 8_000_000  # refuse to materialize integers past ~1 MB


def default_depth(k: int, n: int) -> int:
    """Expansion depth that makes the level-n gap enclosure decisive."""
    basis = get_basis(k)
    return basis.value(n + 2) + 4 * basis.value(n)


def _require_base(b: int) -> None:
    if b < 2:
        raise ValueError("base must be >= 2")


def word_value(w: GeneralWord, b: int) -> int:
    """Integer value of ``w`` read as base-b digits, most significant first.

    Symbols may equal or exceed b; the evaluation is plain polynomial in b.
    """
    _require_base(b)
    sym = w.symbols
    if not sym:
        return 0
    hi = max(sym)
    # int(str, b) is limited to ~4300 digits unless b is a power of two.
    cheap = b & (b - 1) == 0 or len(sym) <= 4000
    if hi < b and b <= 36 and hi <= 9 and cheap:
        table = bytes.maketrans(bytes(range(10)), b"0123456789")
        return int(sym.translate(table).decode("ascii"), b)
    powers: dict[int, int] = {}

    def power(e: int) -> int:
        v = powers.get(e)
        if v is None:
            v = b**e
            powers[e] = v
        return v

    def split(lo: int, hi_: int) -> int:
        n = hi_ - lo
        if n <= 256:
            acc = 0
            for c in sym[lo:hi_]:
                acc = acc * b + c
            return acc
        mid = lo + n // 2
        return split(lo, mid) * power(hi_ - mid) + split(mid, hi_)

    return split(0, len(sym))


@dataclass(frozen=True)
class SeriesTruncation:
    """A truncated digit series sum with a worst-case bound on the cut tail."""

    b: int
    depth: int
    value: Fraction
    tail_bound: Fraction
    k: int | None = None

    @property
    def upper(self) -> Fraction:
        return self.value + self.tail_bound


def series_truncation(
    w: GeneralWord, b: int, digit_cap: int | None = None
) -> SeriesTruncation:
    """Sum symbol_i * b^(-i) over ``w`` plus a tail bound for what was cut.

    The true series of any extension of ``w`` by symbols <= digit_cap lies in
    [value, value + tail_bound].
    """
    _require_base(b)
    if digit_cap is None:
        digit_cap = w.alphabet_size - 1
    if digit_cap < 0:
        raise ValueError("digit cap must be >= 0")
    depth = len(w)
    if depth == 0:
        value = Fraction(0)
    else:
        value = Fraction(word_value(w, b), b ** (depth - 1))
    tail = Fraction(digit_cap * b, b - 1) / b**depth
    return SeriesTruncation(b=b, depth=depth, value=value, tail_bound=tail)


def fixed_point_series(k: int, b: int, depth: int) -> SeriesTruncation:
    """Enclosure of x = sum of fixed-point symbols at 1/b^i, truncated at ``depth``."""
    if depth > DEPTH_CAP:
        raise CapExceededError(f"depth {depth} exceeds cap {DEPTH_CAP}")
    w = fixed_point_prefix(k, depth)
    st = series_truncation(w, b, digit_cap=1)
    return SeriesTruncation(
        b=st.b, depth=st.depth, value=st.value, tail_bound=st.tail_bound, k=k
    )


def approximant_numerator(k: int, n: int, b: int) -> int:
    """p = b * (value of the length-f_n prefix in base b)."""
    _require_base(b)
    basis = get_basis(k)
    fn = basis.value(n)
    return b * word_value(fixed_point_prefix(k, fn), b)


def approximant_denominator(k: int, n: int, b: int) -> int:
    """q = b^{f_n} - 1."""
    _require_base(b)
    fn = get_basis(k).value(n)
    if fn * max(b.bit_length() - 1, 1) > _MAX_POWER_BITS:
        raise CapExceededError("denominator would be too large to materialize")
    return b**fn - 1


@dataclass(frozen=True)
class ApproximantRecord:
    """One certified approximant p/q with an enclosure of |x - p/q|.

    ``sign`` is the certified sign of x - p/q; ``delta_lo``/``delta_hi``
    bracket its absolute value, so 0 < delta_lo <= |x - p/q| <= delta_hi.
    """

    k: int
    n: int
    b: int
    p: int
    q: int
    delta_lo: Fraction
    delta_hi: Fraction
    sign: int
    depth: int

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "b": self.b,
            "p": str(self.p),
            "q": str(self.q),
            "delta_lo": f"{self.delta_lo.numerator}/{self.delta_lo.denominator}",
            "delta_hi": f"{self.delta_hi.numerator}/{self.delta_hi.denominator}",
            "sign": self.sign,
            "depth": self.depth,
        }


def approximant(k: int, n: int, b: int, depth: int | None = None) -> ApproximantRecord:
    """Build the level-n approximant and certify the sign of x - p/q."""
    _require_base(b)
    if n < 0:
        raise ValueError("n must be >= 0")
    basis = get_basis(k)
    fn = basis.value(n)
    if depth is None:
        depth = default_depth(k, n)
    if depth > DEPTH_CAP:
        raise CapExceededError(
            f"depth {depth} exceeds cap {DEPTH_CAP}; "
            "use the scaled bound checks for indices this deep"
        )
    if depth < fn + 1:
        raise ValueError("depth must exceed the prefix length f_n")
    prefix = fixed_point_prefix(k, depth)
    p = b * word_value(prefix[:fn], b)
    q = b**fn - 1
    st = series_truncation(prefix, b, digit_cap=1)
    pq = Fraction(p, q)
    lo = st.value - pq
    hi = st.value + st.tail_bound - pq
    if lo > 0:
        sign, abs_lo, abs_hi = 1, lo, hi
    elif hi < 0:
        sign, abs_lo, abs_hi = -1, -hi, -lo
    else:
        raise IndecisiveEnclosureError(
            f"enclosure of x - p/q straddles zero at depth {depth}; increase depth"
        )
    return ApproximantRecord(
        k=k, n=n, b=b, p=p, q=q,
        delta_lo=abs_lo, delta_hi=abs_hi, sign=sign, depth=depth,
    )


def error_bounds(k: int, n: int, b: int) -> tuple[Fraction, Fraction]:
    """Exact two-sided bounds on |x - p/q| at level n.

    Returns ((b-1) / (q * b^{f_{n+1}-1}), 1 / (q * b^{f_{n+1}-2})).
    """
    _require_base(b)
    basis = get_basis(k)
    fn, fn1 = basis.value(n), basis.value(n + 1)
    if (fn + fn1) * max(b.bit_length() - 1, 1) > _MAX_POWER_BITS:
        raise CapExceededError(
            "bounds would need integers too large to materialize; "
            "use scaled_error_bounds_hold instead"
        )
    q = b**fn - 1
    lower = Fraction(b - 1, q * b ** (fn1 - 1))
    upper = Fraction(1, q * b ** (fn1 - 2))
    return lower, upper


@dataclass(frozen=True)
class BoundsCheck:
    """Outcome of the two-sided gap-bound check at one (k, n, b).

    Truthiness is ``holds``; the side flags say which inequality carried or
    failed.  The dense route fills in the bound values and the certified
    enclosure of |x - p/q|; the scaled route decides by integer sign tests
    and leaves those fields unset.
    """

    k: int
    n: int
    b: int
    holds: bool
    lower_ok: bool
    upper_ok: bool
    route: str  # "dense" or "scaled"
    lower: Fraction | None = None
    upper: Fraction | None = None
    delta_lo: Fraction | None = None
    delta_hi: Fraction | None = None

    def __bool__(self) -> bool:
        return self.holds


def check_error_bounds(record: ApproximantRecord) -> BoundsCheck:
    """Certify lower <= |x - p/q| <= upper from the record's enclosure."""
    lower, upper = error_bounds(record.k, record.n, record.b)
    lower_ok = record.delta_lo >= lower
    upper_ok = record.delta_hi <= upper
    return BoundsCheck(
        k=record.k, n=record.n, b=record.b,
        holds=lower_ok and upper_ok, lower_ok=lower_ok, upper_ok=upper_ok,
        route="dense", lower=lower, upper=upper,
        delta_lo=record.delta_lo, delta_hi=record.delta_hi,
    )


def _mismatch_offsets(k: int, n: int, cutoff: int) -> list[int]:
    """Offsets h with a mismatch pair at f_{n+1}-2+h, f_{n+1}-1+h, for h <= cutoff.

    h ranges over sums of regular digit vectors re-weighted to start at basis
    index n+1, excluding vectors whose bottom digit is k (those indices carry
    a digit k at position n+1 and the shift leaves their symbols alone).
    """
    basis = get_basis(k)
    out: list[int] = []
    j = 0
    prev_h = -1
    while True:
        digits = to_digits(k, j)
        h = sum(
            d * basis.value(n + 1 + t) for t, d in enumerate(digits.digits) if d
        )
        if h < prev_h:
            raise AssertionError("offset enumeration lost monotonicity")
        prev_h = h
        if h > cutoff:
            return out
        if digits.digit(0) != k:
            out.append(h)
        j += 1


def _power_sum_sign(b: int, terms: list[tuple[int, int]]) -> int:
    """Sign of sum(c * b^e) without materializing the large powers.

    ``terms`` holds (exponent, coefficient) pairs; exponents must be >= 0.
    Works from the top exponent down, folding nearby terms exactly and
    stopping early once the accumulated head outweighs every remaining term.
    """
    _require_base(b)
    merged: dict[int, int] = {}
    for e, c in terms:
        if e < 0:
            raise ValueError("exponents must be >= 0")
        merged[e] = merged.get(e, 0) + c
    items = sorted((pair for pair in merged.items() if pair[1]), reverse=True)
    if not items:
        return 0
    acc = items[0][1]
    frame = items[0][0]
    rest_abs = sum(abs(c) for _, c in items[1:])
    for e, c in items[1:]:
        gap = frame - e
        if acc != 0:
            # Everything at exponents <= e sums to at most rest_abs in the
            # b^e frame, so a large enough gap settles the sign outright.
            if gap > 64:
                if rest_abs < abs(acc) << 63:
                    return 1 if acc > 0 else -1
                raise AssertionError("unexpectedly heavy tail in power-sum check")
            if abs(acc) * b**gap > rest_abs:
                return 1 if acc > 0 else -1
            acc *= b**gap
        acc += c
        frame = e
        rest_abs -= abs(c)
    if acc > 0:
        return 1
    if acc < 0:
        return -1
    return 0


def scaled_error_bounds_hold(k: int, n: int, b: int) -> BoundsCheck:
    """Check the two-sided gap bounds at level n by integer sign tests alone.

    Writes |q*x - p| as (b-1)/b * sum(b^{-(f_{n+1}-2+h)}) over the mismatch
    offsets h, splits off the offsets up to a cutoff, bounds the rest by a
    geometric tail, and reduces both comparisons to signs of sparse integer
    power sums.  Never builds numbers anywhere near b^{f_n}.
    """
    _require_base(b)
    if n < 0:
        raise ValueError("n must be >= 0")
    basis = get_basis(k)
    fn1 = basis.value(n + 1)
    # Smallest positive offset: f_{n+2} when k == 1 (j = 1 is excluded there),
    # f_{n+1} otherwise; pad the cutoff so its term dominates the tail.
    h_min = basis.value(n + 2) if k == 1 else fn1
    cutoff = h_min + fn1 + 4
    hs = _mismatch_offsets(k, n, cutoff)
    if not hs or hs[0] != 0:
        raise AssertionError("offset enumeration must start at h = 0")
    if len(hs) < 2:
        raise AssertionError("cutoff admitted no positive offset")
    coef = (b - 1) ** 2
    lower_terms = [(cutoff - h, coef) for h in hs if h > 0]
    lower_terms.append((0, -b))
    lower_ok = _power_sum_sign(b, lower_terms) >= 0
    upper_terms = [(cutoff + 2, 1), (cutoff + 1, -1), (0, -b)]
    upper_terms.extend((cutoff - h, -coef) for h in hs)
    upper_ok = _power_sum_sign(b, upper_terms) >= 0
    return BoundsCheck(
        k=k, n=n, b=b,
        holds=lower_ok and upper_ok, lower_ok=lower_ok, upper_ok=upper_ok,
        route="scaled",
    )


def check_error_bounds_auto(k: int, n: int, b: int) -> BoundsCheck:
    """Verify the gap bounds, picking the dense or scaled route by size."""
    if default_depth(k, n) <= DENSE_AUTO_LIMIT:
        return check_error_bounds(approximant(k, n, b))
    return scaled_error_bounds_hold(k, n, b)


@dataclass(frozen=True)
class LeadingErrorTerm:
    """First mismatch pair of the gap series: exponent and the two signs."""

    exponent: int
    signs: tuple[int, int]


def leading_error_term(k: int, n: int) -> LeadingErrorTerm:
    """Location and signs of the dominant pair in the series for x - p/q.

    The series over 1/b starts at exponent f_n + f_{n+1} - 2 with sign
    (-1)^n, immediately followed by the opposite sign one place lower.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    basis = get_basis(k)
    s = 1 if n % 2 == 0 else -1
    return LeadingErrorTerm(
        exponent=basis.value(n) + basis.value(n + 1) - 2, signs=(s, -s)
    )


def log2_enclosure(x: int, bits: int = 40) -> tuple[Fraction, Fraction]:
    """Rational enclosure of log2(x) for an integer x >= 1.

    Uses the squaring bit-extraction with directed dyadic rounding at a
    working precision a little past ``bits``; the returned interval is padded
    by the worst-case rounding drift.
    """
    if x < 1:
        raise ValueError("x must be >= 1")
    if not 1 <= bits <= 256:
        raise ValueError("bits must lie in 1..256")
    e = x.bit_length() - 1
    if x == 1 << e:
        exact = Fraction(e)
        return exact, exact
    prec = bits + 8
    half = 1 << prec

    def run(ceil_mode: bool) -> Fraction:
        if ceil_mode:
            m = ((x << prec) + (1 << e) - 1) >> e
        else:
            m = (x << prec) >> e
        acc = Fraction(0)
        step = Fraction(1, 2)
        for _ in range(bits):
            sq = m * m
            if ceil_mode:
                m = (sq + half - 1) >> prec
            else:
                m = sq >> prec
            if m >= 2 * half:
                if ceil_mode:
                    m = (m + 1) >> 1
                else:
                    m >>= 1
                acc += step
            step /= 2
        return acc

    pad = Fraction(1, 1 << (bits + 4))
    lower = e + run(False) - pad
    upper = e + run(True) + Fraction(1, 1 << bits) + pad
    if lower < e:
        lower = Fraction(e)
    if upper > e + 1:
        upper = Fraction(e + 1)
    return lower, upper


def growth_law_holds(k: int, b: int, n: int) -> bool:
    """Check q_{n+1} < b^2 * q_n^(f_{n+1}/f_n).

    Small denominators: certified base-2 logarithms decide the inequality.
    Large ones: the claim follows once b^{f_n} outweighs 3*f_{n+1}/f_n, which
    is immediate beyond tiny sizes.
    """
    _require_base(b)
    if n < 0:
        raise ValueError("n must be >= 0")
    basis = get_basis(k)
    fn, fn1 = basis.value(n), basis.value(n + 1)
    theta = Fraction(fn1, fn)
    if fn1 * max(b.bit_length() - 1, 1) <= 400_000:
        qn = b**fn - 1
        qn1 = b**fn1 - 1
        lo_qn, _ = log2_enclosure(qn)
        _, hi_qn1 = log2_enclosure(qn1)
        lo_b, _ = log2_enclosure(b)
        return hi_qn1 < 2 * lo_b + theta * lo_qn
    if fn >= 64:
        # 3*theta <= 2*b^{f_n} suffices; compare through powers of two.
        if 3 * fn1 <= (2 * fn) << 63:
            return True
        raise IndecisiveEnclosureError("k is too large for the size shortcut")
    return 3 * fn1 <= 2 * fn * b**fn


def bound_constants_hold(k: int, b: int, n: int) -> bool:
    """Check (b-1)/b^2 / q^(1+theta) <= |x - p/q| <= b^2 / q^(1+theta).

    The upper constant follows from q < b^{f_n} alone; the lower reduces to
    q^theta >= b^{f_{n+1}-3}, settled exactly for small sizes and immediate
    past them.  The middle inequality is the certified two-sided gap bound.
    """
    _require_base(b)
    if not check_error_bounds_auto(k, n, b).holds:
        return False
    basis = get_basis(k)
    fn, fn1 = basis.value(n), basis.value(n + 1)
    if fn >= 128:
        return True
    if fn * fn1 * max(b.bit_length() - 1, 1) <= 2_000_000:
        q = b**fn - 1
        # q^theta >= b^{f_{n+1}-3}, raised to the f_n-th power.
        return q**fn1 * b ** (3 * fn) >= b ** (fn * fn1)
    # Huge base: 8*f_{n+1} <= 7*f_n*b^{f_n} already forces the lower constant.
    shift = fn * (b.bit_length() - 1)
    if shift >= fn1.bit_length() + 1:
        return True
    raise IndecisiveEnclosureError("parameters too extreme for the size shortcut")
