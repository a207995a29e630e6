"""Irrationality-exponent estimation for the base-b values of the fixed point.

The denominator growth rate theta = lim f_{n+1}/f_n drives everything: the
exponent is 1 + theta, bracketed from finite data by ratio extremes and
cross-checked empirically from continued-fraction convergents of truncations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .approximants import fixed_point_series
from .errors import InsufficientPrecisionError
from .numeration import get_basis


def closed_form_exponent(k: int) -> float:
    """1 + (k + sqrt(k^2 + 4)) / 2, the limiting exponent for parameter k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return 1.0 + (k + math.sqrt(k * k + 4)) / 2.0


def basis_ratio(k: int, n: int) -> Fraction:
    """theta_n = f_{n+1} / f_n, exact."""
    basis = get_basis(k)
    return Fraction(basis.value(n + 1), basis.value(n))


def ratio_limit_enclosure(k: int, bits: int = 96) -> tuple[Fraction, Fraction]:
    """Dyadic enclosure of theta = (k + sqrt(k^2 + 4)) / 2, width 2^-(bits+1)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if bits < 1:
        raise ValueError("bits must be >= 1")
    scale = 1 << bits
    s = isqrt((k * k + 4) * scale * scale)
    lo = Fraction(k * scale + s, 2 * scale)
    hi = Fraction(k * scale + s + 1, 2 * scale)
    return lo, hi


def exponent_upper_bound(alpha, beta, gamma):
    """(1 + beta) * gamma / alpha, for growth rates alpha <= beta and gap rate gamma.

    Exact when fed Fractions; float inputs give a float.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if beta < alpha:
        raise ValueError("beta must be >= alpha")
    if gamma <= 1:
        raise ValueError("gamma must exceed 1")
    return (1 + beta) * gamma / alpha


@dataclass(frozen=True)
class ExponentEstimate:
    """A bracketing of the exponent from finitely many denominator ratios."""

    target: float
    theta_sequence: list[Fraction] = field(repr=False)
    lower: float
    upper: float
    cf_empirical: float | None = None


def _float_below(x: Fraction) -> float:
    f = float(x)
    return math.nextafter(f, -math.inf) if Fraction(f) > x else f


def _float_above(x: Fraction) -> float:
    f = float(x)
    return math.nextafter(f, math.inf) if Fraction(f) < x else f


def exponent_sandwich(k: int, n_min: int = 2, n_max: int = 12) -> ExponentEstimate:
    """Bracket the exponent using exact ratios theta_n for n in [n_min, n_max].

    The ratios alternate around their limit, so 1 + min(theta) is a valid
    lower bracket and the upper comes from the generic rate bound evaluated
    at the observed extremes; both ends are rounded outward.
    """
    if n_min < 2:
        raise ValueError("n_min must be >= 2")
    if n_max <= n_min:
        raise ValueError("n_max must exceed n_min")
    thetas = [basis_ratio(k, n) for n in range(n_min, n_max + 1)]
    m, big = min(thetas), max(thetas)
    lower = _float_below(1 + m)
    upper = _float_above(exponent_upper_bound(m, big, big))
    return ExponentEstimate(
        target=closed_form_exponent(k),
        theta_sequence=thetas,
        lower=lower,
        upper=upper,
    )


@dataclass(frozen=True)
class ContinuedFraction:
    """Quotients and convergents of a rational, by the Euclidean algorithm."""

    quotients: list[int]
    convergents: list[tuple[int, int]]
    exact: bool  # True when the expansion terminated before the term cap


def continued_fraction(x, max_terms: int = 64) -> ContinuedFraction:
    """Continued-fraction expansion of a non-negative rational ``x``."""
    if max_terms < 1:
        raise ValueError("max_terms must be >= 1")
    x = Fraction(x)
    if x < 0:
        raise ValueError("x must be >= 0")
    num, den = x.numerator, x.denominator
    quotients: list[int] = []
    convergents: list[tuple[int, int]] = []
    pm2, pm1 = 0, 1
    qm2, qm1 = 1, 0
    while den and len(quotients) < max_terms:
        a, rem = divmod(num, den)
        quotients.append(a)
        pm2, pm1 = pm1, a * pm1 + pm2
        qm2, qm1 = qm1, a * qm1 + qm2
        convergents.append((pm1, qm1))
        num, den = den, rem
    if len(convergents) >= 2:
        p1, q1 = convergents[-1]
        p0, q0 = convergents[-2]
        if abs(p1 * q0 - p0 * q1) != 1:
            raise AssertionError("convergent recurrence lost the determinant")
    return ContinuedFraction(
        quotients=quotients, convergents=convergents, exact=(den == 0)
    )


def big_log2(n: int) -> float:
    """log2 of a positive integer, safe for values far past float range."""
    if n < 1:
        raise ValueError("n must be >= 1")
    shift = n.bit_length() - 53
    if shift <= 0:
        return math.log2(n)
    return math.log2(n >> shift) + shift


def empirical_exponent(k: int, b: int, digits: int) -> float:
    """Estimate the exponent from convergents of a depth-``digits`` truncation.

    Convergents of the truncation match those of the full value while
    q^2 stays below b^digits; within that range, successive denominator
    ratios log q_{m+1} / log q_m estimate theta term by term.  The earliest
    convergents carry no asymptotic signal and are excluded.
    """
    if b < 2:
        raise ValueError("base must be >= 2")
    if digits < 40:
        raise ValueError("digits must be >= 40")
    x = fixed_point_series(k, b, digits).value
    cf = continued_fraction(x, max_terms=4 * digits)
    precision = b**digits
    head_floor = b ** max(2, digits // 20)
    ratios: list[float] = []
    for (_, q_m), (_, q_next) in zip(cf.convergents, cf.convergents[1:]):
        if q_m < head_floor:
            continue
        if q_next * q_next > precision:
            break
        ratios.append(big_log2(q_next) / big_log2(q_m))
    if len(ratios) < 5:
        raise InsufficientPrecisionError(
            f"only {len(ratios)} trustworthy convergent ratios at depth {digits}; "
            "increase digits"
        )
    return 1.0 + max(ratios)


def reversed_quotient_limsup(quotients: list[int], window: int = 8) -> float:
    """Largest value of a_t + 1/(a_{t-1} + 1/(...)) over the last ``window`` steps.

    Feeding the quotient list in reverse nesting order turns the tail behavior
    of the expansion into a running value; its peaks over a trailing window
    proxy the limsup that controls the exponent.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    if not quotients:
        raise ValueError("quotient list must be non-empty")
    if any(a < 1 for a in quotients):
        raise ValueError("quotients must be >= 1")
    values: list[float] = []
    v = float(quotients[0])
    values.append(v)
    for a in quotients[1:]:
        v = a + 1.0 / v
        values.append(v)
    return max(values[-window:])
