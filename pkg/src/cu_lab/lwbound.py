"""Exact arithmetic for the rational-point lower bound and its threshold.

The bound q^3 - 650 q^(5/2) - 7971615 q^2 - 312 q (q-1) mixes integers
with q^(5/2), irrational for odd m.  Sign decisions therefore either
carry the half power symbolically as a + b*sqrt(2) or square it away;
floats appear only as display estimates, never in a decision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


class NonCubeDegree(ValueError):
    """delta^(13/3) is irrational unless delta is a perfect cube."""


@dataclass(frozen=True)
class Rt2Int:
    """Exact value a + b*sqrt(2) with integer a, b."""

    a: int
    b: int = 0

    def sign(self) -> int:
        a, b = self.a, self.b
        if a == 0 and b == 0:
            return 0
        if a >= 0 and b >= 0:
            return 1
        if a <= 0 and b <= 0:
            return -1
        d = a * a - 2 * b * b
        if a > 0:  # b < 0
            return 1 if d > 0 else (-1 if d < 0 else 0)
        return -1 if d > 0 else (1 if d < 0 else 0)

    def __sub__(self, other: "Rt2Int") -> "Rt2Int":
        return Rt2Int(self.a - other.a, self.b - other.b)

    def __lt__(self, other: "Rt2Int") -> bool:
        return (self - other).sign() < 0

    def __float__(self) -> float:
        return self.a + self.b * math.sqrt(2)


def _exact_half_power(q: int, e2: int) -> Rt2Int:
    """q^(e2/2) as an Rt2Int, for q = 2^m."""
    m = q.bit_length() - 1
    if q != 1 << m:
        raise ValueError(f"q = {q} is not a power of 2")
    bits = m * e2
    if bits % 2 == 0:
        return Rt2Int(1 << (bits // 2))
    return Rt2Int(0, 1 << (bits // 2))


@dataclass(frozen=True)
class BoundParams:
    """Constants of the point-count bound, pinned to their defining products."""

    r: int = 3
    delta: int = 27
    lw_c1: int = 650          # (delta-1)(delta-2)
    lw_c2: int = 7_971_615    # 5 * delta^(13/3) = 5 * 3^13
    curve_cap: int = 288      # 24 * 12 intersection degree
    line_cap: int = 24
    combined_cap: int = 312

    def __post_init__(self):
        assert self.lw_c1 == 25 * 26 == (self.delta - 1) * (self.delta - 2)
        assert self.lw_c2 == 5 * 3 ** 13 == 5 * 1_594_323
        assert self.curve_cap == 24 * 12
        assert self.combined_cap == self.curve_cap + self.line_cap


PARAMS = BoundParams()


@dataclass(frozen=True)
class BoundReport:
    m: int
    q: int
    sign: str  # negative | zero | positive, decided exactly
    float_estimate: float
    applicable: bool
    terms: dict = field(default_factory=dict)
    note: str = ""


def lw_applicable(r: int, delta: int, q: int) -> bool:
    """Size condition q > 2(r+1) delta^2 for the point-count estimate."""
    if r < 1 or delta < 1:
        raise ValueError("need r >= 1 and delta >= 1")
    return q > 2 * (r + 1) * delta * delta


def lw_interval(r: int, delta: int, q: int) -> tuple[Rt2Int, Rt2Int]:
    """Exact interval q^r +/- ((delta-1)(delta-2) q^(r-1/2) + 5 delta^(13/3) q^(r-1)).

    delta must be a perfect cube so delta^(13/3) is an integer; the half
    power is carried as an Rt2Int.  When the size condition fails the
    interval is still returned (callers should check lw_applicable).
    """
    c = round(delta ** (1 / 3))
    if c ** 3 != delta:
        raise NonCubeDegree(f"delta = {delta} is not a perfect cube")
    half = _exact_half_power(q, 2 * r - 1)
    coeff = (delta - 1) * (delta - 2)
    dev = Rt2Int(coeff * half.a + 5 * c ** 13 * q ** (r - 1), coeff * half.b)
    center = Rt2Int(q ** r)
    return center - dev, Rt2Int(center.a + dev.a, dev.b)


def theta_exact(m: int) -> Rt2Int:
    """The bound q^3 - 650 q^(5/2) - 7971615 q^2 - 312 q(q-1), exactly."""
    q = 1 << m
    t = q ** 3 - PARAMS.lw_c2 * q ** 2 - PARAMS.combined_cap * q * (q - 1)
    half = _exact_half_power(q, 5)
    return Rt2Int(t - PARAMS.lw_c1 * half.a, -PARAMS.lw_c1 * half.b)


def theta_lower_bound(m: int) -> BoundReport:
    """Exact sign of the certified-solution count lower bound at degree m.

    The irrational term is eliminated by squaring: with
    T = q^3 - 7971615 q^2 - 312 q(q-1), the bound is positive iff T > 0
    and T^2 > 650^2 q^5, zero iff T^2 = 650^2 q^5, negative otherwise.
    """
    if not 1 <= m <= 64:
        raise ValueError("m must be in 1..64")
    q = 1 << m
    t = q ** 3 - PARAMS.lw_c2 * q ** 2 - PARAMS.combined_cap * q * (q - 1)
    half_sq = PARAMS.lw_c1 ** 2 * q ** 5
    if t <= 0:
        sign = "negative"
    elif t * t > half_sq:
        sign = "positive"
    elif t * t == half_sq:
        sign = "zero"
    else:
        sign = "negative"
    estimate = (float(q) ** 3 - PARAMS.lw_c1 * float(q) ** 2.5
                - PARAMS.lw_c2 * float(q) ** 2 - PARAMS.combined_cap * float(q) * (float(q) - 1))
    return BoundReport(
        m=m, q=q, sign=sign, float_estimate=estimate,
        applicable=lw_applicable(PARAMS.r, PARAMS.delta, q),
        terms={
            "q_cubed": q ** 3,
            "half_power_coeff": PARAMS.lw_c1,
            "half_power_term_squared": half_sq,
            "q_squared_term": PARAMS.lw_c2 * q ** 2,
            "linear_term": PARAMS.combined_cap * q * (q - 1),
        },
        note="" if m % 2 else "excluded by parity argument",
    )


def find_min_odd_m(limit: int = 64) -> int:
    """Smallest odd m with a positive bound; positivity re-checked up to limit."""
    found = None
    for m in range(1, limit + 1, 2):
        if theta_lower_bound(m).sign == "positive":
            found = m
            break
    if found is None:
        raise AssertionError(f"bound never positive up to {limit}")
    for m in range(found, limit + 1):
        assert theta_lower_bound(m).sign == "positive", f"positivity lost at m={m}"
    return found
