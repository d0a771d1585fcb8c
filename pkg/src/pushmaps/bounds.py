"""Closed-form dilatation bounds for point-pushing maps, and strand counting.

Everything here is a direct evaluation: the log-scale bounds on least
dilatations, the lower/upper geometric series for intersection numbers under
iterated pushing, and two exact "extremal" strand-capture simulations whose
per-trip counts the series are built from.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

LOWER = "lower"
UPPER = "upper"


@dataclass(frozen=True)
class SurfaceType:
    """Genus ``p`` with ``n`` punctures; hyperbolic-type only (3p + n > 3)."""

    p: int
    n: int

    def __post_init__(self):
        if self.p < 0 or self.n < 0:
            raise ValueError(f"genus and punctures must be non-negative, got ({self.p}, {self.n})")
        if 3 * self.p + self.n <= 3:
            raise ValueError(f"surface type ({self.p}, {self.n}) violates 3p + n > 3")


def penner_lower(S: SurfaceType) -> float:
    denom = 12 * S.p - 12 + 4 * S.n
    if denom <= 0:
        raise ValueError(f"12p - 12 + 4n = {denom} is not positive")
    return math.log(2) / denom


def hironaka_kin_upper(n: int) -> float:
    if n < 4:
        raise ValueError(f"need n >= 4 punctures, got {n}")
    return 2 * math.log(2 + math.sqrt(3)) / (n - 3)


def pointpush_lower(i_gamma: int) -> int:
    """Least dilatation allowed for a push along a curve with ``i_gamma`` double points."""
    if i_gamma < 1:
        raise ValueError("a filling curve has at least one self-intersection")
    return 1 + 2 * i_gamma


def min_self_intersection(S: SurfaceType) -> int:
    """Euler-characteristic minimum of double points for a filling curve.

    The curve lives on ``S`` with one puncture filled in.
    """
    if S.n == 0:
        raise ValueError("need at least one puncture to push")
    if S.n == 1:
        return 2 * S.p - 1
    return 2 * S.p - 3 + S.n


def corollary_lower(S: SurfaceType) -> float:
    arg = 4 * S.p + 2 * S.n - 5 if S.n > 1 else 4 * S.p - 1
    if S.n < 1 or arg <= 1:
        raise ValueError(f"log bound undefined for surface ({S.p}, {S.n})")
    return math.log(arg)


def fig7_upper(n: int) -> int:
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    return 2 * n * n - 6 * n + 3


def lower_series(i_gamma: int, m: int) -> int:
    if i_gamma < 1:
        raise ValueError("i_gamma must be >= 1")
    if m < 1:
        raise ValueError("the lower series starts at m = 1")
    alpha = 1 + 2 * i_gamma
    return 2 * sum(alpha**j for j in range(1, m + 1))


def upper_series(k: int, m: int) -> int:
    if k < 1 or m < 0:
        raise ValueError(f"need k >= 1 and m >= 0, got k={k} m={m}")
    beta = 2 * k * k + 6 * k + 3
    return 4 * sum(beta**j for j in range(m + 1))


@dataclass
class StrandTrace:
    """Strand counts of the pushed point over ``cycles`` simulated trips.

    ``counts[j]`` is the number of strands at the end of trip ``j + 1``;
    trip 1 is the seeded first pass.  ``mu[(trip, crossing, visit)]`` holds
    the count just after each visit of the simulated trips 2..cycles+1, with
    crossing 0 standing for the base point.  ``series[j]`` is the cumulative
    intersection bound after trip ``j + 1``.
    """

    k: int
    cycles: int
    model: str
    counts: list[int] = field(default_factory=list)
    series: list[int] = field(default_factory=list)
    mu: dict[tuple[int, int, int], int] = field(default_factory=dict)

    def visits(self, trip: int) -> list[tuple[int, int, int]]:
        """``(crossing, visit, mu)`` of one trip in the order they happen."""
        return [(j, v, c) for (t, j, v), c in self.mu.items() if t == trip]


def _nested_trip(trace: StrandTrace, trip: int, s: int) -> int:
    # order: t_1^1 < ... < t_k^1 < t_k^2 < ... < t_1^2
    k, mu = trace.k, trace.mu
    upper = trace.model == UPPER
    cur = s
    if upper:
        mu[(trip, 0, 1)] = cur
    for j in range(1, k + 1):
        if upper:
            # a first visit picks up two strands per strand carried at the start
            cur += 2 * s
        mu[(trip, j, 1)] = cur
    for j in range(k, 0, -1):
        cur += 2 * mu[(trip, j, 1)]
        mu[(trip, j, 2)] = cur
    if upper:
        cur += 2 * mu[(trip, 0, 1)]
        mu[(trip, 0, 2)] = cur
    return cur


def strand_sim_lower(k: int, m: int) -> StrandTrace:
    """Minimal capture: strands are only picked up on second visits."""
    if k < 1 or m < 0:
        raise ValueError(f"need k >= 1 and m >= 0, got k={k} m={m}")
    trace = StrandTrace(k, m, LOWER, counts=[1], series=[0])
    s = 1
    for trip in range(2, m + 2):
        s = _nested_trip(trace, trip, s)
        trace.counts.append(s)
        trace.series.append(trace.series[-1] + 2 * s)
    return trace


def strand_sim_upper(k: int, m: int) -> StrandTrace:
    """Maximal capture along the nested figure-7 visiting order."""
    if k < 1 or m < 0:
        raise ValueError(f"need k >= 1 and m >= 0, got k={k} m={m}")
    trace = StrandTrace(k, m, UPPER, counts=[2], series=[4])
    s = 2
    for trip in range(2, m + 2):
        s = _nested_trip(trace, trip, s)
        trace.counts.append(s)
        trace.series.append(trace.series[-1] + 2 * s)
    return trace


# --- exact comparisons -------------------------------------------------------

def _sign_z_sqrt3(x: int, y: int) -> int:
    """Sign of ``x + y*sqrt(3)`` for integers."""
    if x >= 0 and y >= 0:
        return 0 if x == y == 0 else 1
    if x <= 0 and y <= 0:
        return -1
    if x * x > 3 * y * y:
        return 1 if x > 0 else -1
    return 1 if y > 0 else -1


def _pow_z_sqrt3(x: int, y: int, e: int) -> tuple[int, int]:
    rx, ry = 1, 0
    for _ in range(e):
        rx, ry = rx * x + 3 * ry * y, rx * y + ry * x
    return rx, ry


@dataclass(frozen=True)
class Thm13Result:
    first_inequality_holds: bool
    second_inequality_holds: bool


def thm13_check(n: int) -> Thm13Result:
    """``7+4*sqrt(3) > (2n-5)**(n-3)`` and ``(2n-5)**(n-3) < (7+4*sqrt(3))**n``."""
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    M = (2 * n - 5) ** (n - 3)
    first = _sign_z_sqrt3(7 - M, 4) > 0
    A, B = _pow_z_sqrt3(7, 4, n)
    second = _sign_z_sqrt3(A - M, B) > 0
    return Thm13Result(first, second)


def h(z: float) -> float:
    return 0.5 * (z * z + 2 + z * math.sqrt(z * z + 4))


def h1(z: float) -> float:
    if z * z < 4:
        raise ValueError(f"h1 needs |z| >= 2, got {z}")
    return 0.5 * (z * z - 2 + z * math.sqrt(z * z - 4))


def _sqrt_bounds(P: int, bits: int) -> tuple[Fraction, Fraction]:
    r = math.isqrt(P << (2 * bits))
    lo = Fraction(r, 1 << bits)
    hi = lo if r * r == P << (2 * bits) else Fraction(r + 1, 1 << bits)
    return lo, hi


def surd_sign(c, terms: list[tuple[int, int]]) -> int:
    """Exact sign of ``c + sum(coef * sqrt(P))`` via refined rational intervals.

    Terms whose radicands differ by a square factor are merged first; after
    that the square roots are linearly independent over the rationals, so
    the sum is zero only if every merged coefficient and ``c`` vanish.
    """
    c = Fraction(c)
    groups: list[list] = []  # [radicand, rational coefficient]
    for coef, P in terms:
        if P < 0:
            raise ValueError(f"negative radicand {P}")
        r = math.isqrt(P)
        if r * r == P:
            c += coef * r
            continue
        for g in groups:
            q = math.isqrt(P * g[0])
            if q * q == P * g[0]:
                g[1] += Fraction(coef * q, g[0])
                break
        else:
            groups.append([P, Fraction(coef)])
    groups = [(P, coef) for P, coef in groups if coef != 0]
    if not groups:
        return (c > 0) - (c < 0)
    bits = 64
    while True:
        lo = hi = c
        for P, coef in groups:
            s_lo, s_hi = _sqrt_bounds(P, bits)
            if coef >= 0:
                lo, hi = lo + coef * s_lo, hi + coef * s_hi
            else:
                lo, hi = lo + coef * s_hi, hi + coef * s_lo
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2


def _h1_gt_h(z1: int, z2: int) -> bool:
    lhs, rhs = h1(z1), h(z2)
    slack = 4 * math.ulp(max(abs(lhs), abs(rhs)))
    if abs(lhs - rhs) > slack:
        return lhs > rhs
    # 2*h1(z1) - 2*h(z2) = (z1^2 - z2^2 - 4) + z1*sqrt(z1^2-4) - z2*sqrt(z2^2+4)
    terms = [(1, z1 * z1 * (z1 * z1 - 4)), (-1, z2 * z2 * (z2 * z2 + 4))]
    terms = [(coef if z >= 0 else -coef, P) for (coef, P), z in zip(terms, (z1, z2))]
    return surd_sign(z1 * z1 - z2 * z2 - 4, terms) > 0


@dataclass(frozen=True)
class Thm12Result:
    h_value: float
    h1_value: float
    claim1: bool
    claim2: bool


def thm12_check(n: int) -> Thm12Result:
    """Compare ``h1(4n-10)`` with ``h(2n-6)`` and test ``n^2-3n+1 < 2(n-3)^2``."""
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    z1, z2 = 4 * n - 10, 2 * n - 6
    claim1 = _h1_gt_h(z1, z2)
    claim2 = n * n - 3 * n + 1 < 2 * (n - 3) ** 2
    return Thm12Result(h(z2), h1(z1), claim1, claim2)


BOUNDS_COLUMNS = [
    "p", "n", "penner_lower", "hk_upper", "corollary_lower", "fig7_upper",
    "fig7_upper_log", "thm13_first", "thm13_second", "thm12_claim1", "thm12_claim2",
]


def bounds_row(S: SurfaceType) -> dict:
    """All bounds for one surface; sphere-only columns are None when p > 0."""
    row = {c: None for c in BOUNDS_COLUMNS}
    row.update(p=S.p, n=S.n, penner_lower=penner_lower(S))
    if S.n >= 1:
        row["corollary_lower"] = corollary_lower(S)
    if S.p == 0:
        row["hk_upper"] = hironaka_kin_upper(S.n)
        row["fig7_upper"] = fig7_upper(S.n)
        row["fig7_upper_log"] = math.log(fig7_upper(S.n))
        t13, t12 = thm13_check(S.n), thm12_check(S.n)
        row.update(
            thm13_first=t13.first_inequality_holds,
            thm13_second=t13.second_inequality_holds,
            thm12_claim1=t12.claim1,
            thm12_claim2=t12.claim2,
        )
    return row
