"""Integer coordinates for multicurves on the n-punctured disk.

The punctures sit on a horizontal line.  Two families of arcs are used:

* ``alpha`` arcs: for each interior puncture ``2..n-1`` one vertical arc going
  up to the boundary and one going down;
* ``beta`` arcs: for each gap between punctures ``k`` and ``k+1`` a vertical
  line from the top boundary to the bottom boundary.

For ``i = 1..n-2`` the coordinates are::

    a_i = (alpha_below(i+1) - alpha_above(i+1)) / 2
    b_i = (beta_i - beta_{i+1}) / 2

where every arc count is a minimal intersection number.  These are integers
for any integral multicurve and determine it up to isotopy.  A round curve
around consecutive punctures has all ``a_i = 0``.

The half twist ``sigma_i`` acts by an exact piecewise-linear map on
``(a, b)``.  ``sigma_i`` is the clockwise half twist: puncture ``i`` travels
over the top to position ``i+1`` while puncture ``i+1`` travels underneath to
position ``i``.  For instance ``sigma_2`` carries the curve around punctures
{1, 2} of the 3-punctured disk to the curve around {1, 3} passing above
puncture 2, which has ``a_1 = -1``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .braid import BraidWord, Generator

CONVERGED = "converged"
NON_PA = "non_pA"
BUDGET_EXCEEDED = "budget_exceeded"

PSEUDO_ANOSOV = "pseudo_anosov"
NOT_PSEUDO_ANOSOV = "not_pseudo_anosov"
UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class LamCoord:
    strands: int
    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self):
        if self.strands < 3:
            raise ValueError(f"coordinates need at least 3 punctures, got {self.strands}")
        a, b = tuple(int(x) for x in self.a), tuple(int(x) for x in self.b)
        if len(a) != self.strands - 2 or len(b) != self.strands - 2:
            raise ValueError(
                f"expected {self.strands - 2} a- and b-coordinates, "
                f"got {len(a)} and {len(b)}"
            )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def zero(cls, strands: int) -> "LamCoord":
        return cls(strands, (0,) * (strands - 2), (0,) * (strands - 2))

    @classmethod
    def from_flat(cls, strands: int, flat: Sequence[int]) -> "LamCoord":
        """Inverse of :meth:`flat`: ``(a_1, b_1, a_2, b_2, ...)``."""
        return cls(strands, tuple(flat[0::2]), tuple(flat[1::2]))

    def flat(self) -> tuple[int, ...]:
        return tuple(x for pair in zip(self.a, self.b) for x in pair)

    def is_zero(self) -> bool:
        return not any(self.a) and not any(self.b)

    def negated(self) -> "LamCoord":
        return LamCoord(self.strands, tuple(-x for x in self.a), tuple(-x for x in self.b))


def standard_curve(i: int, j: int, n: int) -> LamCoord:
    """Round curve enclosing exactly the punctures ``i..j``.

    It crosses each beta line inside the enclosed range twice and each alpha
    arc of a strictly interior puncture once, so only ``b`` is nonzero.
    """
    if not 1 <= i < j <= n:
        raise ValueError(f"need 1 <= i < j <= n, got i={i} j={j} n={n}")
    if (i, j) == (1, n):
        raise ValueError("the curve around all punctures is boundary parallel")
    beta = [0] * (n + 1)
    for k in range(i, j):
        beta[k] = 2
    b = tuple((beta[k] - beta[k + 1]) // 2 for k in range(1, n - 1))
    return LamCoord(n, (0,) * (n - 2), b)


def _pos(x: int) -> int:
    return x if x > 0 else 0


def _neg(x: int) -> int:
    return x if x < 0 else 0


def _act(n: int, a: list[int], b: list[int], index: int, sign: int) -> None:
    # In-place update of the working lists; a[k], b[k] hold a_{k+1}, b_{k+1}.
    if index == 1:
        a0, b0 = a[0], b[0]
        if sign > 0:
            b[0] = a0 + _pos(b0)
            a[0] = -b0 + _pos(b[0])
        else:
            b[0] = -a0 + _pos(b0)
            a[0] = b0 - _pos(b[0])
    elif index == n - 1:
        a0, b0 = a[-1], b[-1]
        if sign > 0:
            b[-1] = a0 + _neg(b0)
            a[-1] = -b0 + _neg(b[-1])
        else:
            b[-1] = -a0 + _neg(b0)
            a[-1] = b0 - _neg(b[-1])
    else:
        p, q = index - 2, index - 1
        ap, bp, aq, bq = a[p], b[p], a[q], b[q]
        if sign > 0:
            z = ap + _neg(bp) - aq - _pos(bq)
            a[p] = ap - _pos(bp) - _pos(_pos(bq) + z)
            b[p] = bq + _neg(z)
            a[q] = aq - _neg(bq) - _neg(_neg(bp) - z)
            b[q] = bp - _neg(z)
        else:
            z = ap - _neg(bp) - aq + _pos(bq)
            a[p] = ap + _pos(bp) + _pos(_pos(bq) - z)
            b[p] = bq - _pos(z)
            a[q] = aq + _neg(bq) + _neg(_neg(bp) + z)
            b[q] = bp + _pos(z)


def apply_generator(x: LamCoord, g: Generator) -> LamCoord:
    if g.index > x.strands - 1:
        raise ValueError(f"generator s{g.index} out of range for {x.strands} strands")
    a, b = list(x.a), list(x.b)
    _act(x.strands, a, b, g.index, g.sign)
    return LamCoord(x.strands, tuple(a), tuple(b))


def apply_word(x: LamCoord, w: BraidWord) -> LamCoord:
    """Image of ``x`` under ``w``, letters applied left to right."""
    if w.strands != x.strands:
        raise ValueError(f"strand mismatch: word has {w.strands}, coordinates {x.strands}")
    a, b = list(x.a), list(x.b)
    n = x.strands
    for g in w.letters:
        _act(n, a, b, g.index, g.sign)
    return LamCoord(n, tuple(a), tuple(b))


def coord_norm(x: LamCoord) -> int:
    return sum(abs(v) for v in x.a) + sum(abs(v) for v in x.b)


@dataclass(frozen=True)
class GrowthOptions:
    max_iter: int = 200
    tolerance: float = 1e-9
    burn_in: int = 10
    seed_curve: tuple[int, int] = (1, 2)
    # consecutive near-1 ratios needed to call the growth subexponential
    flat_run: int = 20
    # longest period tested when looking for periodic or affine orbits
    max_period: int = 12

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if not 0 <= self.burn_in < self.max_iter:
            raise ValueError("need 0 <= burn_in < max_iter")


@dataclass
class GrowthReport:
    lambda_hat: float
    status: str
    iterations_used: int
    ratio_trace: list[Fraction] = field(default_factory=list)
    # exact ratio behind lambda_hat, when one exists
    lambda_exact: Fraction | None = None

    def to_dict(self, include_trace: bool = False) -> dict:
        out = {
            "lambda_hat": format_real(self.lambda_hat),
            "status": self.status,
            "iterations_used": self.iterations_used,
        }
        if include_trace:
            out["ratio_trace"] = [format_real(r) for r in self.ratio_trace]
        return out

    def to_json(self, include_trace: bool = False) -> str:
        return json.dumps(self.to_dict(include_trace), sort_keys=True)


def format_real(x) -> str:
    """12 significant digits; exact rationals are rounded only at the end."""
    if isinstance(x, Fraction):
        x = _fraction_to_float(x)
    return format(float(x), ".12g")


def _fraction_to_float(r: Fraction) -> float:
    try:
        return float(r)
    except OverflowError:
        return math.inf if r > 0 else -math.inf


def _orbit_is_tame(history: list[tuple[int, ...]], max_period: int) -> bool:
    """True if the tail of the orbit is periodic or periodic-plus-linear-drift.

    Checks ``x_m - x_{m-p}`` for being constant over three whole periods,
    which covers finite order maps (zero drift) and multitwists.  An
    exponentially growing orbit cannot satisfy this exactly.
    """
    m = len(history) - 1
    for p in range(1, max_period + 1):
        if m < 4 * p:
            break
        drift = tuple(u - v for u, v in zip(history[m], history[m - p]))
        if all(
            tuple(u - v for u, v in zip(history[t], history[t - p])) == drift
            for t in range(m - 3 * p, m)
        ):
            return True
    return False


def estimate_dilatation(w: BraidWord, opts: GrowthOptions | None = None, seed: LamCoord | None = None) -> GrowthReport:
    """Estimate the growth rate of ``w`` from successive coordinate-norm ratios.

    For a pseudo-Anosov braid the norms grow like ``lambda**m`` and the
    ratio ``|x_{m+1}| / |x_m|`` converges to the dilatation.  Ratios are kept
    as exact fractions.
    """
    opts = opts or GrowthOptions()
    n = w.strands
    x = seed if seed is not None else standard_curve(*opts.seed_curve, n)
    if x.strands != n:
        raise ValueError(f"seed has {x.strands} strands, word has {n}")
    if x.is_zero():
        raise ValueError("the empty multicurve cannot seed the iteration")

    history = [x.flat()]
    norm = coord_norm(x)
    trace: list[Fraction] = []
    flat_count = 0
    tol = Fraction(opts.tolerance)
    for m in range(1, opts.max_iter + 1):
        x = apply_word(x, w)
        history.append(x.flat())
        new_norm = coord_norm(x)
        r = Fraction(new_norm, norm)
        trace.append(r)
        norm = new_norm

        if _orbit_is_tame(history, opts.max_period):
            return GrowthReport(1.0, NON_PA, m, trace, Fraction(1))
        if abs(r - 1) < tol:
            flat_count += 1
            if flat_count >= opts.flat_run:
                return GrowthReport(1.0, NON_PA, m, trace, Fraction(1))
            continue
        flat_count = 0
        if m > opts.burn_in and len(trace) >= 2 and abs(r - trace[-2]) < tol:
            return GrowthReport(_fraction_to_float(r), CONVERGED, m, trace, r)

    last = trace[-1] if trace else Fraction(1)
    return GrowthReport(_fraction_to_float(last), BUDGET_EXCEEDED, opts.max_iter, trace, last)


def classify(w: BraidWord, opts: GrowthOptions | None = None) -> str:
    opts = opts or GrowthOptions()
    report = estimate_dilatation(w, opts)
    if report.status == CONVERGED and report.lambda_hat > 1 + opts.tolerance:
        return PSEUDO_ANOSOV
    if report.status == NON_PA:
        return NOT_PSEUDO_ANOSOV
    return UNDETERMINED
