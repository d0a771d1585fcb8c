"""The acceptance suite: nine numbered checks, each runnable on its own.

Every check returns a :class:`CriterionResult` whose ``detail`` holds the
numbers behind the verdict.  Randomised checks draw from a seeded
``random.Random`` so a run is reproducible from its seed.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .bounds import (
    corollary_lower,
    fig7_upper,
    hironaka_kin_upper,
    lower_series,
    min_self_intersection,
    penner_lower,
    pointpush_lower,
    strand_sim_lower,
    strand_sim_upper,
    thm12_check,
    thm13_check,
    upper_series,
    SurfaceType,
)
from .braid import BraidWord, Generator, compose, inverse, power
from .lamination import (
    CONVERGED,
    PSEUDO_ANOSOV,
    GrowthOptions,
    LamCoord,
    apply_word,
    classify,
    estimate_dilatation,
    format_real,
)
from .oracles import transition_dilatation
from .pointpush import (
    NON_FILLING,
    LoopWord,
    classify_loop,
    figure7_expected_k,
    figure7_loop,
    push_braid,
)

DEFAULT_SEED = 20240601


@dataclass
class CriterionResult:
    number: int
    key: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{verdict} [{self.number}] {self.key}"

    def to_dict(self) -> dict:
        return {"number": self.number, "key": self.key, "passed": self.passed, "detail": self.detail}


def _minimal3(opts: GrowthOptions, seed: int) -> CriterionResult:
    w = BraidWord.from_ints(3, [2, -1])
    start = time.perf_counter()
    rep = estimate_dilatation(w, opts)
    elapsed = time.perf_counter() - start
    target = (3 + math.sqrt(5)) / 2
    err = abs(rep.lambda_hat - target)
    ok = rep.status == CONVERGED and err < 1e-6 and rep.iterations_used <= 200 and elapsed < 1.0
    # elapsed time is left out of the detail so reports stay byte-identical
    return CriterionResult(1, "minimal3", ok, {
        "lambda_hat": format_real(rep.lambda_hat),
        "oracle": format_real(target),
        "status": rep.status,
        "iterations": rep.iterations_used,
        "under_1s": elapsed < 1.0,
    })


NAMED_BRAIDS = {
    # sphere punctures -> (disk strands, word)
    5: (4, [3, 2, -1]),
    6: (5, [1, 2, 3, 4, 1, 2]),
}


def _named(opts: GrowthOptions, seed: int) -> CriterionResult:
    ok, rows = True, {}
    for sphere_n, (strands, ints) in NAMED_BRAIDS.items():
        w = BraidWord.from_ints(strands, ints)
        rep = estimate_dilatation(w, opts)
        verdict = classify(w, opts)
        oracle = transition_dilatation(w)
        good = verdict == PSEUDO_ANOSOV and abs(rep.lambda_hat - oracle) < 1e-6
        ok &= good
        rows[str(w)] = {
            "sphere_punctures": sphere_n,
            "disk_strands": strands,
            "classification": verdict,
            "lambda_hat": format_real(rep.lambda_hat),
            "oracle": format_real(oracle),
            "log_lambda": format_real(math.log(rep.lambda_hat)),
            "hk_upper": format_real(hironaka_kin_upper(sphere_n)),
            "passed": good,
        }
    return CriterionResult(2, "named", ok, rows)


def _fig7(opts: GrowthOptions, seed: int) -> CriterionResult:
    ok, rows = True, {}
    for n in range(4, 11):
        braid = push_braid(figure7_loop(n)).braid
        rep = estimate_dilatation(braid, opts)
        verdict = classify(braid, opts)
        lo, hi = pointpush_lower(figure7_expected_k(n)), fig7_upper(n)
        good = (
            rep.status == CONVERGED
            and verdict == PSEUDO_ANOSOV
            and lo - 1e-6 <= rep.lambda_hat <= hi + 1e-6
        )
        ok &= good
        rows[str(n)] = {
            "lambda_hat": format_real(rep.lambda_hat),
            "status": rep.status,
            "lower": lo,
            "upper": hi,
            "passed": good,
        }
    return CriterionResult(3, "fig7", ok, rows)


def _strands(opts: GrowthOptions, seed: int) -> CriterionResult:
    bad = []
    for k in range(1, 7):
        lo = strand_sim_lower(k, 10)
        up = strand_sim_upper(k, 10)
        beta = 2 * k * k + 6 * k + 3
        for m in range(0, 11):
            if lo.counts[m] != (1 + 2 * k) ** m:
                bad.append(("lower_count", k, m))
            if m >= 1 and lo.series[m] != lower_series(k, m):
                bad.append(("lower_series", k, m))
            if up.counts[m] != 2 * beta**m:
                bad.append(("upper_count", k, m))
            if up.series[m] != upper_series(k, m):
                bad.append(("upper_series", k, m))
    return CriterionResult(4, "strands", not bad, {"k": "1..6", "m": "0..10", "mismatches": bad[:10]})


def _unit_powers(opts: GrowthOptions, seed: int) -> CriterionResult:
    first_true = [n for n in range(4, 21) if thm13_check(n).first_inequality_holds]
    second = {n: thm13_check(n).second_inequality_holds for n in range(5, 26)}
    ok = first_true == [4] and all(second[n] == (n <= 15) for n in second)
    flips = [n for n in range(6, 26) if second[n] != second[n - 1]]
    return CriterionResult(5, "unit_powers", ok, {"first_true_for": first_true, "second_flips_at": flips})


def _h_growth(opts: GrowthOptions, seed: int) -> CriterionResult:
    c1_fail = [n for n in range(4, 101) if not thm12_check(n).claim1]
    c2_true = [n for n in range(4, 101) if thm12_check(n).claim2]
    ok = not c1_fail and c2_true == list(range(7, 101))
    return CriterionResult(6, "h_growth", ok, {
        "claim1_false_for": c1_fail,
        "claim2_first_true": c2_true[0] if c2_true else None,
    })


def _chain(opts: GrowthOptions, seed: int) -> CriterionResult:
    bad = []
    for n in range(4, 101):
        S = SurfaceType(0, n)
        if not penner_lower(S) < hironaka_kin_upper(n):
            bad.append(("sandwich", n))
        via_k = math.log(pointpush_lower(min_self_intersection(S)))
        if format_real(corollary_lower(S)) != format_real(via_k):
            bad.append(("corollary", n))
        if figure7_expected_k(n) != min_self_intersection(S):
            bad.append(("euler_minimum", n))
    return CriterionResult(7, "chain", not bad, {"n": "4..100", "mismatches": bad})


def _random_word(rng: random.Random, strands: int, length: int) -> BraidWord:
    return BraidWord(strands, tuple(
        Generator(rng.randint(1, strands - 1), rng.choice((1, -1))) for _ in range(length)
    ))


def _random_coord(rng: random.Random, strands: int, bound: int = 50) -> LamCoord:
    flat = [rng.randint(-bound, bound) for _ in range(2 * (strands - 2))]
    return LamCoord.from_flat(strands, flat)


def _invariance(opts: GrowthOptions, seed: int) -> CriterionResult:
    rng = random.Random(seed)
    round_trip_failures = 0
    for _ in range(10_000):
        n = rng.randint(3, 8)
        w = _random_word(rng, n, rng.randint(0, 12))
        x = _random_coord(rng, n)
        if apply_word(apply_word(x, w), inverse(w)) != x:
            round_trip_failures += 1

    relation_failures = 0
    for _ in range(1000):
        n = rng.randint(4, 8)
        x = _random_coord(rng, n)
        i = rng.randint(1, n - 2)
        lhs = apply_word(x, BraidWord.from_ints(n, [i, i + 1, i]))
        rhs = apply_word(x, BraidWord.from_ints(n, [i + 1, i, i + 1]))
        if lhs != rhs:
            relation_failures += 1
        j = rng.randint(1, n - 1)
        if abs(i - j) >= 2:
            if apply_word(x, BraidWord.from_ints(n, [i, j])) != apply_word(x, BraidWord.from_ints(n, [j, i])):
                relation_failures += 1

    base = BraidWord.from_ints(3, [2, -1])
    lam = estimate_dilatation(base, opts).lambda_hat
    law_failures = []
    for t in range(20):
        if t % 2 == 0:
            u = _random_word(rng, 3, rng.randint(1, 6))
            w = compose(compose(u, base), inverse(u))
            expected = lam
        else:
            q = rng.randint(2, 3)
            w = power(base, q)
            expected = lam**q
        rep = estimate_dilatation(w, opts)
        if rep.status != CONVERGED or abs(rep.lambda_hat - expected) > 2e-6:
            law_failures.append({"word": str(w), "lambda_hat": format_real(rep.lambda_hat),
                                 "expected": format_real(expected), "status": rep.status})

    ok = not round_trip_failures and not relation_failures and not law_failures
    return CriterionResult(8, "invariance", ok, {
        "seed": seed,
        "round_trip_failures": round_trip_failures,
        "relation_failures": relation_failures,
        "law_failures": law_failures,
    })


def _nonfilling(opts: GrowthOptions, seed: int) -> CriterionResult:
    rows = {"L3: g1": classify_loop(LoopWord(3, ((1, 1),)), opts)}
    for n in range(4, 9):
        N = n - 1
        for i in range(1, N):
            for e in (1, -1):
                loop = LoopWord(N, ((i, e),))
                rows[str(loop)] = classify_loop(loop, opts)
    bad = {k: v for k, v in rows.items() if v != NON_FILLING}
    return CriterionResult(9, "nonfilling", not bad, {"checked": len(rows), "failures": bad})


CRITERIA: dict[str, Callable[[GrowthOptions, int], CriterionResult]] = {
    "minimal3": _minimal3,
    "named": _named,
    "fig7": _fig7,
    "strands": _strands,
    "unit_powers": _unit_powers,
    "h_growth": _h_growth,
    "chain": _chain,
    "invariance": _invariance,
    "nonfilling": _nonfilling,
}


def run(keys: list[str] | None = None, opts: GrowthOptions | None = None, seed: int = DEFAULT_SEED) -> list[CriterionResult]:
    opts = opts or GrowthOptions()
    keys = list(CRITERIA) if not keys else keys
    unknown = [k for k in keys if k not in CRITERIA]
    if unknown:
        raise KeyError(f"unknown criteria: {', '.join(unknown)}; choose from {', '.join(CRITERIA)}")
    return [CRITERIA[k](opts, seed) for k in CRITERIA if k in keys]
