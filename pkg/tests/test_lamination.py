import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diagram_oracle import diagram_coordinates, round_curve
from pushmaps.braid import BraidWord, Generator, band_generator, compose, inverse, power
from pushmaps.lamination import (
    BUDGET_EXCEEDED,
    CONVERGED,
    NON_PA,
    NOT_PSEUDO_ANOSOV,
    PSEUDO_ANOSOV,
    UNDETERMINED,
    GrowthOptions,
    LamCoord,
    apply_generator,
    apply_word,
    classify,
    coord_norm,
    estimate_dilatation,
    format_real,
    standard_curve,
)
from pushmaps.oracles import burau_spectral_radius, orbit_polynomial, perron_root

GOLDEN_SQ = (3 + math.sqrt(5)) / 2


def W(n, *ints):
    return BraidWord.from_ints(n, list(ints))


def coords(n, bound=10**6):
    return st.lists(st.integers(-bound, bound), min_size=2 * (n - 2), max_size=2 * (n - 2)).map(
        lambda flat: LamCoord.from_flat(n, flat))


def word_and_coord(min_n=3, max_n=8, max_len=15):
    return st.integers(min_n, max_n).flatmap(lambda n: st.tuples(
        st.lists(st.integers(1, n - 1).flatmap(lambda i: st.sampled_from([i, -i])), max_size=max_len)
        .map(lambda ints: BraidWord.from_ints(n, ints)),
        coords(n),
    ))


# the diagram oracle

@pytest.mark.parametrize("n", range(3, 9))
def test_standard_curves_match_diagram(n):
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            if (i, j) == (1, n):
                continue
            c = standard_curve(i, j, n)
            assert (c.a, c.b) == diagram_coordinates(n, round_curve(i, j))


def test_standard_curve_small_case():
    # beta_1 = 2, beta_2 = 0
    assert standard_curve(1, 2, 3) == LamCoord(3, (0,), (1,))


def test_standard_curve_rejects_boundary_parallel():
    with pytest.raises(ValueError):
        standard_curve(1, 4, 4)
    with pytest.raises(ValueError):
        standard_curve(2, 2, 4)


def test_half_twist_matches_diagram():
    # s2 carries the curve round {1,2} to the curve round {1,3} passing above 2
    image = apply_generator(standard_curve(1, 2, 3), Generator(2))
    assert (image.a, image.b) == diagram_coordinates(3, [0, 3, 2, 1], "upper")
    assert (image.a, image.b) == ((-1,), (0,))


def test_band_generator_fixes_the_curve_it_encircles():
    # A_{1,3} pushes strand 3 round strand 1 below strand 2; the curve round
    # {1,3} passing below 2 bounds the disk it happens in
    a, b = diagram_coordinates(3, [0, 3, 2, 1], "lower")
    c = LamCoord(3, a, b)
    assert apply_word(c, band_generator(1, 3, 3)) == c
    assert apply_word(standard_curve(1, 2, 3), band_generator(1, 3, 3)) != standard_curve(1, 2, 3)


def test_full_twist_is_central():
    for n in (3, 4, 5):
        delta2 = power(BraidWord.from_ints(n, list(range(1, n))), n)
        x = LamCoord.from_flat(n, list(range(1, 2 * (n - 2) + 1)))
        assert apply_word(x, delta2) == x


# action

def test_zero_is_fixed():
    z = LamCoord.zero(5)
    for i in range(1, 5):
        for s in (1, -1):
            assert apply_generator(z, Generator(i, s)).is_zero()


def test_identity_word():
    x = standard_curve(1, 2, 4)
    assert apply_word(x, BraidWord.identity(4)) == x
    assert apply_word(x, W(4, 1, -1)) == x


def test_generator_out_of_range():
    with pytest.raises(ValueError):
        apply_generator(standard_curve(1, 2, 3), Generator(3))
    with pytest.raises(ValueError):
        apply_word(standard_curve(1, 2, 3), W(4, 1))


def test_lamcoord_validation():
    with pytest.raises(ValueError):
        LamCoord(2, (), ())
    with pytest.raises(ValueError):
        LamCoord(4, (1,), (1, 2))


@settings(max_examples=300)
@given(word_and_coord())
def test_round_trip_exact(wx):
    w, x = wx
    assert apply_word(apply_word(x, w), inverse(w)) == x


@given(st.integers(3, 8).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n - 1), st.sampled_from([1, -1]), coords(n))))
def test_generator_then_inverse(args):
    n, i, s, x = args
    g = Generator(i, s)
    assert apply_generator(apply_generator(x, g), g.inverse()) == x


@settings(max_examples=300)
@given(st.integers(3, 8).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n - 1), st.integers(1, n - 1), coords(n))))
def test_braid_relations(args):
    n, i, j, x = args
    if j == i + 1:
        assert apply_word(x, W(n, i, j, i)) == apply_word(x, W(n, j, i, j))
    if abs(i - j) >= 2:
        assert apply_word(x, W(n, i, j)) == apply_word(x, W(n, j, i))


@given(word_and_coord(), st.data())
def test_action_is_homomorphism(wx, data):
    w, x = wx
    n = w.strands
    v = BraidWord.from_ints(n, data.draw(st.lists(st.integers(1, n - 1), max_size=8)))
    assert apply_word(x, compose(w, v)) == apply_word(apply_word(x, w), v)


@given(word_and_coord())
def test_action_is_homogeneous(wx):
    w, x = wx
    y = LamCoord.from_flat(x.strands, [3 * v for v in x.flat()])
    assert apply_word(y, w).flat() == tuple(3 * v for v in apply_word(x, w).flat())


def test_big_integers_do_not_overflow():
    w = W(3, 2, -1)
    x = standard_curve(1, 2, 3)
    for _ in range(300):
        x = apply_word(x, w)
    assert coord_norm(x) > 2**300
    for _ in range(300):
        x = apply_word(x, inverse(w))
    assert x == standard_curve(1, 2, 3)


# norm

def test_norm_basics():
    assert coord_norm(LamCoord.zero(4)) == 0
    x = LamCoord(4, (1, -2), (3, 0))
    assert coord_norm(x) == 6 == coord_norm(x.negated())


@given(st.integers(3, 7).flatmap(coords))
def test_norm_zero_iff_empty(x):
    assert (coord_norm(x) == 0) == x.is_zero()


def test_norm_strictly_increases_after_burn_in():
    w = W(3, 2, -1)
    x = standard_curve(1, 2, 3)
    norms = []
    for _ in range(40):
        x = apply_word(x, w)
        norms.append(coord_norm(x))
    assert all(a < b for a, b in zip(norms[10:], norms[11:]))


# growth estimation

def test_minimal_three_braid():
    rep = estimate_dilatation(W(3, 2, -1))
    assert rep.status == CONVERGED
    assert abs(rep.lambda_hat - GOLDEN_SQ) < 1e-6
    assert abs(rep.ratio_trace[-1] - rep.ratio_trace[-2]) < Fraction(1e-9)
    assert isinstance(rep.lambda_exact, Fraction)


def test_four_braid_matches_transition_polynomial():
    w = W(4, 3, 2, -1)
    poly = orbit_polynomial(w)
    # published minimal polynomial of the least 4-braid dilatation
    assert poly == [1, -2, 0, -2, 1]
    assert abs(estimate_dilatation(w).lambda_hat - perron_root(poly)) < 1e-6


def test_five_braid_matches_transition_polynomial():
    w = W(5, 1, 2, 3, 4, 1, 2)
    poly = orbit_polynomial(w)
    quotient, remainder = np.polydiv(poly, [1, -1, -1, -1, 1])
    assert np.allclose(remainder, 0)
    lam = perron_root([1, -1, -1, -1, 1])
    assert abs(estimate_dilatation(w).lambda_hat - lam) < 1e-6
    # orientable foliation here, so the Burau bound is tight
    assert abs(burau_spectral_radius(w) - lam) < 1e-6


def test_burau_is_a_lower_bound():
    for n, ints in [(3, [2, -1]), (4, [3, 2, -1]), (4, [1, -2, 3, -2]), (5, [1, 2, 3, 4, 1, 2])]:
        w = W(n, *ints)
        assert burau_spectral_radius(w) <= estimate_dilatation(w).lambda_hat + 1e-6


def test_seed_independence():
    w = W(4, 3, 2, -1)
    lams = [estimate_dilatation(w, GrowthOptions(seed_curve=s)).lambda_hat for s in [(1, 2), (2, 3), (3, 4), (1, 3)]]
    assert max(lams) - min(lams) < 2e-9


def test_reducible_and_trivial_words():
    assert estimate_dilatation(W(3, 1)).status == NON_PA
    assert estimate_dilatation(BraidWord.identity(4)).status == NON_PA
    assert estimate_dilatation(W(4, 1, 1, 1)).lambda_hat == 1.0
    # a product of twists on disjoint curves grows linearly
    assert estimate_dilatation(W(5, 1, 1, 4, 4, 4)).status == NON_PA


def test_periodic_word():
    # s1 s2 has order three in the mapping class group of the 3-punctured disk
    assert estimate_dilatation(W(3, 1, 2)).status == NON_PA


def test_zero_seed_rejected():
    with pytest.raises(ValueError):
        estimate_dilatation(W(3, 1), seed=LamCoord.zero(3))
    with pytest.raises(ValueError):
        estimate_dilatation(W(3, 1), seed=standard_curve(1, 2, 4))


def test_budget_exceeded():
    rep = estimate_dilatation(W(3, 2, -1), GrowthOptions(max_iter=5, burn_in=1))
    assert rep.status == BUDGET_EXCEEDED
    assert rep.iterations_used == 5


def test_growth_options_validation():
    with pytest.raises(ValueError):
        GrowthOptions(tolerance=0)
    with pytest.raises(ValueError):
        GrowthOptions(max_iter=5, burn_in=10)


def test_classify():
    assert classify(W(3, 2, -1)) == PSEUDO_ANOSOV
    assert classify(W(3, 1)) == NOT_PSEUDO_ANOSOV
    assert classify(BraidWord.identity(3)) == NOT_PSEUDO_ANOSOV
    assert classify(W(3, 2, -1), GrowthOptions(max_iter=3, burn_in=1)) == UNDETERMINED


def test_report_json():
    rep = estimate_dilatation(W(3, 2, -1))
    doc = json.loads(rep.to_json(include_trace=True))
    assert set(doc) == {"lambda_hat", "status", "iterations_used", "ratio_trace"}
    assert doc["lambda_hat"] == format_real(rep.lambda_hat)
    assert len(doc["lambda_hat"].replace(".", "")) <= 12
    assert "ratio_trace" not in json.loads(rep.to_json())


@pytest.mark.parametrize("conj", [[1], [2, 2], [1, -2, 1], [-1, -1, 2]])
def test_conjugation_invariance(conj):
    w = W(3, 2, -1)
    u = BraidWord.from_ints(3, conj)
    a = estimate_dilatation(w).lambda_hat
    b = estimate_dilatation(compose(compose(u, w), inverse(u))).lambda_hat
    assert abs(a - b) < 2e-9


@pytest.mark.parametrize("q", [2, 3, 4])
def test_power_law(q):
    w = W(4, 3, 2, -1)
    lam = estimate_dilatation(w).lambda_hat
    assert abs(estimate_dilatation(power(w, q)).lambda_hat - lam**q) < 1e-9 * lam**q * 10


def test_mirror_has_same_dilatation():
    w = W(4, 3, 2, -1)
    mirror = W(4, -3, -2, 1)
    assert abs(estimate_dilatation(w).lambda_hat - estimate_dilatation(mirror).lambda_hat) < 2e-9
