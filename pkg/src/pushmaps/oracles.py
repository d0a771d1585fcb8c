"""Independent growth-rate oracles used to cross-check the estimator.

* :func:`linear_piece` extracts the integer matrix of the piecewise-linear
  coordinate action on the cone containing a late iterate.  Its
  characteristic polynomial is exact and its Perron root is the dilatation,
  with no ratio iteration involved.
* :func:`burau_spectral_radius` is the spectral radius of the reduced-free
  Burau matrix at ``t = -1``.  It never exceeds the dilatation and equals it
  when the invariant foliation is orientable.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .braid import BraidWord
from .lamination import LamCoord, apply_word, standard_curve


def linear_piece(w: BraidWord, x: LamCoord, scale: int = 10**6) -> list[list[int]]:
    """Integer matrix ``M`` with ``apply_word(y, w) == M y`` for ``y`` near ray(x).

    The action is positively homogeneous and piecewise linear, so columns are
    exact differences ``F(scale*x + e_k) - F(scale*x)`` as long as the
    perturbed points stay in the cone of ``x``.  That is checked by repeating
    at twice the scale.
    """
    def build(s: int) -> list[list[int]]:
        n, f = x.strands, list(x.flat())
        base = apply_word(LamCoord.from_flat(n, [s * v for v in f]), w).flat()
        cols = []
        for k in range(len(f)):
            y = [s * v for v in f]
            y[k] += 1
            img = apply_word(LamCoord.from_flat(n, y), w).flat()
            cols.append([u - v for u, v in zip(img, base)])
        return [list(row) for row in zip(*cols)]

    M = build(scale)
    if build(2 * scale) != M:
        raise ArithmeticError("iterate is on a cone wall; pick a later iterate")
    return M


def char_poly(M: list[list[int]]) -> list[int]:
    """Exact characteristic polynomial, leading coefficient first (Faddeev-LeVerrier)."""
    d = len(M)
    A = [[Fraction(v) for v in row] for row in M]
    coeffs = [Fraction(1)]
    N = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    for k in range(1, d + 1):
        AN = [[sum(A[i][t] * N[t][j] for t in range(d)) for j in range(d)] for i in range(d)]
        c = -sum(AN[i][i] for i in range(d)) / k
        coeffs.append(c)
        N = [[AN[i][j] + (c if i == j else 0) for j in range(d)] for i in range(d)]
    assert all(c.denominator == 1 for c in coeffs)
    return [int(c) for c in coeffs]


def perron_root(coeffs: list[int]) -> float:
    """Largest modulus among the roots of the polynomial."""
    roots = np.roots(np.array(coeffs, dtype=float))
    return float(max(abs(roots)))


def orbit_polynomial(w: BraidWord, warmup: int = 40) -> list[int]:
    """Characteristic polynomial of the linear piece at the ``warmup``-th iterate."""
    x = standard_curve(1, 2, w.strands)
    for _ in range(warmup):
        x = apply_word(x, w)
    return char_poly(linear_piece(w, x))


def transition_dilatation(w: BraidWord, warmup: int = 40) -> float:
    return perron_root(orbit_polynomial(w, warmup))


def burau_matrix(w: BraidWord, t: float = -1.0) -> np.ndarray:
    n = w.strands
    M = np.eye(n)
    for g in w.letters:
        i = g.index - 1
        B = np.eye(n)
        B[i:i + 2, i:i + 2] = [[1 - t, t], [1, 0]]
        if g.sign < 0:
            B = np.linalg.inv(B)
        M = M @ B
    return M


def burau_spectral_radius(w: BraidWord, t: float = -1.0) -> float:
    return float(max(abs(np.linalg.eigvals(burau_matrix(w, t)))))
