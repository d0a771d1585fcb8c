"""Curve-diagram oracle: arc intersection counts read off a drawn curve.

A tight curve is drawn as the cyclic list of gaps where it crosses the line
through the punctures.  Gap ``g`` lies between punctures ``g`` and ``g+1``
(gap 0 is left of puncture 1, gap n right of puncture n).  Consecutive
crossings are joined by arcs that alternate between the upper and the lower
half plane, starting with the half given by ``first``.
"""


def crossing_counts(n, gaps, first="upper"):
    m = len(gaps)
    assert m % 2 == 0 and m > 0
    halves = [first if t % 2 == 0 else ("lower" if first == "upper" else "upper")
              for t in range(m)]
    arcs = [(gaps[t], gaps[(t + 1) % m], halves[t]) for t in range(m)]
    for p, q, _ in arcs:
        assert p != q, "an arc returning to its own gap is not tight"

    beta = [0] * (n + 1)
    above = [0] * (n + 1)
    below = [0] * (n + 1)
    for p, q, half in arcs:
        lo, hi = min(p, q), max(p, q)
        for k in range(lo + 1, hi):
            beta[k] += 1
        for puncture in range(lo + 1, hi + 1):
            (above if half == "upper" else below)[puncture] += 1
    # a crossing whose two arcs leave in opposite directions meets its gap's line
    for t in range(m):
        g = gaps[t]
        prev_dir = gaps[t - 1] - g
        next_dir = gaps[(t + 1) % m] - g
        if (prev_dir > 0) != (next_dir > 0) and 1 <= g <= n - 1:
            beta[g] += 1
    return beta, above, below


def diagram_coordinates(n, gaps, first="upper"):
    beta, above, below = crossing_counts(n, gaps, first)
    a, b = [], []
    for i in range(1, n - 1):
        da = below[i + 1] - above[i + 1]
        db = beta[i] - beta[i + 1]
        assert da % 2 == 0 and db % 2 == 0
        a.append(da // 2)
        b.append(db // 2)
    return tuple(a), tuple(b)


def round_curve(i, j):
    """Gaps for the round curve around punctures i..j."""
    return [i - 1, j]
