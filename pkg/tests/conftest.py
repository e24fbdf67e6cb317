import sys
import math
import random
from fractions import Fraction

import pytest


def dp_frobenius(gens):
    """Largest non-representable integer by a plain coin-change table."""
    g = sorted(gens)
    limit = g[0] * g[-1]  # conservative: F < a_1 * a_N
    ok = [False] * (limit + 1)
    ok[0] = True
    for t in range(1, limit + 1):
        ok[t] = any(t >= x and ok[t - x] for x in g)
    return max(t for t in range(limit + 1) if not ok[t]) if not all(ok) else -1


def frac_det(m):
    m = [[Fraction(x) for x in row] for row in m]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return d


def frac_rank(vectors):
    rows = [[Fraction(x) for x in v] for v in vectors]
    r = 0
    if not rows:
        return 0
    for c in range(len(rows[0])):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def random_coprime_tuple(rng, n, lo=2, hi=60):
    while True:
        vals = sorted(rng.sample(range(lo, hi + 1), n))
        if math.gcd(*vals) == 1:
            return tuple(vals)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
