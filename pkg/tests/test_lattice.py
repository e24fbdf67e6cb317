import itertools
import math
import random
from fractions import Fraction

import pytest

from frobshot.core import validate_tuple
from frobshot.errors import DegenerateBasis, RankTooHigh
from frobshot.lattice import (LatticeBasis, _solve_integer, covering_radius_bounds,
                              covering_radius_exact, det, dot, gram, gram_schmidt,
                              grassmann_coords, is_esm, jarnik_upper_sq, lattice_determinant_sq,
                              lll_reduce, minkowski_holds, null_lattice_basis, raw_minors,
                              signed_tuple, successive_minima, voronoi_relevant)

from conftest import frac_det, frac_rank, random_coprime_tuple


def box_minima(a, half_width=10):
    """Successive minima of the null lattice from every kernel vector in a box.

    Valid whenever the largest minimum has squared norm <= half_width**2,
    since any longer coordinate already exceeds that norm.
    """
    n = len(a)
    vecs = []
    for v in itertools.product(range(-half_width, half_width + 1), repeat=n - 1):
        # solve for the last coordinate
        s = -sum(x * y for x, y in zip(v, a))
        if s % a[-1]:
            continue
        w = v + (s // a[-1],)
        if any(w):
            vecs.append((sum(x * x for x in w), w))
    vecs.sort()
    chosen, minima = [], []
    for norm, w in vecs:
        if frac_rank(chosen + [w]) > len(chosen):
            chosen.append(w)
            minima.append(norm)
            if len(minima) == n - 1:
                break
    return tuple(minima)


def test_basis_is_orthogonal_and_full_rank(rng):
    for _ in range(40):
        a = validate_tuple(random_coprime_tuple(rng, rng.choice([3, 4, 5]), 2, 200))
        b = null_lattice_basis(a)
        assert b.rank == a.n - 1
        assert all(dot(c, a.entries) == 0 for c in b.columns)
        assert frac_rank(b.columns) == a.n - 1


def test_determinant_is_norm():
    a = validate_tuple([3, 5, 7])
    assert lattice_determinant_sq(null_lattice_basis(a)) == 83
    b = validate_tuple([2, 3])
    assert lattice_determinant_sq(null_lattice_basis(b)) == 13


def test_cauchy_binet_and_grassmann(rng):
    for _ in range(50):
        a = validate_tuple(random_coprime_tuple(rng, rng.choice([3, 4, 5, 6]), 2, 500))
        b = null_lattice_basis(a, reduce=rng.random() < 0.5)
        minors = raw_minors(b)
        assert sum(m * m for m in minors) == lattice_determinant_sq(b) == a.norm_sq
        assert signed_tuple(grassmann_coords(b)) == a.entries


def test_grassmann_flip_recorded():
    a = validate_tuple([3, 5, 7])
    b = null_lattice_basis(a)
    flipped = LatticeBasis((b.columns[0], tuple(-x for x in b.columns[1])))
    g1, g2 = grassmann_coords(b), grassmann_coords(flipped)
    assert g1.coords == g2.coords
    assert g1.orientation_flipped != g2.orientation_flipped


def test_grassmann_rejects_wrong_rank():
    with pytest.raises(DegenerateBasis):
        grassmann_coords(LatticeBasis(((1, -1, 0),)))


def test_det_matches_fractions(rng):
    for _ in range(30):
        n = rng.randint(1, 5)
        m = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert det(m) == frac_det(m)


def test_lll_preserves_lattice(rng):
    for _ in range(20):
        a = validate_tuple(random_coprime_tuple(rng, 4, 2, 300))
        raw = null_lattice_basis(a, reduce=False)
        red = lll_reduce(raw.columns)
        assert det(gram(red)) == det(gram(raw.columns))
        # each reduced vector is an integer combination of the raw basis, and vice versa
        assert all(dot(v, a.entries) == 0 for v in red)


def test_gram_schmidt_detects_dependence():
    with pytest.raises(DegenerateBasis):
        gram_schmidt(gram([(1, 2, 3), (2, 4, 6)]))


def test_minima_against_box_search(rng):
    checked = 0
    while checked < 40:
        a = random_coprime_tuple(rng, rng.choice([3, 4]), 2, 12)
        if sum(x * x for x in a) > 500:
            continue
        m = successive_minima(null_lattice_basis(validate_tuple(a)))
        if m.sq_minima[-1] > 100:
            continue
        assert m.sq_minima == box_minima(a), a
        checked += 1


def test_minima_witnesses(rng):
    for _ in range(20):
        a = validate_tuple(random_coprime_tuple(rng, 4, 2, 400))
        m = successive_minima(null_lattice_basis(a))
        assert [dot(w, w) for w in m.witnesses] == list(m.sq_minima)
        assert list(m.sq_minima) == sorted(m.sq_minima)
        assert frac_rank(m.witnesses) == a.n - 1
        assert all(dot(w, a.entries) == 0 for w in m.witnesses)
        assert minkowski_holds(m, a.norm_sq)


def test_reduced_tuple_has_no_short_vectors(rng):
    # a kernel vector of norm^2 <= 3 has entries in {-1, 0, 1}, which would
    # make some a_i a sum of at most two others
    from frobshot.core import is_reduced
    for _ in range(40):
        a = validate_tuple(random_coprime_tuple(rng, 3, 3, 150))
        if is_reduced(a):
            assert successive_minima(null_lattice_basis(a)).sq_minima[0] >= 4


def test_rank_cap():
    a = validate_tuple(range(2, 12))
    with pytest.raises(RankTooHigh):
        successive_minima(null_lattice_basis(a), max_rank=4)


def test_published_table_minima():
    for entries, lam in [((9337, 9961, 11593, 67367), 1802),
                         ((39221, 46967, 47869, 62839, 206749), 524)]:
        m = successive_minima(null_lattice_basis(validate_tuple(entries)))
        assert is_esm(m) and m.sq_minima[0] == lam


def test_jarnik_exact_when_equal():
    assert jarnik_upper_sq((1802, 1802, 1802)) == Fraction(8109, 2)
    # unequal minima: (sqrt2 + sqrt3)^2 / 4 = (5 + 2 sqrt6) / 4
    val = jarnik_upper_sq((2, 3))
    assert 0 <= val - (5 + 2 * math.sqrt(6)) / 4 < 1e-12


def test_covering_rank_one():
    est = covering_radius_exact(LatticeBasis(((3,),)))
    assert est.exact_sq == Fraction(9, 4)


def test_covering_square_lattice():
    est = covering_radius_exact(LatticeBasis(((1, 0), (0, 1))))
    assert est.exact_sq == Fraction(1, 2)


def test_covering_hexagonal():
    # A2 with minimal norm^2 2: circumradius^2 of its Voronoi hexagon is 2/3
    est = covering_radius_exact(LatticeBasis(((1, -1, 0), (0, 1, -1))))
    assert est.exact_sq == Fraction(2, 3)


def test_covering_cubic_rank_three():
    est = covering_radius_exact(LatticeBasis(((2, 0, 0), (0, 2, 0), (0, 0, 2))))
    assert est.exact_sq == 3


def test_covering_3_5_7_against_sampling():
    a = validate_tuple([3, 5, 7])
    b = null_lattice_basis(a)
    est = covering_radius_exact(b)
    assert est.exact_sq == Fraction(378, 83)
    m = successive_minima(b)
    assert m.sq_minima == (6, 14)
    assert est.lower_sq <= est.exact_sq <= est.upper_sq

    # sample points of the plane and measure distance to the nearest lattice point
    u, v = (list(map(float, c)) for c in lll_reduce(b.columns))
    rng = random.Random(1)
    worst = 0.0
    for _ in range(4000):
        s, t = rng.random(), rng.random()
        p = [s * x + t * y for x, y in zip(u, v)]
        best = min(sum((pi - i * x - j * y) ** 2 for pi, x, y in zip(p, u, v))
                   for i in range(-3, 4) for j in range(-3, 4))
        worst = max(worst, best)
    assert worst <= float(est.exact_sq) + 1e-9
    assert worst > 0.97 * float(est.exact_sq)


def test_voronoi_relevant_square():
    rel = voronoi_relevant([[1, 0], [0, 1]])
    assert sorted(rel) == sorted([(1, 0), (-1, 0), (0, 1), (0, -1)])


def test_covering_bounds_ordering(rng):
    for _ in range(15):
        a = validate_tuple(random_coprime_tuple(rng, 4, 3, 200))
        b = null_lattice_basis(a)
        cb = covering_radius_bounds(successive_minima(b))
        ex = covering_radius_exact(b)
        assert cb.lower_sq <= ex.exact_sq <= cb.upper_sq


def test_solve_integer_matches_fractions(rng):
    for _ in range(40):
        n = rng.randint(1, 4)
        m = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)]
        rhs = [rng.randint(-6, 6) for _ in range(n)]
        sol = _solve_integer(m, rhs)
        d = frac_det(m)
        if d == 0:
            continue
        assert sol is not None
        nums, den = sol
        assert abs(den) == abs(d)
        xs = [Fraction(x, den) for x in nums]
        assert all(sum(r * x for r, x in zip(row, xs)) == h for row, h in zip(m, rhs))
