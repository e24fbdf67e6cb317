"""The null lattice of a tuple: basis, Grassmann coordinates, minima, covering radius.

All arithmetic is over Python integers and fractions.  Lattice reduction only
speeds up enumeration; correctness of every reported quantity rests on
exhaustive search with exact comparisons.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from . import enclosure
from .core import NTuple
from .enclosure import DEFAULT_PRECISION, Interval
from .errors import DegenerateBasis, EnumerationBudgetExceeded, RankTooHigh

Vector = tuple[int, ...]

DEFAULT_MAX_RANK = 8
DEFAULT_BUDGET = 2_000_000
MAX_VORONOI_RANK = 4


# ---------------------------------------------------------------------------
# small exact linear algebra

def dot(u: Sequence[int], v: Sequence[int]):
    return sum(x * y for x, y in zip(u, v))


def gram(vectors: Sequence[Sequence[int]]) -> list[list[int]]:
    return [[dot(u, v) for v in vectors] for u in vectors]


def det(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free (Bareiss) elimination."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rank(vectors: Sequence[Sequence]) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


class _IndependenceTracker:
    """Incremental row echelon form for greedy selection of independent vectors."""

    def __init__(self):
        self.rows: list[tuple[int, list[Fraction]]] = []

    def add(self, v: Sequence[int]) -> bool:
        w = [Fraction(x) for x in v]
        for piv, row in self.rows:
            if w[piv]:
                f = w[piv] / row[piv]
                w = [x - f * y for x, y in zip(w, row)]
        piv = next((i for i, x in enumerate(w) if x), None)
        if piv is None:
            return False
        self.rows.append((piv, w))
        return True


def gram_schmidt(g: Sequence[Sequence[int]]):
    """Exact Gram-Schmidt data (mu, squared norms) from a Gram matrix."""
    n = len(g)
    mu = [[Fraction(0)] * n for _ in range(n)]
    bstar = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            s = Fraction(g[i][j]) - sum(mu[j][k] * mu[i][k] * bstar[k] for k in range(j))
            mu[i][j] = s / bstar[j]
        bstar[i] = Fraction(g[i][i]) - sum(mu[i][k] ** 2 * bstar[k] for k in range(i))
        if bstar[i] == 0:
            raise DegenerateBasis("vectors are linearly dependent")
    return mu, bstar


def lll_reduce(vectors: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)) -> list[Vector]:
    """LLL-reduce linearly independent integer vectors in exact arithmetic."""
    b = [list(v) for v in vectors]
    n = len(b)
    if n <= 1:
        return [tuple(v) for v in b]
    mu, bstar = gram_schmidt(gram(b))

    def size_reduce(k, j):
        q = round(mu[k][j])
        if q:
            b[k] = [x - q * y for x, y in zip(b[k], b[j])]
            for i in range(j):
                mu[k][i] -= q * mu[j][i]
            mu[k][j] -= q

    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            size_reduce(k, j)
        if bstar[k] >= (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
            continue
        b[k], b[k - 1] = b[k - 1], b[k]
        mu, bstar = gram_schmidt(gram(b))
        k = max(k - 1, 1)
    return [tuple(v) for v in b]


# ---------------------------------------------------------------------------
# the null lattice

@dataclass(frozen=True)
class LatticeBasis:
    """Basis vectors (the columns of the N x (N-1) matrix X) of a lattice in Z^N."""

    columns: tuple[Vector, ...]
    owner: NTuple | None = None

    def __post_init__(self):
        cols = tuple(tuple(int(x) for x in c) for c in self.columns)
        object.__setattr__(self, "columns", cols)
        if cols and len({len(c) for c in cols}) != 1:
            raise ValueError("basis vectors must share a dimension")

    @property
    def rank(self) -> int:
        return len(self.columns)

    @property
    def dim(self) -> int:
        return len(self.columns[0])

    @property
    def matrix(self) -> tuple[Vector, ...]:
        """Row-major N x rank matrix with the basis vectors as columns."""
        return tuple(zip(*self.columns))

    def gram(self) -> list[list[int]]:
        return gram(self.columns)


def _kernel_columns(a: Sequence[int]) -> list[list[int]]:
    """Unimodular column operations taking the row ``a`` to ``(g, 0, ..., 0)``.

    The last N-1 columns of the accumulated transform span the integer kernel.
    """
    n = len(a)
    row = list(a)
    u = [[int(i == j) for j in range(n)] for i in range(n)]  # u[col] = column vector

    for j in range(1, n):
        # extended Euclid on (row[0], row[j]) acting on columns 0 and j
        while row[j] != 0:
            q = row[0] // row[j]
            row[0], row[j] = row[j], row[0] - q * row[j]
            u[0], u[j] = u[j], [x - q * y for x, y in zip(u[0], u[j])]
    return u[1:]


def null_lattice_basis(a: NTuple, reduce: bool = True) -> LatticeBasis:
    cols = _kernel_columns(a.entries)
    if reduce:
        cols = lll_reduce(cols)
    basis = LatticeBasis(tuple(tuple(c) for c in cols), owner=a)
    for c in basis.columns:
        assert dot(c, a.entries) == 0
    return basis


@dataclass(frozen=True)
class GrassmannCoords:
    coords: tuple[int, ...]
    orientation_flipped: bool = False


def raw_minors(b: LatticeBasis) -> tuple[int, ...]:
    """det(X_{I_i}) for I_i = all rows but i, in row order."""
    rows = b.matrix
    return tuple(det(rows[:i] + rows[i + 1:]) for i in range(b.dim))


def grassmann_coords(b: LatticeBasis) -> GrassmannCoords:
    """Maximal minors of the basis matrix, oriented so that (-1)^(N+1-i) det(X_{I_i}) >= 0.

    With ``i`` 1-based.  When the raw orientation is opposite the minors are
    negated (equivalently one basis vector is negated) and the flip recorded.
    """
    if b.rank != b.dim - 1:
        raise DegenerateBasis(f"expected {b.dim - 1} basis vectors, got {b.rank}")
    minors = raw_minors(b)
    if not any(minors):
        raise DegenerateBasis("basis matrix has rank below N-1")
    n = b.dim
    i0 = next(i for i, m in enumerate(minors) if m)
    # 1-based index i0+1 carries sign (-1)^(N - i0)
    flipped = minors[i0] * (-1) ** (n - i0) < 0
    coords = tuple(-m for m in minors) if flipped else minors
    return GrassmannCoords(coords=coords, orientation_flipped=flipped)


def signed_tuple(g: GrassmannCoords) -> tuple[int, ...]:
    """Recover a_i = (-1)^(N+1-i) det(X_{I_i})."""
    n = len(g.coords)
    return tuple((-1) ** (n - i) * c for i, c in enumerate(g.coords))


def lattice_determinant_sq(b: LatticeBasis) -> int:
    """det(X^T X), the squared covolume."""
    return det(b.gram())


# ---------------------------------------------------------------------------
# enumeration

def enumerate_short(g: Sequence[Sequence[int]], radius_sq, budget: int = DEFAULT_BUDGET
                    ) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield ``(coeffs, norm_sq)`` for every nonzero coefficient vector with
    ``coeffs^T g coeffs <= radius_sq``, both signs included.

    Fincke-Pohst depth-first search over exact Gram-Schmidt data; ``budget``
    caps the number of search-tree nodes.
    """
    n = len(g)
    mu, bstar = gram_schmidt(g)
    radius_sq = Fraction(radius_sq)
    x = [0] * n
    nodes = 0

    def center(i):
        return -sum(mu[j][i] * x[j] for j in range(i + 1, n))

    def walk(i, remaining):
        nonlocal nodes
        c = center(i)
        start = int(c.__floor__())
        for direction, first in ((1, start), (-1, start - 1)):
            xi = first
            while True:
                d = (xi - c) ** 2 * bstar[i]
                if d > remaining:
                    # moving away from the center only grows d
                    if (direction == 1 and xi >= c) or (direction == -1 and xi <= c):
                        break
                    xi += direction
                    continue
                nodes += 1
                if nodes > budget:
                    raise EnumerationBudgetExceeded(f"more than {budget} enumeration nodes")
                x[i] = xi
                if i == 0:
                    if any(x):
                        coeffs = tuple(x)
                        yield coeffs, _quad(g, coeffs)
                else:
                    yield from walk(i - 1, remaining - d)
                xi += direction
        x[i] = 0

    yield from walk(n - 1, radius_sq)


def _quad(g, c) -> int:
    return sum(c[i] * g[i][j] * c[j] for i in range(len(c)) for j in range(len(c)))


def _combine(basis: Sequence[Vector], coeffs: Sequence[int]) -> Vector:
    dim = len(basis[0])
    return tuple(sum(c * v[k] for c, v in zip(coeffs, basis)) for k in range(dim))


def _canonical(v: Vector) -> Vector:
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


@dataclass(frozen=True)
class MinimaProfile:
    sq_minima: tuple[int, ...]
    witnesses: tuple[Vector, ...]
    search_radius_sq: int = 0
    enumerated: int = 0

    @property
    def rank(self) -> int:
        return len(self.sq_minima)


def successive_minima(b: LatticeBasis, max_rank: int = DEFAULT_MAX_RANK,
                      budget: int = DEFAULT_BUDGET) -> MinimaProfile:
    """Exact squared successive minima with witnesses.

    Every lattice vector no longer than the longest LLL-reduced basis vector
    is enumerated; sorting by (norm, lexicographic canonical form) and keeping
    each vector that is independent of those already kept gives the minima.
    """
    if b.rank > max_rank:
        raise RankTooHigh(f"rank {b.rank} exceeds enumeration cap {max_rank}")
    reduced = lll_reduce(b.columns)
    g = gram(reduced)
    radius_sq = max(g[i][i] for i in range(len(g)))
    found = {}
    count = 0
    for coeffs, norm in enumerate_short(g, radius_sq, budget):
        count += 1
        found[_canonical(_combine(reduced, coeffs))] = norm
    ordered = sorted(found.items(), key=lambda kv: (kv[1], kv[0]))
    tracker = _IndependenceTracker()
    minima, witnesses = [], []
    for v, norm in ordered:
        if tracker.add(v):
            minima.append(norm)
            witnesses.append(v)
            if len(minima) == b.rank:
                break
    if len(minima) != b.rank:
        raise DegenerateBasis("enumeration did not reach full rank")
    return MinimaProfile(tuple(minima), tuple(witnesses), radius_sq, count)


def is_esm(m: MinimaProfile) -> bool:
    return m.sq_minima[0] == m.sq_minima[-1]


def minkowski_holds(m: MinimaProfile, norm_sq: int, precision: int = DEFAULT_PRECISION) -> bool:
    """Certify prod(lambda_i) <= 2^n sqrt(det) / omega_n using squares."""
    n = m.rank
    prod = 1
    for s in m.sq_minima:
        prod *= s
    omega = enclosure.unit_ball_volume(n, precision)
    return prod * omega.hi ** 2 <= 4 ** n * norm_sq


# ---------------------------------------------------------------------------
# covering radius

@dataclass(frozen=True)
class CoveringRadiusEstimate:
    lower_sq: Fraction
    upper_sq: Fraction
    exact_sq: Fraction | None = None

    def __post_init__(self):
        if self.lower_sq > self.upper_sq:
            raise ValueError("lower bound exceeds upper bound")
        if self.exact_sq is not None and not self.lower_sq <= self.exact_sq <= self.upper_sq:
            raise ValueError("exact value outside enclosure")


def sum_of_roots(squares: Sequence[int], precision: int = DEFAULT_PRECISION) -> Interval:
    """Enclosure of sum(sqrt(s)); exact when the squares share one value or are perfect squares."""
    groups: dict[int, int] = {}
    for s in squares:
        groups[s] = groups.get(s, 0) + 1
    total = Interval.point(0)
    for s, count in groups.items():
        total = total + enclosure.sqrt(s, precision) * count
    return total


def jarnik_upper_sq(sq_minima: Sequence[int], precision: int = DEFAULT_PRECISION) -> Fraction:
    """Upper endpoint of (sum(lambda_i) / 2)^2, rounded outward."""
    distinct = set(sq_minima)
    if len(distinct) == 1:
        (s,) = distinct
        return Fraction(len(sq_minima) ** 2 * s, 4)
    return (sum_of_roots(sq_minima, precision).hi / 2) ** 2


def covering_radius_bounds(m: MinimaProfile, precision: int = DEFAULT_PRECISION
                           ) -> CoveringRadiusEstimate:
    lower = Fraction(m.sq_minima[-1], 4)
    upper = jarnik_upper_sq(m.sq_minima, precision)
    return CoveringRadiusEstimate(lower_sq=lower, upper_sq=upper)


def voronoi_relevant(g: Sequence[Sequence[int]], budget: int = DEFAULT_BUDGET
                     ) -> list[tuple[int, ...]]:
    """Coefficient vectors of the Voronoi-relevant vectors (both signs).

    A nonzero v is relevant iff +-v are the only shortest vectors of the coset
    v + 2L.  Each coset's 0/1 representative bounds its minimum, so enumerating
    up to the largest such norm sees every coset minimum.
    """
    n = len(g)
    reps = [p for p in itertools.product((0, 1), repeat=n) if any(p)]
    radius = max(_quad(g, p) for p in reps)
    best: dict[tuple[int, ...], tuple[int, list]] = {}
    for coeffs, norm in enumerate_short(g, radius, budget):
        parity = tuple(c & 1 for c in coeffs)
        if not any(parity):
            continue
        cur = best.get(parity)
        if cur is None or norm < cur[0]:
            best[parity] = (norm, [coeffs])
        elif norm == cur[0]:
            cur[1].append(coeffs)
    relevant = []
    for norm, vecs in best.values():
        if len(vecs) == 2:
            relevant.extend(vecs)
    return relevant


def _solve_integer(rows: Sequence[Sequence[int]], rhs: Sequence[int]):
    """Solve rows . c = rhs exactly; returns (numerators, denominator) or None if singular.

    The denominator is the determinant up to the sign of the row swaps made.
    """
    n = len(rows)
    m = [list(r) + [h] for r, h in zip(rows, rhs)]
    prev = 1
    for k in range(n):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    break
            else:
                return None
        for i in range(n):
            if i == k:
                continue
            for j in range(n + 1):
                if j != k:
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    # after full Gauss-Jordan Bareiss every diagonal entry equals the determinant
    d = m[n - 1][n - 1]
    return [m[i][n] for i in range(n)], d


def covering_radius_exact(b: LatticeBasis, precision: int = DEFAULT_PRECISION,
                          max_rank: int = MAX_VORONOI_RANK) -> CoveringRadiusEstimate:
    """Exact squared covering radius as the largest squared norm of a Voronoi vertex."""
    if b.rank > max_rank:
        raise RankTooHigh(f"exact covering radius is limited to rank <= {max_rank}")
    reduced = lll_reduce(b.columns)
    g = gram(reduced)
    n = len(g)
    relevant = voronoi_relevant(g)
    facets = []
    for u in relevant:
        normal = [2 * sum(g[i][j] * u[j] for j in range(n)) for i in range(n)]
        facets.append((tuple(u), normal, _quad(g, u)))
    # a vertex never lies on two opposite facets, so choose among the +-pairs
    pairs: dict[tuple[int, ...], list[int]] = {}
    for idx, (u, _, _) in enumerate(facets):
        pairs.setdefault(_canonical(u), []).append(idx)
    pair_list = list(pairs.values())

    best = None
    for chosen_pairs in itertools.combinations(pair_list, n):
        for signs in itertools.product(*chosen_pairs):
            sol = _solve_integer([facets[k][1] for k in signs], [facets[k][2] for k in signs])
            if sol is None:
                continue
            num, d = sol
            if d < 0:
                num, d = [-x for x in num], -d
            if all(dot(normal, num) <= h * d for _, normal, h in facets):
                val = Fraction(_quad(g, num), d * d)
                if best is None or val > best:
                    best = val
    if best is None:
        raise DegenerateBasis("no Voronoi vertex found")
    minima = successive_minima(b)
    bounds = covering_radius_bounds(minima, precision)
    return CoveringRadiusEstimate(lower_sq=bounds.lower_sq, upper_sq=bounds.upper_sq, exact_sq=best)
