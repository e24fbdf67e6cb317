"""Upper and lower bounds on the Frobenius number.

The covering-radius bounds rest on the simplex ``S(t) = {x >= 0 : a.x = t}``:
once its inradius reaches the covering radius of the null lattice, every
translate of a covering ball inside ``S(t)`` holds an integral point.  The
classical bounds (Beck-Diaz-Robins, Erdos-Graham, Selmer, Vitek, and the
Aliev-Gruber lower bound) are included for comparison.

Upper bounds are floored from the upper endpoint of an outward-rounded
enclosure; the lower bound is reported from the lower endpoint.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import enclosure
from .core import NTuple, reduce_tuple
from .enclosure import DEFAULT_PRECISION, Interval
from .errors import A1TooSmall, GuardExceeded, NoCoprimeTriple, NotCoprime, NotReduced
from .lattice import (MAX_VORONOI_RANK, CoveringRadiusEstimate, MinimaProfile,
                      covering_radius_bounds, covering_radius_exact, null_lattice_basis,
                      successive_minima)
from .semigroup import FrobeniusResult, frobenius_exact


# ---------------------------------------------------------------------------
# simplex machinery

def symmetric_det(alphas: Sequence) -> Fraction:
    """Determinant of the matrix with diagonal ``alphas`` and every other entry 1.

    Equals ``prod(alpha_i - 1) + sum_i prod_{j != i}(alpha_j - 1)``.
    """
    if len(alphas) < 1:
        raise ValueError("need at least one diagonal entry")
    shifted = [Fraction(x) - 1 for x in alphas]
    total = math.prod(shifted)
    for i in range(len(shifted)):
        total += math.prod(shifted[:i] + shifted[i + 1:])
    return Fraction(total)


def simplex_gram_matrix(a: NTuple, t: int) -> list[list[Fraction]]:
    """W W^T for the edge vectors w_i = v_i - v_1 of S(t), v_i = (t/a_i) e_i."""
    a1 = a[0]
    k = a.n - 1
    scale = Fraction(t * t, a1 * a1)
    return [[scale * (Fraction(a1 * a1 + a[i + 1] ** 2, a[i + 1] ** 2) if i == j else 1)
             for j in range(k)] for i in range(k)]


def direct_det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant by Gaussian elimination over the rationals."""
    m = [[Fraction(x) for x in row] for row in m]
    n = len(m)
    result = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        result *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return result


@dataclass(frozen=True)
class SimplexGeometry:
    t: int
    vol_coeff: Fraction
    vol_radicand: int
    area_terms: tuple[tuple[Fraction, int], ...]
    inradius_lb: Interval
    gram_det: Fraction

    def volume(self, precision: int = DEFAULT_PRECISION) -> Interval:
        return enclosure.sqrt(self.vol_radicand, precision) * self.vol_coeff

    def area(self, precision: int = DEFAULT_PRECISION) -> Interval:
        return sum((enclosure.sqrt(r, precision) * c for c, r in self.area_terms), Interval.point(0))


def simplex_geometry(a: NTuple, t: int, precision: int = DEFAULT_PRECISION) -> SimplexGeometry:
    if t < 1:
        raise ValueError("t must be a positive integer")
    n = a.n
    ns = a.norm_sq
    prod = math.prod(a.entries)
    a1 = a[0]

    alphas = [Fraction(a1 * a1 + x * x, x * x) for x in a.entries[1:]]
    gram_det = Fraction(t * t, a1 * a1) ** (n - 1) * symmetric_det(alphas)
    closed_form = Fraction(t ** (2 * (n - 1)) * ns, prod * prod)
    if gram_det != closed_form:
        raise ArithmeticError("simplex Gram determinant disagrees with its closed form")

    vol_coeff = Fraction(t ** (n - 1), math.factorial(n - 1) * prod)
    area_terms = tuple((Fraction(t ** (n - 2) * x, math.factorial(n - 2) * prod), ns - x * x)
                       for x in a.entries)
    weighted = _weighted_face_sum(a, precision)
    inradius = enclosure.sqrt(ns, precision) * t / (weighted * (n - 1))
    return SimplexGeometry(t, vol_coeff, ns, area_terms, inradius, gram_det)


def _weighted_face_sum(a: NTuple, precision: int) -> Interval:
    """Enclosure of sum_i a_i * sqrt(|a|^2 - a_i^2)."""
    ns = a.norm_sq
    return sum((enclosure.sqrt(ns - x * x, precision) * x for x in a.entries), Interval.point(0))


# ---------------------------------------------------------------------------
# covering-radius bounds

def main_bound_enclosure(a: NTuple, r_upper_sq, precision: int = DEFAULT_PRECISION) -> Interval:
    """Enclosure of (N-1) R / |a| * sum a_i sqrt(|a|^2 - a_i^2) + 1 with R^2 = r_upper_sq."""
    r_over_norm = enclosure.sqrt(Fraction(r_upper_sq) / a.norm_sq, precision)
    return r_over_norm * _weighted_face_sum(a, precision) * (a.n - 1) + 1


def frobenius_bound_main(a: NTuple, r_upper_sq, precision: int = DEFAULT_PRECISION) -> int:
    """Smallest t at which the simplex inradius provably reaches R; an upper bound on F."""
    if Fraction(r_upper_sq) < 0:
        raise ValueError("squared radius must be non-negative")
    return main_bound_enclosure(a, r_upper_sq, precision).floor_hi()


def esm_bound_enclosure(a: NTuple, m: MinimaProfile, precision: int = DEFAULT_PRECISION) -> Interval:
    n = a.n
    ratio = enclosure.sqrt(Fraction(m.sq_minima[-1], m.sq_minima[0]), precision)
    omega = enclosure.unit_ball_volume(n - 1, precision)
    # (|a|^(N-2) omega)^(1/(N-1)) == (|a|^(2(N-2)) omega^2)^(1/(2(N-1)))
    denom = enclosure.root(omega ** 2 * a.norm_sq ** (n - 2), 2 * (n - 1), precision)
    return ratio * (n - 1) ** 2 * _weighted_face_sum(a, precision) / denom + 1


def frobenius_bound_esm(a: NTuple, m: MinimaProfile, precision: int = DEFAULT_PRECISION) -> int:
    return esm_bound_enclosure(a, m, precision).floor_hi()


def frobenius_bound_general(a: NTuple, precision: int = DEFAULT_PRECISION) -> int:
    """(N-1)^2 / omega_{N-1} * sum a_i sqrt(|a|^2 - a_i^2) + 1, floored; needs a reduced tuple with a_1 >= 3."""
    if a[0] < 3:
        raise A1TooSmall(f"a_1 = {a[0]} < 3")
    if reduce_tuple(a).removed:
        raise NotReduced(f"{a} is not reduced")
    omega = enclosure.unit_ball_volume(a.n - 1, precision)
    value = _weighted_face_sum(a, precision) * (a.n - 1) ** 2 / omega + 1
    return value.floor_hi()


# ---------------------------------------------------------------------------
# literature bounds

def bound_sylvester(a1: int, a2: int) -> int:
    if math.gcd(a1, a2) != 1:
        raise NotCoprime(f"gcd({a1}, {a2}) != 1")
    return (a1 - 1) * (a2 - 1) - 1


def _bdr_value(i: int, j: int, k: int) -> int:
    s = i + j + k
    # floor((sqrt(M) - s) / 2) == floor((isqrt(M) - s) / 2) for integer s
    return (math.isqrt(i * j * k * s) - s) // 2


def _pairwise_coprime(triple) -> bool:
    return all(math.gcd(x, y) == 1 for x, y in itertools.combinations(triple, 2))


def bdr_triple(a: NTuple, mode: str = "first-three") -> tuple[int, int, int]:
    if a.n < 3:
        raise NoCoprimeTriple("need at least three entries")
    if mode == "first-three":
        triple = tuple(a.entries[:3])
        if math.gcd(*triple) != 1:
            raise NoCoprimeTriple(f"{triple} is not coprime")
        return triple
    if mode == "best-triple":
        candidates = [c for c in itertools.combinations(a.entries, 3) if math.gcd(*c) == 1]
        if not candidates:
            raise NoCoprimeTriple(f"no coprime triple in {a}")
        return min(candidates, key=lambda c: (_bdr_value(*c), c))
    raise ValueError(f"unknown mode {mode!r}")


def bound_bdr(a: NTuple, mode: str = "first-three") -> int:
    return _bdr_value(*bdr_triple(a, mode))


def bound_erdos_graham(a: NTuple) -> int:
    return 2 * a[-1] * (a[0] // a.n) - a[0]


def bound_selmer(a: NTuple) -> int:
    return 2 * a[-2] * (a[-1] // a.n) - a[-1]


def bound_vitek(a: NTuple) -> int:
    return (a[1] - 1) * (a[-1] - 2) // 2 - 1


def aliev_gruber_enclosure(a: NTuple, precision: int = DEFAULT_PRECISION) -> Interval:
    n = a.n
    body = math.factorial(n - 1) * math.prod(a.entries)
    return enclosure.root(body, n - 1, precision) - sum(a.entries)


def lower_bound_aliev_gruber(a: NTuple, precision: int = DEFAULT_PRECISION) -> Fraction:
    """((N-1)! a_1...a_N)^(1/(N-1)) - sum(a), rounded down."""
    return aliev_gruber_enclosure(a, precision).lo


# ---------------------------------------------------------------------------
# report

@dataclass
class BoundEntry:
    name: str
    kind: str  # "upper", "lower" or "exact"
    value: int | Fraction | None
    applicable: bool = True
    note: str = ""
    below_exact: bool = False


@dataclass
class BoundReport:
    tuple: NTuple
    entries: list[BoundEntry]
    exact: FrobeniusResult | None = None
    exact_note: str = ""
    minima: MinimaProfile | None = None
    covering: CoveringRadiusEstimate | None = None
    reduced: NTuple | None = None
    aliev_gruber_status: str = ""  # "strict", "boundary" or "violated" when exact is known
    extras: dict = field(default_factory=dict)

    def get(self, name: str) -> BoundEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def violations(self) -> list[BoundEntry]:
        return [e for e in self.entries if e.applicable and e.below_exact]


def bound_report(a: NTuple, with_exact: bool = True, precision: int = DEFAULT_PRECISION,
                 bdr_mode: str = "first-three", max_modulus: int | None = None,
                 exact_covering: bool | None = None) -> BoundReport:
    """Evaluate every bound for ``a``.

    ``exact_covering``: None computes the Voronoi covering radius whenever the
    rank allows it; False skips it.
    """
    n = a.n
    entries: list[BoundEntry] = []
    reduction = reduce_tuple(a)
    is_reduced = not reduction.removed
    report = BoundReport(tuple=a, entries=entries, reduced=reduction.reduced)
    rank_note = "" if n >= 3 else "stated for N >= 3"

    basis = null_lattice_basis(a)
    minima = successive_minima(basis)
    report.minima = minima
    cover = covering_radius_bounds(minima, precision)
    if exact_covering is not False and basis.rank <= MAX_VORONOI_RANK:
        cover = covering_radius_exact(basis, precision)
    report.covering = cover

    if cover.exact_sq is not None:
        entries.append(BoundEntry("main_exact", "upper",
                                  frobenius_bound_main(a, cover.exact_sq, precision),
                                  n >= 3, rank_note))
    entries.append(BoundEntry("main_jarnik", "upper",
                              frobenius_bound_main(a, cover.upper_sq, precision), n >= 3, rank_note))
    entries.append(BoundEntry("esm", "upper", frobenius_bound_esm(a, minima, precision),
                              n >= 3, rank_note))
    try:
        entries.append(BoundEntry("general", "upper", frobenius_bound_general(a, precision), n >= 3,
                                  rank_note))
    except (A1TooSmall, NotReduced) as exc:
        entries.append(BoundEntry("general", "upper", None, False, str(exc)))

    if n == 2:
        entries.append(BoundEntry("sylvester", "exact", bound_sylvester(a[0], a[1])))
    else:
        try:
            triple = bdr_triple(a, bdr_mode)
            pairwise = _pairwise_coprime(triple)
            note = f"triple {triple}" + ("" if pairwise else ", not pairwise coprime")
            entries.append(BoundEntry("bdr", "upper", _bdr_value(*triple), pairwise, note))
        except NoCoprimeTriple as exc:
            entries.append(BoundEntry("bdr", "upper", None, False, str(exc)))

    eg_note = []
    if a[0] < n:
        eg_note.append("a_1 < N: floor term vanishes")
    if not is_reduced:
        # the formula undercuts F on some non-reduced tuples, e.g. (6, 2051, 2207, 2310)
        eg_note.append("tuple not reduced")
    entries.append(BoundEntry("erdos_graham", "upper", bound_erdos_graham(a), not eg_note,
                              "; ".join(eg_note)))
    entries.append(BoundEntry("selmer", "upper", bound_selmer(a), True))
    entries.append(BoundEntry("vitek", "upper", bound_vitek(a), n >= 3,
                              "" if n >= 3 else "hypotheses unclear for N = 2"))
    ag = aliev_gruber_enclosure(a, precision)
    entries.append(BoundEntry("aliev_gruber", "lower", ag.lo, True, "strict lower bound"))
    entries.sort(key=lambda e: e.name)

    if with_exact:
        try:
            report.exact = frobenius_exact(a, max_modulus)
        except GuardExceeded as exc:
            report.exact_note = str(exc)
    if report.exact is not None:
        f = report.exact.value
        for e in entries:
            if e.kind in ("upper", "exact") and e.value is not None and e.value < f:
                e.below_exact = True
                e.note = (e.note + "; " if e.note else "") + "below the exact value"
        if f > ag.hi:
            report.aliev_gruber_status = "strict"
        elif f > ag.lo or (ag.is_exact and f == ag.lo):
            report.aliev_gruber_status = "boundary"
        else:
            report.aliev_gruber_status = "violated"
    report.extras["is_reduced"] = is_reduced
    return report
