"""A one-parameter family of 4-tuples whose null lattices have equal successive minima.

For integer ``t`` the circulant vectors

    x1 = (-7, t, 6, -6),  x2 = (-6, 7, t, -6),  x3 = (-6, -6, 7, t)

all have squared norm ``t^2 + 121``.  They are orthogonal to
``(a_4, a_3, a_1, a_2)`` where

    a(t) = (6t^2 - 13t - 216, 6t^2 - 125, 7t^2 - 174, t^3 - 36t - 78),

so after moving coordinates into the order of ``a(t)`` (see
:data:`COORDINATE_ORDER`) they span the null lattice of ``a(t)``.  Permuting
coordinates is an isometry, so norms, angles and minima are unchanged.

When the basis is nearly orthogonal (each vector makes an angle of at least
pi/3 with the span of its predecessors) it contains a shortest vector, and
equal norms then force equal successive minima.  Every claim here is checked
per instance in exact arithmetic; nothing is extrapolated.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .bounds import (bound_bdr, bound_erdos_graham, bound_selmer, bound_vitek,
                     frobenius_bound_esm)
from .core import NTuple
from .enclosure import DEFAULT_PRECISION
from .errors import CertificateFailure, DegenerateBasis, DependentVectors, OrderViolation
from .lattice import (LatticeBasis, dot, gram, gram_schmidt, lattice_determinant_sq,
                      null_lattice_basis, raw_minors, successive_minima)

NEAR_ORTHOGONAL_LIMIT = Fraction(1, 4)


def esm4_values(t: int) -> tuple[int, int, int, int]:
    return (6 * t * t - 13 * t - 216, 6 * t * t - 125, 7 * t * t - 174, t ** 3 - 36 * t - 78)


def esm4_tuple(t: int) -> NTuple:
    if t < 10:
        raise OrderViolation(f"t = {t} < 10: the entries are not positive and increasing")
    values = esm4_values(t)
    if not 0 < values[0] < values[1] < values[2] < values[3]:
        raise OrderViolation(f"a({t}) = {values} is not positive and increasing")
    return NTuple(values)


#: coordinate k of a null-lattice vector of a(t) is coordinate COORDINATE_ORDER[k]
#: of the circulant form
COORDINATE_ORDER = (2, 3, 1, 0)


def esm4_circulant(t: int) -> tuple[tuple[int, ...], ...]:
    """The basis in its circulant form, orthogonal to (a_4, a_3, a_1, a_2)."""
    if t < 1:
        raise ValueError("t must be positive")
    return ((-7, t, 6, -6), (-6, 7, t, -6), (-6, -6, 7, t))


def esm4_basis(t: int) -> tuple[tuple[int, ...], ...]:
    """The circulant basis with coordinates in the order of a(t)."""
    return tuple(tuple(x[k] for k in COORDINATE_ORDER) for x in esm4_circulant(t))


# ---------------------------------------------------------------------------
# near-orthogonality

@dataclass(frozen=True)
class NearOrthoCertificate:
    """``ratios[i]`` is |P x_{i+2}|^2 / |x_{i+2}|^2, P projecting onto span(x_1..x_{i+1}).

    Its square root is the largest cosine between x_{i+2} and a vector of that
    span, so the collection is nearly orthogonal iff every ratio is <= 1/4.
    """

    ratios: tuple[Fraction, ...]

    @property
    def passed(self) -> bool:
        return all(r <= NEAR_ORTHOGONAL_LIMIT for r in self.ratios)

    @property
    def first_failure(self) -> int | None:
        for i, r in enumerate(self.ratios):
            if r > NEAR_ORTHOGONAL_LIMIT:
                return i + 2
        return None


def near_orthogonal_check(vectors: Sequence[Sequence[int]]) -> NearOrthoCertificate:
    if len(vectors) < 2:
        raise ValueError("need at least two vectors")
    try:
        _, bstar = gram_schmidt(gram(vectors))
    except DegenerateBasis as exc:
        raise DependentVectors(str(exc)) from None
    ratios = []
    for i in range(1, len(vectors)):
        norm = dot(vectors[i], vectors[i])
        # |P x|^2 = |x|^2 - |x*|^2
        ratios.append(1 - bstar[i] / norm)
    return NearOrthoCertificate(tuple(ratios))


def pair_cosine_sq(t: int) -> Fraction:
    """cos^2 of the angle between x1(t) and x2(t): ((13t + 78) / (t^2 + 121))^2."""
    x1, x2, _ = esm4_circulant(t)
    return Fraction(dot(x1, x2) ** 2, dot(x1, x1) * dot(x2, x2))


# ---------------------------------------------------------------------------
# gcd certificate

@dataclass(frozen=True)
class GcdCertificate:
    t: int
    d: int  # gcd(a_2(t), a_3(t))
    t2_minus_49_mod_13: int
    divides: bool  # d | gcd(t^2 - 49, 169)
    residue_certified: bool  # t = 2 (mod 13) forces d = 1
    tuple_gcd: int
    fallback: bool  # certificate relied on the direct gcd

    @property
    def passed(self) -> bool:
        return self.tuple_gcd == 1


def gcd_certificate(t: int) -> GcdCertificate:
    """Certify gcd(a(t)) = 1 through d(t) = gcd(a_2(t), a_3(t)).

    d(t) divides a_3 - a_2 = t^2 - 49 and 7 a_2 - 6 a_3 = 169, so for
    t = 2 (mod 13), where t^2 - 49 = 7 (mod 13), d(t) = 1.  Otherwise the
    direct gcd is reported.
    """
    if t < 1:
        raise ValueError("t must be positive")
    a = esm4_values(t)
    d = math.gcd(a[1], a[2])
    g = math.gcd(t * t - 49, 169)
    assert a[2] - a[1] == t * t - 49 and 7 * a[1] - 6 * a[2] == 169
    residue = (t * t - 49) % 13
    certified = t % 13 == 2
    if certified:
        assert residue == 7 and g == 1
    return GcdCertificate(
        t=t, d=d, t2_minus_49_mod_13=residue, divides=g % d == 0,
        residue_certified=certified, tuple_gcd=math.gcd(*a),
        fallback=not (certified or g == 1),
    )


# ---------------------------------------------------------------------------
# full verification

CONDITIONS = ("positivity", "gcd", "independence", "grassmann_signs", "grassmann_coprime",
              "spans_null_lattice", "equal_norms", "near_orthogonal", "esm")


@dataclass
class Esm4Instance:
    t: int
    tuple: NTuple | None
    basis: tuple[tuple[int, ...], ...]
    checks: dict[str, bool]
    near_ortho: NearOrthoCertificate | None = None
    gcd: GcdCertificate | None = None
    sq_minima: tuple[int, ...] | None = None
    orientation_flipped: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return all(self.checks.get(c, False) for c in CONDITIONS)

    @property
    def failures(self) -> list[str]:
        return [c for c in CONDITIONS if not self.checks.get(c, False)]


def is_certified_parameter(t: int) -> bool:
    return t >= 28 and t % 13 == 2


def verify_esm_family(t: int, strict: bool | None = None) -> Esm4Instance:
    """Run every certificate for a(t).

    With ``strict`` (default: ``t >= 28`` and ``t = 2 mod 13``) a failing
    check raises :class:`CertificateFailure`; otherwise failures are recorded.
    Values of ``t`` below 10 raise :class:`OrderViolation`.
    """
    if strict is None:
        strict = is_certified_parameter(t)
    if t < 10:
        raise OrderViolation(f"t = {t} < 10")
    basis = esm4_basis(t)
    values = esm4_values(t)
    checks: dict[str, bool] = {}
    inst = Esm4Instance(t=t, tuple=None, basis=basis, checks=checks)

    checks["positivity"] = 0 < values[0] < values[1] < values[2] < values[3]
    inst.gcd = gcd_certificate(t)
    checks["gcd"] = inst.gcd.passed

    lb = LatticeBasis(basis)
    minors = raw_minors(lb)
    checks["independence"] = any(minors)
    n = len(values)
    signed = tuple((-1) ** (n - i) * m for i, m in enumerate(minors))
    if signed and signed[0] < 0:
        # orientation is a choice of basis order; negating x3 flips every minor
        signed = tuple(-x for x in signed)
        inst.orientation_flipped = True
    checks["grassmann_signs"] = all(s > 0 for s in signed) and signed == values
    checks["grassmann_coprime"] = math.gcd(*minors) == 1
    checks["equal_norms"] = all(dot(x, x) == t * t + 121 for x in basis)
    if not all(dot(x, values) == 0 for x in basis):
        checks["spans_null_lattice"] = False
    else:
        # the orthogonal complement of a(t) has covolume |a(t)|
        checks["spans_null_lattice"] = lattice_determinant_sq(lb) == sum(v * v for v in values)

    if checks["independence"]:
        inst.near_ortho = near_orthogonal_check(basis)
        checks["near_orthogonal"] = inst.near_ortho.passed
    else:
        checks["near_orthogonal"] = False

    if checks["positivity"] and checks["gcd"]:
        inst.tuple = NTuple(values)
        minima = successive_minima(null_lattice_basis(inst.tuple))
        inst.sq_minima = minima.sq_minima
        checks["esm"] = all(s == t * t + 121 for s in minima.sq_minima)
    else:
        checks["esm"] = False
        inst.notes.append("tuple invalid; minima not computed")

    if strict and not inst.certified:
        first = inst.failures[0]
        raise CertificateFailure(first, f"t = {t}")
    return inst


# ---------------------------------------------------------------------------
# asymptotics

@dataclass
class AsymptoticRow:
    t: int
    min_literature: int
    min_literature_name: str
    esm_bound: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.min_literature, self.esm_bound)


@dataclass
class AsymptoticReport:
    rows: list[AsymptoticRow]
    slope_literature: float | None
    slope_esm: float | None
    ratio_increasing: bool | None


def literature_bounds(a: NTuple) -> dict[str, int]:
    return {"bdr": bound_bdr(a), "erdos_graham": bound_erdos_graham(a),
            "selmer": bound_selmer(a), "vitek": bound_vitek(a)}


def asymptotic_report(t_values: Sequence[int], precision: int = DEFAULT_PRECISION) -> AsymptoticReport:
    rows = []
    for t in t_values:
        inst = verify_esm_family(t)
        a = inst.tuple
        lit = literature_bounds(a)
        name = min(lit, key=lambda k: (lit[k], k))
        minima = successive_minima(null_lattice_basis(a))
        rows.append(AsymptoticRow(t, lit[name], name, frobenius_bound_esm(a, minima, precision)))
    if len(rows) < 2:
        return AsymptoticReport(rows, None, None, None)
    logt = np.log([r.t for r in rows])
    slope_lit = float(np.polyfit(logt, np.log([float(r.min_literature) for r in rows]), 1)[0])
    slope_esm = float(np.polyfit(logt, np.log([float(r.esm_bound) for r in rows]), 1)[0])
    ratios = [r.ratio for r in rows]
    increasing = all(x < y for x, y in zip(ratios, ratios[1:]))
    return AsymptoticReport(rows, slope_lit, slope_esm, increasing)


# ---------------------------------------------------------------------------
# signed-permutation search

@dataclass(frozen=True)
class CirculantCandidate:
    basis: tuple[tuple[int, ...], ...]
    tuple: tuple[int, ...]


def _signed_permutations(x: Sequence[int]) -> Iterator[tuple[int, ...]]:
    n = len(x)
    seen = set()
    for perm in itertools.permutations(range(n)):
        base = [abs(x[p]) for p in perm]
        for signs in itertools.product((1, -1), repeat=n):
            v = tuple(s * b for s, b in zip(signs, base))
            if v not in seen:
                seen.add(v)
                yield v


def circulant_search(x1: Sequence[int], limit: int = 1,
                     max_candidates: int = 2_000_000) -> list[CirculantCandidate]:
    """Search bases x_1, ..., x_{N-1} whose rows are signed permutations of ``x1``.

    Keeps bases that are nearly orthogonal (checked prefix by prefix, which
    also enforces independence) and whose Grassmann coordinates, signed by
    (-1)^(N+1-i), are positive and coprime after fixing the orientation by
    negating the last vector if needed.  Stops after ``limit`` hits or
    ``max_candidates`` partial bases.  Only N <= 5.
    """
    x1 = tuple(int(v) for v in x1)
    n = len(x1)
    if not 3 <= n <= 5:
        raise ValueError("search is limited to 3 <= N <= 5")
    options = [v for v in _signed_permutations(x1) if v != x1 and v != tuple(-y for y in x1)]
    hits: list[CirculantCandidate] = []
    visited = 0

    def extend(prefix):
        nonlocal visited
        if len(hits) >= limit:
            return
        if len(prefix) == n - 1:
            minors = raw_minors(LatticeBasis(prefix))
            signed = tuple((-1) ** (n - i) * m for i, m in enumerate(minors))
            if signed[0] < 0:
                prefix = prefix[:-1] + [tuple(-y for y in prefix[-1])]
                signed = tuple(-x for x in signed)
            cand = CirculantCandidate(tuple(prefix), signed)
            if all(s > 0 for s in signed) and math.gcd(*signed) == 1 and cand not in hits:
                hits.append(cand)
            return
        for v in options:
            visited += 1
            if visited > max_candidates:
                return
            if v in prefix:
                continue
            cand = prefix + [v]
            try:
                cert = near_orthogonal_check(cand)
            except DependentVectors:
                continue
            if cert.passed:
                extend(cand)
                if len(hits) >= limit:
                    return

    extend([x1])
    return hits
