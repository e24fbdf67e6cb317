"""Exact Frobenius numbers via shortest paths on the residue graph mod a_1.

For generators ``a_1 < ... < a_N`` the residues ``0 .. a_1 - 1`` form a graph
with an edge ``r -> (r + a_j) mod a_1`` of weight ``a_j`` for every ``j >= 2``.
The shortest-path distance ``d(r)`` from residue 0 is the smallest element of
the semigroup congruent to ``r`` (the Apery set of ``a_1``), so ``t`` is
representable iff ``t >= d(t mod a_1)`` and the Frobenius number is
``max d(r) - a_1``.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass
from typing import Sequence

from .core import NTuple
from .errors import ModulusTooLarge

#: Largest a_1 for which a residue table is built.  Override per call or via
#: the FROBSHOT_MAX_MODULUS environment variable.
MAX_MODULUS = int(os.environ.get("FROBSHOT_MAX_MODULUS", 10**7))


@dataclass(frozen=True)
class AperyProfile:
    modulus: int
    thresholds: tuple[int, ...]

    def is_representable(self, t: int) -> bool:
        if t < 0:
            return False
        return t >= self.thresholds[t % self.modulus]


@dataclass(frozen=True)
class FrobeniusResult:
    value: int
    witness: int  # residue attaining max d(r)


def _check_guard(modulus: int, max_modulus: int | None) -> None:
    limit = MAX_MODULUS if max_modulus is None else max_modulus
    if modulus > limit:
        raise ModulusTooLarge(f"a_1 = {modulus} exceeds the residue-table guard {limit}")


def residue_distances(gens: Sequence[int], *, with_parents: bool = False):
    """Dijkstra over residues mod ``gens[0]``.

    Works for any positive generators, coprime or not; unreachable residues get
    distance ``None``.  With ``with_parents`` also returns, per residue, the
    index of the generator on the last edge of a shortest path (``-1`` for the
    root and for unreachable residues).
    """
    m = gens[0]
    steps = sorted(set(g for g in gens[1:] if g % m))
    dist: list[int | None] = [None] * m
    parent = [-1] * m
    dist[0] = 0
    heap = [(0, 0)]
    done = [False] * m
    while heap:
        d, r = heapq.heappop(heap)
        if done[r]:
            continue
        done[r] = True
        for g in steps:
            s = (r + g) % m
            nd = d + g
            cur = dist[s]
            if cur is None or nd < cur:
                dist[s] = nd
                parent[s] = g
                heapq.heappush(heap, (nd, s))
    if with_parents:
        return dist, parent
    return dist


def represent(gens: Sequence[int], t: int) -> tuple[int, ...] | None:
    """Non-negative coefficients ``x`` with ``sum(g * x) == t``, or ``None``."""
    if t < 0:
        return None
    m = gens[0]
    dist, parent = residue_distances(gens, with_parents=True)
    r = t % m
    if dist[r] is None or dist[r] > t:
        return None
    coeffs = [0] * len(gens)
    while r != 0:
        g = parent[r]
        coeffs[gens.index(g)] += 1
        r = (r - g) % m
    coeffs[0] += (t - dist[t % m]) // m
    return tuple(coeffs)


def apery_profile(a: NTuple, max_modulus: int | None = None) -> AperyProfile:
    _check_guard(a[0], max_modulus)
    dist = residue_distances(a.entries)
    # gcd 1 guarantees every residue is reachable.
    return AperyProfile(modulus=a[0], thresholds=tuple(dist))


def frobenius_exact(a: NTuple, max_modulus: int | None = None) -> FrobeniusResult:
    prof = apery_profile(a, max_modulus)
    witness = max(range(prof.modulus), key=prof.thresholds.__getitem__)
    return FrobeniusResult(value=prof.thresholds[witness] - prof.modulus, witness=witness)


def is_representable(a: NTuple, t: int, max_modulus: int | None = None) -> bool:
    return apery_profile(a, max_modulus).is_representable(t)


def frobenius_brute_force(gens: Sequence[int]) -> int:
    """Mark representable integers up to a_1 * a_N; slow, used as a test oracle."""
    limit = gens[0] * gens[-1]
    ok = bytearray(limit + 1)
    ok[0] = 1
    for t in range(1, limit + 1):
        for g in gens:
            if g <= t and ok[t - g]:
                ok[t] = 1
                break
    return max((t for t in range(limit + 1) if not ok[t]), default=-1)
