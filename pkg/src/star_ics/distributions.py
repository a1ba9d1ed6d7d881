"""Weight distributions of ST_n and the counting functions around them.

Everything exact is computed by walking the pruned 1-ics tree with a
running class size; permutations are never materialized, so n in the
hundreds is fine.  The closed-form counts for strings of a given length are
kept as plain transcriptions next to an enumeration that serves as ground
truth.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from .lambda_tree import InvariantError, diameter

__all__ = [
    "diameter",
    "WeightDistribution",
    "EsetDistribution",
    "vertex_weight_distribution",
    "class_weight_distribution",
    "weight_distributions",
    "antipode_count",
    "eset_distribution",
    "S",
    "S_recurrence",
    "W_enum",
    "W_closed",
    "W_restricted",
    "W_restricted_literal",
    "divergence_report",
]


@dataclass(frozen=True)
class WeightDistribution:
    n: int
    kind: str  # "vertices" or "classes"
    counts: tuple[int, ...]

    def total(self) -> int:
        return sum(self.counts)

    def __getitem__(self, omega: int) -> int:
        return self.counts[omega]


@dataclass(frozen=True)
class EsetDistribution:
    n: int
    i: int
    counts: tuple[int, ...]

    def total(self) -> int:
        return sum(self.counts)


def _worker_count(workers):
    if workers is None:
        workers = int(os.environ.get("STAR_ICS_THREADS", "1") or 1)
    return max(1, workers)


# A walk state is (first index, previous index, previous t, run of previous
# t, class size at the first vertex, depth).  Only pruned vertices are ever
# reached, so the t-prefix is already sorted with parts >= 2 and the vertical
# factor b follows from the trailing run alone.

def _walk(n, states):
    top = diameter(n)
    verts = [0] * (top + 1)
    classes = [0] * (top + 1)
    stack = list(states)
    while stack:
        start, base, pt, run, card, j = stack.pop()
        c = card
        for last in range(start, n):
            if last > start:
                c *= n - last
            w = last + j
            verts[w] += c
            classes[w] += 1
            a = last - base
            if a >= 2 and a >= pt:
                b = run + 1 if a == pt else 1
                d = a * b
                if c % d:
                    raise InvariantError(f"class size {c} not divisible by {d} (n={n})")
                stack.append((last, last, a, b, c // d, j + 1))
    return verts, classes


def weight_distributions(n: int, workers: int | None = None) -> tuple[WeightDistribution, WeightDistribution]:
    """(vertex counts, class counts) per weight 0..D(n)."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    workers = _worker_count(workers)
    if workers == 1 or n < 12:
        verts, classes = _walk(n, [(0, 0, 0, 0, 1, 0)])
    else:
        # Split at the root path: each vertical child roots an independent
        # subtree.  Summation order does not matter for integers.
        top = diameter(n)
        verts = [0] * (top + 1)
        classes = [0] * (top + 1)
        c = 1
        seeds = []
        for last in range(n):
            if last > 0:
                c *= n - last
            verts[last] += c
            classes[last] += 1
            if last >= 2:
                seeds.append([(last, last, last, 1, c // last, 1)])
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for v, k in pool.map(_walk, [n] * len(seeds), seeds):
                verts = [x + y for x, y in zip(verts, v)]
                classes = [x + y for x, y in zip(classes, k)]
    return (
        WeightDistribution(n, "vertices", tuple(verts)),
        WeightDistribution(n, "classes", tuple(classes)),
    )


def vertex_weight_distribution(n: int, workers: int | None = None) -> WeightDistribution:
    return weight_distributions(n, workers)[0]


def class_weight_distribution(n: int, workers: int | None = None) -> WeightDistribution:
    return weight_distributions(n, workers)[1]


def antipode_count(n: int) -> int:
    """Vertices at maximum distance for odd n: (n-2)(n-4)...3."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"antipode count is defined for odd n >= 3, got {n}")
    return math.prod(range(n - 2, 1, -2))


def eset_distribution(n: int, i: int) -> EsetDistribution:
    """Weight distribution of the permutations with first entry ``i``.

    For i >= 2 it is the distribution of ST_{n-1} shifted up by one.  The
    class with first entry 1 is what remains of the whole graph.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if not 1 <= i <= n:
        raise ValueError(f"symbol {i} outside 1..{n}")
    size = diameter(n) + 1
    prev = vertex_weight_distribution(n - 1).counts
    shifted = [0] * size
    for w, c in enumerate(prev):
        shifted[w + 1] = c
    if i >= 2:
        return EsetDistribution(n, i, tuple(shifted))
    whole = vertex_weight_distribution(n).counts
    return EsetDistribution(n, 1, tuple(x - (n - 1) * y for x, y in zip(whole, shifted)))


# -- counting strings by length --------------------------------------------

def S(j: int, h: int) -> int:
    """Multisets of size h from j kinds: binom(j+h-1, h); zero for j <= 0."""
    if h < 0:
        raise ValueError("h must be >= 0")
    if j <= 0:
        return 0
    return math.comb(j + h - 1, h)


@lru_cache(maxsize=None)
def S_recurrence(j: int, h: int) -> int:
    if j <= 0:
        return 0
    if h == 0:
        return 1
    return sum(S_recurrence(k, h - 1) for k in range(1, j + 1))


@lru_cache(maxsize=None)
def _sorted_parts(count: int, low: int, total: int) -> int:
    """Nondecreasing sequences of ``count`` parts, each >= low, summing to <= total."""
    if count == 0:
        return 1
    return sum(_sorted_parts(count - 1, p, total - p) for p in range(low, total // count + 1))


def W_enum(omega: int, length: int, n: int | None = None) -> int:
    """Admissible strings of weight ``omega`` with ``length`` indices.

    The last index is forced to omega - length + 1; the earlier t form a
    nondecreasing sequence of parts >= 2 whose sum does not exceed it.
    With ``n`` given, the last index must also stay below n.
    """
    if omega < 0 or length < 1:
        raise ValueError("need omega >= 0 and length >= 1")
    last = omega - length + 1
    if last < 0 or (n is not None and last > n - 1):
        return 0
    if length == 1:
        return 1
    return _sorted_parts(length - 1, 2, last)


def W_closed(omega: int, k: int) -> int:
    """Closed-form count of strings by length, evaluated term by term (experimental)."""
    if omega < 0 or k < 0:
        raise ValueError("need omega >= 0 and k >= 0")
    return sum(S(omega - i * (k + 1), k) for i in range(omega // (k + 1) + 1))


def W_restricted(omega: int, length: int, n: int) -> int:
    return W_enum(omega, length, n)


def W_restricted_literal(omega: int, k: int, n: int) -> int:
    """Bounded variant of :func:`W_closed` by subtraction (experimental)."""
    if k < n:
        return W_closed(omega, k)
    return W_closed(omega, k) - sum(W_closed(omega, j) for j in range(k - n + 1))


@dataclass(frozen=True)
class Divergence:
    omega: int
    k: int
    closed: int
    enumerated: int


def divergence_report(max_omega: int = 12, max_k: int = 6) -> tuple[list[Divergence], int]:
    """Compare the closed form with enumeration; returns (mismatches, cells checked)."""
    out = []
    cells = 0
    for omega in range(max_omega + 1):
        for k in range(1, max_k + 1):
            cells += 1
            closed = W_closed(omega, k)
            enum = W_enum(omega, k)
            if closed != enum:
                out.append(Divergence(omega, k, closed, enum))
    return out, cells
