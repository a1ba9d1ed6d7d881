"""Brute-force ground truth over the whole Cayley graph.

Permutations of 0..n-1 are addressed by their lexicographic rank (the
factorial number system), so BFS distances live in one byte array of length
n!.  Everything here is deliberately independent of the tree code except
where a check compares against it.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field

import numpy as np

from .gamma import GammaGraph, build_gamma, thread_target
from .lambda_tree import diameter, format_index, generate_pruned, string_of_perm
from .perm import IcsKey, apply_star_generator, ics_key

DEFAULT_MAX_N = 9
HARD_MAX_N = 10


class OracleRefused(ValueError):
    """The requested n is beyond what the oracle is allowed to allocate."""


def memory_estimate(n: int) -> int:
    """Rough peak bytes: the permutation table plus the distance array."""
    return math.factorial(n) * (n + 1 + 16)


def _guard(n: int, allow_large: bool) -> None:
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    limit = HARD_MAX_N if allow_large else DEFAULT_MAX_N
    if n > limit:
        mb = memory_estimate(n) / 2**20
        hint = "" if allow_large or n > HARD_MAX_N else " (pass allow_large to go to 10)"
        raise OracleRefused(f"oracle refuses n={n}: about {mb:,.0f} MiB needed{hint}")


# -- ranking ----------------------------------------------------------------

def rank(p) -> int:
    """Lexicographic rank of a permutation of 0..n-1 (or 1..n)."""
    p = list(p)
    n = len(p)
    r = 0
    for k in range(n):
        smaller = sum(1 for x in p[k + 1:] if x < p[k])
        r += smaller * math.factorial(n - 1 - k)
    return r


def unrank(r: int, n: int) -> tuple[int, ...]:
    pool = list(range(n))
    out = []
    for k in range(n - 1, -1, -1):
        q, r = divmod(r, math.factorial(k))
        out.append(pool.pop(q))
    return tuple(out)


def rank_rows(perms: np.ndarray) -> np.ndarray:
    """Vectorized :func:`rank` over the rows of a 2-d array."""
    n = perms.shape[1]
    r = np.zeros(perms.shape[0], dtype=np.int64)
    for k in range(n - 1):
        smaller = (perms[:, k + 1:] < perms[:, k:k + 1]).sum(axis=1)
        r += smaller * math.factorial(n - 1 - k)
    return r


def all_perms(n: int) -> np.ndarray:
    """Every permutation of 0..n-1, row r having rank r."""
    return np.array(list(itertools.permutations(range(n))), dtype=np.uint8).reshape(-1, n)


# -- BFS ----------------------------------------------------------------------

@dataclass
class BfsResult:
    n: int
    distance: np.ndarray  # uint8, indexed by rank
    perms: np.ndarray

    @property
    def histogram(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.bincount(self.distance))

    @property
    def max_distance(self) -> int:
        return int(self.distance.max())

    def distance_of(self, p) -> int:
        p = tuple(p)
        if min(p) == 1:
            p = tuple(x - 1 for x in p)
        return int(self.distance[rank(p)])


def bfs(n: int, allow_large: bool = False) -> BfsResult:
    """Distances from the identity under the star generators, level by level."""
    _guard(n, allow_large)
    perms = all_perms(n)
    dist = np.full(len(perms), 255, dtype=np.uint8)
    dist[0] = 0
    frontier = np.array([0], dtype=np.int64)
    level = 0
    while frontier.size:
        rows = perms[frontier]
        found = []
        for i in range(1, n):
            q = rows.copy()
            q[:, [0, i]] = q[:, [i, 0]]
            r = rank_rows(q)
            found.append(r[dist[r] == 255])
        nxt = np.unique(np.concatenate(found))
        level += 1
        dist[nxt] = level
        frontier = nxt
    return BfsResult(n, dist, perms)


def _one_based(row) -> tuple[int, ...]:
    return tuple(int(x) + 1 for x in row)


def class_histogram(n: int, result: BfsResult | None = None) -> dict[IcsKey, tuple[int, int]]:
    """Every 1-ics key with its common distance and member count."""
    result = result or bfs(n)
    dists: dict[IcsKey, set[int]] = defaultdict(set)
    sizes: Counter = Counter()
    for row, d in zip(result.perms, result.distance):
        key = ics_key(_one_based(row))
        dists[key].add(int(d))
        sizes[key] += 1
    out = {}
    for key, ds in dists.items():
        if len(ds) != 1:
            raise AssertionError(f"class {key} spans distances {sorted(ds)}")
        out[key] = (ds.pop(), sizes[key])
    return out


def eset_histogram(n: int, i: int, result: BfsResult | None = None) -> tuple[int, ...]:
    """Distance histogram of the permutations with first entry ``i``."""
    if not 1 <= i <= n:
        raise ValueError(f"symbol {i} outside 1..{n}")
    result = result or bfs(n)
    sel = result.distance[result.perms[:, 0] == i - 1]
    return tuple(int(x) for x in np.bincount(sel, minlength=diameter(n) + 1))


# -- quotient checks --------------------------------------------------------

@dataclass
class CheckResult:
    passed: bool
    detail: dict = field(default_factory=dict)


@dataclass
class VerificationReport:
    n: int
    checks: dict[str, CheckResult] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def add(self, name: str, passed: bool, **detail) -> None:
        self.checks[name] = CheckResult(bool(passed), detail)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "passed": self.passed,
            "checks": {k: {"passed": v.passed, **v.detail} for k, v in self.checks.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, default=str)

    def summary(self) -> str:
        lines = [f"n={self.n}: {'ok' if self.passed else 'FAILED'}"]
        for name, c in self.checks.items():
            lines.append(f"  {'pass' if c.passed else 'FAIL'}  {name}")
        return "\n".join(lines)


QUOTIENT_MAX_N = 8


def verify_quotient(n: int, gamma: GammaGraph | None = None) -> VerificationReport:
    """Project every ST_n edge onto classes and compare with the threaded tree.

    Checks: no edge stays inside a class; every class pair that carries
    edges is joined by exactly one arc; every arc carries edges; horizontal
    fibers are c(head) edges with m per tail member; vertical and thread
    fibers are c(tail) edges, one per tail member; class sizes match.
    """
    if not 2 <= n <= QUOTIENT_MAX_N:
        raise OracleRefused(f"quotient scan limited to 2 <= n <= {QUOTIENT_MAX_N}, got {n}")
    gamma = gamma or build_gamma(n)
    tree = gamma.tree
    report = VerificationReport(n)

    perms = all_perms(n)
    names = sorted(tree.nodes)
    index = {s: k for k, s in enumerate(names)}
    cls = np.array([index[string_of_perm(_one_based(row))] for row in perms], dtype=np.int64)

    sizes = np.bincount(cls, minlength=len(names))
    bad_sizes = {format_index(s): (int(sizes[k]), tree[s].card) for k, s in enumerate(names) if sizes[k] != tree[s].card}
    report.add("class_sizes", not bad_sizes, mismatches=bad_sizes)

    pair_edges: Counter = Counter()  # unordered class pair -> edge count
    degree: Counter = Counter()  # (perm rank, other class) -> edges
    loops = 0
    ranks = np.arange(len(perms))
    for i in range(1, n):
        q = perms.copy()
        q[:, [0, i]] = q[:, [i, 0]]
        nb = rank_rows(q)
        keep = ranks < nb
        a, b = cls[keep], cls[nb[keep]]
        loops += int((a == b).sum())
        pair_edges.update(zip(np.minimum(a, b).tolist(), np.maximum(a, b).tolist()))
        degree.update(zip(ranks.tolist(), cls[nb].tolist()))
    report.add("no_loops", loops == 0, loops=loops)

    arcs_by_pair = defaultdict(list)
    for e in gamma.arcs:
        u, v = index[e.tail], index[e.head]
        arcs_by_pair[(min(u, v), max(u, v))].append(e)

    unprojected = {}
    for pair, count in sorted(pair_edges.items()):
        if pair[0] == pair[1]:
            continue
        if len(arcs_by_pair.get(pair, ())) != 1:
            key = f"{format_index(names[pair[0]])}-{format_index(names[pair[1]])}"
            unprojected[key] = {"edges": count, "arcs": len(arcs_by_pair.get(pair, ()))}
    report.add(
        "edges_project_to_arcs",
        not unprojected,
        edges=sum(pair_edges.values()),
        arcs=len(gamma.arcs),
        unprojected_pairs=unprojected,
    )

    silent = [f"{format_index(e.tail)}->{format_index(e.head)}" for p, es in arcs_by_pair.items() for e in es if not pair_edges.get(p)]
    report.add("arcs_realized", not silent, arcs_without_edges=silent)

    members = defaultdict(list)
    for r, c in enumerate(cls.tolist()):
        members[c].append(r)

    def fiber(e):
        u, v = index[e.tail], index[e.head]
        per_tail = Counter(degree[(r, v)] for r in members[u])
        per_head = Counter(degree[(r, u)] for r in members[v])
        total = pair_edges.get((min(u, v), max(u, v)), 0)
        return total, per_tail, per_head

    bad_h = {}
    bad_v = {}
    for e in gamma.arcs:
        total, per_tail, per_head = fiber(e)
        cu, cv = tree[e.tail].card, tree[e.head].card
        label = f"{format_index(e.tail)}->{format_index(e.head)}"
        if e.kind == "horizontal":
            ok = total == cv and per_tail == Counter({e.indication: cu}) and per_head == Counter({1: cv})
            if not ok:
                bad_h[label] = {"edges": total, "expected": cv, "per_tail": dict(per_tail), "per_head": dict(per_head)}
        else:
            group = cu // cv
            ok = total == cu and per_tail == Counter({1: cu}) and per_head == Counter({group: cv}) and group == e.indication
            if not ok:
                bad_v[label] = {"edges": total, "expected": cu, "per_tail": dict(per_tail), "per_head": dict(per_head)}
    report.add("horizontal_fibers", not bad_h, failures=bad_h)
    report.add("vertical_fibers", not bad_v, failures=bad_v)
    return report


def thread_spot_check(n: int, tail, gamma: GammaGraph | None = None) -> CheckResult:
    """Check one thread without scanning the graph.

    The representative of ``tail`` must have exactly one star neighbour in
    the head class, and closing its cycle through 1 must land there.
    """
    gamma = gamma or build_gamma(n)
    tail = tuple(tail)
    head = thread_target(tail)
    sigma = gamma.tree[tail].sigma
    neighbours = [string_of_perm(apply_star_generator(sigma, i)) for i in range(2, n + 1)]
    hits = neighbours.count(head)
    arcs = [e for e in gamma.threads if e.tail == tail and e.head == head]
    passed = string_of_perm(sigma) == tail and hits == 1 and len(arcs) == 1
    return CheckResult(passed, {"tail": format_index(tail), "head": format_index(head), "neighbours_in_head": hits})


def verify_all(max_n: int = 8, deep: bool = False) -> dict[str, CheckResult]:
    """Oracle comparisons used by the ``verify`` command."""
    from .distributions import eset_distribution, vertex_weight_distribution

    top = max(max_n, 9) if deep else max_n
    _guard(top, allow_large=top == HARD_MAX_N)
    out: dict[str, CheckResult] = {}
    for n in range(2, top + 1):
        res = bfs(n, allow_large=n == HARD_MAX_N)
        dist = vertex_weight_distribution(n).counts
        out[f"distribution n={n}"] = CheckResult(res.histogram == dist, {"bfs": res.histogram, "tree": dist})
        out[f"diameter n={n}"] = CheckResult(res.max_distance == diameter(n), {"bfs": res.max_distance})
        if n <= 9:
            tree = generate_pruned(n)
            hist = class_histogram(n, res)
            want = {node.ics: (node.w, node.card) for node in tree.nodes.values()}
            out[f"classes n={n}"] = CheckResult(hist == want, {"classes": len(hist)})
        if 3 <= n <= 8:
            bad = [i for i in range(1, n + 1) if eset_histogram(n, i, res) != eset_distribution(n, i).counts]
            out[f"esets n={n}"] = CheckResult(not bad, {"mismatched_symbols": bad})
        if n <= QUOTIENT_MAX_N:
            rep = verify_quotient(n)
            for name, c in rep.checks.items():
                out[f"quotient {name} n={n}"] = c
    if top >= 9:
        g = build_gamma(9)
        for e in g.threads:
            out[f"thread {format_index(e.tail)} n=9"] = thread_spot_check(9, e.tail, g)
    return out
