"""The 1-ics tree of the star graph.

Vertices are named by index strings ``(i_0, ..., i_j)``.  A horizontal arc
increments the last index (it extends the cycle through 1 by one fixed
point); a vertical arc duplicates the last index (it closes that cycle, so 1
becomes fixed).  The differences ``t_k = i_k - i_{k-1}`` (with
``i_{-1} = 0``) carry the cycle data: ``t_0..t_{j-1}`` are the lengths of
the proper cycles avoiding 1 and ``t_j + 1`` is the length of the cycle
through 1.

Three constructions are provided and cross-checked in the tests: the
unpruned tree grown from the axioms, the first-occurrence pruning scan over
it, and direct enumeration of admissible strings.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import accumulate
from typing import Iterator, NamedTuple, Sequence

from .perm import (
    IcsKey,
    Permutation,
    apply_star_generator,
    close_one_cycle,
    cycle_type_counts,
    ics_key,
    identity,
)

IndexString = tuple[int, ...]
ROOT: IndexString = (0,)

_HEX = "0123456789abcdefghijklmnopqrstuvwxyz"


class InvariantError(RuntimeError):
    """An internal counting identity failed; the tree construction is wrong."""


# -- index strings --------------------------------------------------------

def t_sequence(s: Sequence[int]) -> tuple[int, ...]:
    return tuple(x - (s[k - 1] if k else 0) for k, x in enumerate(s))


def from_t(t: Sequence[int]) -> IndexString:
    return tuple(accumulate(t))


def sort_key(s: IndexString) -> tuple[int, IndexString]:
    """Visiting order of the pruning scan: by length, then numerically."""
    return (len(s), s)


def format_index(s: Sequence[int]) -> str:
    """``(2, 4, 6, 8, 10, 10)`` -> ``2468aa``; dotted decimals past index 35."""
    if all(x < len(_HEX) for x in s):
        return "".join(_HEX[x] for x in s)
    return ".".join(str(x) for x in s)


def parse_index(text: str) -> IndexString:
    text = text.strip()
    if "." in text or "," in text:
        return tuple(int(x) for x in text.replace(",", ".").split("."))
    return tuple(int(ch, 36) for ch in text.lower())


def is_admissible(s: Sequence[int], n: int) -> bool:
    """Membership test for the pruned tree of ST_n."""
    if not s or any(x < 0 for x in s):
        return False
    j = len(s) - 1
    if not 0 <= s[0] <= n - 1 or s[-1] > n - 1:
        return False
    if j > 0 and s[0] < 2:
        return False
    t = t_sequence(s)
    if any(t[k] > t[k + 1] for k in range(j - 1)):
        return False
    return j == 0 or s[j - 1] <= s[j]


def b_value(s: Sequence[int]) -> int:
    """Multiplicity factor of the vertical arc leaving ``s`` (0 if pruned).

    Nonzero exactly when the whole t-sequence is nondecreasing with
    ``t_0 >= 2``.  Its value is the number of entries equal to the last one,
    i.e. how many cycles of length ``a`` the closed permutation carries.
    """
    t = t_sequence(s)
    if t[0] < 2 or any(t[k] > t[k + 1] for k in range(len(t) - 1)):
        return 0
    return t.count(t[-1])


def b_value_literal(s: Sequence[int]) -> int:
    """Alternative factor: j+1 when all t agree, else 1.

    Differs from :func:`b_value` when the largest t repeats without all t
    being equal (first at ``2,5,8`` for n = 9); kept for the comparison
    experiment only.
    """
    t = t_sequence(s)
    if t[0] < 2 or any(t[k] > t[k + 1] for k in range(len(t) - 1)):
        return 0
    return len(t) if len(set(t)) == 1 else 1


def ics_of_string(s: Sequence[int]) -> IcsKey:
    t = t_sequence(s)
    return IcsKey(t[-1] + 1, tuple(sorted(t[:-1])))


def string_of_key(key: IcsKey) -> IndexString:
    return from_t(tuple(sorted(key.others)) + (key.c1 - 1,))


def string_of_perm(p: Sequence[int]) -> IndexString:
    return string_of_key(ics_key(p))


# -- node records ---------------------------------------------------------

@dataclass(frozen=True)
class LambdaNode:
    id: IndexString
    w: int
    ell: int
    m: int
    a: int
    b: int
    d: int
    card: int
    sigma: Permutation
    sigma_closed: Permutation | None
    ctuple: tuple[int, ...] | None
    ics: IcsKey

    @property
    def j(self) -> int:
        return len(self.id) - 1


def _make_node(s: IndexString, n: int, sigma: Permutation, card: int, b: int) -> LambdaNode:
    t = t_sequence(s)
    a = t[-1]
    closed = close_one_cycle(sigma) if a >= 2 else None
    return LambdaNode(
        id=s,
        w=s[-1] + len(s) - 1,
        ell=s[-1] + 1,
        m=n - s[-1] - 1,
        a=a,
        b=b,
        d=b * a,
        card=card,
        sigma=sigma,
        sigma_closed=closed,
        ctuple=tuple(sorted(t)) if a >= 2 else None,
        ics=ics_of_string(s),
    )


class PathStep(NamedTuple):
    node: IndexString
    kind: str | None  # "h", "v" or None for the endpoint
    indication: int | None  # m for "h", d = b*a for "v"


def path_to_root(s: Sequence[int], n: int) -> list[PathStep]:
    """Root path of ``s``, listed from the root.

    Built backwards: walk left along the horizontal path until its first
    vertex, hop to the vertical predecessor, repeat until ``0``.
    """
    s = tuple(s)
    if not is_admissible(s, n):
        raise ValueError(f"{format_index(s)} is not a vertex for n={n}")
    back = [PathStep(s, None, None)]
    u = s
    while u != ROOT:
        first = len(u) > 1 and u[-1] == u[-2]
        if not first:
            prev = u[:-1] + (u[-1] - 1,)
            back.append(PathStep(prev, "h", n - prev[-1] - 1))
        else:
            prev = u[:-1]
            back.append(PathStep(prev, "v", b_value(prev) * t_sequence(prev)[-1]))
        u = prev
    back.reverse()
    return back


def format_path(steps: Sequence[PathStep]) -> str:
    """Path string with ``m`` as superscript and ``d`` as subscript."""
    out = []
    for node, kind, ind in steps:
        tok = format_index(node)
        if kind is not None:
            num = str(ind)
            num = num if len(num) == 1 else "{" + num + "}"
            tok += ("^" if kind == "h" else "_") + num
        out.append(tok)
    return "".join(out)


def sigma_of(s: Sequence[int], n: int) -> Permutation:
    """Representative permutation, replayed along the root path."""
    sig = identity(n)
    for node, kind, _ in path_to_root(s, n):
        if kind == "h":
            sig = apply_star_generator(sig, node[-1] + 2)
        elif kind == "v":
            sig = close_one_cycle(sig)
    return sig


def class_size(s: Sequence[int], n: int) -> int:
    """c(u) = M / (A*B) from the arc indications along the root path."""
    steps = path_to_root(s, n)
    M = 1
    AB = 1
    for node, kind, ind in steps:
        if kind == "h":
            M *= ind
        elif kind == "v":
            AB *= ind
            if M % AB:
                raise InvariantError(
                    f"path product {M} not divisible by {AB} at {format_index(node)} (n={n})"
                )
    return M // AB


def class_size_closed(key: IcsKey, n: int) -> int:
    """Independent count of permutations with 1-ics ``key``.

    Ordered choice of the c1-1 symbols following 1 in its cycle, times the
    usual count of permutations of the rest with the given proper cycles.
    """
    if not key.fits(n):
        raise ValueError(f"{key} does not fit in S_{n}")
    top = key.support - 1  # i_j
    den = math.factorial(n - 1 - top)
    for length, mult in cycle_type_counts(key).items():
        den *= length**mult * math.factorial(mult)
    return math.factorial(n - 1) // den


def node_attrs(s: Sequence[int], n: int) -> LambdaNode:
    s = tuple(s)
    if not is_admissible(s, n):
        raise ValueError(f"{format_index(s)} is not admissible for n={n}")
    return _make_node(s, n, sigma_of(s, n), class_size(s, n), b_value(s))


# -- trees ----------------------------------------------------------------

Arc = tuple[IndexString, IndexString]


@dataclass
class LambdaTree:
    """Nodes keyed by index string plus horizontal and vertical arcs.

    Unpruned trees carry structure only: their node values are ``None``
    because the class fields are assigned by :func:`prune`.
    """

    n: int
    nodes: dict[IndexString, LambdaNode | None]
    horizontal: set[Arc] = field(default_factory=set)
    vertical: set[Arc] = field(default_factory=set)
    pruned: bool = True

    def ordered(self) -> list[IndexString]:
        return sorted(self.nodes, key=sort_key)

    def __len__(self) -> int:
        return len(self.nodes)

    def __getitem__(self, s: Sequence[int]) -> LambdaNode:
        return self.nodes[tuple(s)]


def _check_n(n: int) -> None:
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")


def _grow(n: int, pruned: bool) -> Iterator[tuple[IndexString, str, IndexString]]:
    """Yield ``(parent, kind, child)`` for every arc, depth first."""
    stack = [ROOT]
    while stack:
        s = stack.pop()
        last = s[-1]
        a = last - (s[-2] if len(s) > 1 else 0)
        if a >= 2 and (not pruned or b_value(s) > 0):
            child = s + (last,)
            yield s, "v", child
            stack.append(child)
        if last + 1 <= n - 1:
            child = s[:-1] + (last + 1,)
            yield s, "h", child
            stack.append(child)


def iter_unpruned_strings(n: int) -> Iterator[IndexString]:
    """Vertices of the unpruned tree: a vertical arc leaves every t_last >= 2."""
    _check_n(n)
    yield ROOT
    for _, _, child in _grow(n, pruned=False):
        yield child


def iter_admissible(n: int) -> Iterator[IndexString]:
    _check_n(n)
    yield ROOT
    for _, _, child in _grow(n, pruned=True):
        yield child


def iter_class_sizes(n: int, start: IndexString = ROOT, card: int = 1) -> Iterator[tuple[IndexString, int]]:
    """Every vertex below ``start`` with its running path product.

    No permutations are built, so this scales to n in the hundreds.
    """
    stack = [(start, card)]
    while stack:
        s, c = stack.pop()
        yield s, c
        last = s[-1]
        if last + 1 <= n - 1:
            stack.append((s[:-1] + (last + 1,), c * (n - last - 1)))
        a = last - (s[-2] if len(s) > 1 else 0)
        if a >= 2:
            b = b_value(s)
            if b:
                d = a * b
                if c % d:
                    raise InvariantError(f"{c} not divisible by {d} at {format_index(s)} (n={n})")
                stack.append((s + (last,), c // d))


def _wire(n: int, arcs, populate: bool) -> LambdaTree:
    tree = LambdaTree(n=n, nodes={ROOT: None}, pruned=populate)
    sig = {ROOT: identity(n)}
    card = {ROOT: 1}
    for parent, kind, child in arcs:
        tree.nodes[child] = None
        (tree.horizontal if kind == "h" else tree.vertical).add((parent, child))
        if not populate:
            continue
        if kind == "h":
            sig[child] = apply_star_generator(sig[parent], parent[-1] + 2)
            card[child] = card[parent] * (n - parent[-1] - 1)
        else:
            d = b_value(parent) * t_sequence(parent)[-1]
            if card[parent] % d:
                raise InvariantError(f"{card[parent]} not divisible by {d} at {format_index(parent)}")
            sig[child] = close_one_cycle(sig[parent])
            card[child] = card[parent] // d
    if populate:
        for s in tree.nodes:
            tree.nodes[s] = _make_node(s, n, sig[s], card[s], b_value(s))
    return tree


def generate_pruned(n: int) -> LambdaTree:
    """The pruned tree built directly from the admissibility conditions."""
    _check_n(n)
    return _wire(n, _grow(n, pruned=True), populate=True)


def generate_unpruned(n: int) -> LambdaTree:
    _check_n(n)
    return _wire(n, _grow(n, pruned=False), populate=False)


# -- pruning scan ---------------------------------------------------------

@dataclass(frozen=True)
class LedgerRow:
    """One line of the pruning ledger.

    ``c_order`` keeps the t-sequence order used for display; fields that are
    blank for the first two vertices of a horizontal path are ``None``.
    """

    id: IndexString
    w: int
    sigma: Permutation
    ell: int
    sigma_closed: Permutation | None
    c_order: tuple[int, ...] | None
    b: int
    a: int

    @property
    def c_multiset(self) -> tuple[int, ...] | None:
        return None if self.c_order is None else tuple(sorted(self.c_order))


def prune(tree: LambdaTree) -> tuple[LambdaTree, list[LedgerRow]]:
    """Run the first-occurrence pruning scan over an unpruned tree.

    Vertices are treated by string length, then lexicographically.  A
    vertex whose closed cycle tuple already occurred gets ``b = 0`` and
    loses its vertical arc together with everything below it.
    """
    n = tree.n
    parent: dict[IndexString, tuple[IndexString, str]] = {}
    for u, v in tree.horizontal:
        parent[v] = (u, "h")
    for u, v in tree.vertical:
        parent[v] = (u, "v")

    seen: set[tuple[int, ...]] = set()
    alive: dict[IndexString, tuple[Permutation, int, int]] = {}  # sigma, card, b
    rows: list[LedgerRow] = []
    out = LambdaTree(n=n, nodes={}, pruned=True)

    for s in tree.ordered():
        if s == ROOT:
            sig, card = identity(n), 1
        else:
            p, kind = parent[s]
            if p not in alive:
                continue
            psig, pcard, pb = alive[p]
            if kind == "h":
                sig = apply_star_generator(psig, p[-1] + 2)
                card = pcard * (n - p[-1] - 1)
                out.horizontal.add((p, s))
            else:
                if pb == 0:
                    continue
                d = pb * t_sequence(p)[-1]
                if pcard % d:
                    raise InvariantError(f"{pcard} not divisible by {d} at {format_index(p)}")
                sig = close_one_cycle(psig)
                card = pcard // d
                out.vertical.add((p, s))
        t = t_sequence(s)
        a = t[-1]
        closed = c_order = None
        b = 0
        if a >= 2:
            closed = close_one_cycle(sig)
            c_order = t
            key = tuple(sorted(t))
            if key not in seen:
                seen.add(key)
                b = t.count(a)
        alive[s] = (sig, card, b)
        rows.append(LedgerRow(s, s[-1] + len(s) - 1, sig, s[-1] + 1, closed, c_order, b, a))
        out.nodes[s] = _make_node(s, n, sig, card, b)
    return out, rows


# -- table layout ---------------------------------------------------------

def diameter(n: int) -> int:
    _check_n(n)
    return (n - 1) // 2 + n - 1


@dataclass(frozen=True)
class TableRow:
    depth: int
    nodes: tuple[IndexString, ...]

    @property
    def start_weight(self) -> int:
        s = self.nodes[0]
        return s[-1] + len(s) - 1


@dataclass
class WeightTable:
    n: int
    rows: list[TableRow]

    @property
    def width(self) -> int:
        return diameter(self.n) + 1

    def columns(self) -> dict[int, set[IndexString]]:
        cols: dict[int, set[IndexString]] = defaultdict(set)
        for row in self.rows:
            for k, s in enumerate(row.nodes):
                cols[row.start_weight + k].add(s)
        return dict(cols)


def table_T(n: int) -> WeightTable:
    """Horizontal paths of the pruned tree placed in weight columns.

    Rows go by depth, then by the first vertex's string, which within each
    prefix block lists paths from longest to shortest.
    """
    _check_n(n)
    starts = [s for s in iter_admissible(n) if len(s) == 1 and s == ROOT or len(s) > 1 and s[-1] == s[-2]]
    rows = []
    for s in sorted(starts, key=lambda s: (len(s), s)):
        members = tuple(s[:-1] + (k,) for k in range(s[-1], n))
        rows.append(TableRow(len(s) - 1, members))
    return WeightTable(n, rows)
