"""Threads: the pruned tree turned into an orientation of the class quotient.

A pruned vertex ``u`` with ``b = 0`` and ``a >= 2`` lost its vertical arc
because its closed cycle tuple had already been seen at ``phi(u)``.  The
thread reroutes that arc to ``psi(u)``, the vertical child of ``phi(u)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .lambda_tree import (
    IndexString,
    InvariantError,
    LambdaTree,
    LedgerRow,
    format_index,
    from_t,
    generate_pruned,
    sort_key,
    t_sequence,
)


def sorted_twin(s: Sequence[int]) -> IndexString:
    """phi(u): same cycle multiset, t-sequence sorted."""
    return from_t(sorted(t_sequence(s)))


def thread_target(s: Sequence[int]) -> IndexString:
    t = t_sequence(s)
    a = t[-1]
    if a < 2 or len(s) > 1 and s[0] < 2:
        raise ValueError(f"{format_index(s)} does not close a cycle through 1")
    if t[0] >= 2 and all(t[k] <= t[k + 1] for k in range(len(t) - 1)):
        raise ValueError(f"{format_index(s)} keeps its vertical arc (b > 0)")
    phi = sorted_twin(s)
    return phi + (phi[-1],)


def phi_from_ledger(rows: Sequence[LedgerRow]) -> dict[IndexString, IndexString]:
    """phi for every b = 0 row, found by first-occurrence bookkeeping."""
    first: dict[tuple[int, ...], IndexString] = {}
    out = {}
    for row in rows:
        key = row.c_multiset
        if key is None:
            continue
        if row.b:
            first[key] = row.id
        else:
            out[row.id] = first[key]
    return out


class GammaArc(NamedTuple):
    tail: IndexString
    head: IndexString
    kind: str  # "horizontal", "vertical" or "thread"
    indication: int  # m, d = b*a, or the thread divisor c(tail)/c(head)
    thread_a: int | None = None  # a of the thread tail, kept next to the divisor


@dataclass
class GammaGraph:
    n: int
    tree: LambdaTree
    arcs: list[GammaArc]

    @property
    def threads(self) -> list[GammaArc]:
        return [e for e in self.arcs if e.kind == "thread"]

    def out_arcs(self, s: IndexString) -> list[GammaArc]:
        return [e for e in self.arcs if e.tail == s]

    def arc_set(self) -> set[tuple[IndexString, IndexString, str]]:
        return {(e.tail, e.head, e.kind) for e in self.arcs}


def build_gamma(n: int, tree: LambdaTree | None = None) -> GammaGraph:
    tree = tree if tree is not None else generate_pruned(n)
    arcs = []
    for u, v in tree.horizontal:
        arcs.append(GammaArc(u, v, "horizontal", tree[u].m))
    for u, v in tree.vertical:
        arcs.append(GammaArc(u, v, "vertical", tree[u].d))
    for s, node in tree.nodes.items():
        if node.b == 0 and node.a >= 2:
            head = thread_target(s)
            c_head = tree[head].card
            if node.card % c_head:
                raise InvariantError(
                    f"thread {format_index(s)}->{format_index(head)}: {node.card} vs {c_head}"
                )
            arcs.append(GammaArc(s, head, "thread", node.card // c_head, node.a))
    arcs.sort(key=lambda e: (sort_key(e.tail), e.kind, sort_key(e.head)))
    return GammaGraph(n, tree, arcs)
