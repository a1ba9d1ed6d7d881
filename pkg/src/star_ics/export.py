"""Text, DOT, JSON and CSV renderings.

Node and arc order is always (string length, then lexicographic), so the
same input gives the same bytes.  Big integers go to JSON as decimal
strings.
"""

from __future__ import annotations

import csv
import io
import json

from .distributions import EsetDistribution, WeightDistribution
from .gamma import GammaGraph
from .lambda_tree import LambdaNode, LambdaTree, LedgerRow, WeightTable, format_index, sort_key
from .perm import IcsKey, format_cycles, format_perm


def _perm(p) -> str:
    return format_perm(p, "compact" if len(p) <= 9 else "csv")


def _label(node: LambdaNode | None, s) -> str:
    name = ".".join(str(x) for x in s)
    return name if node is None else f"{name} | {node.w},{node.card}"


def tree_to_dot(tree: LambdaTree, gamma: GammaGraph | None = None) -> str:
    lines = [f"digraph lambda_{tree.n} {{", "  rankdir=LR;", "  node [shape=box];"]
    ids = {s: f"n{k}" for k, s in enumerate(tree.ordered())}
    for s in tree.ordered():
        lines.append(f'  {ids[s]} [label="{_label(tree.nodes[s], s)}"];')
    if gamma is not None:
        for e in gamma.arcs:
            if e.kind == "horizontal":
                attr = f'label="*{e.indication}"'
            elif e.kind == "vertical":
                attr = f'label="/{e.indication}"'
            else:
                attr = f'label="/{e.thread_a}", style=dashed'
            lines.append(f"  {ids[e.tail]} -> {ids[e.head]} [{attr}];")
    else:
        for u, v in sorted(tree.horizontal, key=lambda a: (sort_key(a[0]), sort_key(a[1]))):
            node = tree.nodes[u]
            lab = f' [label="*{node.m}"]' if node is not None else ""
            lines.append(f"  {ids[u]} -> {ids[v]}{lab};")
        for u, v in sorted(tree.vertical, key=lambda a: (sort_key(a[0]), sort_key(a[1]))):
            node = tree.nodes[u]
            lab = f' [label="/{node.d}"]' if node is not None else ""
            lines.append(f"  {ids[u]} -> {ids[v]}{lab};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _node_dict(node: LambdaNode) -> dict:
    return {
        "id": list(node.id),
        "w": node.w,
        "ell": node.ell,
        "m": node.m,
        "a": node.a,
        "b": node.b,
        "d": node.d,
        "card": str(node.card),
        "sigma": list(node.sigma),
        "sigma_closed": None if node.sigma_closed is None else list(node.sigma_closed),
        "ctuple": None if node.ctuple is None else list(node.ctuple),
        "ics": [node.ics.c1, list(node.ics.others)],
    }


def _node_from(d: dict) -> LambdaNode:
    opt = lambda x: None if x is None else tuple(x)  # noqa: E731
    return LambdaNode(
        id=tuple(d["id"]),
        w=d["w"],
        ell=d["ell"],
        m=d["m"],
        a=d["a"],
        b=d["b"],
        d=d["d"],
        card=int(d["card"]),
        sigma=tuple(d["sigma"]),
        sigma_closed=opt(d["sigma_closed"]),
        ctuple=opt(d["ctuple"]),
        ics=IcsKey(d["ics"][0], tuple(d["ics"][1])),
    )


def _arcs(arcs) -> list:
    return [[list(u), list(v)] for u, v in sorted(arcs, key=lambda a: (sort_key(a[0]), sort_key(a[1])))]


def tree_to_json(tree: LambdaTree) -> str:
    nodes = []
    for s in tree.ordered():
        node = tree.nodes[s]
        nodes.append({"id": list(s)} if node is None else _node_dict(node))
    doc = {
        "n": tree.n,
        "pruned": tree.pruned,
        "nodes": nodes,
        "horizontal": _arcs(tree.horizontal),
        "vertical": _arcs(tree.vertical),
    }
    return json.dumps(doc, indent=1) + "\n"


def tree_from_json(text: str) -> LambdaTree:
    doc = json.loads(text)
    nodes = {}
    for d in doc["nodes"]:
        nodes[tuple(d["id"])] = _node_from(d) if "card" in d else None
    return LambdaTree(
        n=doc["n"],
        nodes=nodes,
        horizontal={(tuple(u), tuple(v)) for u, v in doc["horizontal"]},
        vertical={(tuple(u), tuple(v)) for u, v in doc["vertical"]},
        pruned=doc["pruned"],
    )


def gamma_to_json(g: GammaGraph) -> str:
    arcs = []
    for e in g.arcs:
        item = {"from": list(e.tail), "to": list(e.head), "kind": e.kind, "indication": e.indication}
        if e.thread_a is not None:
            item["a"] = e.thread_a
        arcs.append(item)
    doc = {
        "n": g.n,
        "nodes": [_node_dict(g.tree[s]) for s in g.tree.ordered()],
        "arcs": arcs,
    }
    return json.dumps(doc, indent=1) + "\n"


def gamma_to_text(g: GammaGraph) -> str:
    out = []
    for e in g.arcs:
        mark = {"horizontal": "*", "vertical": "/", "thread": "/"}[e.kind]
        extra = f" (a={e.thread_a})" if e.kind == "thread" else ""
        out.append(f"{format_index(e.tail)} -> {format_index(e.head)}  {e.kind} {mark}{e.indication}{extra}")
    return "\n".join(out) + "\n"


def tree_to_text(tree: LambdaTree) -> str:
    out = []
    for s in tree.ordered():
        node = tree.nodes[s]
        if node is None:
            out.append(format_index(s))
        else:
            out.append(f"{format_index(s)}\tw={node.w}\tc={node.card}\tm={node.m}\ta={node.a}\tb={node.b}")
    return "\n".join(out) + "\n"


def distribution_csv(vertices: WeightDistribution, classes: WeightDistribution) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["omega", "classes", "vertices"])
    for omega, (k, v) in enumerate(zip(classes.counts, vertices.counts)):
        w.writerow([omega, k, v])
    return buf.getvalue()


def distribution_json(vertices: WeightDistribution, classes: WeightDistribution) -> str:
    rows = [
        {"omega": omega, "classes": str(k), "vertices": str(v)}
        for omega, (k, v) in enumerate(zip(classes.counts, vertices.counts))
    ]
    return json.dumps({"n": vertices.n, "rows": rows}, indent=1) + "\n"


def eset_csv(dist: EsetDistribution) -> str:
    lines = ["omega,count"] + [f"{w},{c}" for w, c in enumerate(dist.counts)]
    return "\n".join(lines) + "\n"


def eset_json(dist: EsetDistribution) -> str:
    return json.dumps({"n": dist.n, "i": dist.i, "counts": [str(c) for c in dist.counts]}) + "\n"


def _with_cycles(p, width=None) -> str:
    shown = p if width is None else p[:width]
    cyc = format_cycles(p)
    return f"{_perm(shown)}{cyc}"


def ledger_text(rows: list[LedgerRow]) -> str:
    """One line per visited vertex; blank fields print as '-'."""
    out = ["u(id,w)\tsigma\tell\tsigma[u]\tC\tb\ta"]
    for r in rows:
        closed = "-" if r.sigma_closed is None else _with_cycles(r.sigma_closed, r.ell)
        c = "-" if r.c_order is None else "".join(format_index((x,)) for x in r.c_order)
        out.append(
            f"u({format_index(r.id)},{r.w})\t{_with_cycles(r.sigma, r.ell)}\t{r.ell}\t{closed}\t{c}\t{r.b}\t{r.a}"
        )
    return "\n".join(out) + "\n"


def ledger_json(rows: list[LedgerRow]) -> str:
    items = [
        {
            "id": list(r.id),
            "w": r.w,
            "sigma": list(r.sigma),
            "ell": r.ell,
            "sigma_closed": None if r.sigma_closed is None else list(r.sigma_closed),
            "c": None if r.c_order is None else list(r.c_order),
            "b": r.b,
            "a": r.a,
        }
        for r in rows
    ]
    return json.dumps(items, indent=1) + "\n"


def table_text(table: WeightTable) -> str:
    """Rows of horizontal paths placed under their weight columns."""
    width = table.width
    cells = []
    for row in table.rows:
        line = [""] * width
        for k, s in enumerate(row.nodes):
            col = row.start_weight + k
            if col < width:
                line[col] = format_index(s)
            else:
                line.append(format_index(s))
        cells.append((row.depth, line))
    wide = max(len(line) for _, line in cells)
    size = max([len(c) for _, line in cells for c in line] + [2])
    head = "d  " + " ".join(str(k).rjust(size) for k in range(wide))
    out = [head]
    for depth, line in cells:
        line = line + [""] * (wide - len(line))
        out.append(f"{depth}  " + " ".join(c.rjust(size) for c in line))
    return "\n".join(x.rstrip() for x in out) + "\n"


def table_json(table: WeightTable) -> str:
    rows = [
        {"depth": r.depth, "start": r.start_weight, "nodes": [list(s) for s in r.nodes]}
        for r in table.rows
    ]
    return json.dumps({"n": table.n, "rows": rows}, indent=1) + "\n"
