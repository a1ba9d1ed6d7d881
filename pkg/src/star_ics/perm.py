"""Permutations of {1..n} as star-graph vertices.

A permutation is a plain tuple in one-line notation: ``p[k-1]`` is the
image of ``k``.  Symbols are 1-based throughout.  The star generator
``(1 i)`` exchanges the entries at positions 1 and ``i``.
"""

from __future__ import annotations

from collections import Counter
from typing import NamedTuple, Sequence

Permutation = tuple[int, ...]

_HEX = "0123456789abcdefg"


class IcsKey(NamedTuple):
    """Canonical 1-invariant cycle structure.

    ``c1`` is the length of the cycle through 1 (1 when 1 is fixed) and
    ``others`` the sorted lengths of the remaining proper cycles.
    """

    c1: int
    others: tuple[int, ...] = ()

    @property
    def support(self) -> int:
        """Number of symbols, including 1, touched by the structure."""
        return self.c1 + sum(self.others)

    def fits(self, n: int) -> bool:
        return self.c1 >= 1 and all(x >= 2 for x in self.others) and self.support <= n


def check_perm(p: Sequence[int]) -> Permutation:
    p = tuple(int(x) for x in p)
    n = len(p)
    if n < 2:
        raise ValueError(f"permutation needs n >= 2, got {n}")
    if sorted(p) != list(range(1, n + 1)):
        raise ValueError(f"{p} is not a permutation of 1..{n}")
    return p


def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def apply_star_generator(p: Sequence[int], i: int) -> Permutation:
    """Swap the entries at positions 1 and ``i`` (1-based, 2 <= i <= n)."""
    n = len(p)
    if not 2 <= i <= n:
        raise ValueError(f"generator position {i} outside 2..{n}")
    q = list(p)
    q[0], q[i - 1] = q[i - 1], q[0]
    return tuple(q)


def close_one_cycle(p: Sequence[int]) -> Permutation:
    """Swap sigma_1 with the entry equal to 1, which fixes 1.

    The cycle that contained 1 loses it and keeps its other symbols.
    """
    k = list(p).index(1) + 1
    if k == 1:
        raise ValueError("1 is already fixed")
    return apply_star_generator(p, k)


def cycles(p: Sequence[int]) -> list[tuple[int, ...]]:
    """Proper cycles, each listed from its smallest symbol, ordered by that symbol."""
    n = len(p)
    seen = [False] * (n + 1)
    out = []
    for start in range(1, n + 1):
        if seen[start] or p[start - 1] == start:
            seen[start] = True
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = p[x - 1]
        out.append(tuple(cyc))
    return out


def cycle_structure(p: Sequence[int]) -> frozenset[tuple[int, ...]]:
    return frozenset(cycles(p))


def ics_key(p: Sequence[int]) -> IcsKey:
    c1 = 1
    others = []
    for cyc in cycles(p):
        if cyc[0] == 1:
            c1 = len(cyc)
        else:
            others.append(len(cyc))
    return IcsKey(c1, tuple(sorted(others)))


def weight(p: Sequence[int]) -> int:
    """Distance from the identity in ST_n.

    With S the number of moved symbols and C the number of proper cycles,
    the distance is S + C when 1 is fixed and S + C - 2 otherwise.
    """
    cyc = cycles(p)
    s = sum(len(c) for c in cyc)
    c = len(cyc)
    return s + c if p[0] == 1 else s + c - 2


def cycle_type_counts(key: IcsKey) -> Counter:
    return Counter(key.others)


# -- text formats ---------------------------------------------------------

def format_perm(p: Sequence[int], style: str = "auto") -> str:
    """Render a permutation.

    ``auto`` is compact digits for n <= 9 and comma-separated otherwise;
    ``hex`` uses single hex digits (a=10, b=11, ...) up to n = 16;
    ``csv`` is always comma-separated.
    """
    n = len(p)
    if style == "auto":
        style = "compact" if n <= 9 else "csv"
    if style == "compact":
        if n > 9:
            raise ValueError("compact format needs n <= 9")
        return "".join(str(x) for x in p)
    if style == "hex":
        if n > 16:
            raise ValueError("hex format needs n <= 16")
        return "".join(_HEX[x] for x in p)
    if style == "csv":
        return ",".join(str(x) for x in p)
    raise ValueError(f"unknown permutation style {style!r}")


def parse_perm(text: str) -> Permutation:
    text = text.strip()
    if "," in text or " " in text:
        items = [x for x in text.replace(",", " ").split()]
        return check_perm(int(x) for x in items)
    return check_perm(int(ch, 17) for ch in text.lower())


def format_cycles(p: Sequence[int], truncate: int | None = None) -> str:
    """Cycle notation in the ledger style, e.g. ``642315`` -> ``(165.432)``.

    The cycle through 1 comes first and starts at 1; every other cycle
    starts at its largest symbol, largest first.  Symbols above 9 print as
    hex digits.  The identity prints as an empty string.
    """
    cyc = cycles(p)
    if not cyc:
        return ""
    parts = []
    rest = []
    for c in cyc:
        if c[0] == 1:
            parts.append(c)
        else:
            k = c.index(max(c))
            rest.append(c[k:] + c[:k])
    rest.sort(key=lambda c: -c[0])
    parts.extend(rest)
    return "(" + ".".join("".join(_HEX[x] for x in c) for c in parts) + ")"
