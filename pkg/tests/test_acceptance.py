"""Acceptance suite, one group of tests per criterion.

A pass/fail line per criterion is printed in the terminal summary (see
conftest.py).  Run the n=9 parts with ``pytest --deep``.
"""

import math
import time
from collections import Counter

import pytest

from star_ics.distributions import (
    S,
    S_recurrence,
    W_closed,
    W_enum,
    antipode_count,
    divergence_report,
    eset_distribution,
    vertex_weight_distribution,
)
from star_ics.gamma import build_gamma
from star_ics.lambda_tree import (
    class_size,
    class_size_closed,
    diameter,
    generate_pruned,
    generate_unpruned,
    ics_of_string,
    iter_class_sizes,
    iter_unpruned_strings,
    parse_index,
    prune,
    table_T,
)
from star_ics.oracle import class_histogram, eset_histogram, verify_quotient
from star_ics.perm import cycles, parse_perm

crit = pytest.mark.criterion


# 1 ------------------------------------------------------------------------

@crit(1, "tree distribution equals BFS histogram")
@pytest.mark.parametrize("n", range(2, 9))
def test_distribution_matches_bfs(n, oracle_bfs):
    assert vertex_weight_distribution(n).counts == oracle_bfs(n).histogram


@crit(1, "tree distribution equals BFS histogram")
@pytest.mark.deep
def test_distribution_matches_bfs_n9(oracle_bfs):
    start = time.perf_counter()
    hist = oracle_bfs(9).histogram
    assert vertex_weight_distribution(9).counts == hist
    assert time.perf_counter() - start <= 60


# 2 ------------------------------------------------------------------------

@crit(2, "small distributions read off the tree figures")
def test_figure_distributions():
    assert vertex_weight_distribution(4).counts == (1, 3, 6, 9, 5)
    assert vertex_weight_distribution(5).counts == (1, 4, 12, 30, 44, 26, 3)


# 3 ------------------------------------------------------------------------

@crit(3, "vertex counts sum to n! for n <= 40")
def test_mass_conservation():
    for n in range(2, 41):
        assert vertex_weight_distribution(n).total() == math.factorial(n), n
    start = time.perf_counter()
    assert vertex_weight_distribution(40).total() == math.factorial(40)
    assert time.perf_counter() - start <= 5


# 4 ------------------------------------------------------------------------

LEDGER_ROWS = {
    # id: (w, sigma, ell, sigma closed or None, C or None, b, a)
    "0": (0, "1", 1, None, None, 0, 0),
    "35": (6, "642315", 6, "142365", (3, 2), 0, 2),
    "244": (6, "13254", 5, None, None, 0, 0),
    "2467": (10, "83254761", 8, None, None, 0, 1),
}


@crit(4, "pruning ledger rows for n=9")
@pytest.mark.parametrize("name", sorted(LEDGER_ROWS))
def test_ledger_rows(name):
    _, rows = prune(generate_unpruned(9))
    by_id = {r.id: r for r in rows}
    row = by_id[parse_index(name)]
    w, sigma, ell, closed, c, b, a = LEDGER_ROWS[name]
    assert row.w == w
    assert row.ell == ell
    assert "".join(map(str, row.sigma[:ell])) == sigma
    assert row.sigma[ell:] == tuple(range(ell + 1, 10))
    if closed is None:
        assert row.sigma_closed is None
    else:
        assert "".join(map(str, row.sigma_closed[:ell])) == closed
    if c is None:
        assert row.c_order is None
    else:
        assert Counter(row.c_order) == Counter(c)
    assert (row.b, row.a) == (b, a)


# 5 ------------------------------------------------------------------------

@crit(5, "the nine threads of n=9")
def test_threads_n9():
    g = build_gamma(9)
    got = {("".join(map(str, e.tail)), "".join(map(str, e.head))) for e in g.threads}
    assert got == {
        ("35", "255"), ("46", "266"), ("47", "377"), ("57", "277"), ("58", "388"),
        ("68", "288"), ("257", "2477"), ("268", "2488"), ("368", "2588"),
    }
    assert len(g.threads) == 9


# 6 ------------------------------------------------------------------------

@crit(6, "diameter formula equals BFS eccentricity")
@pytest.mark.parametrize("n", range(2, 9))
def test_diameter(n, oracle_bfs):
    assert diameter(n) == oracle_bfs(n).max_distance


@crit(6, "diameter formula equals BFS eccentricity")
def test_diameter_9_value():
    assert diameter(9) == 12


@crit(6, "diameter formula equals BFS eccentricity")
@pytest.mark.deep
def test_diameter_9_bfs(oracle_bfs):
    assert oracle_bfs(9).max_distance == 12


# 7 ------------------------------------------------------------------------

@crit(7, "antipode counts (n-2)(n-4)...3")
def test_antipodes(oracle_bfs):
    assert vertex_weight_distribution(5).counts[diameter(5)] == antipode_count(5) == 3
    assert vertex_weight_distribution(7).counts[diameter(7)] == antipode_count(7) == 15
    assert vertex_weight_distribution(9).counts[diameter(9)] == antipode_count(9) == 105
    assert oracle_bfs(9).histogram[diameter(9)] == 105


# 8 ------------------------------------------------------------------------

@crit(8, "E-set distributions")
@pytest.mark.parametrize("n", range(3, 9))
def test_esets(n, oracle_bfs):
    res = oracle_bfs(n)
    prev = oracle_bfs(n - 1).histogram
    for i in range(2, n + 1):
        hist = eset_histogram(n, i, res)
        assert eset_distribution(n, i).counts == hist
        assert hist[0] == 0
        for omega in range(1, len(prev) + 1):
            assert hist[omega] == prev[omega - 1]
        if n % 2 == 1:
            assert hist[diameter(n)] == 0
    assert eset_distribution(n, 1).counts == eset_histogram(n, 1, res)


# 9 ------------------------------------------------------------------------

@crit(9, "threaded tree is an orientation of the class quotient")
@pytest.mark.parametrize("n", range(2, 9))
def test_quotient(n):
    report = verify_quotient(n)
    failed = {k: v.detail for k, v in report.checks.items() if not v.passed}
    assert report.passed, failed


# 10 -----------------------------------------------------------------------

@crit(10, "pruning scan equals direct generation")
@pytest.mark.parametrize("n", range(2, 13))
def test_prune_equals_direct(n):
    pruned, _ = prune(generate_unpruned(n))
    direct = generate_pruned(n)
    assert set(pruned.nodes) == set(direct.nodes)
    assert pruned.horizontal == direct.horizontal
    assert pruned.vertical == direct.vertical


# 11 -----------------------------------------------------------------------

@crit(11, "class sizes: path product, closed form and oracle agree")
@pytest.mark.parametrize("n", range(2, 9))
def test_class_sizes_small(n, oracle_bfs):
    hist = class_histogram(n, oracle_bfs(n))
    tree = generate_pruned(n)
    assert len(hist) == len(tree)
    for s, node in tree.nodes.items():
        path = class_size(s, n)
        assert path == class_size_closed(node.ics, n) == hist[node.ics][1]


@crit(11, "class sizes: path product, closed form and oracle agree")
def test_class_sizes_to_40():
    for n in range(2, 41):
        for s, c in iter_class_sizes(n):
            assert c == class_size_closed(ics_of_string(s), n), (n, s)


@crit(11, "class sizes: path product, closed form and oracle agree")
def test_worked_example_945():
    s = parse_index("2468aa")
    assert class_size(s, 11) == 945
    # an independent count: 1 fixed plus five 2-cycles on the other ten symbols
    assert math.factorial(10) // (2**5 * math.factorial(5)) == 945


# 12 -----------------------------------------------------------------------

@crit(12, "unpruned column counts are Fibonacci numbers")
def test_fibonacci_columns():
    cols = Counter(s[-1] for s in iter_unpruned_strings(26))
    fib = [1, 1]
    while len(fib) < 26:
        fib.append(fib[-1] + fib[-2])
    assert [cols[k] for k in range(26)] == fib


# 13 -----------------------------------------------------------------------

# Rows of the reference n=11 table: first vertex and its weight column.
# Each row runs along its horizontal path up to last index a (=10).
T11_ROWS = [
    ("0", 0),
    ("22", 3), ("33", 4), ("44", 5), ("55", 6), ("66", 7), ("77", 8), ("88", 9), ("99", 10), ("aa", 11),
    ("244", 6), ("255", 7), ("266", 8), ("277", 9), ("288", 10), ("299", 11), ("2aa", 12),
    ("366", 8), ("377", 9), ("388", 10), ("399", 11), ("3aa", 12),
    ("488", 10), ("499", 11), ("4aa", 12),
    ("5aa", 12),
    ("2466", 9), ("2477", 10), ("2488", 11), ("2499", 12), ("24aa", 13),
    ("2588", 11), ("2599", 12), ("25aa", 13),
    ("26aa", 13),
    ("3699", 12), ("36aa", 13),
    ("24688", 12), ("24699", 13), ("246aa", 14),
    ("247aa", 14),
    ("2468aa", 15),
]


def _t11_columns():
    cols = {}
    for start, col in T11_ROWS:
        s = parse_index(start)
        for k in range(s[-1], 11):
            cols.setdefault(col + k - s[-1], set()).add(s[:-1] + (k,))
    return cols


@crit(13, "weight table for n=11, column contents")
def test_table_t11():
    got = table_T(11).columns()
    want = _t11_columns()
    assert got == want
    assert parse_index("2468aa") in got[15]


# 14 -----------------------------------------------------------------------

@crit(14, "multiset-count recurrence equals binomial")
def test_S_recurrence():
    for j in range(1, 31):
        for h in range(1, 31):
            assert S_recurrence(j, h) == S(j, h) == math.comb(j + h - 1, h)


# 15 -----------------------------------------------------------------------

@crit(15, "closed-form string counts vs enumeration (divergence report)")
def test_closed_form_divergence(capsys):
    mismatches, cells = divergence_report(max_omega=12, max_k=6)
    with capsys.disabled():
        print(f"\n  closed form vs enumeration: {len(mismatches)} of {cells} cells differ")
        for d in mismatches[:8]:
            print(f"    omega={d.omega} k={d.k}: closed {d.closed}, enumerated {d.enumerated}")
    assert W_closed(6, 2) == 27
    assert W_enum(6, 2) == 4
    assert any((d.omega, d.k, d.closed, d.enumerated) == (6, 2, 27, 4) for d in mismatches)


# sanity for the transcription helpers used above

def test_parse_helpers():
    assert parse_index("2468aa") == (2, 4, 6, 8, 10, 10)
    assert cycles(parse_perm("642315")) == [(1, 6, 5), (2, 4, 3)]
