"""Exact search at desk scale: maximum cliques of the conflict graph,
largest codes with a given minimum distance, and chromatic numbers.

Every search runs under a node budget.  When the budget runs out the
result is a bracket ``lower <= optimum <= upper`` rather than a guess.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np

from .coloring import Coloring, ProblemSpec, verify_coloring
from .cube import Mode, hamming_distance, neighbor_table, unrank
from .field import Field

CLIQUE_CAP = 1 << 14
CHROMATIC_CAP = 3 ** 5
DEFAULT_NODES = 2_000_000


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = DEFAULT_NODES
    deterministic: bool = True


@dataclass
class SearchResult:
    """``exact`` is True when lower == upper was proved within budget."""
    exact: bool
    lower: int
    upper: int
    witness: Optional[list] = None
    nodes: int = 0
    coloring: Optional[Coloring] = None

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError(f"search bracketed the optimum in [{self.lower}, {self.upper}]")
        return self.lower


class _OutOfBudget(Exception):
    pass


class _Graph:
    """Conflict graph with vertices relabelled by search order.

    ``order[i]`` is the vertex rank placed at bit i; ``adj[i]`` is the
    neighborhood of position i as a Python int bitset.
    """

    def __init__(self, table: np.ndarray, complement: bool = False):
        N, deg = table.shape
        degree = np.full(N, deg, dtype=np.int64)
        if complement:
            degree = N - 1 - degree
        # decreasing degree, ties by rank
        self.order = np.lexsort((np.arange(N), -degree))
        pos = np.empty(N, dtype=np.int64)
        pos[self.order] = np.arange(N)
        self.n = N
        self.adj = []
        full = (1 << N) - 1
        block = 512
        for lo in range(0, N, block):
            rows = self.order[lo:lo + block]
            mat = np.zeros((rows.size, N), dtype=bool)
            if deg:
                mat[np.arange(rows.size)[:, None], pos[table[rows]]] = True
            packed = np.packbits(mat, axis=1, bitorder="little")
            for i, row in enumerate(packed):
                bits = int.from_bytes(row.tobytes(), "little")
                if complement:
                    bits = full & ~bits & ~(1 << (lo + i))
                self.adj.append(bits)


def _color_sort(adj, P):
    """Greedy sequential coloring of the bitset P; returns vertices and
    their color numbers in nondecreasing color order."""
    order, colors = [], []
    k = 0
    U = P
    while U:
        k += 1
        Q = U
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            Q &= ~adj[v]
            Q ^= low
            U ^= low
            order.append(v)
            colors.append(k)
    return order, colors


def _max_clique_bits(g: _Graph, budget: SearchBudget, initial: list):
    """Branch and bound maximum clique over bit positions."""
    adj = g.adj
    best = list(initial)
    nodes = 0
    exhausted = False

    def expand(C, P):
        nonlocal best, nodes
        nodes += 1
        if nodes > budget.max_nodes:
            raise _OutOfBudget
        order, colors = _color_sort(adj, P)
        for idx in range(len(order) - 1, -1, -1):
            if len(C) + colors[idx] <= len(best):
                return
            v = order[idx]
            C.append(v)
            newP = P & adj[v]
            if newP:
                expand(C, newP)
            elif len(C) > len(best):
                best = list(C)
            C.pop()
            P &= ~(1 << v)

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * g.n + 1000))
    try:
        expand([], (1 << g.n) - 1)
    except _OutOfBudget:
        exhausted = True
    finally:
        sys.setrecursionlimit(old)
    return best, nodes, exhausted


def _clique_result(g: _Graph, budget, initial, q, n):
    best, nodes, exhausted = _max_clique_bits(g, budget, initial)
    witness = sorted(unrank(int(g.order[i]), q, n) for i in best)
    if exhausted:
        _, colors = _color_sort(g.adj, (1 << g.n) - 1)
        upper = max(colors) if colors else 0
        return SearchResult(False, len(best), max(upper, len(best)), witness, nodes)
    return SearchResult(True, len(best), len(best), witness, nodes)


def max_clique(spec: ProblemSpec, budget: SearchBudget = SearchBudget()) -> SearchResult:
    """Largest set of pairwise conflicting vertices."""
    if spec.size > CLIQUE_CAP:
        raise ValueError(f"q^n = {spec.size} exceeds the clique cap {CLIQUE_CAP}")
    g = _Graph(neighbor_table(spec.field, spec.n, spec.d, spec.mode))
    res = _clique_result(g, budget, [], spec.q, spec.n)
    for x, y in combinations(res.witness, 2):
        if not spec.mode.accepts(hamming_distance(x, y), spec.d):
            raise AssertionError("clique witness failed re-validation")
    return res


def _lexicode(q, n, d):
    """Greedy code in rank order with pairwise distance >= d."""
    from .cube import all_vertices
    words = all_vertices(q, n)
    chosen = []
    mind = np.full(len(words), n + 1)
    for r in range(len(words)):
        if mind[r] >= d:
            chosen.append(r)
            mind = np.minimum(mind, (words != words[r]).sum(axis=1))
    return chosen


def max_code_size(field: Field, n: int, d: int, budget: SearchBudget = SearchBudget()) -> SearchResult:
    """A_q(n, >= d): the largest set of vertices with pairwise distance >= d."""
    q = field.q
    if q ** n > CLIQUE_CAP:
        raise ValueError(f"q^n = {q ** n} exceeds the cap {CLIQUE_CAP}")
    if d <= 1:
        words = [unrank(r, q, n) for r in range(q ** n)]
        return SearchResult(True, q ** n, q ** n, words)
    if d > n:
        return SearchResult(True, 1, 1, [(0,) * n])
    g = _Graph(neighbor_table(field, n, d - 1, Mode.ATMOST), complement=True)
    pos = np.empty(g.n, dtype=np.int64)
    pos[g.order] = np.arange(g.n)
    seed = [int(pos[r]) for r in _lexicode(q, n, d)]
    res = _clique_result(g, budget, seed, q, n)
    for x, y in combinations(res.witness, 2):
        if hamming_distance(x, y) < d:
            raise AssertionError("code witness failed re-validation")
    return res


def _dsatur_greedy(nbrs, N):
    color = [-1] * N
    forb = [set() for _ in range(N)]
    deg = [len(a) for a in nbrs]
    for _ in range(N):
        v = max((u for u in range(N) if color[u] < 0),
                key=lambda u: (len(forb[u]), deg[u], -u))
        c = 0
        while c in forb[v]:
            c += 1
        color[v] = c
        for u in nbrs[v]:
            forb[u].add(c)
    return color


def _k_colorable(nbrs, N, k, precolored, budget, counter):
    """Exact DSATUR backtracking; returns a coloring list or None."""
    color = [-1] * N
    cnt = [[0] * k for _ in range(N)]
    sat = [0] * N
    deg = [len(a) for a in nbrs]

    def assign(v, c):
        color[v] = c
        for u in nbrs[v]:
            cnt[u][c] += 1
            if cnt[u][c] == 1:
                sat[u] += 1

    def unassign(v, c):
        color[v] = -1
        for u in nbrs[v]:
            cnt[u][c] -= 1
            if cnt[u][c] == 0:
                sat[u] -= 1

    used = 0
    for c, v in enumerate(precolored):
        assign(v, c)
        used = c + 1
    uncolored = [v for v in range(N) if color[v] < 0]

    def search(remaining, used):
        counter[0] += 1
        if counter[0] > budget.max_nodes:
            raise _OutOfBudget
        if not remaining:
            return True
        v = max(remaining, key=lambda u: (sat[u], deg[u], -u))
        if sat[v] == k:
            return False
        rest = [u for u in remaining if u != v]
        for c in range(min(k, used + 1)):
            if cnt[v][c]:
                continue
            assign(v, c)
            # forward check: no uncolored neighbor left without a color
            ok = all(sat[u] < k for u in nbrs[v] if color[u] < 0)
            if ok and search(rest, max(used, c + 1)):
                return True
            unassign(v, c)
        return False

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * N + 1000))
    try:
        if search(uncolored, used):
            return color
        return None
    finally:
        sys.setrecursionlimit(old)


def construction_colorings(spec: ProblemSpec):
    """Colorings from the explicit constructions that apply to ``spec``,
    relabelled to claim ``spec``."""
    from .codes import forbidden_greedy, gv_greedy, hamming_code
    from .coloring import coset_coloring, exact_d1_coloring, m_matrix_coloring, slab_coloring

    f, n, d, q = spec.field, spec.n, spec.d, spec.q
    out = []
    if spec.mode is Mode.ATMOST:
        if d < n:
            out.append(coset_coloring(gv_greedy(f, n, d), spec))
        if d <= 2 and n >= 2 and f.m == 1:
            out.append(m_matrix_coloring(f, n).colors)
        r = 2
        while (q ** r - 1) // (q - 1) < n:
            r += 1
        if (q ** r - 1) // (q - 1) == n and d <= 2:
            out.append(coset_coloring(hamming_code(f, r), spec))
    elif d <= n:
        out.append(coset_coloring(forbidden_greedy(f, n, d), spec))
        if d == 1:
            out.append(exact_d1_coloring(f, n).colors)
        if d == n:
            out.append(slab_coloring(f, n).colors)
    return [c if isinstance(c, Coloring) else Coloring(spec, c) for c in out]


def independence_number(spec: ProblemSpec, budget: SearchBudget = SearchBudget()) -> SearchResult:
    """Largest set of pairwise non-conflicting vertices."""
    if spec.size > CLIQUE_CAP:
        raise ValueError(f"q^n = {spec.size} exceeds the cap {CLIQUE_CAP}")
    if spec.mode is Mode.ATMOST:
        return max_code_size(spec.field, spec.n, spec.d + 1, budget)
    g = _Graph(neighbor_table(spec.field, spec.n, spec.d, spec.mode), complement=True)
    return _clique_result(g, budget, [], spec.q, spec.n)


def chromatic_number(spec: ProblemSpec, budget: SearchBudget = SearchBudget(),
                     max_vertices: int = CHROMATIC_CAP) -> SearchResult:
    """Exact chromatic number by iterative deepening from below.

    The lower bound is the larger of the clique number and
    ceil(q^n / independence number); the latter is valid because the
    conflict graph is vertex-transitive.  The upper bound comes from a
    DSATUR greedy coloring.  Each phase gets ``budget.max_nodes`` nodes.
    The returned coloring always passes :func:`verify_coloring`;
    ``witness`` holds the clique.
    """
    N = spec.size
    if N > max_vertices:
        raise ValueError(f"q^n = {N} exceeds max_vertices={max_vertices}")
    table = neighbor_table(spec.field, spec.n, spec.d, spec.mode)
    if table.shape[1] == 0:
        col = Coloring(spec, np.zeros(N, dtype=np.int64))
        return SearchResult(True, 1, 1, [unrank(0, spec.q, spec.n)], 0, col)
    nbrs = [row.tolist() for row in table]

    clique = max_clique(spec, budget)
    indep = independence_number(spec, budget)
    lower = max(clique.lower, -(-N // indep.upper))
    nodes = clique.nodes + indep.nodes
    best = Coloring(spec, _dsatur_greedy(nbrs, N))
    for cand in construction_colorings(spec):
        if cand.palette_size < best.palette_size and verify_coloring(cand).valid:
            best = cand
    upper = best.palette_size
    place = [spec.q ** (spec.n - 1 - i) for i in range(spec.n)]
    cl_ranks = sorted(sum(x * w for x, w in zip(v, place)) for v in clique.witness)

    k = lower
    counter = [0]
    while k < upper:
        try:
            found = _k_colorable(nbrs, N, k, cl_ranks, budget, counter)
        except _OutOfBudget:
            return SearchResult(False, k, upper, clique.witness, nodes + counter[0], best)
        if found is not None:
            best = Coloring(spec, found)
            upper = best.palette_size
            break
        k += 1
    if not verify_coloring(best).valid:
        raise AssertionError("certifying coloring failed verification")
    return SearchResult(True, upper, upper, clique.witness, nodes + counter[0], best)


def check_witness_distances(vertices, d: int, mode: Mode | str):
    """Pairwise distance matrix of ``vertices`` and whether every pair
    conflicts under (d, mode)."""
    mode = Mode(mode)
    vertices = [tuple(v) for v in vertices]
    if len(vertices) > 64:
        raise ValueError("at most 64 vertices")
    if len({len(v) for v in vertices}) > 1:
        raise ValueError("vertices of mixed length")
    k = len(vertices)
    dist = np.zeros((k, k), dtype=np.int64)
    for i, j in combinations(range(k), 2):
        dist[i, j] = dist[j, i] = hamming_distance(vertices[i], vertices[j])
    ok = all(mode.accepts(int(dist[i, j]), d) for i, j in combinations(range(k), 2))
    return ok, dist
