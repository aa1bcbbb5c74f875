import itertools

import networkx as nx
import numpy as np
import pytest

from qcube.codes import hamming_code, simplex_code
from qcube.coloring import ProblemSpec, verify_coloring
from qcube.cube import Mode, hamming_distance, neighbor_table, rank, unrank
from qcube.exact import (SearchBudget, chromatic_number, check_witness_distances,
                         construction_colorings, independence_number, max_clique, max_code_size)
from qcube.field import field_from_q

BIG = SearchBudget(2_000_000)


def spec(q, n, d, mode="atmost"):
    return ProblemSpec(field_from_q(q), n, d, mode)


def conflict_graph(s):
    g = nx.Graph()
    g.add_nodes_from(range(s.size))
    for a, row in enumerate(neighbor_table(s.field, s.n, s.d, s.mode)):
        g.add_edges_from((a, int(b)) for b in row if b > a)
    return g


def oracle_clique_number(g):
    return max(len(c) for c in nx.find_cliques(g))


def brute_code_size(q, n, d):
    # oracle: greedy-free exhaustive search for tiny spaces
    space = list(itertools.product(range(q), repeat=n))
    best = 1
    for size in range(2, len(space) + 1):
        if not any(all(hamming_distance(x, y) >= d for x, y in itertools.combinations(sub, 2))
                   for sub in itertools.combinations(space, size)):
            break
        best = size
    return best


CLIQUE_CASES = [(2, 3, 1, "atmost"), (2, 4, 2, "atmost"), (2, 5, 2, "exactly"), (3, 3, 2, "exactly"),
                (3, 3, 1, "atmost"), (4, 2, 1, "exactly"), (2, 6, 4, "exactly"), (3, 4, 3, "exactly"),
                (5, 2, 1, "atmost"), (2, 6, 3, "atmost")]


@pytest.mark.parametrize("q,n,d,mode", CLIQUE_CASES)
def test_clique_matches_networkx(q, n, d, mode):
    s = spec(q, n, d, mode)
    res = max_clique(s, BIG)
    assert res.exact
    assert res.value == oracle_clique_number(conflict_graph(s))
    ok, _ = check_witness_distances(res.witness, d, mode)
    assert ok and len(res.witness) == res.value


@pytest.mark.parametrize("q,n,d,mode", CLIQUE_CASES[:6])
def test_independence_matches_networkx(q, n, d, mode):
    s = spec(q, n, d, mode)
    res = independence_number(s, BIG)
    assert res.exact
    assert res.value == oracle_clique_number(nx.complement(conflict_graph(s)))


def test_clique_examples():
    assert max_clique(spec(2, 3, 1)).value == 2
    assert max_clique(spec(3, 2, 2)).value == 9
    assert max_clique(spec(3, 5, 3, "exactly")).value >= 4


def test_code_size_examples():
    f2 = field_from_q(2)
    a = max_code_size(f2, 7, 3, BIG)
    assert a.value == 16
    assert len(hamming_code(f2, 3).codewords()) == 16
    b = max_code_size(f2, 7, 4, BIG)
    assert b.value == 8
    assert len(simplex_code(f2, 3).codewords()) == 8
    for q, n in [(2, 5), (3, 3), (4, 2)]:
        assert max_code_size(field_from_q(q), n, 1).value == q ** n
    for w in (a.witness, b.witness):
        assert min(hamming_distance(x, y) for x, y in itertools.combinations(w, 2)) >= 3


@pytest.mark.parametrize("q,n,d", [(2, 3, 2), (2, 4, 3), (2, 4, 2), (3, 2, 2), (2, 3, 3)])
def test_code_size_brute_force(q, n, d):
    assert max_code_size(field_from_q(q), n, d, BIG).value == brute_code_size(q, n, d)


@pytest.mark.parametrize("q,n", [(2, 6), (3, 4), (4, 3)])
def test_code_size_antitone(q, n):
    f = field_from_q(q)
    sizes = [max_code_size(f, n, d, BIG).value for d in range(1, n + 2)]
    assert all(a >= b for a, b in zip(sizes, sizes[1:]))
    assert sizes[0] == q ** n and sizes[-1] == 1


@pytest.mark.parametrize("q,n,d,mode,value", [
    (3, 2, 2, "atmost", 9), (2, 4, 1, "exactly", 2), (3, 3, 3, "exactly", 3),
    (2, 7, 2, "atmost", 8), (3, 4, 2, "atmost", 9), (3, 3, 1, "exactly", 3),
    (2, 3, 1, "atmost", 2), (2, 5, 2, "exactly", 8), (4, 2, 2, "exactly", 4),
])
def test_chromatic_examples(q, n, d, mode, value):
    s = spec(q, n, d, mode)
    res = chromatic_number(s, BIG)
    assert res.exact and res.value == value
    assert res.coloring.palette_size == value
    assert verify_coloring(res.coloring).valid


def test_chromatic_beyond_diameter():
    res = chromatic_number(spec(3, 2, 3, "exactly"))
    assert res.value == 1


@pytest.mark.parametrize("q,n,d", [(2, 4, 1), (2, 5, 2), (2, 6, 2), (3, 3, 1), (3, 3, 2), (2, 7, 2)])
def test_code_size_consistent_with_chromatic(q, n, d):
    s = spec(q, n, d)
    a = max_code_size(s.field, n, d + 1, BIG).value
    chi = chromatic_number(s, BIG).value
    assert -(-q ** n // a) <= chi


def test_determinism():
    s = spec(3, 3, 2, "exactly")
    r1, r2 = chromatic_number(s, BIG), chromatic_number(s, BIG)
    assert (r1.exact, r1.lower, r1.upper, r1.witness, r1.nodes) == \
           (r2.exact, r2.lower, r2.upper, r2.witness, r2.nodes)
    assert np.array_equal(r1.coloring.colors, r2.coloring.colors)
    c1, c2 = max_clique(spec(3, 5, 3, "exactly")), max_clique(spec(3, 5, 3, "exactly"))
    assert c1.witness == c2.witness


def test_tiny_budget_brackets():
    s = spec(3, 5, 3, "exactly")
    res = max_clique(s, SearchBudget(3))
    assert not res.exact and res.lower <= res.upper
    with pytest.raises(ValueError):
        res.value
    res = chromatic_number(spec(3, 4, 2, "exactly"), SearchBudget(5))
    assert res.lower <= res.upper
    assert verify_coloring(res.coloring).valid
    assert res.coloring.palette_size == res.upper


def test_size_caps():
    with pytest.raises(ValueError):
        chromatic_number(spec(2, 9, 2))
    with pytest.raises(ValueError):
        max_clique(spec(2, 15, 2))


def test_constructions_all_verify():
    for s in (spec(2, 7, 2), spec(3, 5, 2), spec(2, 5, 2, "exactly"), spec(3, 4, 4, "exactly")):
        for c in construction_colorings(s):
            assert verify_coloring(c).valid


def test_first_reference_four_set():
    ok, dist = check_witness_distances([(0, 0, 0, 0, 0), (1, 1, 1, 0, 0), (2, 2, 2, 0, 0), (2, 0, 1, 2, 0)],
                                       3, "exactly")
    assert ok
    assert (dist[np.triu_indices(4, 1)] == 3).all()


def test_witness_check_edge_cases():
    ok, dist = check_witness_distances([(1, 2, 0)], 2, "exactly")
    assert ok and dist.shape == (1, 1)
    with pytest.raises(ValueError):
        check_witness_distances([(0, 1), (0, 1, 2)], 1, "atmost")
    with pytest.raises(ValueError):
        check_witness_distances([unrank(i, 2, 7) for i in range(65)], 1, "atmost")
    ok, _ = check_witness_distances([(0, 0), (1, 1)], 1, "atmost")
    assert not ok
