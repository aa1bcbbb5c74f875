import itertools

import numpy as np
import pytest

from qcube.codes import (ConstructionError, LinearCode, forbidden_greedy, forbidden_redundancy,
                         gv_greedy, gv_redundancy, hamming_code, matrix_rank, nullspace,
                         simplex_code)
from qcube.cube import sphere_size
from qcube.field import field_from_q


def kernel_spectrum(field, H):
    """Oracle: weight histogram of {v : H v = 0} by scanning all of GF(q)^n."""
    H = np.asarray(H)
    n = H.shape[1]
    spec = [0] * (n + 1)
    for v in itertools.product(range(field.q), repeat=n):
        ok = True
        for row in H:
            acc = 0
            for h, x in zip(row, v):
                acc = field.add(acc, field.mul(int(h), x))
            if acc:
                ok = False
                break
        if ok:
            spec[sum(x != 0 for x in v)] += 1
    return spec


def dependent_subset_exists(field, H, size):
    """Oracle: some `size` columns of H admit a nonzero-coefficient zero combination."""
    H = np.asarray(H)
    t, n = H.shape
    for cols in itertools.combinations(range(n), size):
        for coeffs in itertools.product(range(1, field.q), repeat=size):
            acc = [0] * t
            for c, a in zip(cols, coeffs):
                for i in range(t):
                    acc[i] = field.add(acc[i], field.mul(a, int(H[i, c])))
            if not any(acc):
                return True
    return False


def test_hamming_7_4_3():
    code = hamming_code(field_from_q(2), 3)
    assert (code.n, code.k) == (7, 4)
    assert code.weight_spectrum().tolist() == [1, 0, 0, 7, 7, 0, 0, 1]
    assert code.min_distance() == 3
    assert kernel_spectrum(code.field, code.parity) == [1, 0, 0, 7, 7, 0, 0, 1]


def test_hamming_ternary_columns():
    code = hamming_code(field_from_q(3), 2)
    assert code.parity.T.tolist() == [[0, 1], [1, 0], [1, 1], [1, 2]]
    assert (code.n, code.k, code.min_distance()) == (4, 2, 3)


@pytest.mark.parametrize("q,r", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2), (5, 2), (7, 2), (8, 2)])
def test_hamming_parameters_and_perfect(q, r):
    f = field_from_q(q)
    code = hamming_code(f, r)
    n = (q ** r - 1) // (q - 1)
    assert code.parity.shape == (r, n)
    assert code.k == n - r
    assert code.min_distance() == 3
    assert sphere_size(q, n, 1) * q ** code.k == q ** n
    assert not f.matmul(code.generator, code.parity.T).any()


@pytest.mark.parametrize("q,r", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2), (5, 2)])
def test_simplex_constant_weight(q, r):
    f = field_from_q(q)
    code = simplex_code(f, r)
    spec = code.weight_spectrum()
    assert code.k == r
    assert spec[0] == 1 and spec[q ** (r - 1)] == q ** r - 1
    assert spec.sum() == q ** r
    assert code.min_distance() == q ** (r - 1)
    assert (code.generator == hamming_code(f, r).parity).all()


def test_simplex_small_oracles():
    s2 = simplex_code(field_from_q(2), 3)
    assert kernel_spectrum(s2.field, s2.parity) == [1, 0, 0, 0, 7, 0, 0, 0]
    s3 = simplex_code(field_from_q(3), 2)
    assert kernel_spectrum(s3.field, s3.parity) == [1, 0, 0, 8, 0]


def test_small_r_rejected():
    with pytest.raises(ValueError):
        hamming_code(field_from_q(2), 1)
    with pytest.raises(ValueError):
        simplex_code(field_from_q(2), 1)


def test_trivial_code_spectrum():
    f = field_from_q(3)
    code = LinearCode(f, parity=np.eye(4, dtype=int))
    assert code.k == 0
    assert code.weight_spectrum().tolist() == [1, 0, 0, 0, 0]


def test_gv_10_3():
    f = field_from_q(2)
    assert gv_redundancy(2, 10, 3) == 6
    code = gv_greedy(f, 10, 3)
    assert code.parity.shape == (6, 10)
    # the greedy never reaches a candidate with the top bit set, so H has
    # rank 5 and the code is [10, 5, 4]: at least the promised n - t = 4
    assert not code.parity[0].any()
    assert code.k == 5 and code.k >= 10 - 6
    assert code.min_distance() == 4


def test_gv_d1():
    code = gv_greedy(field_from_q(2), 4, 1)
    assert code.parity.shape == (1, 4)
    assert code.k == 3 and code.min_distance() >= 2


@pytest.mark.parametrize("q", [2, 3])
def test_gv_distance_sweep(q):
    f = field_from_q(q)
    for n in range(2, 9 if q == 2 else 7):
        for d in range(1, n):
            code = gv_greedy(f, n, d)
            assert code.parity.shape == (gv_redundancy(q, n, d), n)
            assert code.k >= n - gv_redundancy(q, n, d)
            assert code.min_distance() >= d + 1
            if q ** n <= 729:
                assert kernel_spectrum(f, code.parity) == code.weight_spectrum().tolist()


@pytest.mark.parametrize("q,n,d", [(2, 7, 3), (2, 8, 2), (3, 5, 2), (3, 4, 3), (4, 4, 2)])
def test_gv_any_d_columns_independent(q, n, d):
    f = field_from_q(q)
    H = gv_greedy(f, n, d).parity
    for size in range(1, d + 1):
        assert not dependent_subset_exists(f, H, size)


def test_forbidden_examples():
    f2 = field_from_q(2)
    assert forbidden_redundancy(2, 5, 2) == 3
    code = forbidden_greedy(f2, 5, 2)
    assert code.parity.shape[0] == 3
    assert code.weight_spectrum()[2] == 0
    assert code.field.q ** code.redundancy <= 8
    f3 = field_from_q(3)
    assert forbidden_redundancy(3, 4, 1) == 1
    c3 = forbidden_greedy(f3, 4, 1)
    assert c3.weight_spectrum()[1] == 0


@pytest.mark.parametrize("q", [2, 3])
def test_forbidden_sweep(q):
    f = field_from_q(q)
    for n in range(1, 9 if q == 2 else 7):
        for d in range(1, n + 1):
            code = forbidden_greedy(f, n, d)
            assert code.weight_spectrum()[d] == 0
            assert code.k >= n - forbidden_redundancy(q, n, d)
            if q ** n <= 243:
                assert kernel_spectrum(f, code.parity)[d] == 0


def test_greedy_is_deterministic():
    f = field_from_q(3)
    assert (gv_greedy(f, 6, 2).parity == gv_greedy(f, 6, 2).parity).all()
    assert (forbidden_greedy(f, 6, 3).parity == forbidden_greedy(f, 6, 3).parity).all()


def test_greedy_bad_args():
    f = field_from_q(2)
    with pytest.raises(ValueError):
        gv_greedy(f, 4, 4)
    with pytest.raises(ValueError):
        forbidden_greedy(f, 4, 5)


def test_construction_failure_is_reported(monkeypatch):
    import qcube.codes as codes
    monkeypatch.setattr(codes, "gv_redundancy", lambda q, n, d: 2)
    with pytest.raises(ConstructionError):
        codes.gv_greedy(field_from_q(2), 6, 2)


def test_syndromes():
    code = hamming_code(field_from_q(2), 3)
    assert code.syndrome([0] * 7) == (0, 0, 0)
    for c in code.codewords():
        assert code.syndrome(c) == (0, 0, 0)
    syn = code.syndrome_ranks()
    assert np.bincount(syn).tolist() == [16] * 8


def test_syndrome_classes_are_cosets():
    f = field_from_q(2)
    code = hamming_code(f, 3)
    words = {tuple(c) for c in code.codewords().tolist()}
    syn = code.syndrome_ranks()
    space = list(itertools.product(range(2), repeat=7))
    for a in range(0, 128, 5):
        for b in range(128):
            diff = tuple(x ^ y for x, y in zip(space[a], space[b]))
            assert (syn[a] == syn[b]) == (diff in words)


def test_linear_algebra_helpers():
    f = field_from_q(3)
    M = np.array([[1, 2, 0, 1], [2, 1, 0, 2]])
    assert matrix_rank(f, M) == 1
    N = nullspace(f, M)
    assert N.shape == (3, 4)
    assert not f.matmul(M, N.T).any()
    with pytest.raises(ValueError):
        LinearCode(f, generator=M)
