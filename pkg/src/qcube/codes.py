"""Linear codes over GF(q): Hamming and simplex codes, greedy parity-check
constructions, weight spectra and syndromes.

Matrices are 2-d int64 numpy arrays of element encodings; the field is
carried alongside by :class:`LinearCode`.
"""
from __future__ import annotations

from math import comb

import numpy as np

from .cube import all_vertices, ceil_log, floor_log, rank_array
from .field import Field

SPECTRUM_BUDGET = 1 << 24
GREEDY_CAP = 1 << 24


class ConstructionError(RuntimeError):
    """A greedy construction ran out of admissible columns."""


def row_reduce(field: Field, mat) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = np.array(mat, dtype=np.int64, copy=True)
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        a[[r, piv]] = a[[piv, r]]
        a[r] = field.mul_vec(a[r], field.inv(int(a[r, c])))
        for i in range(rows):
            if i != r and a[i, c]:
                f = field.neg(int(a[i, c]))
                a[i] = field.add_vec(a[i], field.mul_vec(a[r], f))
        pivots.append(c)
        r += 1
    return a[:r], pivots


def matrix_rank(field: Field, mat) -> int:
    return len(row_reduce(field, mat)[1])


def nullspace(field: Field, mat) -> np.ndarray:
    """Basis (as rows) of {x : mat @ x^T = 0}."""
    mat = np.asarray(mat, dtype=np.int64)
    n = mat.shape[1]
    red, pivots = row_reduce(field, mat)
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for j, f in enumerate(free):
        basis[j, f] = 1
        for i, pc in enumerate(pivots):
            basis[j, pc] = field.neg(int(red[i, f]))
    return basis


class LinearCode:
    """A linear [n, k] code given by a generator and/or parity-check matrix.

    Whichever matrix is missing is derived by row reduction.  The weight
    spectrum is computed lazily and cached.
    """

    def __init__(self, field: Field, generator=None, parity=None, name=""):
        if generator is None and parity is None:
            raise ValueError("need a generator or a parity-check matrix")
        self.field = field
        self.name = name
        if generator is not None:
            generator = np.asarray(generator, dtype=np.int64)
            n = generator.shape[1]
            red, _ = row_reduce(field, generator)
            if red.shape[0] != generator.shape[0]:
                raise ValueError("generator rows are linearly dependent")
        if parity is not None:
            parity = np.asarray(parity, dtype=np.int64)
            n = parity.shape[1]
        if generator is None:
            generator = nullspace(field, parity)
        if parity is None:
            parity = nullspace(field, generator)
        if generator.shape[1] != parity.shape[1]:
            raise ValueError("generator and parity lengths differ")
        self.n = n
        self.k = generator.shape[0]
        self.generator = generator
        self.parity = parity
        self.redundancy = matrix_rank(field, parity) if parity.size else 0
        if self.k + self.redundancy != n:
            raise ValueError("generator and parity-check matrices are not dual")
        if self.k and parity.size and field.matmul(generator, parity.T).any():
            raise ValueError("generator @ parity^T is nonzero")
        self._spectrum = None

    def __repr__(self):
        return f"LinearCode(q={self.field.q}, n={self.n}, k={self.k}{', ' + self.name if self.name else ''})"

    def codewords(self, start=0, stop=None) -> np.ndarray:
        q = self.field.q
        if stop is None:
            stop = q ** self.k
        if self.k == 0:
            return np.zeros((stop - start, self.n), dtype=np.int64)
        msgs = all_vertices(q, self.k, start, stop)
        return self.field.matmul(msgs, self.generator)

    def weight_spectrum(self, budget: int = SPECTRUM_BUDGET) -> np.ndarray:
        if self._spectrum is None:
            total = self.field.q ** self.k
            if total > budget:
                raise ValueError(f"enumerating {total} codewords exceeds budget {budget}")
            spec = np.zeros(self.n + 1, dtype=np.int64)
            chunk = 1 << 16
            for start in range(0, total, chunk):
                words = self.codewords(start, min(total, start + chunk))
                spec += np.bincount((words != 0).sum(axis=1), minlength=self.n + 1)
            spec.setflags(write=False)
            self._spectrum = spec
        return self._spectrum

    def min_distance(self) -> int:
        """Least nonzero codeword weight; ``n + 1`` stands in for infinity on {0}."""
        nz = np.nonzero(self.weight_spectrum()[1:])[0]
        return int(nz[0]) + 1 if nz.size else self.n + 1

    def syndrome(self, v) -> tuple[int, ...]:
        v = np.asarray(v, dtype=np.int64).reshape(1, -1)
        if v.shape[1] != self.n:
            raise ValueError(f"vector length {v.shape[1]} != n={self.n}")
        if not self.parity.size:
            return ()
        return tuple(int(x) for x in self.field.matmul(v, self.parity.T)[0])

    def syndrome_ranks(self, start=0, stop=None) -> np.ndarray:
        """Base-q encoding of the syndrome of every vertex in a rank range."""
        q = self.field.q
        if stop is None:
            stop = q ** self.n
        if not self.parity.size:
            return np.zeros(stop - start, dtype=np.int64)
        syn = self.field.matmul(all_vertices(q, self.n, start, stop), self.parity.T)
        return rank_array(syn, q)


def _projective_columns(field: Field, r: int) -> np.ndarray:
    cols = all_vertices(field.q, r)[1:]
    first_nz = cols[np.arange(len(cols)), (cols != 0).argmax(axis=1)]
    return cols[first_nz == 1].T


def hamming_code(field: Field, r: int) -> LinearCode:
    if r < 2:
        raise ValueError("Hamming codes need r >= 2")
    n = (field.q ** r - 1) // (field.q - 1)
    if n > 1 << 16:
        raise ValueError(f"length {n} exceeds the cap")
    return LinearCode(field, parity=_projective_columns(field, r), name="hamming")


def simplex_code(field: Field, r: int) -> LinearCode:
    if r < 2:
        raise ValueError("simplex codes need r >= 2")
    n = (field.q ** r - 1) // (field.q - 1)
    if n > 1 << 16:
        raise ValueError(f"length {n} exceeds the cap")
    return LinearCode(field, generator=_projective_columns(field, r), name="simplex")


def gv_redundancy(q: int, n: int, d: int) -> int:
    total = sum((q - 1) ** j * comb(n - 1, j) for j in range(d))
    return floor_log(q, total) + 1


def forbidden_redundancy(q: int, n: int, d: int) -> int:
    return ceil_log(q, 2 + comb(n - 1, d - 1) * (q - 1) ** (d - 1))


class _ColumnSums:
    """Encodings of all nonzero-coefficient combinations of exactly j chosen
    columns, for j = 0..depth, kept as sorted unique arrays."""

    def __init__(self, field: Field, t: int, depth: int):
        self.field = field
        self.t = t
        self.layers = [np.zeros(1, dtype=np.int64)] + [np.zeros(0, dtype=np.int64)] * depth
        self.place = field.q ** np.arange(t - 1, -1, -1, dtype=np.int64)

    def _digits(self, codes):
        return (codes[:, None] // self.place[None, :]) % self.field.q

    def add_column(self, col):
        f = self.field
        col = np.asarray(col, dtype=np.int64)
        multiples = f.mul_vec(np.arange(1, f.q)[:, None], col[None, :])
        for j in range(len(self.layers) - 1, 0, -1):
            prev = self.layers[j - 1]
            if prev.size == 0:
                continue
            digs = self._digits(prev)
            new = f.add_vec(digs[:, None, :], multiples[None, :, :]).reshape(-1, self.t) @ self.place
            self.layers[j] = np.union1d(self.layers[j], new)


def _greedy_parity(field: Field, n: int, t: int, depth: int, layers_used) -> np.ndarray:
    q = field.q
    if q ** t > GREEDY_CAP:
        raise ValueError(f"q^t = {q ** t} exceeds the cap {GREEDY_CAP}")
    sums = _ColumnSums(field, t, depth)
    blocked = np.zeros(q ** t, dtype=bool)
    blocked[0] = True
    cols = []
    cand = 1
    for i in range(n):
        for j in layers_used:
            blocked[sums.layers[j]] = True
        while cand < q ** t and blocked[cand]:
            cand += 1
        if cand == q ** t:
            raise ConstructionError(f"no admissible column {i + 1} of {n} with t={t}")
        col = all_vertices(q, t, cand, cand + 1)[0]
        cols.append(col)
        sums.add_column(col)
    return np.array(cols, dtype=np.int64).T


def gv_greedy(field: Field, n: int, d: int) -> LinearCode:
    """Greedy parity-check matrix in which every d columns are independent.

    Candidates are scanned in increasing base-q encoding; a candidate is
    taken when it is no combination of at most d-1 chosen columns.
    """
    if not 1 <= d < n:
        raise ValueError(f"need 1 <= d < n, got d={d}, n={n}")
    t = gv_redundancy(field.q, n, d)
    H = _greedy_parity(field, n, t, d - 1, range(d))
    return LinearCode(field, parity=H, name="gv")


def forbidden_greedy(field: Field, n: int, d: int) -> LinearCode:
    """Greedy parity-check matrix whose code has no codeword of weight d.

    A candidate is rejected when it is zero or equals a nonzero-coefficient
    combination of exactly d-1 chosen columns.
    """
    if not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got d={d}, n={n}")
    m = forbidden_redundancy(field.q, n, d)
    H = _greedy_parity(field, n, m, d - 1, [d - 1])
    return LinearCode(field, parity=H, name="forbidden")
