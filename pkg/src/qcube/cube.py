"""Vertices of the q-ary n-cube and the Hamming metric.

Vertices are tuples of element encodings.  A vertex's rank reads the tuple
as a base-q number with the first coordinate most significant.
"""
from __future__ import annotations

from enum import Enum
from itertools import combinations, product
from math import comb
from typing import Iterator, Sequence

import numpy as np

from .field import Field


class Mode(str, Enum):
    ATMOST = "atmost"
    EXACTLY = "exactly"

    def accepts(self, dist, d):
        """True where ``dist`` is a conflicting distance (works on arrays)."""
        if self is Mode.ATMOST:
            return (dist >= 1) & (dist <= d)
        return dist == d


def rank(v: Sequence[int], q: int) -> int:
    r = 0
    for x in v:
        if not 0 <= x < q:
            raise ValueError(f"coordinate {x} out of range for q={q}")
        r = r * q + x
    return r


def unrank(r: int, q: int, n: int) -> tuple[int, ...]:
    if not 0 <= r < q ** n:
        raise ValueError(f"rank {r} out of range for q={q}, n={n}")
    out = [0] * n
    for i in range(n - 1, -1, -1):
        r, out[i] = divmod(r, q)
    return tuple(out)


def hamming_distance(x: Sequence[int], y: Sequence[int]) -> int:
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    return sum(a != b for a, b in zip(x, y))


def hamming_weight(x: Sequence[int]) -> int:
    return sum(a != 0 for a in x)


def vec_sub(field: Field, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    return tuple(field.sub(a, b) for a, b in zip(x, y))


def floor_log(base: int, x: int) -> int:
    """Largest t with base**t <= x, in exact integer arithmetic."""
    if base < 2 or x < 1:
        raise ValueError(f"floor_log needs base >= 2 and x >= 1, got {base}, {x}")
    t, power = 0, base
    while power <= x:
        power *= base
        t += 1
    return t


def ceil_log(base: int, x: int) -> int:
    """Smallest t with base**t >= x."""
    if base < 2 or x < 1:
        raise ValueError(f"ceil_log needs base >= 2 and x >= 1, got {base}, {x}")
    t, power = 0, 1
    while power < x:
        power *= base
        t += 1
    return t


def sphere_size(q: int, n: int, r: int) -> int:
    """Number of vectors within Hamming distance r of a fixed vector."""
    if not 0 <= r <= n:
        raise ValueError(f"radius {r} outside 0..{n}")
    return sum(comb(n, i) * (q - 1) ** i for i in range(r + 1))


def shell_size(q: int, n: int, w: int) -> int:
    return comb(n, w) * (q - 1) ** w


def format_vertex(v: Sequence[int], q: int) -> str:
    if q <= 10:
        return "".join(str(x) for x in v)
    return ",".join(str(x) for x in v)


def parse_vertex(text: str, q: int) -> tuple[int, ...]:
    if "," in text or q > 10:
        v = tuple(int(t) for t in text.split(","))
    else:
        v = tuple(int(ch) for ch in text)
    for x in v:
        if not 0 <= x < q:
            raise ValueError(f"bad vertex {text!r} for q={q}")
    return v


def enumerate_at_distance(field: Field, center: Sequence[int], d: int,
                          mode: Mode | str) -> Iterator[tuple[int, ...]]:
    """Yield the vertices conflicting with ``center`` in increasing rank order."""
    mode = Mode(mode)
    n = len(center)
    if not 1 <= d <= n:
        raise ValueError(f"d={d} outside 1..{n}")
    q = field.q
    weights = range(1, d + 1) if mode is Mode.ATMOST else [d]
    found = []
    for w in weights:
        for support in combinations(range(n), w):
            for vals in product(range(1, q), repeat=w):
                v = list(center)
                for i, e in zip(support, vals):
                    v[i] = field.add(v[i], e)
                found.append((rank(v, q), tuple(v)))
    found.sort()
    for _, v in found:
        yield v


def all_vertices(q: int, n: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Digit array of shape (stop-start, n) for the vertices of that rank range."""
    if stop is None:
        stop = q ** n
    r = np.arange(start, stop, dtype=np.int64)
    out = np.empty((r.size, n), dtype=np.int64)
    for i in range(n - 1, -1, -1):
        r, out[:, i] = np.divmod(r, q)
    return out


def rank_array(digits: np.ndarray, q: int) -> np.ndarray:
    weights = q ** np.arange(digits.shape[-1] - 1, -1, -1, dtype=np.int64)
    return digits @ weights


def pattern_count(q: int, n: int, d: int, mode: Mode) -> int:
    if mode is Mode.ATMOST:
        return sphere_size(q, n, min(d, n)) - 1
    return shell_size(q, n, d) if d <= n else 0


def partner_offsets(field: Field, n: int, d: int, mode: Mode,
                    start: int = 0, stop: int | None = None) -> Iterator[np.ndarray]:
    """Yield, per difference vector e of a conflicting weight, the array
    ``rank(x + e) - rank(x)`` over the vertices x of the rank range.

    Partial sums are shared along the depth-first walk over coordinates, so
    each yielded array costs one vector addition.
    """
    q = field.q
    digits = all_vertices(q, n, start, stop)
    place = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    # delta[i][e]: rank change from adding e to coordinate i
    delta = [[None] + [(field.add_vec(digits[:, i], e) - digits[:, i]) * place[i]
                       for e in range(1, q)] for i in range(n)]
    lo = 1 if mode is Mode.ATMOST else d

    def walk(i, w, acc):
        if w > d:
            return
        if n - i < lo - w:
            return
        if i == n:
            if w >= lo:
                yield acc
            return
        yield from walk(i + 1, w, acc)
        if w < d:
            for e in range(1, q):
                yield from walk(i + 1, w + 1, acc + delta[i][e])

    if d < 1 or lo > n:
        return
    yield from walk(0, 0, np.zeros(digits.shape[0], dtype=np.int64))


def neighbor_table(field: Field, n: int, d: int, mode: Mode) -> np.ndarray:
    """(q^n, degree) array of conflicting partner ranks, rows sorted."""
    N = field.q ** n
    cols = [np.arange(N, dtype=np.int64) + off for off in partner_offsets(field, n, d, mode)]
    if not cols:
        return np.zeros((N, 0), dtype=np.int64)
    table = np.stack(cols, axis=1)
    table.sort(axis=1)
    return table
