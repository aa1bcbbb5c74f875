"""Colorings of the q-ary n-cube: constructions, verification and file I/O."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, TextIO

import numpy as np

from .codes import LinearCode
from .cube import Mode, all_vertices, ceil_log, partner_offsets, pattern_count, rank_array, unrank
from .field import Field, field_new

VERTEX_CAP = 1 << 24
VERIFY_BUDGET = 1 << 30


class ColoringFormatError(ValueError):
    pass


@dataclass(frozen=True)
class ProblemSpec:
    field: Field
    n: int
    d: int
    mode: Mode = Mode.ATMOST

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.d < 1:
            raise ValueError("d must be at least 1")
        # distance constraints beyond the diameter add nothing
        if self.mode is Mode.ATMOST and self.d > self.n:
            object.__setattr__(self, "d", self.n)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def size(self) -> int:
        return self.field.q ** self.n

    def __str__(self):
        return f"q={self.q} n={self.n} d={self.d} mode={self.mode.value}"


def compact_labels(raw) -> np.ndarray:
    """Relabel to 0..L-1 in order of first occurrence."""
    raw = np.asarray(raw)
    _, first, inverse = np.unique(raw, return_index=True, return_inverse=True)
    order = np.argsort(first, kind="stable")
    relabel = np.empty_like(order)
    relabel[order] = np.arange(order.size)
    return relabel[inverse.reshape(-1)].astype(np.int64)


class Coloring:
    """A color label per vertex rank, with the problem it claims to solve."""

    def __init__(self, spec: ProblemSpec, labels, compact: bool = True):
        labels = np.asarray(labels, dtype=np.int64)
        if labels.shape != (spec.size,):
            raise ValueError(f"expected {spec.size} labels, got shape {labels.shape}")
        self.spec = spec
        self.colors = compact_labels(labels) if compact else labels
        self.palette_size = int(self.colors.max()) + 1 if self.colors.size else 0

    def __repr__(self):
        return f"Coloring({self.spec}, colors={self.palette_size})"

    def color_of(self, v) -> int:
        return int(self.colors[rank_array(np.asarray(v), self.spec.q)])


@dataclass(frozen=True)
class VerifyResult:
    valid: bool
    violation: Optional[tuple[int, int, int]] = None

    def __bool__(self):
        return self.valid


def _check_size(field: Field, n: int):
    if field.q ** n > VERTEX_CAP:
        raise ValueError(f"q^n = {field.q ** n} exceeds the cap {VERTEX_CAP}")


def coset_coloring(code: LinearCode, spec: ProblemSpec) -> Coloring:
    """Color each vertex by the syndrome of its coset."""
    if code.n != spec.n or code.field is not spec.field:
        raise ValueError("code and problem disagree on length or field")
    _check_size(spec.field, spec.n)
    return Coloring(spec, code.syndrome_ranks())


def coset_coloring_valid(code: LinearCode, spec: ProblemSpec) -> bool:
    """Whether the coset coloring is guaranteed valid from the code alone."""
    spectrum = code.weight_spectrum()
    if spec.mode is Mode.ATMOST:
        return code.min_distance() >= spec.d + 1
    return spec.d > code.n or spectrum[spec.d] == 0


def m_matrix(field: Field, n: int) -> np.ndarray:
    """Rows are the q-adic digits of i followed by (digit sum + 1) mod q."""
    if field.m != 1:
        raise ValueError("the M-matrix construction needs a prime field")
    if n < 2:
        raise ValueError("n must be at least 2")
    q = field.q
    width = ceil_log(q, n)
    digits = all_vertices(q, width, 0, n)
    last = (digits.sum(axis=1) + 1) % q
    return np.column_stack([digits, last])


def m_matrix_coloring(field: Field, n: int) -> Coloring:
    M = m_matrix(field, n)
    _check_size(field, n)
    products = field.matmul(all_vertices(field.q, n), M)
    return Coloring(ProblemSpec(field, n, 2, Mode.ATMOST), rank_array(products, field.q))


def exact_d1_coloring(field: Field, n: int) -> Coloring:
    # integer residue of sum(log + 1) over the nonzero coordinates
    _check_size(field, n)
    digits = all_vertices(field.q, n)
    contrib = np.where(digits == 0, 0, field.log_table[digits] + 1)
    return Coloring(ProblemSpec(field, n, 1, Mode.EXACTLY), contrib.sum(axis=1) % field.q)


def slab_coloring(field: Field, n: int) -> Coloring:
    _check_size(field, n)
    first = np.arange(field.q ** n, dtype=np.int64) // field.q ** (n - 1)
    return Coloring(ProblemSpec(field, n, n, Mode.EXACTLY), first)


def _scan(coloring: Coloring, start: int, stop: int):
    spec = coloring.spec
    colors = coloring.colors
    ranks = np.arange(start, stop, dtype=np.int64)
    mine = colors[start:stop]
    best = None
    for off in partner_offsets(spec.field, spec.n, spec.d, spec.mode, start, stop):
        partner = ranks + off
        hit = (off > 0) & (colors[partner] == mine)
        if hit.any():
            i = int(np.argmax(hit))
            pair = (int(ranks[i]), int(partner[i]))
            if best is None or pair < best:
                best = pair
    return best


def verify_coloring(coloring: Coloring, budget: int = VERIFY_BUDGET, jobs: int = 1) -> VerifyResult:
    """Check every conflicting pair; report the lexicographically least
    same-colored pair (by rank) if any."""
    spec = coloring.spec
    N = spec.size
    checks = N * pattern_count(spec.q, spec.n, spec.d, spec.mode)
    if checks > budget:
        raise ValueError(f"{checks} pair checks exceed the budget {budget}")
    if checks == 0:
        return VerifyResult(True)
    jobs = max(1, min(jobs, N))
    bounds = [N * i // jobs for i in range(jobs + 1)]
    if jobs == 1:
        found = [_scan(coloring, 0, N)]
    else:
        with ThreadPoolExecutor(jobs) as pool:
            found = list(pool.map(lambda i: _scan(coloring, bounds[i], bounds[i + 1]), range(jobs)))
    found = [f for f in found if f is not None]
    if not found:
        return VerifyResult(True)
    a, b = min(found)
    dist = sum(x != y for x, y in zip(unrank(a, spec.q, spec.n), unrank(b, spec.q, spec.n)))
    return VerifyResult(False, (a, b, dist))


def write_coloring(coloring: Coloring, out: TextIO):
    spec = coloring.spec
    f = spec.field
    out.write("qary-coloring 1\n")
    out.write(f"q={f.q} p={f.p} m={f.m} n={spec.n} d={spec.d} mode={spec.mode.value} "
              f"colors={coloring.palette_size}\n")
    out.write("\n".join(str(c) for c in coloring.colors.tolist()))
    out.write("\n")


def read_coloring(src: TextIO) -> Coloring:
    lines = src.read().split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) < 2 or lines[0].strip() != "qary-coloring 1":
        raise ColoringFormatError("missing 'qary-coloring 1' header")
    try:
        fields = dict(tok.split("=", 1) for tok in lines[1].split())
        q, p, m = int(fields["q"]), int(fields["p"]), int(fields["m"])
        n, d, L = int(fields["n"]), int(fields["d"]), int(fields["colors"])
        mode = Mode(fields["mode"])
    except (KeyError, ValueError) as exc:
        raise ColoringFormatError(f"bad parameter line: {lines[1]!r}") from exc
    if p ** m != q:
        raise ColoringFormatError(f"q={q} does not equal p^m={p ** m}")
    field = field_new(p, m)
    spec = ProblemSpec(field, n, d, mode)
    body = lines[2:]
    if len(body) != spec.size:
        raise ColoringFormatError(f"expected {spec.size} color lines, found {len(body)}")
    try:
        labels = np.array([int(x) for x in body], dtype=np.int64)
    except ValueError as exc:
        raise ColoringFormatError("non-integer color label") from exc
    if labels.size and (labels.min() < 0 or labels.max() >= L):
        raise ColoringFormatError(f"labels must lie in 0..{L - 1}")
    if np.unique(labels).size != L:
        raise ColoringFormatError(f"header says colors={L} but body uses {np.unique(labels).size}")
    return Coloring(spec, labels, compact=False)
