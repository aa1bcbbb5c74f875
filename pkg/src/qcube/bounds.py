"""Closed-form lower and upper bounds on the two chromatic numbers, with
explicit clique witnesses for the lower bounds.

Each bound carries a short source label naming the result it comes from;
the labels are part of the CLI output format.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations, product
from math import comb
from typing import Optional

from .coloring import ProblemSpec
from .cube import Mode, ceil_log, floor_log, hamming_distance, sphere_size

__all__ = [
    "BoundEntry", "BoundsReport", "bounds_report", "ceil_log", "floor_log",
    "lower_chain", "lower_exact_repeat", "lower_partition", "lower_sphere",
    "lower_star", "upper_forbidden", "upper_gv", "upper_m_matrix",
]

LOWER = "LOWER"
UPPER = "UPPER"


@dataclass
class BoundEntry:
    value: int
    direction: str
    source: str
    witness: Optional[list] = None


@dataclass
class BoundsReport:
    spec: ProblemSpec
    entries: list = dc_field(default_factory=list)

    def lowers(self):
        return [e for e in self.entries if e.direction == LOWER]

    def uppers(self):
        return [e for e in self.entries if e.direction == UPPER]

    def best_lower(self) -> Optional[BoundEntry]:
        # first entry wins ties so the reported source is stable
        best = None
        for e in self.lowers():
            if best is None or e.value > best.value:
                best = e
        return best

    def best_upper(self) -> Optional[BoundEntry]:
        best = None
        for e in self.uppers():
            if best is None or e.value < best.value:
                best = e
        return best

    def consistent(self) -> bool:
        lo, hi = self.best_lower(), self.best_upper()
        return lo is None or hi is None or lo.value <= hi.value

    def add(self, value, direction, source, witness=None):
        self.entries.append(BoundEntry(int(value), direction, source, witness))


def _require(spec, mode, d=None):
    if spec.mode is not mode:
        raise ValueError(f"bound needs mode {mode.value}, got {spec.mode.value}")
    if d is not None and spec.d != d:
        raise ValueError(f"bound needs d={d}, got d={spec.d}")


def witness_ok(witness, d, mode: Mode) -> bool:
    for x, y in combinations(witness, 2):
        dist = hamming_distance(x, y)
        if not mode.accepts(dist, d):
            return False
    return len(set(witness)) == len(witness)


def _ball(q, center, radius, free_from=0):
    """Vertices within ``radius`` of center, varying only coordinates
    >= free_from (which must be zero in center)."""
    out = []
    for w in range(radius + 1):
        for support in combinations(range(free_from, len(center)), w):
            for vals in product(range(1, q), repeat=w):
                v = list(center)
                for i, e in zip(support, vals):
                    v[i] = e
                out.append(tuple(v))
    return out


def lower_sphere(spec: ProblemSpec, witness: bool = True):
    """Balls that must be colored injectively: radius d/2 around the origin
    (even d), or radius (d-1)/2 in the last n-1 coordinates around every
    (a, 0, ..., 0) (odd d)."""
    _require(spec, Mode.ATMOST)
    q, n, d = spec.q, spec.n, spec.d
    if d % 2 == 0:
        value = sphere_size(q, n, d // 2)
        wit = _ball(q, (0,) * n, d // 2) if witness else None
    else:
        value = q * sphere_size(q, n - 1, (d - 1) // 2)
        wit = None
        if witness:
            wit = []
            for a in range(q):
                wit += _ball(q, (a,) + (0,) * (n - 1), (d - 1) // 2, free_from=1)
    return value, wit


def lower_star(spec: ProblemSpec, witness: bool = True):
    _require(spec, Mode.ATMOST, 2)
    q, n = spec.q, spec.n
    wit = None
    if witness:
        wit = [(0,) * n]
        for i in range(n):
            for a in range(1, q):
                v = [0] * n
                v[i] = a
                wit.append(tuple(v))
    return (q - 1) * n + 1, wit


def lower_exact_repeat(spec: ProblemSpec, witness: bool = True):
    _require(spec, Mode.EXACTLY)
    q, n, d = spec.q, spec.n, spec.d
    if d > n:
        raise ValueError(f"d={d} exceeds n={n}")
    wit = [(a,) * d + (0,) * (n - d) for a in range(q)] if witness else None
    return q, wit


def lower_chain(spec: ProblemSpec, witness: bool = True):
    _require(spec, Mode.EXACTLY)
    q, n, d = spec.q, spec.n, spec.d
    if d % 2:
        raise ValueError("the chain bound needs even d")
    if d > n:
        raise ValueError(f"d={d} exceeds n={n}")
    half = d // 2
    count = 2 * n // d
    if q >= count:
        return lower_exact_repeat(spec, witness)
    wit = None
    if witness:
        wit = []
        for j in range(count):
            v = [0] * n
            v[j * half:(j + 1) * half] = [1] * half
            wit.append(tuple(v))
    return count, wit


def upper_gv(spec: ProblemSpec) -> int:
    _require(spec, Mode.ATMOST)
    q, n, d = spec.q, spec.n, spec.d
    total = sum((q - 1) ** j * comb(n - 1, j) for j in range(d))
    return q ** (floor_log(q, total) + 1)


def upper_m_matrix(spec: ProblemSpec) -> int:
    _require(spec, Mode.ATMOST, 2)
    if spec.field.m != 1:
        raise ValueError("needs a prime field")
    return spec.q ** (ceil_log(spec.q, spec.n) + 1)


def upper_forbidden(spec: ProblemSpec) -> int:
    _require(spec, Mode.EXACTLY)
    q, n, d = spec.q, spec.n, spec.d
    if d > n:
        raise ValueError(f"d={d} exceeds n={n}")
    return q ** ceil_log(q, 2 + comb(n - 1, d - 1) * (q - 1) ** (d - 1))


def lower_partition(spec: ProblemSpec, a_value: int) -> int:
    """Ceiling of q^n over the largest code with minimum distance d+1."""
    _require(spec, Mode.ATMOST)
    if a_value <= 0:
        raise ValueError("code size must be positive")
    return -(-spec.size // a_value)


def _projective_length(q, n):
    """r >= 2 with n = (q^r - 1)/(q - 1), or None."""
    r, length = 1, 1
    while length < n:
        length = length * q + 1
        r += 1
    return r if length == n and r >= 2 else None


def bounds_report(spec: ProblemSpec, witness: bool = False, exact: bool = False,
                  a_value: Optional[int] = None, max_nodes: Optional[int] = None) -> BoundsReport:
    """Collect every bound whose hypotheses match ``spec``."""
    rep = BoundsReport(spec)
    q, n, d = spec.q, spec.n, spec.d

    if spec.mode is Mode.ATMOST:
        v, w = lower_sphere(spec, witness)
        rep.add(v, LOWER, "Thm2.1", w)
        if d == 2:
            v, w = lower_star(spec, witness)
            rep.add(v, LOWER, "Thm2.3", w)
        rep.add(upper_gv(spec), UPPER, "Thm2.2")
        if d == 2 and spec.field.m == 1 and n >= 2:
            rep.add(upper_m_matrix(spec), UPPER, "Thm2.3")
        r = _projective_length(q, n)
        if r is not None:
            if d == 2:
                rep.add(q ** r, UPPER, "Eq(5)")
            if d == q ** (r - 1) - 1:
                rep.add(q ** (n - r), LOWER, "Eq(6)")
                rep.add(q ** (n - r), UPPER, "Eq(6)")
        if d == n:
            rep.add(q ** n, LOWER, "Diam")
            rep.add(q ** n, UPPER, "Diam")
        if a_value is not None:
            rep.add(lower_partition(spec, a_value), LOWER, "Eq(1)")
    else:
        if d > n:
            rep.add(1, LOWER, "Diam")
            rep.add(1, UPPER, "Diam")
            return rep
        v, w = lower_exact_repeat(spec, witness)
        rep.add(v, LOWER, "Thm3.1", w)
        if d % 2 == 0:
            v, w = lower_chain(spec, witness)
            rep.add(v, LOWER, "Thm3.2", w)
        if d == 1 or d == n:
            rep.add(q, UPPER, "Thm3.1")
        rep.add(upper_forbidden(spec), UPPER, "Thm3.4")

    if exact:
        _add_exact(rep, max_nodes, witness)
    for e in rep.entries:
        if e.witness is not None and not witness_ok(e.witness, d, spec.mode):
            raise AssertionError(f"invalid witness for {e.source}")
    return rep


def _add_exact(rep: BoundsReport, max_nodes, witness):
    from . import exact as ex

    spec = rep.spec
    if spec.size > ex.CLIQUE_CAP:
        return
    budget = ex.SearchBudget() if max_nodes is None else ex.SearchBudget(max_nodes)
    res = ex.max_clique(spec, budget)
    rep.add(res.lower, LOWER, "Clique", res.witness if witness else None)
    if spec.mode is Mode.ATMOST:
        # an upper bound on the code size still gives a valid lower bound here
        code = ex.max_code_size(spec.field, spec.n, spec.d + 1, budget)
        rep.add(lower_partition(spec, code.upper), LOWER, "Eq(1)")
