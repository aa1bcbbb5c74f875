"""Finite fields GF(p^m) with a canonical integer encoding.

An element is stored as the base-p integer of its polynomial coefficient
vector, constant term least significant.  Multiplication goes through
log/exp tables built from the smallest primitive element.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

MAX_ORDER = 1 << 16


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Factor ``q = p**m``; raise ValueError if q is not a prime power."""
    if q < 2:
        raise ValueError(f"q={q} is not a prime power")
    p = 2
    while q % p:
        p += 1
    m = 0
    rest = q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise ValueError(f"q={q} is not a prime power")
    return p, m


def prime_factors(x: int) -> list[int]:
    out = []
    f = 2
    while f * f <= x:
        if x % f == 0:
            out.append(f)
            while x % f == 0:
                x //= f
        f += 1
    if x > 1:
        out.append(x)
    return out


# Polynomials over GF(p) are coefficient lists, constant term first.

def _poly_from_int(code, p, length):
    out = []
    for _ in range(length):
        out.append(code % p)
        code //= p
    return out


def _poly_to_int(coeffs, p):
    code = 0
    for c in reversed(coeffs):
        code = code * p + c
    return code


def _poly_mod(a, b, p):
    """Remainder of a modulo the monic polynomial b."""
    a = list(a)
    db = len(b) - 1
    while len(a) - 1 >= db:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - db
            for i, c in enumerate(b):
                a[shift + i] = (a[shift + i] - lead * c) % p
        a.pop()
    return a


def _is_irreducible(poly, p):
    m = len(poly) - 1
    for deg in range(1, m // 2 + 1):
        for low in range(p ** deg):
            divisor = _poly_from_int(low, p, deg) + [1]
            if not any(_poly_mod(poly, divisor, p)):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> list[int]:
    """Lexicographically smallest monic irreducible polynomial of degree m."""
    for low in range(p ** m):
        poly = _poly_from_int(low, p, m) + [1]
        if m == 1 or _is_irreducible(poly, p):
            return poly
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class Field:
    """GF(p^m) under the canonical base-p encoding.

    Instances are immutable and shared; build them with :func:`field_new`
    or :func:`field_from_q`.
    """

    def __init__(self, p: int, m: int):
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if m < 1:
            raise ValueError("m must be at least 1")
        q = p ** m
        if q > MAX_ORDER:
            raise ValueError(f"q={q} exceeds the cap {MAX_ORDER}")
        self.p = p
        self.m = m
        self.q = q
        if m == 1:
            self.modulus = [0, 1]
        else:
            self.modulus = smallest_irreducible(p, m)
        self.alpha = self._find_primitive()
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, self.alpha)
        exp.setflags(write=False)
        log.setflags(write=False)
        self.exp_table = exp
        self.log_table = log
        self._pow = p ** np.arange(m, dtype=np.int64)

    def __repr__(self):
        return f"Field(p={self.p}, m={self.m})"

    def __reduce__(self):
        return (field_new, (self.p, self.m))

    # Table-free arithmetic, used only while bootstrapping the tables.
    def _slow_mul(self, a, b):
        if self.m == 1:
            return a * b % self.p
        pa = _poly_from_int(a, self.p, self.m)
        pb = _poly_from_int(b, self.p, self.m)
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(pa):
            if x:
                for j, y in enumerate(pb):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        return _poly_to_int(_poly_mod(prod, self.modulus, self.p), self.p)

    def _slow_pow(self, a, e):
        result = 1
        while e:
            if e & 1:
                result = self._slow_mul(result, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return result

    def _find_primitive(self):
        order = self.q - 1
        if order == 1:
            return 1
        factors = prime_factors(order)
        for a in range(2, self.q):
            if all(self._slow_pow(a, order // r) != 1 for r in factors):
                return a
        raise AssertionError("no primitive element")  # pragma: no cover

    def _check(self, *elems):
        for a in elems:
            if not 0 <= a < self.q:
                raise ValueError(f"{a} is not an element of GF({self.q})")

    def add(self, a: int, b: int) -> int:
        self._check(a, b)
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        out, place = 0, 1
        for _ in range(self.m):
            out += ((a % self.p + b % self.p) % self.p) * place
            a //= self.p
            b //= self.p
            place *= self.p
        return out

    def neg(self, a: int) -> int:
        self._check(a)
        if self.m == 1:
            return -a % self.p
        if self.p == 2:
            return a
        out, place = 0, 1
        for _ in range(self.m):
            out += (-(a % self.p) % self.p) * place
            a //= self.p
            place *= self.p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        self._check(a, b)
        if a == 0 or b == 0:
            return 0
        return int(self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self.exp_table[(self.q - 1 - self.log_table[a]) % (self.q - 1)])

    def log(self, a: int) -> int:
        """Discrete logarithm to base alpha."""
        self._check(a)
        if a == 0:
            raise ValueError("log of 0 is undefined")
        return int(self.log_table[a])

    def exp(self, i: int) -> int:
        return int(self.exp_table[i % (self.q - 1)])

    # Elementwise numpy versions of the above.
    def add_vec(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for place in self._pow:
            out += (((a // place) % self.p + (b // place) % self.p) % self.p) * place
        return out

    def neg_vec(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2:
            return a.copy()
        out = np.zeros_like(a)
        for place in self._pow:
            out += ((-((a // place) % self.p)) % self.p) * place
        return out

    def mul_vec(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a * b) % self.p
        a, b = np.broadcast_arrays(a, b)
        zero = (a == 0) | (b == 0)
        idx = (self.log_table[np.where(zero, 1, a)] + self.log_table[np.where(zero, 1, b)]) % (self.q - 1)
        return np.where(zero, 0, self.exp_table[idx])

    def matmul(self, a, b):
        """Matrix product over the field for 2-d integer arrays."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if a.shape[1] != b.shape[0]:
            raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        if self.m == 1:
            # each sum is below inner * p^2 <= inner * 2^32, far from int64 overflow at desk sizes
            return (a @ b) % self.p
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for j in range(a.shape[1]):
            out = self.add_vec(out, self.mul_vec(a[:, j, None], b[None, j, :]))
        return out


@lru_cache(maxsize=None)
def field_new(p: int, m: int = 1) -> Field:
    return Field(p, m)


def field_from_q(q: int) -> Field:
    p, m = prime_power(q)
    return field_new(p, m)
