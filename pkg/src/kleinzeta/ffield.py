"""Exact arithmetic in F_p and F_{p^k}.

Elements of F_{p^k} are residue polynomials modulo a fixed monic irreducible
modulus, stored little-endian in the root.  Every field also has an integer
index encoding (sum of c_i * p^i), which the counting kernels use to drive
numpy lookup tables; the scalar FieldElement API and the table API agree by
construction and are cross-checked in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_Q = 1 << 40          # hard bound on p^k accepted by build_field
TABLE_MAX_Q = 1 << 11    # full q x q add/mul tables only below this
CHI_TABLE_MAX_Q = 1 << 20


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# dense little-endian polynomial arithmetic over F_p (used only at build time
# and for scalar FieldElement operations; the hot loops use tables)

def _poly_trim(a):
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return a[:i]


def _poly_mulmod(a, b, modulus, p):
    k = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # reduce by the monic modulus
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for j in range(k):
                prod[d - k + j] = (prod[d - k + j] - c * modulus[j]) % p
    return _poly_trim(prod)


def _poly_powmod(base, e, modulus, p):
    result = [1]
    cur = list(base)
    while e > 0:
        if e & 1:
            result = _poly_mulmod(result, cur, modulus, p)
        cur = _poly_mulmod(cur, cur, modulus, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = list(_poly_trim(a)), list(_poly_trim(b))
    while b:
        # a mod b, with b made monic on the fly
        inv_lead = pow(b[-1], p - 2, p)
        bb = [(c * inv_lead) % p for c in b]
        r = list(a)
        for d in range(len(r) - 1, len(bb) - 2, -1):
            c = r[d]
            if c:
                r[d] = 0
                for j in range(len(bb) - 1):
                    r[d - (len(bb) - 1) + j] = (r[d - (len(bb) - 1) + j] - c * bb[j]) % p
        a, b = b, _poly_trim(r)
    return a


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _poly_trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(modulus, p: int) -> bool:
    """Rabin test: x^(p^k) == x mod f and gcd(x^(p^(k/l)) - x, f) = 1."""
    k = len(modulus) - 1
    if k < 1 or modulus[-1] != 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    xq = _poly_powmod(x, p ** k, modulus, p)
    if _poly_sub(xq, x, p):
        return False
    for ell in prime_factors(k):
        xe = _poly_powmod(x, p ** (k // ell), modulus, p)
        g = _poly_gcd(_poly_sub(xe, x, p), modulus, p)
        if len(g) != 1:
            return False
    return True


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldDescriptor:
    """Immutable description of F_{p^k} with a verified irreducible modulus."""
    p: int
    k: int
    modulus: tuple  # monic, little-endian, length k+1

    @property
    def q(self) -> int:
        return self.p ** self.k

    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.k)

    def one(self) -> "FieldElement":
        return FieldElement(self, (1,) + (0,) * (self.k - 1))

    def element(self, coeffs) -> "FieldElement":
        coeffs = tuple(int(c) % self.p for c in coeffs)
        if len(coeffs) != self.k:
            coeffs = tuple((list(coeffs) + [0] * self.k)[: self.k])
        return FieldElement(self, coeffs)

    def from_index(self, idx: int) -> "FieldElement":
        if not 0 <= idx < self.q:
            raise ValueError(f"index {idx} out of range for q={self.q}")
        coeffs = []
        for _ in range(self.k):
            idx, c = divmod(idx, self.p)
            coeffs.append(c)
        return FieldElement(self, tuple(coeffs))

    def elements(self):
        for idx in range(self.q):
            yield self.from_index(idx)

    def __repr__(self):
        return f"F_{self.p}^{self.k}"


def build_field(p: int, k: int = 1) -> FieldDescriptor:
    """Deterministic field constructor.

    The modulus is the first irreducible monic polynomial in ascending
    lexicographic order of the non-leading coefficient tuple
    (c_0, ..., c_{k-1}), c_0 most significant.  Counts are modulus
    independent, but a pinned modulus keeps caches reproducible.
    """
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if p ** k >= MAX_Q:
        raise ValueError(f"field size {p}^{k} exceeds the supported bound 2^40")
    if k == 1:
        return FieldDescriptor(p, 1, (0, 1))
    for idx in range(p ** k):
        digits = []
        rest = idx
        for _ in range(k):
            digits.append(rest % p)
            rest //= p
        coeffs = tuple(reversed(digits))  # c0 most significant in the search order
        modulus = coeffs + (1,)
        if is_irreducible(modulus, p):
            return FieldDescriptor(p, k, modulus)
    raise RuntimeError("no irreducible modulus found")  # unreachable


@dataclass(frozen=True)
class FieldElement:
    field: FieldDescriptor
    coeffs: tuple

    def _check(self, other: "FieldElement"):
        if self.field != other.field:
            raise ValueError("operands belong to different fields")

    def __add__(self, other):
        self._check(other)
        p = self.field.p
        return FieldElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        p = self.field.p
        return FieldElement(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        F = self.field
        prod = _poly_mulmod(list(self.coeffs), list(other.coeffs), list(F.modulus), F.p)
        return F.element(prod)

    def __pow__(self, e: int):
        F = self.field
        if e < 0:
            return self.inverse() ** (-e)
        out = _poly_powmod(list(self.coeffs), e, list(F.modulus), F.p)
        return F.element(out)

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inversion of zero field element")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        return self * other.inverse()

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def index(self) -> int:
        idx = 0
        for c in reversed(self.coeffs):
            idx = idx * self.field.p + c
        return idx

    def __repr__(self):
        return f"{list(self.coeffs)} in {self.field}"


def field_arith(a: FieldElement, b, op: str, e: int | None = None) -> FieldElement:
    """Dispatcher form of the element operations: add/sub/mul/inv/pow."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "pow":
        if e is None:
            raise ValueError("pow requires an exponent")
        return a ** e
    raise ValueError(f"unknown op {op!r}")


def quadratic_character(a: FieldElement, F: FieldDescriptor | None = None) -> int:
    """0 for a = 0, +1 for a nonzero square, -1 otherwise.  Odd q only."""
    F = F or a.field
    if F.p == 2:
        raise ValueError("quadratic character undefined in characteristic 2")
    if a.is_zero():
        return 0
    if F.q <= CHI_TABLE_MAX_Q:
        return int(chi_table(F)[a.index])
    r = a ** ((F.q - 1) // 2)
    return 1 if r == F.one() else -1


@lru_cache(maxsize=32)
def _chi_table_cached(p: int, k: int, modulus: tuple) -> np.ndarray:
    F = FieldDescriptor(p, k, modulus)
    if F.q <= TABLE_MAX_Q:
        return field_tables(F).chi
    # generator walk: chi(g^e) = (-1)^e
    g = _find_generator(F)
    chi = np.zeros(F.q, dtype=np.int8)
    cur = F.one()
    for e in range(F.q - 1):
        chi[cur.index] = 1 if e % 2 == 0 else -1
        cur = cur * g
    chi.setflags(write=False)
    return chi


def chi_table(F: FieldDescriptor) -> np.ndarray:
    """Full quadratic-character lookup (int8), for q up to 2^20."""
    if F.p == 2:
        raise ValueError("quadratic character undefined in characteristic 2")
    if F.q > CHI_TABLE_MAX_Q:
        raise ValueError("field too large for a full character table")
    return _chi_table_cached(F.p, F.k, F.modulus)


# ---------------------------------------------------------------------------
# numpy lookup tables, keyed by element index


class FieldTables:
    """Read-only index tables for one field: built once, shared freely."""

    def __init__(self, F: FieldDescriptor):
        q, p, k = F.q, F.p, F.k
        if q > TABLE_MAX_Q:
            raise ValueError(f"q = {q} too large for full arithmetic tables")
        self.field = F
        self.q = q

        # addition: digit-wise mod p on the base-p index encoding
        idx = np.arange(q, dtype=np.int64)
        digits = np.empty((q, k), dtype=np.int64)
        rest = idx.copy()
        for i in range(k):
            digits[:, i] = rest % p
            rest //= p
        dsum = (digits[:, None, :] + digits[None, :, :]) % p
        weights = p ** np.arange(k, dtype=np.int64)
        self.add = (dsum * weights).sum(axis=2).astype(np.int32)
        self.neg = (((-digits) % p) * weights).sum(axis=1).astype(np.int32)

        # multiplication through a discrete-log/exp pair
        g = _find_generator(F)
        exp = np.empty(q - 1, dtype=np.int64)
        cur = F.one()
        for e in range(q - 1):
            exp[e] = cur.index
            cur = cur * g
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        self.exp, self.log = exp, log
        mul = np.zeros((q, q), dtype=np.int64)
        nz = exp  # indices of nonzero elements
        esum = (log[nz][:, None] + log[nz][None, :]) % (q - 1)
        mul[np.ix_(nz, nz)] = exp[esum]
        self.mul = mul.astype(np.int32)

        self.sq = self.mul[idx, idx].copy()
        self.pow4 = self.mul[self.sq, self.sq].copy()

        if p != 2:
            chi = np.where(log % 2 == 0, 1, -1).astype(np.int8)
            chi[0] = 0
            self.chi = chi
            # fused chi(add(a, b)) used by the counting kernel
            self.chi_add = chi[self.add]
        else:
            self.chi = None
            self.chi_add = None

        for arr in (self.add, self.neg, self.mul, self.sq, self.pow4,
                    self.exp, self.log):
            arr.setflags(write=False)
        if self.chi is not None:
            self.chi.setflags(write=False)
            self.chi_add.setflags(write=False)

    def scalar(self, n: int) -> int:
        """Index of the image of the rational integer n in the field."""
        return (n % self.field.p)

    def index_mul(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def index_add(self, a: int, b: int) -> int:
        return int(self.add[a, b])


def _find_generator(F: FieldDescriptor) -> FieldElement:
    q = F.q
    fac = prime_factors(q - 1)
    for idx in range(1, q):
        g = F.from_index(idx)
        if g.is_zero():
            continue
        if all((g ** ((q - 1) // ell)) != F.one() for ell in fac):
            return g
    raise RuntimeError("no generator found")  # unreachable for a true field


@lru_cache(maxsize=64)
def _tables_cached(p: int, k: int, modulus: tuple) -> FieldTables:
    return FieldTables(FieldDescriptor(p, k, modulus))


def field_tables(F: FieldDescriptor) -> FieldTables:
    return _tables_cached(F.p, F.k, F.modulus)
