"""Exact arithmetic in F_p <= F_q <= F_{q^h}, with q = p^e.

The big field is a single extension F_p[X]/(m) of degree n = e*h. An element
is stored as the integer sum(c_i * p**i) of its coefficient vector in the
power basis of X, so 0 and 1 encode the zero and one of the field, and the
prime subfield is exactly {0, ..., p-1}.

Multiplication goes through exp/log tables over a fixed primitive element,
addition through Zech logarithms (XOR when p == 2). Subfields are never
modelled separately; F_{q^d} is the fixed-point set of x -> x^(q^d).
"""

from __future__ import annotations

import json
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class FieldError(ValueError):
    pass


class NonPrimeP(FieldError):
    pass


class NoIrreducibleFound(FieldError):
    pass


class InvalidDegree(FieldError):
    pass


# Dense N x N tables are only built up to this order.
TABLE_LIMIT = 4096


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def split_prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q == p**e, or raise NonPrimeP."""
    if q < 2:
        raise NonPrimeP(f"{q} is not a prime power")
    p = prime_factors(q)[0]
    e = 0
    r = q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise NonPrimeP(f"{q} is not a prime power")
    return p, e


# -- polynomials over F_p as coefficient lists, lowest degree first ----------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _pmulmod(a: list[int], b: list[int], m: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pmod(out, m, p)


def _ppowmod(a: list[int], k: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(list(a), m, p)
    while k:
        if k & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        k >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Rabin's test for a polynomial over F_p (coefficients lowest first)."""
    m = _trim([c % p for c in modulus])
    n = len(m) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if _ppowmod(x, p ** n, m, p) != _pmod(x, m, p):
        return False
    for r in prime_factors(n):
        t = _ppowmod(x, p ** (n // r), m, p)
        diff = _trim([(a - b) % p for a, b in
                      zip(t + [0] * (2 - len(t)), x + [0] * (len(t) - 2))])
        if len(_pgcd(m, diff, p)) != 1:
            return False
    return True


def find_irreducible(p: int, n: int, seed: int = 0) -> tuple[int, ...]:
    """First monic irreducible of degree n in lexicographic order.

    The lower coefficients are ordered by sum(c_i * p**i); ``seed`` rotates
    the starting index of the search.
    """
    total = p ** n
    start = seed % total
    for step in range(total):
        idx = (start + step) % total
        coeffs = [(idx // p ** i) % p for i in range(n)] + [1]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise NoIrreducibleFound(f"no irreducible of degree {n} over F_{p}")


class GF:
    """The field F_{q^h}, q = p^e, as F_p[X]/(modulus).

    Elements are ints in range(order). The field is immutable once built.
    """

    def __init__(self, p: int, e: int, h: int, modulus: Sequence[int] | None = None,
                 seed: int | None = None):
        if not is_prime(p):
            raise NonPrimeP(f"p={p} is not prime")
        if e < 1 or h < 1:
            raise FieldError("e and h must be positive")
        self.p = p
        self.e = e
        self.h = h
        self.n = e * h
        self.q = p ** e
        self.order = p ** self.n
        self.seed = seed
        if modulus is None:
            modulus = find_irreducible(p, self.n, seed or 0)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != self.n + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {self.n}")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over F_{p}")
        self.modulus = modulus
        self._build_tables()

    # -- construction ------------------------------------------------------

    def _xtimes(self, digits: list[int]) -> list[int]:
        p, n, m = self.p, self.n, self.modulus
        top = digits[-1]
        shifted = [0] + digits[:-1]
        if top:
            shifted = [(shifted[i] - top * m[i]) % p for i in range(n)]
        return shifted

    def _mul_digits(self, a: list[int], b: list[int]) -> list[int]:
        p, n = self.p, self.n
        acc = [0] * n
        cur = list(a)
        for coef in b:
            if coef:
                acc = [(x + coef * y) % p for x, y in zip(acc, cur)]
            cur = self._xtimes(cur)
        return acc

    def _build_tables(self) -> None:
        p, n, N = self.p, self.n, self.order
        self._digits = [tuple((x // p ** i) % p for i in range(n)) for x in range(N)]
        if N == 2:
            self.generator = 1
            self._exp = [1]
        else:
            for cand in range(2, N):
                powers = self._power_cycle(cand)
                if len(powers) == N - 1:
                    self.generator = cand
                    self._exp = powers
                    break
            else:  # pragma: no cover - a finite field always has a generator
                raise FieldError("no primitive element found")
        self._log = [0] * N
        for i, x in enumerate(self._exp):
            self._log[x] = i
        self._log[0] = -1
        # zech[d] = log(1 + g^d), -1 when 1 + g^d == 0
        self._zech = [-1] * (N - 1)
        for d, x in enumerate(self._exp):
            s = self._add_digits(1, x)
            self._zech[d] = self._log[s] if s else -1
        self._neg_one = self._exp[(N - 1) // 2] if p != 2 else 1

    def _power_cycle(self, g: int) -> list[int]:
        gd = list(self._digits[g])
        out = [1]
        cur = [1] + [0] * (self.n - 1)
        while True:
            cur = self._mul_digits(cur, gd)
            val = self.from_coeffs(cur)
            if val == 1:
                return out
            out.append(val)
            if len(out) >= self.order:  # pragma: no cover
                return out

    def _add_digits(self, a: int, b: int) -> int:
        da, db = self._digits[a], self._digits[b]
        return self.from_coeffs([(x + y) % self.p for x, y in zip(da, db)])

    # -- representation ----------------------------------------------------

    def coeffs(self, x: int) -> tuple[int, ...]:
        return self._digits[x]

    def from_coeffs(self, coeffs: Iterable[int]) -> int:
        out = 0
        scale = 1
        for c in coeffs:
            out += (int(c) % self.p) * scale
            scale *= self.p
        return out

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.n}, q={self.q}, modulus={list(self.modulus)})"

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, GF) and self.p == other.p and self.e == other.e
                and self.h == other.h and self.modulus == other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.h, self.modulus))

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "h": self.h, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, data: dict | str) -> "GF":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["p"], data["e"], data["h"], modulus=data["modulus"])

    # -- arithmetic --------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % (self.order - 1)]
        if z < 0:
            return 0
        return self._exp[(la + z) % (self.order - 1)]

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        return self.mul(a, self._neg_one)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(-self._log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if k == 0 else 0
        return self._exp[(self._log[a] * k) % (self.order - 1)]

    def frobenius(self, x: int, times: int = 1) -> int:
        """x -> x^(q^times)."""
        return self.pow(x, self.q ** times)

    def log(self, x: int) -> int:
        if x == 0:
            raise ValueError("log of zero")
        return self._log[x]

    def exp(self, i: int) -> int:
        return self._exp[i % (self.order - 1)]

    def elements(self) -> range:
        return range(self.order)

    # -- subfields -----------------------------------------------------------

    def degree_over_base(self, x: int) -> int:
        """Least d >= 1 with x^(q^d) == x."""
        y = x
        for d in range(1, self.h + 1):
            y = self.pow(y, self.q)
            if y == x:
                return d
        raise AssertionError("Frobenius orbit longer than h")  # pragma: no cover

    def in_subfield(self, x: int, d: int) -> bool:
        """True iff x lies in F_{q^d}."""
        if d < 1 or self.h % d:
            raise InvalidDegree(f"{d} does not divide h={self.h}")
        return self.frobenius(x, d) == x

    def subfield_elements(self, d: int = 1) -> tuple[int, ...]:
        if d < 1 or self.h % d:
            raise InvalidDegree(f"{d} does not divide h={self.h}")
        return tuple(x for x in range(self.order) if self.frobenius(x, d) == x)

    @cached_property
    def base(self) -> tuple[int, ...]:
        """The elements of F_q in increasing order (0 and 1 come first)."""
        return self.subfield_elements(1)

    @cached_property
    def base_index(self) -> dict[int, int]:
        return {x: i for i, x in enumerate(self.base)}

    def is_base(self, x: int) -> bool:
        return self.frobenius(x) == x

    def select_alpha(self, s: int) -> int:
        """First power g^i (i >= 1) of the generator with degree exactly s over F_q."""
        if s < 2 or self.h % s:
            raise InvalidDegree(f"need s >= 2 and s | h, got s={s}, h={self.h}")
        for i in range(1, self.order - 1):
            x = self._exp[i]
            if self.degree_over_base(x) == s:
                return x
        raise InvalidDegree(f"no element of degree {s}")  # pragma: no cover

    # -- F_q-linear structure of F_{q^h} -------------------------------------

    @cached_property
    def base_basis(self) -> tuple[int, ...]:
        """F_q-basis 1, g, ..., g^(h-1) of F_{q^h} (g the fixed generator)."""
        return tuple(self._exp[i % (self.order - 1)] for i in range(self.h))

    @cached_property
    def _base_coordinates(self) -> dict[int, tuple[int, ...]]:
        table: dict[int, tuple[int, ...]] = {0: (0,) * self.h}
        for combo in np.ndindex(*([self.q] * self.h)):
            coords = tuple(self.base[c] for c in combo)
            x = 0
            for c, w in zip(coords, self.base_basis):
                x = self.add(x, self.mul(c, w))
            table[x] = coords
        if len(table) != self.order:
            raise FieldError("base basis is not an F_q-basis")  # pragma: no cover
        return table

    def base_coordinates(self, x: int) -> tuple[int, ...]:
        """Coordinates of x over F_q in ``base_basis``."""
        return self._base_coordinates[x]

    # -- dense tables for the kernels ------------------------------------------

    @cached_property
    def tables(self) -> "FieldTables":
        return FieldTables.build(self)


class FieldTables:
    """Dense int32 lookup tables consumed by the enumeration kernels."""

    __slots__ = ("N", "add", "mul", "inv", "neg")

    def __init__(self, N, add, mul, inv, neg):
        self.N = N
        self.add = add
        self.mul = mul
        self.inv = inv
        self.neg = neg

    @classmethod
    def build(cls, F: GF) -> "FieldTables":
        N = F.order
        if N > TABLE_LIMIT:
            raise FieldError(f"field of order {N} is too large for dense tables")
        digits = np.array(F._digits, dtype=np.int64).reshape(N, F.n)
        weights = F.p ** np.arange(F.n, dtype=np.int64)
        add = (((digits[:, None, :] + digits[None, :, :]) % F.p) @ weights).astype(np.int32)
        log = np.array(F._log, dtype=np.int64)
        exp = np.array(F._exp, dtype=np.int64)
        mul = exp[(log[:, None] + log[None, :]) % (N - 1)].astype(np.int32)
        mul[0, :] = 0
        mul[:, 0] = 0
        inv = np.zeros(N, dtype=np.int32)
        inv[1:] = exp[(-log[1:]) % (N - 1)]
        neg = np.array([F.neg(x) for x in range(N)], dtype=np.int32)
        for arr in (add, mul, inv, neg):
            arr.setflags(write=False)
        return cls(N, np.ascontiguousarray(add), np.ascontiguousarray(mul), inv, neg)


def make_field(p: int, e: int = 1, h: int = 1, seed: int | None = None,
               modulus: Sequence[int] | None = None) -> GF:
    return GF(p, e, h, modulus=modulus, seed=seed)


def degree_over_base(F: GF, x: int) -> int:
    return F.degree_over_base(x)


def select_alpha(F: GF, s: int) -> int:
    return F.select_alpha(s)


def subfield_membership(F: GF, x: int, d: int) -> bool:
    return F.in_subfield(x, d)
