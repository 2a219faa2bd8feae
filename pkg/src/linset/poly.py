"""Dense univariate polynomials over F_q, monic gcd and reduced tuples.

Coefficients are field elements of a :class:`~linset.field.GF` lying in its
base field F_q; every routine takes the field explicitly. A tuple of
polynomials is *reduced* when its first nonzero entry is monic and the gcd
of all entries is 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterator, Sequence

import numpy as np

from .field import GF


class PolyError(ValueError):
    pass


class BothZero(PolyError):
    pass


class AllZero(PolyError):
    pass


class _MinusInfinity:
    """Degree of the zero polynomial. Orders below every int, refuses arithmetic."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "-inf"

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("_MinusInfinity")


MINUS_INF = _MinusInfinity()


@dataclass(frozen=True)
class Poly:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = tuple(self.coeffs)
        end = len(c)
        while end and c[end - 1] == 0:
            end -= 1
        object.__setattr__(self, "coeffs", c[:end])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else MINUS_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.lead == 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)})"


ZERO = Poly(())
ONE = Poly((1,))


def add(F: GF, f: Poly, g: Poly) -> Poly:
    a, b = f.coeffs, g.coeffs
    if len(a) < len(b):
        a, b = b, a
    return Poly(tuple(F.add(x, b[i]) if i < len(b) else x for i, x in enumerate(a)))


def sub(F: GF, f: Poly, g: Poly) -> Poly:
    return add(F, f, scale(F, g, F.neg(1)))


def scale(F: GF, f: Poly, c: int) -> Poly:
    if c == 0:
        return ZERO
    return Poly(tuple(F.mul(c, x) for x in f.coeffs))


def mul(F: GF, f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return ZERO
    out = [0] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, x in enumerate(f.coeffs):
        if x:
            for j, y in enumerate(g.coeffs):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return Poly(tuple(out))


def divmod_poly(F: GF, f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(f.coeffs)
    dg = len(g.coeffs) - 1
    inv_lead = F.inv(g.lead)
    quot = [0] * max(len(r) - dg, 0)
    while len(r) - 1 >= dg and r:
        c = F.mul(r[-1], inv_lead)
        shift = len(r) - 1 - dg
        quot[shift] = c
        for i, gi in enumerate(g.coeffs):
            r[shift + i] = F.sub(r[shift + i], F.mul(c, gi))
        while r and r[-1] == 0:
            r.pop()
    return Poly(tuple(quot)), Poly(tuple(r))


def make_monic(F: GF, f: Poly) -> Poly:
    if not f:
        return f
    return scale(F, f, F.inv(f.lead))


def gcd_monic(F: GF, f: Poly, g: Poly) -> Poly:
    if not f and not g:
        raise BothZero("gcd of two zero polynomials")
    while g:
        f, g = g, divmod_poly(F, f, g)[1]
    return make_monic(F, f)


def evaluate(F: GF, f: Poly, x: int) -> int:
    acc = 0
    for c in reversed(f.coeffs):
        acc = F.add(F.mul(acc, x), c)
    return acc


# -- tuples ---------------------------------------------------------------

@dataclass(frozen=True)
class PolyTuple:
    entries: tuple[Poly, ...]
    bounds: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != len(self.bounds):
            raise PolyError("entries and bounds differ in length")
        for f, t in zip(self.entries, self.bounds):
            if f.degree > t - 1:
                raise PolyError(f"{f} exceeds degree bound {t - 1}")

    def first_nonzero(self) -> int | None:
        for i, f in enumerate(self.entries):
            if f:
                return i
        return None

    def is_reduced(self, F: GF) -> bool:
        i = self.first_nonzero()
        if i is None or not self.entries[i].is_monic():
            return False
        return tuple_gcd(F, self.entries) == ONE

    def evaluate(self, F: GF, x: int) -> tuple[int, ...]:
        return tuple(evaluate(F, f, x) for f in self.entries)


def tuple_gcd(F: GF, entries: Sequence[Poly]) -> Poly:
    nonzero = [f for f in entries if f]
    if not nonzero:
        raise AllZero("gcd of an all-zero tuple")
    return reduce(lambda a, b: gcd_monic(F, a, b), nonzero[1:], make_monic(F, nonzero[0]))


def reduce_tuple(F: GF, t: PolyTuple) -> PolyTuple:
    """Divide out the common monic gcd, then make the first nonzero entry monic."""
    i = t.first_nonzero()
    if i is None:
        raise AllZero("cannot reduce the all-zero tuple")
    g = tuple_gcd(F, t.entries)
    parts = [divmod_poly(F, f, g)[0] for f in t.entries]
    c = F.inv(parts[i].lead)
    return PolyTuple(tuple(scale(F, f, c) for f in parts), t.bounds)


def enumerate_reduced(bounds: Sequence[int], F: GF) -> Iterator[PolyTuple]:
    """Every reduced tuple with deg f_i <= t_i - 1, exactly once.

    Order: increasing index of the concatenated coefficient vector over the
    sorted base field, the first coefficient of the first entry varying
    fastest.
    """
    bounds = tuple(bounds)
    if any(t < 1 for t in bounds):
        raise PolyError("degree bounds must be >= 1")
    base = F.base
    total = sum(bounds)
    cuts = list(itertools.accumulate(bounds))
    for combo in itertools.product(base, repeat=total):
        flat = combo[::-1]
        entries = tuple(Poly(flat[a - t:a]) for a, t in zip(cuts, bounds))
        i = next((j for j, f in enumerate(entries) if f), None)
        if i is None or not entries[i].is_monic():
            continue
        if tuple_gcd(F, entries) == ONE:
            yield PolyTuple(entries, bounds)


# -- closed forms ------------------------------------------------------------

def count_reduced_closed_form(bounds: Sequence[int], q: int) -> int:
    """q^(k-1) + q^(k-2) + ... + q^(k-l) + 1 with k = sum(bounds), l = len - 1."""
    t = sorted(bounds)
    if not t or t[0] < 1:
        raise PolyError("degree bounds must be >= 1")
    k, l = sum(t), len(t) - 1
    return sum(q ** (k - i) for i in range(1, l + 1)) + 1


def count_R_stratum(n: int, bound_vector: Sequence[int], q: int) -> int:
    """Reduced tuples with f_1 monic of degree exactly n and deg f_j <= m_j."""
    if n < 0 or any(m < 0 for m in bound_vector):
        raise PolyError("degrees must be non-negative")
    l = len(bound_vector)
    m = sum(bound_vector)
    if n == 0:
        return q ** (m + l)
    return q ** (m + l + n) - q ** (m + n)


# -- index encoding used by the counting kernels -------------------------------

def poly_index(F: GF, f: Poly) -> int:
    """sum(d_i q^i) where d_i is the position of coefficient i in F.base."""
    idx = F.base_index
    q = F.q
    return sum(idx[c] * q ** i for i, c in enumerate(f.coeffs))


def poly_from_index(F: GF, index: int) -> Poly:
    q = F.q
    out = []
    while index:
        index, d = divmod(index, q)
        out.append(F.base[d])
    return Poly(tuple(out))


@lru_cache(maxsize=16)
def gcd_index_table(F: GF, max_bound: int) -> tuple[np.ndarray, np.ndarray]:
    """Monic gcd of every pair of polynomials of degree < max_bound, by index.

    Built by a divisor sieve: every monic d is written over the block of its
    multiples, in increasing degree, so each pair ends up holding its
    highest-degree common monic divisor. Entry [0, 0] is 0.
    Returns (gcd_table, is_monic).
    """
    q = F.q
    M = q ** max_bound
    table = np.zeros((M, M), dtype=np.int32)
    monic = np.zeros(M, dtype=np.uint8)
    polys = [poly_from_index(F, i) for i in range(M)]
    for i, f in enumerate(polys):
        monic[i] = 1 if f and f.is_monic() else 0
    by_degree: dict[int, list[int]] = {}
    for i, f in enumerate(polys):
        if f:
            by_degree.setdefault(f.degree, []).append(i)
    for deg in range(max_bound):
        for di in by_degree.get(deg, []):
            if not monic[di]:
                continue
            d = polys[di]
            cof_bound = q ** (max_bound - deg)
            mults = np.array(sorted({poly_index(F, mul(F, d, polys[m]))
                                     for m in range(cof_bound)}), dtype=np.int64)
            table[np.ix_(mults, mults)] = di
    table[0, 0] = 0
    table.setflags(write=False)
    monic.setflags(write=False)
    return table, monic


def count_reduced_enumerated(bounds: Sequence[int], F: GF) -> int:
    """Exhaustive count of reduced tuples over all coefficient choices."""
    from . import kernels

    bounds = tuple(bounds)
    if any(t < 1 for t in bounds):
        raise PolyError("degree bounds must be >= 1")
    table, monic = gcd_index_table(F, max(bounds))
    sizes = np.array([F.q ** t for t in bounds], dtype=np.int64)
    return kernels.count_reduced(sizes, table, monic)
