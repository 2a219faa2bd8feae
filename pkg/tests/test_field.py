import itertools
import random

import pytest
from hypothesis import given, strategies as st

from linset.field import (
    GF, FieldError, InvalidDegree, NonPrimeP, degree_over_base, find_irreducible,
    is_irreducible, make_field, select_alpha, split_prime_power, subfield_membership,
)

SMALL = [(2, 1, 1), (2, 1, 4), (3, 1, 2), (2, 2, 2), (5, 1, 2), (3, 2, 1)]


def _poly_mod(a, b, p):
    a = list(a)
    while len(a) >= len(b):
        c = a[-1] * pow(b[-1], -1, p) % p
        shift = len(a) - len(b)
        for i, x in enumerate(b):
            a[shift + i] = (a[shift + i] - c * x) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def _irreducible_by_trial_division(m, p):
    n = len(m) - 1
    for d in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(m, list(low) + [1], p):
                return False
    return True


def test_prime_field_of_order_two():
    F = make_field(2, 1, 1)
    assert F.order == 2 and len(F.modulus) == 2 and F.modulus[-1] == 1
    assert F.mul(1, 1) == 1 and F.add(1, 1) == 0


@pytest.mark.parametrize("p,e,h,order", [(2, 1, 6, 64), (3, 1, 4, 81), (2, 2, 3, 64)])
def test_field_sizes_by_enumeration(p, e, h, order):
    F = make_field(p, e, h)
    elems = list(F.elements())
    assert len(set(F.coeffs(x) for x in elems)) == order
    g = F.generator
    seen, x = set(), 1
    for _ in range(order - 1):
        seen.add(x)
        x = F.mul(x, g)
    assert x == 1 and len(seen) == order - 1


def test_non_prime_characteristic():
    with pytest.raises(NonPrimeP):
        make_field(4, 1, 2)


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        GF(2, 1, 2, modulus=(1, 0, 1))  # X^2 + 1 = (X + 1)^2


@pytest.mark.parametrize("p,n", [(2, 1), (2, 5), (2, 8), (3, 4), (5, 3)])
def test_modulus_search_agrees_with_trial_division(p, n):
    m = find_irreducible(p, n)
    assert _irreducible_by_trial_division(m, p)
    # nothing lexicographically earlier is irreducible
    start = sum(c * p ** i for i, c in enumerate(m[:-1]))
    for idx in range(start):
        cand = [(idx // p ** i) % p for i in range(n)] + [1]
        assert not _irreducible_by_trial_division(cand, p)


@pytest.mark.parametrize("p,n", [(2, 4), (2, 6), (3, 3)])
def test_irreducibility_test_matches_trial_division(p, n):
    for low in itertools.product(range(p), repeat=n):
        m = list(low) + [1]
        assert is_irreducible(m, p) == _irreducible_by_trial_division(m, p)


def test_seed_is_deterministic():
    a, b = make_field(2, 1, 8, seed=7), make_field(2, 1, 8, seed=7)
    assert a.modulus == b.modulus
    assert make_field(2, 1, 8, seed=0).modulus == find_irreducible(2, 8)


@pytest.mark.parametrize("p,e,h", [c for c in SMALL if c[0] ** (c[1] * c[2]) <= 32])
def test_field_axioms_exhaustive(p, e, h):
    F = make_field(p, e, h)
    E = list(F.elements())
    for a, b, c in itertools.product(E, repeat=3):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    for a in E:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("p,e,h", [(2, 1, 8), (3, 1, 5), (2, 2, 3), (7, 1, 2)])
def test_field_axioms_sampled(p, e, h):
    F = make_field(p, e, h)
    rng = random.Random(1)
    for _ in range(2000):
        a, b, c = (rng.randrange(F.order) for _ in range(3))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.sub(F.add(a, b), b) == a
        if b:
            assert F.mul(F.div(a, b), b) == a


@given(st.integers(0, 255), st.integers(0, 255))
def test_multiplication_matches_schoolbook(a, b):
    F = make_field(2, 1, 8)
    # carry-less product reduced by the modulus
    prod = 0
    for i in range(8):
        if (b >> i) & 1:
            prod ^= a << i
    mod = sum(c << i for i, c in enumerate(F.modulus))
    for i in range(15, 7, -1):
        if (prod >> i) & 1:
            prod ^= mod << (i - 8)
    assert F.mul(a, b) == prod


@pytest.mark.parametrize("p,e,h", [(2, 1, 6), (3, 1, 4), (2, 2, 3), (2, 1, 12), (2, 3, 2)])
def test_frobenius_fixed_set_is_base_field(p, e, h):
    F = make_field(p, e, h)
    fixed = [x for x in F.elements() if F.frobenius(x) == x]
    assert len(fixed) == F.q
    assert F.base == tuple(fixed)
    # F_q-linearity of x -> x^q
    c = F.base[-1]
    for x, y in [(3, 5), (F.order - 1, 1)]:
        assert F.frobenius(F.add(F.mul(c, x), y)) == F.add(F.mul(c, F.frobenius(x)), F.frobenius(y))


@pytest.mark.parametrize("p,e,h", [(2, 1, 6), (3, 1, 4), (2, 2, 3)])
def test_degree_divides_h(p, e, h):
    F = make_field(p, e, h)
    for x in F.elements():
        assert h % degree_over_base(F, x) == 0


def test_degree_examples(F64):
    assert degree_over_base(F64, 1) == 1 and degree_over_base(F64, 0) == 1
    assert degree_over_base(F64, F64.generator) == 6
    x = F64.pow(F64.generator, 63 // 3)
    assert x != 1 and degree_over_base(F64, x) == 2


def test_select_alpha(F64):
    for s in (2, 3, 6):
        a = select_alpha(F64, s)
        assert degree_over_base(F64, a) == s
        assert select_alpha(F64, s) == a
    a2 = select_alpha(F64, 2)
    assert F64.frobenius(a2, 2) == a2 and F64.frobenius(a2) != a2
    for bad in (4, 1, 0, 5):
        with pytest.raises(InvalidDegree):
            select_alpha(F64, bad)


def test_subfield_membership(F64):
    a2 = select_alpha(F64, 2)
    for d in (1, 2, 3, 6):
        assert subfield_membership(F64, 0, d)
    assert subfield_membership(F64, a2, 2) and not subfield_membership(F64, a2, 1)
    g = F64.generator
    assert not any(subfield_membership(F64, g, d) for d in (1, 2, 3))
    with pytest.raises(InvalidDegree):
        subfield_membership(F64, g, 4)


def test_json_round_trip():
    for p, e, h in SMALL + [(2, 1, 6)]:
        F = make_field(p, e, h, seed=3)
        G = GF.from_json(F.to_json())
        assert G == F and G.modulus == F.modulus
        x = F.order - 1
        assert G.coeffs(x) == F.coeffs(x)


def test_split_prime_power():
    assert split_prime_power(8) == (2, 3)
    assert split_prime_power(9) == (3, 2)
    with pytest.raises(FieldError):
        split_prime_power(6)


def test_tables_match_scalar_ops(F81):
    T = F81.tables
    rng = random.Random(0)
    for _ in range(500):
        a, b = rng.randrange(81), rng.randrange(81)
        assert T.add[a, b] == F81.add(a, b)
        assert T.mul[a, b] == F81.mul(a, b)
        assert T.neg[a] == F81.neg(a)
        if a:
            assert T.inv[a] == F81.inv(a)


def test_base_coordinates_invert_basis(F64):
    for x in F64.elements():
        coords = F64.base_coordinates(x)
        y = 0
        for c, w in zip(coords, F64.base_basis):
            y = F64.add(y, F64.mul(c, w))
        assert y == x
