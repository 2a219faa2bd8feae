import itertools

import pytest

from linset.blocking import (
    NotAPlane, NotBlocking, all_lines, certify, incidence_profile, line_rank, line_through,
    points_on_line, redei_lines, secant_spectrum, verify_blocking, verify_minimal,
)
from linset.field import make_field
from linset.linear_sets import build_evaluation_set, make_spec
from linset.poly import Poly, gcd_monic, evaluate
from linset.projective import ProjectivePoint, iter_points

F4 = make_field(2, 1, 2)
F16 = make_field(2, 1, 4)


def planar(F, t):
    return build_evaluation_set(make_spec(F, F.h, t))


def partitions3(n):
    for a in range(1, n):
        for b in range(a, n):
            c = n - a - b
            if c >= b:
                yield (a, b, c)


@pytest.fixture(scope="module")
def B223(F64):
    return planar(F64, (2, 2, 3))


def test_non_redei_blocking_set(F64, B223):
    res = verify_blocking(F64, B223)
    assert res.size == 97 == 2 ** 6 + 2 ** 5 + 1
    assert res.blocking and res.small and res.missed_lines == 0
    assert sum(res.histogram.values()) == 64 ** 2 + 64 + 1
    assert verify_minimal(F64, B223).minimal
    assert redei_lines(F64, B223) == []


def test_a_line_blocks():
    line = [P for P in iter_points(F4, 3) if P.coords[0] == 0]
    assert len(line) == 5
    assert verify_blocking(F4, line).blocking


def test_rank_h_set_misses_a_line():
    r = planar(F16, (1, 1, 2))
    res = verify_blocking(F16, r)
    assert not res.blocking
    assert points_on_line(F16, r.points, res.example_missed_line) == []
    with pytest.raises(NotBlocking):
        verify_minimal(F16, r)


def test_full_plane_is_not_minimal():
    plane = list(iter_points(F4, 3))
    res = verify_minimal(F4, plane)
    assert not res.minimal and set(res.tangent_counts.values()) == {0}
    assert secant_spectrum(F4, plane).histogram == {5: 21}


def test_line_plus_point_is_not_minimal():
    line = [P for P in iter_points(F4, 3) if P.coords[0] == 0]
    extra = ProjectivePoint((1, 0, 0))
    res = verify_minimal(F4, line + [extra])
    assert not res.minimal
    assert res.tangent_counts[extra] == 0
    assert all(res.tangent_counts[P] > 0 for P in line)


def test_not_a_plane(F64):
    with pytest.raises(NotAPlane):
        verify_blocking(F64, [ProjectivePoint((1, 0))])


def test_profile_matches_naive_scan():
    r = planar(F16, (1, 2, 2))
    prof = incidence_profile(F16, r)
    lines = all_lines(F16)
    assert len(lines) == 16 ** 2 + 16 + 1
    naive = [len(points_on_line(F16, r.points, L)) for L in lines]
    assert list(prof.counts) == naive


def test_double_counting(F64, B223):
    for rep in (B223, planar(F64, (1, 1, 5))):
        s = secant_spectrum(F64, rep)
        assert s.incidences == rep.size * 65
        assert sum(k * v for k, v in s.histogram.items()) == s.incidences


def test_two_redei_lines(F64):
    lines = redei_lines(F64, planar(F64, (1, 1, 5)))
    assert len(lines) >= 2 and all(r == 6 for _, r in lines)


def test_one_part_of_size_one_gives_a_redei_line(F64):
    for t in [(1, 2, 4), (1, 3, 3)]:
        assert redei_lines(F64, planar(F64, t))


@pytest.mark.parametrize("h", [4, 5, 6])
def test_redei_characterization(h):
    F = make_field(2, 1, h)
    for t in partitions3(h + 1):
        r = planar(F, t)
        prof = incidence_profile(F, r)
        assert verify_blocking(F, r, prof).blocking
        assert verify_minimal(F, r, prof).minimal
        assert bool(redei_lines(F, r, prof)) == (min(t) == 1), t


def test_line_rank_oracle(F64):
    r = planar(F64, (1, 2, 4))
    prof = incidence_profile(F64, r)
    mass = prof.line_mass(r.points)
    for idx in sorted(set(prof.incidence.ravel().tolist()))[:300]:
        L = prof.line(idx)
        want = (int(mass[idx]) + 1).bit_length() - 1
        assert line_rank(F64, r, L) == want
    for L, rank in redei_lines(F64, r, prof):
        assert line_rank(F64, r, L) == rank


def test_q_plus_1_secants(F64, B223):
    a = B223.spec.alpha
    deg1 = [Poly((c, 1)) for c in (0, 1)]
    deg2 = [Poly((c0, c1, 1)) for c0 in (0, 1) for c1 in (0, 1)]
    checked = 0
    for f2, f3 in itertools.product(deg1, deg2):
        if gcd_monic(F64, f2, f3) != Poly((1,)):
            continue
        P = ProjectivePoint.of(F64, (1, evaluate(F64, f2, a), 0))
        Q = ProjectivePoint.of(F64, (1, 0, evaluate(F64, f3, a)))
        assert P in B223.points and Q in B223.points
        L = line_through(F64, P, Q)
        assert len(points_on_line(F64, B223.points, L)) == 3
        checked += 1
    assert checked == 4
    assert secant_spectrum(F64, B223).has_q_plus_1_secant


def test_certificate(F64, B223):
    cert = certify(F64, B223)
    assert cert["size"] == 97 and cert["blocking"] and cert["minimal"] and cert["small"]
    assert cert["redei_lines"] == []
    assert sum(int(k) * v for k, v in cert["secant_histogram"].items()) == 97 * 65
