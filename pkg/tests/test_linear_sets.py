import random

import pytest

from linset.field import make_field
from linset.linear_sets import (
    BadShape, DisjointnessFailure, NonIntegralWeight, OutOfRange, SpecInvariantViolated,
    _weight_from_vectors, build_evaluation_set, build_projection_frame, detect_club,
    feasible_spectra, field_reduction_weight, is_degenerate, linear_set_from_vectors,
    make_spec, points_from_reduced_forms, predicted_spectrum, predicted_spectrum_line,
    predicted_stratum_counts, project_subgeometry,
)
from linset.projective import ProjectivePoint, contains, meet, meets_subgeometry, subspace


def test_subline(F32):
    r = build_evaluation_set(make_spec(F32, 5, (1, 1)))
    assert r.size == 3 and set(r.points.values()) == {1}


def test_line_case_example(F32):
    r = build_evaluation_set(make_spec(F32, 5, (2, 3)))
    assert r.size == 17
    assert r.spectrum == (12, 4, 1, 0, 0)
    assert r.identities_hold()


def test_worked_example(F64):
    r = build_evaluation_set(make_spec(F64, 6, (2, 3, 4)))
    assert r.size == 385
    assert r.spectrum[:4] == (336, 44, 4, 1) and not any(r.spectrum[4:])


def test_spec_violations(F64):
    with pytest.raises(SpecInvariantViolated, match="t_2\\+t_3"):
        make_spec(F64, 2, (2, 3, 4))
    with pytest.raises(SpecInvariantViolated):
        make_spec(F64, 6, (4,))
    with pytest.raises(SpecInvariantViolated):
        make_spec(F64, 6, (0, 2))
    bad = make_spec(F64, 6, (2, 2), alpha=F64.select_alpha(3), validate=False)
    assert any("degree" in v for v in bad.violations())


def test_points_are_the_evaluated_reduced_forms(F64):
    spec = make_spec(F64, 6, (2, 2, 3))
    r = build_evaluation_set(spec)
    pts = points_from_reduced_forms(spec)
    assert len(pts) == len(set(pts)) == r.size
    assert set(pts) == set(r.points)


def test_non_integral_weight():
    assert _weight_from_vectors(2, 7) == 3
    with pytest.raises(NonIntegralWeight):
        _weight_from_vectors(2, 5)


def test_line_predictions():
    for q in (2, 3, 5):
        assert predicted_spectrum_line((2, 2), q) == (q ** 3 - q, q + 1, 0, 0)
    for k in range(3, 8):
        want = [0] * k
        want[0], want[k - 2] = 2 ** (k - 1), 1
        assert predicted_spectrum_line((1, k - 1), 2) == tuple(want)
    assert predicted_spectrum_line((3, 2), 2) == (12, 4, 1, 0, 0)
    with pytest.raises(BadShape):
        predicted_spectrum_line((1, 2, 3), 2)


def test_stratum_predictions():
    assert predicted_stratum_counts((2, 3, 4), 2, 1) == 2 ** 8 + 2 ** 7 - 2 ** 6 - 2 ** 5 == 288
    assert predicted_stratum_counts((2, 3, 4), 2, 2) == 32
    assert predicted_spectrum((4,), 2) == (0, 0, 0, 1)
    assert predicted_spectrum((2, 3, 4), 2)[3] == 1
    with pytest.raises(OutOfRange):
        predicted_stratum_counts((2, 3, 4), 2, 3)


@pytest.mark.parametrize("q,h", [(2, 6), (3, 4), (2, 5)])
def test_spectrum_matches_prediction_sweep(q, h):
    F = make_field(q, 1, h)
    s = h
    for t in [(1, 2), (2, 2), (2, 3), (3, 3), (1, 1, 2), (2, 2, 2), (1, 3, 3), (2, 2, 3)]:
        if any(a + b > s + 1 for i, a in enumerate(t) for b in t[i + 1:]) or q ** sum(t) > 3 ** 9:
            continue
        r = build_evaluation_set(make_spec(F, s, t))
        assert r.spectrum == predicted_spectrum(t, q), t
        assert r.identities_hold()


def test_axis_of_the_2_2_frame(F32):
    spec = make_spec(F32, 5, (2, 2))
    frame = build_projection_frame(spec)
    na = F32.neg(spec.alpha)
    assert frame.axis == subspace(F32, [(1, na, 0, 0), (0, 0, 1, na)], 4)
    assert frame.axis.dimension == spec.k - spec.l - 2
    assert meet(F32, frame.axis, frame.target).is_empty()
    assert not meets_subgeometry(F32, frame.axis)


def test_trivial_parts_give_empty_pieces(F32):
    frame = build_projection_frame(make_spec(F32, 5, (1, 3)))
    assert frame.pis[0].is_empty() and frame.pis[1].rank == 2
    assert build_projection_frame(make_spec(F32, 5, (1, 1))).axis.is_empty()


def test_undersized_alpha_is_detected(F64):
    spec = make_spec(F64, 6, (2, 3), alpha=F64.select_alpha(2), validate=False)
    with pytest.raises(DisjointnessFailure):
        build_projection_frame(spec)
    # explicit witness: alpha^2 + c1 alpha + c0 = 0 puts (0, 0, 1, c1, c0) on the axis
    a = spec.alpha
    c0, c1 = next((c0, c1) for c1 in F64.base for c0 in F64.base
                  if F64.add(F64.add(F64.mul(a, a), F64.mul(c1, a)), c0) == 0)
    frame_axis = subspace(F64, [(1, F64.neg(a), 0, 0, 0), (0, 0, 1, F64.neg(a), 0),
                                (0, 0, 0, 1, F64.neg(a))], 5)
    assert contains(F64, frame_axis, (0, 0, 1, c1, c0))


def test_projection_of_2_2(F32):
    r = project_subgeometry(build_projection_frame(make_spec(F32, 5, (2, 2))))
    assert r.size == 9
    assert r.spectrum == (6, 3, 0, 0)


@pytest.mark.parametrize("t", [(1, 1), (2, 2), (2, 3), (1, 4), (2, 2, 2)])
def test_projection_agrees_with_evaluation(F32, t):
    spec = make_spec(F32, 5, t)
    assert project_subgeometry(build_projection_frame(spec)).points == build_evaluation_set(spec).points


def test_feasible_spectra_examples():
    assert feasible_spectra(4, 9, 2) == [(8, 0, 1, 0), (6, 3, 0, 0)]
    for q in (2, 3, 4):
        assert feasible_spectra(2, q + 1, q) == [(q + 1, 0)]
        assert len(feasible_spectra(5, q ** 4 + 1, q)) == 3


def test_feasible_spectra_contain_constructed_ones(F64):
    for t in [(1, 3), (2, 2), (1, 4), (2, 3), (2, 4), (3, 3)]:
        r = build_evaluation_set(make_spec(F64, 6, t))
        assert r.spectrum in feasible_spectra(r.rank, r.size, 2)


def test_club_detection(F64):
    for k in range(3, 7):
        assert detect_club(build_evaluation_set(make_spec(F64, 6, (1, k - 1))))
    assert not detect_club(build_evaluation_set(make_spec(F64, 6, (2, 2))))
    sub = build_evaluation_set(make_spec(F64, 6, (1, 1)))
    assert not detect_club(sub) and is_degenerate(sub)


def test_heaviest_point_range(F64):
    for k in range(3, 8):
        for j in range((k + 1) // 2, k):
            r = build_evaluation_set(make_spec(F64, 6, (k - j, j)))
            assert r.max_weight == j


def test_lower_bound_witness(F64):
    for t in [(1, 2), (2, 2), (2, 5), (3, 4), (1, 6)]:
        r = build_evaluation_set(make_spec(F64, 6, t))
        assert r.size == 2 ** (r.rank - 1) + 1 and r.spectrum[0] > 0


def test_weight_oracle_on_every_point(F32):
    r = build_evaluation_set(make_spec(F32, 5, (2, 3)))
    for P, w in r.points.items():
        assert field_reduction_weight(F32, r, P) == w


def test_weight_oracle_on_a_random_subspace():
    F = make_field(3, 1, 3)
    rng = random.Random(5)
    vecs = [[rng.randrange(27) for _ in range(3)] for _ in range(4)]
    r = linear_set_from_vectors(F, vecs)
    assert r.identities_hold()
    for P in rng.sample(list(r.points), 10):
        assert field_reduction_weight(F, r, P) == r.points[P]


def test_points_sorted_and_normalized(F64):
    r = build_evaluation_set(make_spec(F64, 6, (2, 3)))
    pts = list(r.points)
    assert all(isinstance(P, ProjectivePoint) for P in pts)
    assert all(next(x for x in P.coords if x) == 1 for P in pts)


def test_dependent_vectors_rejected():
    from linset.linear_sets import LinearSetError

    F = make_field(2, 1, 3)
    with pytest.raises(LinearSetError):
        linear_set_from_vectors(F, [(1, 2), (1, 2)])
