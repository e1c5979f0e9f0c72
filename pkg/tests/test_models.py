from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from wfhcalc.graded import Ball, BallPair, Opaque, Sphere
from wfhcalc.models import (
    AkMilnor,
    ChordSystem,
    CrossCotangent,
    Homogeneous,
    HypersurfaceComplement,
    IndexUnavailable,
    ModelError,
    PeriodConvention,
    ProjectiveComplement,
    admitted_iterates,
    build,
    chord_spectrum_from_flow,
    complement_mu,
    morse_bott_validity,
    parse_model,
    real_lagrangian_components,
    rs_chord_index,
)
from wfhcalc.rsindex import half_chord_index, lcm, weighted_homogeneous_orbit_index

PAPER, FLOW = PeriodConvention.PAPER, PeriodConvention.FLOW_DERIVED

ak_params = st.tuples(st.integers(3, 8), st.integers(1, 10))


def test_ak_3_2():
    s = build(AkMilnor(3, 2))
    assert s.index_of_iterate(1) == 5
    assert s.component_topology == Sphere(2)
    assert s.lagrangian_topology == BallPair(3)
    assert s.minimal_chord_period == 6
    assert s.paper_period == 3
    assert build(AkMilnor(3, 2), PAPER).minimal_chord_period == 3


def test_projective_3_7():
    s = build(ProjectiveComplement(3, 7))
    assert s.index_of_iterate(1) == -3
    assert s.contractible_iff_divisible_by == 7
    assert s.fundamental_group_order == 7


def test_ak_3_1_index_is_4n():
    s = build(AkMilnor(3, 1))
    assert [s.index_of_iterate(N) for N in range(1, 6)] == [4, 8, 12, 16, 20]


@pytest.mark.parametrize("model, expected", [
    (AkMilnor(4, 3), (2, (Ball(4), Ball(4)))),
    (AkMilnor(4, 2), (1, (Ball(4),))),
    (ProjectiveComplement(3, 2), (2, (Ball(3), Opaque("complement component")))),
    (ProjectiveComplement(3, 7), (1, (Ball(3),))),
    (HypersurfaceComplement(3, 3), (1, (Ball(3),))),
    (HypersurfaceComplement(3, 4), (2, (Ball(3), Ball(3)))),
])
def test_real_lagrangian_components(model, expected):
    assert real_lagrangian_components(model) == expected


def test_cross_has_no_fixed_point_lagrangian():
    with pytest.raises(ModelError, match="fiber is the Lagrangian"):
        real_lagrangian_components(CrossCotangent("sphere", 4))


@pytest.mark.parametrize("weights, expected", [
    ((2, 2, 2, 2), 4),
    ((2,) * 7, 4),
    ((3, 2, 2, 2), 6),
    ((1,), 2),
    ((4, 2, 2, 2), 8),
    ((5,) * 5, 5),
])
def test_chord_spectrum_flow(weights, expected):
    assert chord_spectrum_from_flow(weights) == expected


def test_chord_spectrum_half_period_convention():
    assert chord_spectrum_from_flow((3, 2, 2, 2), PAPER) == 3
    assert chord_spectrum_from_flow((2, 2, 2, 2), PAPER) == 4
    assert chord_spectrum_from_flow((1,), PAPER) == 2


def test_morse_bott_validity():
    assert all(c.passed for c in morse_bott_validity(build(AkMilnor(3, 2))))
    assert all(c.passed for c in morse_bott_validity(build(CrossCotangent("sphere", 5))))
    assert all(c.passed for c in morse_bott_validity(build(CrossCotangent("rp", 4))))


def test_morse_bott_fabricated_third_period_fails():
    s = build(AkMilnor(3, 2))
    fake = ChordSystem(**{**s.__dict__, "minimal_chord_period": s.orbit_period / 3})
    checks = {c.name: c.passed for c in morse_bott_validity(fake)}
    assert checks["spectrum half-containment"] is False


def test_half_period_convention_fails_half_containment_for_even_k():
    checks = {c.name: c.passed for c in morse_bott_validity(build(AkMilnor(3, 2), PAPER))}
    assert checks["spectrum half-containment"] is False


def test_cross_sphere_delegates_to_a1():
    s = build(CrossCotangent("sphere", 4))
    assert s.index_of_iterate(1) == build(AkMilnor(4, 1)).index_of_iterate(1) == 6


@pytest.mark.parametrize("base, n", [("rp", 4), ("cp", 4), ("hp", 8), ("cap", 16), ("sphere", 2)])
def test_cross_refuses_index(base, n):
    s = build(CrossCotangent(base, n))
    assert not s.index_data_available
    with pytest.raises(IndexUnavailable):
        s.index_of_iterate(1)


def test_cross_rp_fundamental_group():
    s = build(CrossCotangent("rp", 5))
    assert s.fundamental_group_order == 2
    assert admitted_iterates(s, 6) == [2, 4, 6]


@pytest.mark.parametrize("bad", [
    lambda: AkMilnor(2, 1), lambda: AkMilnor(3, 0), lambda: ProjectiveComplement(2, 3),
    lambda: HypersurfaceComplement(3, 0), lambda: CrossCotangent("cp", 5), lambda: CrossCotangent("hp", 6),
    lambda: CrossCotangent("cap", 8), lambda: CrossCotangent("torus", 4), lambda: Homogeneous(4, 4),
])
def test_invalid_parameters(bad):
    with pytest.raises(ModelError):
        bad()


@pytest.mark.parametrize("text, model", [
    ("ak:n=3,k=2", AkMilnor(3, 2)),
    ("cpn-complement:n=3,k=7", ProjectiveComplement(3, 7)),
    ("hypersurface-complement:n=3,d=5", HypersurfaceComplement(3, 5)),
    ("cross:base=sphere,n=4", CrossCotangent("sphere", 4)),
    ("cross: base=RP, n=4", CrossCotangent("rp", 4)),
    ("homogeneous:n=4,k=5", Homogeneous(4, 5)),
])
def test_parse_presets(text, model):
    assert parse_model(text) == model
    assert parse_model(model.preset()) == model


@pytest.mark.parametrize("text", ["ak", "ak:n=3", "ak:n=3,k=x", "ak:n=3,k=2,d=1", "torus:n=3", "ak:n=3,n=4,k=1"])
def test_parse_errors(text):
    with pytest.raises(ValueError):
        parse_model(text)


def test_complement_mu_values():
    assert complement_mu(ProjectiveComplement(3, 7)) == -3
    assert complement_mu(ProjectiveComplement(3, 8)) == -8
    assert complement_mu(HypersurfaceComplement(3, 5)) == -2
    assert complement_mu(HypersurfaceComplement(3, 6)) == -6


@given(ak_params, st.integers(1, 20))
def test_ak_case_table_matches_crossing_count(nk, N):
    n, k = nk
    model = AkMilnor(n, k)
    assert build(model).index_of_iterate(N) == rs_chord_index(model, N) == N * (2 + (n - 2) * (k + 1))


@given(ak_params)
def test_ak_index_relation_with_weight_formulas(nk):
    n, k = nk
    weights = AkMilnor(n, k).weights
    mu = build(AkMilnor(n, k)).index_of_iterate(1)
    if k % 2 == 0:
        assert half_chord_index(weights, 1) == mu
    else:
        assert weighted_homogeneous_orbit_index(weights, 1) == mu


@given(st.integers(3, 8), st.integers(1, 12), st.integers(1, 12))
def test_projective_crossing_count(n, k, N):
    assert rs_chord_index(ProjectiveComplement(n, k), N) == N * complement_mu(ProjectiveComplement(n, k))


models = st.one_of(
    st.builds(AkMilnor, st.integers(3, 8), st.integers(1, 10)),
    st.builds(ProjectiveComplement, st.integers(3, 8), st.integers(1, 20)),
    st.builds(HypersurfaceComplement, st.integers(3, 8), st.integers(1, 20)),
    st.builds(Homogeneous, st.integers(3, 8), st.integers(0, 6).map(lambda j: 2 * j + 1)),
)


@given(models, st.integers(0, 30), st.integers(0, 30))
def test_index_additive(model, a, b):
    s = build(model)
    assert s.index_of_iterate(a + b) == s.index_of_iterate(a) + s.index_of_iterate(b)


@given(models)
def test_simply_connected_admits_everything(model):
    s = build(model)
    if s.fundamental_group_order == 1:
        assert s.contractible_iff_divisible_by == 1


@given(st.integers(3, 8), st.integers(2, 9))
def test_projective_contractibility(n, k):
    s = build(ProjectiveComplement(n, k))
    assert admitted_iterates(s, 40) == [l for l in range(1, 41) if l % k == 0]


@given(st.lists(st.integers(1, 9), min_size=1, max_size=6))
def test_spectrum_divides_full_period(weights):
    T = chord_spectrum_from_flow(weights)
    assert (2 * lcm(*weights)) % T == 0


@given(models)
def test_real_lagrangian_has_ball(model):
    count, parts = real_lagrangian_components(model)
    assert count == len(parts)
    assert Ball(model.n) in parts


@given(models)
def test_flow_derived_is_morse_bott(model):
    assert all(c.passed for c in morse_bott_validity(build(model)))


def _has_float(obj) -> bool:
    if isinstance(obj, float):
        return True
    if isinstance(obj, dict):
        return any(_has_float(v) for v in obj.values())
    if isinstance(obj, list):
        return any(_has_float(v) for v in obj)
    return False


def test_system_json_has_no_floats():
    for text in ("ak:n=3,k=2", "cross:base=rp,n=4", "cpn-complement:n=3,k=7"):
        assert not _has_float(build(parse_model(text)).to_json())


def test_convention_changes_only_period():
    a, b = build(AkMilnor(3, 2), FLOW), build(AkMilnor(3, 2), PAPER)
    assert a.unit_index == b.unit_index
    assert a.minimal_chord_period == 2 * b.minimal_chord_period
    assert build(AkMilnor(3, 3), PAPER).minimal_chord_period == build(AkMilnor(3, 3)).minimal_chord_period == 8
    assert F(8) == build(AkMilnor(3, 3)).paper_period
