import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from oracles import crossing_count, lcm_all
from wfhcalc.rsindex import (
    Boundary,
    HalfInteger,
    RotationPath,
    UnresolvedCrossings,
    half_chord_index,
    link_blocks,
    orbit_index_formula,
    rs_index,
    rs_index_numeric,
    suggested_samples,
    weighted_homogeneous_orbit_index,
)

LAG, GRAPH = Boundary.LAGRANGIAN, Boundary.GRAPH

speeds = st.builds(F, st.integers(-12, 12), st.integers(1, 12))
durations = st.integers(1, 40).map(lambda m: F(m, 2))
boundaries = st.sampled_from([LAG, GRAPH])
paths = st.builds(RotationPath, st.lists(speeds, min_size=1, max_size=5), durations, boundaries)


@pytest.mark.parametrize("blocks, duration, boundary, expected", [
    ([1], 1, LAG, 1),
    ([1], 2, GRAPH, 2),
    ([0, 0, 0], 7, LAG, 0),
    ([F(1, 3), F(1, 2), F(1, 2), F(1, 2), -1], 12, GRAPH, 10),
    ([F(2, 5)], 5, LAG, 2),
    ([0], 1, LAG, 0),
])
def test_examples_exact_and_numeric(blocks, duration, boundary, expected):
    path = RotationPath(blocks, duration, boundary)
    assert rs_index(path) == expected
    assert rs_index_numeric(path, 10_000) == expected


def test_half_integers_appear():
    assert rs_index(RotationPath([1], F(1, 2), LAG)) == F(1, 2)
    assert str(rs_index(RotationPath([1], F(1, 2), LAG))) == "1/2"


def test_half_integer_arithmetic():
    h = HalfInteger.of(F(3, 2))
    assert h + 1 == F(5, 2)
    assert -h == F(-3, 2)
    assert 2 * h == 3
    assert int(HalfInteger(4)) == 2
    with pytest.raises(ValueError):
        HalfInteger.of(F(1, 3))
    with pytest.raises(ValueError):
        int(h)


def test_path_validation_and_parse():
    with pytest.raises(ValueError):
        RotationPath([], 1)
    with pytest.raises(ValueError):
        RotationPath([1], 0)
    p = RotationPath.parse("1/3,1/2,1/2,1/2,-1", "12pi", "graph")
    assert rs_index(p) == 10
    with pytest.raises(ValueError):
        RotationPath.parse("1", "12", "graph")
    with pytest.raises(ValueError):
        Boundary.parse("diagonal")


@pytest.mark.parametrize("weights, N, expected", [
    ((2, 2, 2, 2), 1, 2 * 2),  # A_1 with n = 3: 2(n-1)
    ((2,) * 6, 1, 2 * 4),
    ((3, 2, 2, 2), 1, 10),
    ((1, 1), 1, 2),
])
def test_orbit_index_examples(weights, N, expected):
    assert weighted_homogeneous_orbit_index(weights, N) == expected
    assert orbit_index_formula(weights, N) == expected


def test_half_chord_examples():
    assert half_chord_index((3, 2, 2, 2), 1) == 5
    assert half_chord_index((3, 2, 2, 2), 4) == 20
    assert half_chord_index((5, 7), 0) == 0
    assert weighted_homogeneous_orbit_index((5, 7), 0) == 0


def test_half_chord_follows_formula_for_odd_leading_weight():
    # the formula N lcm(a)(sum 1/a - 1) at a = (4,2,2,2) is 3
    assert half_chord_index((4, 2, 2, 2), 1) == 3


def test_link_blocks():
    assert link_blocks((3, 2)) == (F(1, 3), F(1, 2), F(-1))
    with pytest.raises(ValueError):
        link_blocks(())
    with pytest.raises(ValueError):
        link_blocks((0, 2))


def test_numeric_oracle_refuses_coarse_grid():
    path = RotationPath([12], 40, LAG)
    with pytest.raises(UnresolvedCrossings):
        rs_index_numeric(path, samples=200)


@given(paths)
def test_matches_enumerated_crossings(path):
    expected = crossing_count(list(path.blocks), path.start, path.end, path.boundary is GRAPH)
    assert rs_index(path).value == expected


@given(paths)
def test_additivity(path):
    parts = sum((rs_index(RotationPath([w], path.duration, path.boundary)) for w in path.blocks), HalfInteger(0))
    assert rs_index(path) == parts


@given(paths, st.integers(1, 79))
def test_catenation(path, k):
    at = path.duration * F(k, 80)
    left, right = path.split(at)
    assert rs_index(path) == rs_index(left) + rs_index(right)


@given(st.lists(st.builds(F, st.integers(-12, 12), st.integers(1, 12)), min_size=1, max_size=5),
       st.integers(1, 3))
def test_loop_lemma(blocks, m):
    # every block turns an integer number of full turns: speed * T in 2Z
    T = 2 * m * lcm_all(b.denominator for b in blocks)
    assert rs_index(RotationPath(blocks, T, LAG)) == rs_index(RotationPath(blocks, T, GRAPH))


@given(st.lists(st.integers(1, 9), min_size=1, max_size=6), st.integers(1, 4))
def test_doubling(weights, N):
    assert weighted_homogeneous_orbit_index(weights, N) == 2 * half_chord_index(weights, N)


@given(paths)
def test_orientation_reversal(path):
    assert rs_index(path.negated()) == -rs_index(path)


@settings(max_examples=200, deadline=None, derandomize=True)
@given(paths, st.integers(0, 2**31))
def test_oracle_equivalence(path, seed):
    assert rs_index_numeric(path, suggested_samples(path), seed=seed) == rs_index(path)


def test_oracle_equivalence_on_fixed_random_paths():
    rng = random.Random(20240611)
    for _ in range(200):
        blocks = [F(rng.randint(-12, 12), rng.randint(1, 12)) for _ in range(rng.randint(1, 5))]
        path = RotationPath(blocks, F(rng.randint(1, 40), 2), rng.choice([LAG, GRAPH]))
        assert rs_index_numeric(path, suggested_samples(path), seed=rng.randrange(10**6)) == rs_index(path)


def test_numeric_handles_shifted_start():
    path = RotationPath([F(-7, 3), F(5, 2)], F(19, 2), LAG, F(3, 4))
    assert rs_index(path) == 2
    assert rs_index_numeric(path, 10_000) == 2
    assert rs_index_numeric(path.with_boundary(GRAPH), 10_000) == rs_index(path.with_boundary(GRAPH))
