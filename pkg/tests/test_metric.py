"""The weighted mismatch metric and its cylinder geometry."""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftchaos import (
    Alphabet,
    FiniteWord,
    MetricParams,
    PeriodicSeq,
    SplicedSeq,
    UniversalSeq,
    WindowPaddedSeq,
    check_diameter_condition,
    check_separation,
    cylinder_diameter,
    distance,
    future_cylinder,
    past_cylinder,
    periodic_point,
    set_distance,
    space_diameter,
    two_sided_cylinder,
    whole_space,
)
from shiftchaos.metric import separation_holds_everywhere, weight, weight_above, weight_below

from conftest import brute_distance, random_sequence

P = MetricParams(0.5)


def test_metric_params_validation():
    with pytest.raises(ValueError):
        MetricParams(0.0)
    with pytest.raises(ValueError):
        MetricParams(1.0)


def test_weights():
    assert weight(1, 0.5) == 0.5
    assert weight(0, 0.5) == 0.5
    assert weight(-1, 0.5) == 0.25
    assert weight_above(1, 0.5) == 1.0
    assert weight_below(0, 0.5) == 1.0
    assert space_diameter(P) == 2.0


def test_distance_to_self_is_exact_zero():
    for s in (periodic_point((1, 2)), UniversalSeq(2), WindowPaddedSeq(FiniteWord((2,)), 0, 1)):
        d = distance(s, s, P)
        assert d.value == 0.0 and d.error == 0.0


def test_distance_single_future_mismatch():
    s = WindowPaddedSeq(FiniteWord(()), 1, 1)
    t = WindowPaddedSeq(FiniteWord((2,)), 1, 1)
    d = distance(s, t, P)
    assert d.value == 0.5 and d.error == 0.0
    assert brute_distance(s, t, 0.5) == 0.5


def test_distance_mismatch_everywhere_sums_geometric_tails():
    s = periodic_point((1,))
    t = periodic_point((2,))
    d = distance(s, t, P)
    assert d.value == 2.0 and d.error == 0.0
    assert abs(brute_distance(s, t, 0.5, depth=64) - 2.0) < 1e-12


def test_distance_jointly_periodic_pair_is_exact():
    s = periodic_point((1, 2))
    t = periodic_point((1, 1, 2))
    d = distance(s, t, P)
    assert d.error == 0.0
    assert abs(d.value - brute_distance(s, t, 0.5, depth=80)) < 1e-15


def test_distance_with_universal_future_is_certified():
    s = UniversalSeq(2)
    t = periodic_point((2, 1))
    d = distance(s, t, P, tol=1e-12)
    assert 0 < d.error <= 1e-12
    assert abs(d.value - brute_distance(s, t, 0.5, depth=80)) <= d.error + 1e-13


def test_distance_requires_positive_tolerance():
    with pytest.raises(ValueError):
        distance(periodic_point((1,)), periodic_point((2,)), P, tol=0.0)


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_metric_axioms_on_random_triples(seed):
    rng = random.Random(seed)
    x, y, z = (random_sequence(rng, 2) for _ in range(3))
    dxy = distance(x, y, P)
    dyx = distance(y, x, P)
    assert dxy.value == dyx.value
    dxz = distance(x, z, P)
    dyz = distance(y, z, P)
    slack = dxy.error + dyz.error + dxz.error + 1e-12
    assert dxz.value <= dxy.value + dyz.value + slack


def test_metric_axioms_bulk_sample():
    rng = random.Random(1)
    for _ in range(1000):
        x, y = random_sequence(rng, 3), random_sequence(rng, 3)
        d = distance(x, y, P)
        assert d.value >= 0.0
        assert d.value == distance(y, x, P).value


def test_cylinder_diameter_whole_space():
    assert cylinder_diameter(whole_space(), P) == 2.0


def test_cylinder_diameter_window_closed_form_and_sampled_sup():
    c = two_sided_cylinder((1, 1, 1), -1)
    diam = cylinder_diameter(c, P)
    assert diam == 0.75
    rng = random.Random(7)
    sup = 0.0
    for _ in range(200):
        tails = [tuple(rng.randint(1, 2) for _ in range(20)) for _ in range(2)]
        members = [
            WindowPaddedSeq(FiniteWord((1, 1, 1) + tail), -1, rng.randint(1, 2))
            for tail in tails
        ]
        d = distance(members[0], members[1], P)
        assert d.value <= diam + 1e-15
        sup = max(sup, d.value)
    assert sup < diam  # random pairs approach the sup from below
    # adversarial pair: identical window, mismatch at every free position
    adv = distance(
        WindowPaddedSeq(FiniteWord((1, 1, 1)), -1, 1),
        WindowPaddedSeq(FiniteWord((1, 1, 1)), -1, 2),
        P,
    )
    assert adv.value == diam


def test_cylinder_diameter_one_sided_windows():
    # future window [1, 2] frees the whole past (weight 1) plus positions > 2
    assert cylinder_diameter(future_cylinder((1, 2)), P) == 1.0 + 0.25
    # past window [-1, 0] frees the whole future plus positions < -1
    assert cylinder_diameter(past_cylinder((1, 2)), P) == 1.0 + 0.25


def test_diameter_condition_report():
    report = check_diameter_condition(Alphabet(2), P, 10)
    assert report.passed
    last = report.rows[-1]
    assert last.diameter == 2.0 ** -10 + 2.0 ** -11
    assert report.rows[0].diameter == 0.75
    values = [row.diameter for row in report.rows]
    assert values == sorted(values, reverse=True)


def test_diameter_condition_other_base():
    report = check_diameter_condition(Alphabet(2), MetricParams(0.25), 5)
    assert report.passed
    expected = 0.25 ** 6 / 0.75 + 0.25 ** 7 / 0.75
    assert math.isclose(report.rows[-1].diameter, expected, rel_tol=1e-12)


def test_set_distance_identical_cylinders():
    c = future_cylinder((1, 2, 1))
    assert set_distance(c, c, P) == 0.0


def test_set_distance_first_symbol_flip_with_sampling_oracle():
    c1, c2 = future_cylinder((1,)), future_cylinder((2,))
    assert set_distance(c1, c2, P) == 0.5
    rng = random.Random(3)
    best = math.inf
    for _ in range(10_000):
        tail1 = tuple(rng.randint(1, 2) for _ in range(12))
        tail2 = tuple(rng.randint(1, 2) for _ in range(12))
        s = WindowPaddedSeq(FiniteWord((1,) + tail1), 1, 1)
        t = WindowPaddedSeq(FiniteWord((2,) + tail2), 1, 1)
        d = distance(s, t, P)
        assert d.value >= 0.5 - 1e-15
        best = min(best, d.value)
    assert best == 0.5  # the infimum is attained by members agreeing elsewhere


def test_set_distance_disjoint_windows_share_members():
    assert set_distance(past_cylinder((2, 2)), future_cylinder((1, 1)), P) == 0.0


def test_separation_returns_weight_of_first_position():
    result = check_separation(Alphabet(2), P, 1)
    assert result.eps0 == 0.5
    assert tuple(result.witness[0].fixed) == (1,)
    assert tuple(result.witness[1].fixed) == (2,)
    assert set_distance(result.witness[0], result.witness[1], P) == 0.5


def test_separation_degree_three_exhaustive_oracle():
    a = Alphabet(2)
    result = check_separation(a, P, 3)
    assert result.eps0 == 0.5
    from shiftchaos.cylinders import all_words
    from shiftchaos.metric import flip_first

    cyls = {w: future_cylinder(w) for w in all_words(a, 3)}
    for w, c in cyls.items():
        # every word has a partner at distance >= eps0 (exhaustive max)
        assert max(set_distance(c, other, P) for other in cyls.values()) >= result.eps0
        # the flip-first family achieves exactly eps0
        assert set_distance(c, cyls[flip_first(w, 2)], P) == result.eps0


def test_separation_other_alphabet_and_base():
    result = check_separation(Alphabet(3), MetricParams(0.25), 2)
    assert result.eps0 == 0.25
    assert separation_holds_everywhere(Alphabet(3), MetricParams(0.25), 2, 0.25)


def test_separation_eps0_consistent_across_degrees():
    for n in (1, 2, 3, 5):
        result = check_separation(Alphabet(2), P, n)
        assert result.eps0 == 0.5
        assert result.eps0 <= space_diameter(P)


def test_stable_pair_converges_under_forward_shifts():
    s = WindowPaddedSeq(FiniteWord((1,)), 0, 1)
    t = WindowPaddedSeq(FiniteWord((2,)), 0, 1)  # differ only at position 0
    for n in range(0, 15):
        d = distance(s.shift(n), t.shift(n), P)
        assert d.value == 0.5 ** (n + 1) and d.error == 0.0
    assert distance(s.shift(11), t.shift(11), P).value < 1e-3


def test_unstable_pair_converges_under_backward_shifts():
    s = WindowPaddedSeq(FiniteWord((1,)), 1, 1)
    t = WindowPaddedSeq(FiniteWord((2,)), 1, 1)  # differ only at position 1
    for n in range(0, 15):
        d = distance(s.shift(-n), t.shift(-n), P)
        assert d.value == 0.5 ** (n + 1) and d.error == 0.0


def test_huge_shifts_fall_back_to_certified_truncation():
    u = SplicedSeq(periodic_point((1,)), UniversalSeq(2))
    d = distance(u.shift(10_000_000), u, P, tol=1e-9)
    assert d.error <= 1e-9
    assert 0.0 <= d.value <= 2.0
