"""Witness construction and self-verification of the chaos certificates."""

import random

import pytest

from shiftchaos import (
    Alphabet,
    FiniteWord,
    MetricParams,
    PeriodicSeq,
    SplicedSeq,
    UnstableSetId,
    WindowPaddedSeq,
    li_yorke_pair,
    member_with_future,
    periodic_density_witness,
    periodic_point,
    poisson_recurrence_witness,
    sensitivity_witness,
    stable_set_convergence,
    transitivity_witness,
    two_sided_cylinder,
    universal_member,
    unstable_set_convergence,
    verify_certificate,
    whole_space,
)
from shiftchaos.certify import random_two_sided_target, random_unstable_set
from shiftchaos.sequences import enumeration_prefix

from conftest import brute_distance, scan_for_block

A2 = Alphabet(2)
P = MetricParams(0.5)


def ones_past():
    return UnstableSetId(A2, PeriodicSeq(FiniteWord((1,)), 0))


def as_payload(cert):
    return {"kind": cert.kind, "data": cert.data}


def test_unstable_set_rejects_universal_past():
    from shiftchaos import UniversalSeq

    with pytest.raises(TypeError):
        UnstableSetId(A2, UniversalSeq(2))


def test_members_share_the_past():
    u_set = UnstableSetId(A2, PeriodicSeq(FiniteWord((1, 2)), 0))
    member = universal_member(u_set)
    assert member.window(-6, 0) == u_set.past.window(-6, 0)


# -- transitivity -----------------------------------------------------------


def test_transitivity_whole_space_needs_no_shift():
    cert = transitivity_witness(ones_past(), whole_space())
    assert cert.data["shift_count"] == 0
    assert verify_certificate(as_payload(cert)).ok


def test_transitivity_concrete_target_scan_oracle():
    u_set = ones_past()
    target = two_sided_cylinder((1, 2, 1), -1)
    cert = transitivity_witness(u_set, target)
    p = cert.data["shift_count"]
    member = universal_member(u_set)
    assert member.shift(p).window(-1, 1) == (1, 2, 1)
    # oracle: scanning the materialized future also finds the word at p - 1
    prefix = list(enumeration_prefix(2, 0, 64))
    occurrence = scan_for_block(prefix, (1, 2, 1))
    assert occurrence is not None and member.window(p - 1, p + 1) == (1, 2, 1)
    assert verify_certificate(as_payload(cert)).ok


def test_transitivity_all_sixteen_targets():
    u_set = UnstableSetId(A2, WindowPaddedSeq(FiniteWord((2, 1)), -1, 1))
    for num in range(16):
        word = tuple((num >> i) % 2 + 1 for i in range(4))
        target = two_sided_cylinder(word, -1)  # window [-1, 2]
        cert = transitivity_witness(u_set, target)
        p = cert.data["shift_count"]
        assert universal_member(u_set).shift(p).window(-1, 2) == word
        assert verify_certificate(as_payload(cert)).ok


def test_transitivity_rejects_future_cylinder_targets():
    from shiftchaos import future_cylinder

    with pytest.raises(ValueError):
        transitivity_witness(ones_past(), future_cylinder((1,)))


# -- periodic density -------------------------------------------------------


def test_density_witness_of_periodic_point_is_the_point():
    s = periodic_point((1,))
    cert = periodic_density_witness(s, 0.5, P)
    assert cert.data["distance_value"] == 0.0
    assert verify_certificate(as_payload(cert)).ok


def test_density_depth_for_small_delta():
    member = universal_member(ones_past())
    cert = periodic_density_witness(member, 1e-3, P)
    assert cert.data["k"] == 11  # 2**-11 + 2**-12 < 1e-3, and 10 is too shallow
    assert cert.data["distance_value"] + cert.data["distance_error"] < 1e-3
    witness = PeriodicSeq(
        FiniteWord(tuple(cert.data["witness"]["block"])), cert.data["witness"]["phase"]
    )
    assert brute_distance(member, witness, 0.5) < 1e-3
    assert verify_certificate(as_payload(cert)).ok


def test_density_universal_member_delta_tenth():
    member = universal_member(ones_past())
    cert = periodic_density_witness(member, 0.1, P)
    assert cert.data["k"] == 4
    assert cert.data["distance_value"] < 0.1
    assert not cert.data["degenerate"]
    assert verify_certificate(as_payload(cert)).ok


def test_density_degenerate_flag_for_huge_delta():
    cert = periodic_density_witness(periodic_point((1, 2)), 3.0, P)
    assert cert.data["degenerate"]
    assert verify_certificate(as_payload(cert)).ok


# -- sensitivity ------------------------------------------------------------


def test_sensitivity_quarter_eps():
    member = universal_member(ones_past())
    cert = sensitivity_witness(member, 0.25, A2, P)
    assert cert.data["k"] == 3  # 2**-3 < 1/4, 2**-2 is not
    assert cert.data["close_value"] + cert.data["close_error"] < 0.25
    assert cert.data["far_value"] - cert.data["far_error"] >= 0.5
    assert verify_certificate(as_payload(cert)).ok


def test_sensitivity_degenerate_for_eps_above_diameter():
    cert = sensitivity_witness(periodic_point((1, 2)), 2.5, A2, P)
    assert cert.data["k"] == 0
    assert cert.data["degenerate"]
    assert verify_certificate(as_payload(cert)).ok


def test_sensitivity_periodic_point_small_eps():
    cert = sensitivity_witness(periodic_point((1, 2)), 1e-2, A2, P)
    assert cert.data["k"] == 7  # smallest k with 2**-k < 1e-2
    d = cert.data
    assert d["close_value"] == 0.5 ** 7  # exact: flipped tail weight
    assert d["far_value"] == 1.0
    assert verify_certificate(as_payload(cert)).ok


def test_sensitivity_partner_agrees_then_differs():
    s = periodic_point((2, 1, 1))
    cert = sensitivity_witness(s, 0.1, A2, P)
    from shiftchaos import sequence_from_payload

    partner = sequence_from_payload(cert.data["partner"])
    k = cert.data["k"]
    assert partner.window(-10, k) == s.window(-10, k)
    assert all(
        partner.symbol_at(j) != s.symbol_at(j) for j in range(k + 1, k + 20)
    )


# -- recurrence -------------------------------------------------------------


def test_poisson_first_return_matches_brute_scan():
    u_set = ones_past()
    cert = poisson_recurrence_witness(u_set, 3, P)
    u = universal_member(u_set)
    # oracle: earliest future occurrence of the window around the dot
    window = u.window(-1, 1)
    symbols = u.window(1, 200)
    first = None
    for q in range(1, 150):
        if tuple(symbols[q - 1 : q + 2]) == window:
            first = q
            break
    assert cert.data["times"][0] == first + 1
    assert verify_certificate(as_payload(cert)).ok


def test_poisson_times_increase_thresholds_decrease():
    cert = poisson_recurrence_witness(ones_past(), 10, P)
    times = cert.data["times"]
    thresholds = cert.data["thresholds"]
    assert all(a < b for a, b in zip(times, times[1:]))
    assert all(a > b for a, b in zip(thresholds, thresholds[1:]))
    for value, err, thr in zip(
        cert.data["distance_values"], cert.data["distance_errors"], thresholds
    ):
        assert value + err < thr
    assert verify_certificate(as_payload(cert)).ok


def test_poisson_with_periodic_past():
    u_set = UnstableSetId(A2, PeriodicSeq(FiniteWord((1, 2)), 0))
    cert = poisson_recurrence_witness(u_set, 6, P)
    assert verify_certificate(as_payload(cert)).ok


def test_poisson_rejects_bad_depth():
    with pytest.raises(ValueError):
        poisson_recurrence_witness(ones_past(), 0, P)


# -- scrambled pairs --------------------------------------------------------


def test_li_yorke_horizon_hundred():
    cert = li_yorke_pair(ones_past(), 100, P)
    assert cert.data["min_value"] < 2.0 ** -5
    assert cert.data["max_value"] >= 0.5
    assert verify_certificate(as_payload(cert)).ok


def test_li_yorke_horizon_thousand():
    cert = li_yorke_pair(ones_past(), 1000, P)
    assert cert.data["min_value"] < 2.0 ** -8
    assert cert.data["max_value"] >= 0.5
    assert verify_certificate(as_payload(cert)).ok


def test_li_yorke_rejects_short_horizon():
    with pytest.raises(ValueError):
        li_yorke_pair(ones_past(), 5, P)


def test_li_yorke_degenerate_pair_fails_verification():
    cert = li_yorke_pair(ones_past(), 100, P)
    tampered = {"kind": cert.kind, "data": dict(cert.data)}
    tampered["data"]["t"] = tampered["data"]["s"]
    result = verify_certificate(tampered)
    assert not result.ok
    assert any("identical" in f for f in result.failures)


# -- convergence along stable / unstable sets --------------------------------


def test_stable_convergence_equal_points():
    s = periodic_point((1, 2))
    cert = stable_set_convergence(s, s, 10, P)
    assert all(row["value"] == 0.0 for row in cert.data["rows"])
    assert verify_certificate(as_payload(cert)).ok


def test_stable_convergence_single_mismatch_closed_form():
    s = WindowPaddedSeq(FiniteWord((1,)), 0, 1)
    t = WindowPaddedSeq(FiniteWord((2,)), 0, 1)
    cert = stable_set_convergence(s, t, 20, P)
    for row in cert.data["rows"]:
        assert row["value"] == 0.5 ** (row["n"] + 1)
        assert row["error"] == 0.0
    assert cert.data["rows"][-1]["value"] < 1e-5
    assert verify_certificate(as_payload(cert)).ok


def test_stable_convergence_rejects_disjoint_futures():
    with pytest.raises(ValueError):
        stable_set_convergence(periodic_point((1,)), periodic_point((2,)), 5, P)


def test_unstable_convergence_mirrors():
    u_set = ones_past()
    s = member_with_future(u_set, WindowPaddedSeq(FiniteWord((1, 2)), 1, 1))
    t = member_with_future(u_set, WindowPaddedSeq(FiniteWord((2, 1)), 1, 1))
    cert = unstable_set_convergence(s, t, 20, P)
    rows = cert.data["rows"]
    assert rows[-1]["value"] < 1e-5
    assert all(r1["value"] >= r2["value"] for r1, r2 in zip(rows, rows[1:]))
    assert verify_certificate(as_payload(cert)).ok


def test_unstable_convergence_rejects_disjoint_pasts():
    with pytest.raises(ValueError):
        unstable_set_convergence(periodic_point((1,)), periodic_point((2,)), 5, P)


# -- tampering and the devaney sweep ----------------------------------------


def test_tampered_distance_fails_verification():
    cert = periodic_density_witness(universal_member(ones_past()), 0.1, P)
    tampered = {"kind": cert.kind, "data": dict(cert.data)}
    tampered["data"]["distance_value"] = 0.0
    assert not verify_certificate(tampered).ok


def test_unknown_kind_fails_verification():
    assert not verify_certificate({"kind": "nonsense", "data": {}}).ok


@pytest.mark.parametrize("m", [2, 3])
def test_devaney_triple_on_random_unstable_sets(m):
    alphabet = Alphabet(m)
    rng = random.Random(99 + m)
    for _ in range(20):
        u_set = random_unstable_set(rng, alphabet)
        member = universal_member(u_set)
        for _ in range(10):
            target = random_two_sided_target(rng, alphabet, 2, 3)
            cert = transitivity_witness(u_set, target)
            assert verify_certificate(as_payload(cert)).ok
        for delta in (0.1, 1e-2, 1e-3):
            cert = periodic_density_witness(member, delta, P)
            assert verify_certificate(as_payload(cert)).ok
        for eps in (0.25, 1e-2):
            cert = sensitivity_witness(member, eps, alphabet, P)
            assert cert.data["far_value"] - cert.data["far_error"] >= 0.5
            assert verify_certificate(as_payload(cert)).ok
