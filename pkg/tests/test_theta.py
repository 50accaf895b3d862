import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hurwitz.nielsen import NielsenTuple, a4_rep, normal_form_rep
from hurwitz.theta import (
    EVEN,
    MAX_R,
    ODD,
    HalfCanClass,
    HypOrbitReport,
    act,
    all_classes,
    component_theta_parity,
    expected_orbit_sizes,
    hyp_orbits,
    normalize,
    parity,
    regular_w,
    right_regular_image,
)

from . import oracles

RS = [6, 8, 10, 12, 14]


@pytest.mark.parametrize("r", RS)
def test_parity_matches_h0_oracle(r):
    for c in all_classes(r):
        assert parity(c) == oracles.mumford_parity(r, c.subset, c.m), c


@pytest.mark.parametrize("r", RS)
def test_orbit_sizes_match_oracle(r):
    count, sizes = oracles.theta_orbit_sizes(r)
    rep = hyp_orbits(r)
    assert rep.sizes() == sizes == expected_orbit_sizes(r)
    assert count == 4 ** ((r - 2) // 2) == len(all_classes(r))


def test_expected_sizes_examples():
    assert expected_orbit_sizes(6) == [6, 10]
    assert expected_orbit_sizes(8) == [1, 28, 35]
    # C(15,7); C(15,5)+C(15,6); C(15,3)+C(15,4); C(15,1)+C(15,2); the fixed s = 0 class
    assert expected_orbit_sizes(16) == [1, 120, 1820, 6435, 8008]


@pytest.mark.parametrize("r", RS)
def test_even_odd_totals(r):
    g = (r - 2) // 2
    rep = hyp_orbits(r)
    assert rep.even == 2 ** (2 * g - 1) + 2 ** (g - 1)
    assert rep.odd == 2 ** (2 * g - 1) - 2 ** (g - 1)


def test_normalize_examples():
    # r = 8, g = 3: degree 2
    assert normalize([2, 0, 0, 0, 0, 0, 0, 0]) == HalfCanClass(8, frozenset(), 2)
    assert normalize([1, 1, 0, 0, 0, 0, 0, 0]) == HalfCanClass(8, frozenset({1, 2}), 0)
    # four points on |S| > g: take the complement
    c = normalize([1, 1, 1, 1, 0, 0, 0, -2])
    assert c.subset == frozenset({5, 6, 7}) and c.m == -1
    with pytest.raises(ValueError):
        normalize([1, 0, 0, 0, 0, 0, 0, 0])


def test_act_examples():
    c = HalfCanClass(6, frozenset({1}), 0)
    assert act(1, c) == HalfCanClass(6, frozenset({2}), 0)
    assert act(3, c) == c
    with pytest.raises(ValueError):
        act(6, c)


@pytest.mark.parametrize("r", [6, 8, 10])
def test_act_is_involution(r):
    for c in all_classes(r):
        for i in range(1, r):
            assert act(i, act(i, c)) == c


@settings(max_examples=60)
@given(st.sampled_from(RS).flatmap(lambda r: st.tuples(st.just(r), st.lists(st.integers(-3, 3), min_size=r - 1, max_size=r - 1))))
def test_normalize_agrees_with_oracle_key(data):
    r, head = data
    g = (r - 2) // 2
    v = head + [g - 1 - sum(head)]
    c = normalize(v)
    assert oracles.theta_key(c.vector()) == oracles.theta_key(v)
    assert parity(c) == oracles.mumford_parity(r, c.subset, c.m)


def test_report_json_round_trip():
    rep = hyp_orbits(10)
    back = HypOrbitReport.from_json(json.loads(json.dumps(rep.to_json())))
    assert back == rep
    assert rep.to_json()["even"] == 136


def test_r_limits():
    for bad in (4, 7, MAX_R + 2):
        with pytest.raises(ValueError):
            hyp_orbits(bad)


def test_class_validation():
    with pytest.raises(ValueError):
        HalfCanClass(8, frozenset({1, 2, 3, 4}), -2)
    with pytest.raises(ValueError):
        HalfCanClass(8, frozenset({1}), 0)


# -- component parity


def test_regular_w():
    g = (1, 2, 0, 3, 4)
    assert regular_w(g, 60) == 0  # 20 three-cycles
    assert regular_w(g, 3) == 1
    assert regular_w((1, 2, 3, 4, 0), 5) == 1
    with pytest.raises(ValueError):
        regular_w((1, 0, 2), 2)


def test_right_regular_image_cycle_type():
    elems = oracles.alternating(4)
    img = right_regular_image([(1, 2, 0, 3)], elems)[0]
    assert oracles.cycle_type(img) == (3, 3, 3, 3)


@pytest.mark.parametrize("n,r", [(5, 5), (5, 6), (6, 6), (7, 7), (7, 8)])
def test_component_parity_rules(n, r):
    for sign in (1, -1):
        t = normal_form_rep(n, r, sign).raw
        assert component_theta_parity(t, "inner") == (EVEN if sign == 1 else ODD)
        flip = 1 if r % 2 == 0 else -1
        assert component_theta_parity(t, "absolute") == (EVEN if sign * flip == 1 else ODD)


def test_component_parity_a4():
    # A4: regular image of a 3-cycle is four 3-cycles, so w = 0
    for sign in (1, -1):
        t = a4_rep(4, 2, 2, sign).raw
        assert component_theta_parity(t, "inner") == (EVEN if sign == 1 else ODD)
    with pytest.raises(ValueError):
        component_theta_parity(NielsenTuple.parse("(1 2 3)(1 3 4)(1 4 2)", 4).raw, "other")
