import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hurwitz.braid import BraidWord, word_raw
from hurwitz.clifford import CliffordElement, blade_sign
from hurwitz.errors import BudgetExceeded
from hurwitz.nielsen import INNER, RAW, NielsenSpec, NielsenTuple, a4_rep, enumerate_nielsen, normal_form_rep
from hurwitz.perm import conj, mul, parse_perm
from hurwitz.spin import (
    coalescing_tuple,
    coalescing_unit,
    lift_even,
    lifting_invariant,
    odd_lift,
    serre_invariant,
    w_invariant,
    w_of_cycle_lengths,
)

from . import oracles


def to_oracle(x: CliffordElement) -> dict:
    """Bitmask-keyed element as the oracle's sorted-index-tuple dict (1-based)."""
    out = {}
    for mask, c in x.terms.items():
        out[tuple(i + 1 for i in range(x.n) if mask >> i & 1)] = c
    return out


# -- anchors


def test_anchor_values():
    g = parse_perm("(1 2 3)", 5)
    assert lifting_invariant([g, g.inverse()]) == 1
    assert lifting_invariant([g, g, g]) == 1
    assert lifting_invariant(NielsenTuple.parse("(1 2 3)(1 3 4)(1 4 2)", 4).raw) == -1
    assert lifting_invariant(a4_rep(4, 2, 2, -1).raw) == -1
    assert lifting_invariant(a4_rep(4, 2, 2, 1).raw) == 1
    assert lifting_invariant([]) == 1


def test_w_examples():
    assert w_of_cycle_lengths([3]) == 1
    assert w_of_cycle_lengths([5]) == 1
    assert w_of_cycle_lengths([7]) == 0
    assert w_of_cycle_lengths([3, 3]) == 0
    assert w_invariant(parse_perm("(1 2 3)(4 5 6 7 8)", 8)) == 0
    with pytest.raises(ValueError):
        w_of_cycle_lengths([2])


def test_input_errors():
    g = parse_perm("(1 2 3)", 4)
    with pytest.raises(ValueError):
        lifting_invariant([g, g])
    with pytest.raises(ValueError):
        lifting_invariant([parse_perm("(1 2)(3 4)", 4)] * 2)
    with pytest.raises(ValueError):
        lift_even(parse_perm("(1 2)", 4))
    with pytest.raises(ValueError):
        odd_lift(parse_perm("(1 2)(3 4)", 4))


def test_term_cap_is_a_budget():
    with pytest.raises(BudgetExceeded):
        lifting_invariant(normal_form_rep(9, 8, 1).raw, term_cap=4)


@pytest.mark.parametrize("k,want", [(3, 1), (5, -1), (7, -1), (9, 1)])
def test_coalescing_units(k, want):
    assert coalescing_unit(k) == want
    assert lifting_invariant(coalescing_tuple(k)) == want


# -- the genus-zero formula


@pytest.mark.parametrize("n,text", [(4, "+3^3"), (5, "3^4"), (6, "3^5")])
def test_serre_formula_agrees_in_genus_zero(n, text):
    spec = NielsenSpec.parse(n, text)
    for t in enumerate_nielsen(spec, INNER).classes:
        assert serre_invariant(t) == lifting_invariant(t)


def test_serre_refuses_positive_genus():
    with pytest.raises(ValueError):
        serre_invariant(a4_rep(4, 2, 2, 1).raw)


# -- lift properties


def _lifts(n):
    return {g: lift_even(g) for g in oracles.alternating(n)}


def test_lift_is_homomorphism_up_to_sign():
    lifts = _lifts(4)
    for g, lg in lifts.items():
        for h, lh in lifts.items():
            prod = lg.mul(lh)
            target = lifts[mul(g, h)]
            assert prod == target or prod == -target


@pytest.mark.parametrize("n", [4, 5])
def test_double_cover(n):
    lifts = _lifts(n)
    group = set()
    for x in lifts.values():
        group.add(x)
        group.add(-x)
    assert len(group) == 2 * len(lifts)
    elems = list(group)
    rng = random.Random(n)
    for _ in range(400):
        a, b = rng.choice(elems), rng.choice(elems)
        assert a.mul(b) in group
    one = CliffordElement.scalar(1, n)
    assert lifts[oracles.identity(n)] == one
    kernel = [x for x in group if x.scalar_value() is not None]
    assert sorted(x.scalar_value() for x in kernel) == [-1, 1]


def test_odd_lift_has_odd_order():
    for g in oracles.alternating(5):
        if oracles.cycle_type(g)[0] % 2 == 0:
            continue
        m = max(oracles.cycle_type(g))
        assert odd_lift(g).pow(m).scalar_value() == 1


def test_odd_lift_conjugation():
    lifts = _lifts(5)
    for g in list(lifts)[:20]:
        if oracles.cycle_type(g)[0] % 2 == 0:
            continue
        for h, lh in list(lifts.items())[::7]:
            assert odd_lift(conj(g, h)) == lh.inverse().mul(odd_lift(g)).mul(lh)


# -- invariance


def test_conjugation_invariance():
    spec = NielsenSpec.parse(5, "3^5")
    a5 = oracles.alternating(5)
    s5 = [p for p in oracles.closure([(1, 0, 2, 3, 4), (1, 2, 3, 4, 0)], 5)]
    for t in enumerate_nielsen(spec, INNER).classes[::40]:
        s = lifting_invariant(t)
        for h in a5[::9] + s5[::17]:
            assert lifting_invariant(tuple(conj(g, h) for g in t)) == s


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([1, -1]), st.sampled_from([1, -1]), st.integers(0, 2), st.integers(0, 2),
       st.randoms(use_true_random=False))
def test_block_multiplicativity(s1, s2, e1, e2, rng):
    n = 6
    reps = []
    for s, e in ((s1, e1), (s2, e2)):
        t = normal_form_rep(n, n + e, s).raw
        w = BraidWord(tuple((rng.randint(1, len(t) - 1), rng.choice((1, -1))) for _ in range(8)))
        h = rng.choice(oracles.alternating(n))
        reps.append(tuple(conj(g, h) for g in word_raw(t, w)))
    assert lifting_invariant(reps[0] + reps[1]) == s1 * s2


# -- independent Clifford oracle


def test_odd_lift_matches_oracle_three_cycles():
    for g in oracles.alternating(5):
        if oracles.cycle_type(g) != (3, 1, 1):
            continue
        want = oracles.cl_lift_three_cycle(*oracles.three_cycle_points(g))
        assert to_oracle(odd_lift(g)) == want


@pytest.mark.parametrize("n,text", [(4, "+3^2 -3^2"), (4, "+3^3"), (5, "3^4")])
def test_invariant_matches_oracle(n, text):
    for t in enumerate_nielsen(NielsenSpec.parse(n, text), RAW).classes[::3]:
        assert lifting_invariant(t) == oracles.lifting_invariant_3cycles(t)


def test_blade_sign_matches_oracle():
    for a in range(32):
        for b in range(32):
            ta = tuple(i + 1 for i in range(5) if a >> i & 1)
            tb = tuple(i + 1 for i in range(5) if b >> i & 1)
            s, _ = oracles.blade_mul(ta, tb)
            assert blade_sign(a, b) == s


@settings(max_examples=60)
@given(st.lists(st.tuples(st.integers(0, 15), st.integers(-3, 3)), min_size=1, max_size=4),
       st.lists(st.tuples(st.integers(0, 15), st.integers(-3, 3)), min_size=1, max_size=4))
def test_clifford_mul_matches_oracle(xs, ys):
    x = CliffordElement(dict(xs), 4)
    y = CliffordElement(dict(ys), 4)
    got = to_oracle(x.mul(y))
    want = oracles.cl_mul(to_oracle(x), to_oracle(y))
    assert got == {k: Fraction(v) for k, v in want.items()}


def test_generators_square_to_minus_one():
    for i in range(1, 6):
        e = CliffordElement.generator(i, 5)
        assert e.mul(e) == CliffordElement.scalar(-1, 5)
        for j in range(i + 1, 6):
            f = CliffordElement.generator(j, 5)
            assert e.mul(f) == -f.mul(e)
