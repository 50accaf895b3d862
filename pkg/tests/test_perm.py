import random
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hurwitz.perm import (
    AN,
    SN,
    ClassLabel,
    CycleType,
    Permutation,
    PermutationError,
    class_elements,
    compose,
    index,
    label_of,
    order,
    parse_perm,
    power,
    product,
    render,
    same_class,
    sign,
)

from . import oracles


def perms(max_n=8):
    return st.integers(1, max_n).flatmap(lambda n: st.permutations(range(1, n + 1)).map(Permutation))


def perm_pairs(max_n=8, k=2):
    return st.integers(1, max_n).flatmap(
        lambda n: st.tuples(*[st.permutations(range(1, n + 1)).map(Permutation)] * k)
    )


# -- parsing and rendering


def test_parse_three_cycle():
    assert parse_perm("(1 2 3)", 4).images == (2, 3, 1, 4)


def test_parse_empty_is_identity():
    assert parse_perm("", 5).is_identity()
    assert parse_perm("()", 5).is_identity()


def test_non_disjoint_cycles_compose_left_to_right():
    # 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
    assert parse_perm("(1 2)(2 3)", 3).images == (3, 1, 2)


def test_comma_separator():
    assert parse_perm("(1,2,3)", 3) == parse_perm("(1 2 3)", 3)


@pytest.mark.parametrize("text", ["(1 2 5)", "(1 1 2)", "(1 2", "1 2)", "(a b)", "(1 2)x"])
def test_parse_errors(text):
    with pytest.raises(PermutationError):
        parse_perm(text, 4)


def test_render_sorted_disjoint():
    assert render(parse_perm("(4 5)(3 1 2)", 5)) == "(1 2 3)(4 5)"
    assert render(Permutation.identity(3)) == "()"


@given(perms())
def test_render_parse_round_trip(g):
    assert parse_perm(render(g), g.degree) == g


# -- products


def test_product_of_three_cycle_triple_is_identity():
    t = [parse_perm(s, 4) for s in ("(1 2 3)", "(1 3 4)", "(1 4 2)")]
    assert product(t).is_identity()


def test_product_of_four_tuple_is_identity():
    t = [parse_perm(s, 4) for s in ("(1 2 3)", "(1 3 4)", "(1 2 4)", "(1 2 4)")]
    assert product(t).is_identity()


def test_compose_is_right_action():
    g, h = parse_perm("(1 2)", 3), parse_perm("(2 3)", 3)
    gh = compose(g, h)
    for i in range(1, 4):
        assert gh.images[i - 1] == h.images[g.images[i - 1] - 1]


def test_compose_degree_mismatch():
    with pytest.raises(PermutationError):
        compose(Permutation.identity(3), Permutation.identity(4))


@given(perm_pairs(12, 3))
def test_compose_associative(t):
    a, b, c = t
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


def test_compose_associative_exhaustive_small():
    for n in range(1, 5):
        els = [Permutation(p) for p in permutations(range(1, n + 1))]
        e = Permutation.identity(n)
        for a in els:
            assert compose(a, e) == a == compose(e, a)
            for b in els:
                ab = compose(a, b)
                for c in els[:6]:
                    assert compose(ab, c) == compose(a, compose(b, c))


@given(perms())
def test_inverse(g):
    assert compose(g, g.inverse()).is_identity()


@given(perm_pairs(8))
def test_sign_multiplicative(t):
    a, b = t
    assert sign(compose(a, b)) == sign(a) * sign(b)


def test_conjugate_convention():
    g, h = parse_perm("(1 2 3)", 4), parse_perm("(3 4)", 4)
    assert g.conjugate(h) == compose(compose(h.inverse(), g), h)
    assert g.conjugate(h) == parse_perm("(1 2 4)", 4)


# -- statistics


def test_index_examples():
    assert index(parse_perm("(1 2 3)", 7)) == 2
    assert index(Permutation.identity(4)) == 0
    assert index(parse_perm("(1 2 3 4 5)", 5)) == 4


def test_index_vs_orbit_count_random():
    rng = random.Random(1)
    for _ in range(10_000):
        n = rng.randint(1, 12)
        img = list(range(1, n + 1))
        rng.shuffle(img)
        g = Permutation(img)
        assert index(g) == sum(len(c) - 1 for c in g.cycles())
        assert index(g) == n - len(oracles.cycle_type(g.raw))


def test_sign_order_power():
    assert sign(parse_perm("(1 2 3)", 3)) == 1
    assert order(parse_perm("(1 2 3 4 5)", 5)) == 5
    assert power(parse_perm("(1 2 3)", 3), -1) == parse_perm("(1 3 2)", 3)
    assert power(parse_perm("(1 2 3)", 3), 3).is_identity()


# -- classes


def test_three_cycle_classes_in_a4():
    g, h = parse_perm("(1 2 3)", 4), parse_perm("(1 3 2)", 4)
    assert not same_class(g, h, AN)
    assert same_class(g, g, AN)
    assert same_class(g, h, SN)


def test_three_cycles_fuse_in_a5():
    g, h = parse_perm("(1 2 3)", 5), parse_perm("(1 3 2)", 5)
    assert same_class(g, h, AN)
    # brute force over all 60 conjugators
    a5 = oracles.alternating(5)
    assert any(oracles.conjugate(g.raw, x) == h.raw for x in a5)


def test_same_class_parity_error():
    with pytest.raises(ValueError):
        same_class(parse_perm("(1 2)", 4), parse_perm("(1 3)", 4), AN)


def test_same_class_sn_is_cycle_type_exhaustive():
    for n in range(1, 6):
        els = [Permutation(p) for p in permutations(range(1, n + 1))]
        for a in els:
            for b in els:
                assert same_class(a, b, SN) == (a.cycle_type() == b.cycle_type())


@pytest.mark.parametrize("n,partition", [(4, (3,)), (5, (5,))])
def test_split_classes_halve(n, partition):
    ct = CycleType(partition, n)
    plus, minus = ClassLabel(AN, ct, "+"), ClassLabel(AN, ct, "-")
    a, b = set(class_elements(plus)), set(class_elements(minus))
    assert a.isdisjoint(b) and len(a) == len(b)
    full = {p for p in permutations(range(n)) if oracles.cycle_type(p)[: len(partition)] == partition
            and sum(oracles.cycle_type(p)) == n and oracles.cycle_type(p).count(1) == n - sum(partition)}
    assert a | b == full
    # each half is one A_n conjugacy class
    an = oracles.alternating(n)
    for half in (a, b):
        x = next(iter(half))
        assert oracles.class_of(x, an) == half
    for x in a:
        assert all(same_class(Permutation.from_raw(x), Permutation.from_raw(y), AN) for y in list(a)[:3])
        assert not same_class(Permutation.from_raw(x), Permutation.from_raw(next(iter(b))), AN)


def test_plus_anchor_and_tags():
    ct = CycleType((3,), 4)
    assert ClassLabel(AN, ct, "+").contains(parse_perm("(1 2 3)", 4))
    assert label_of(parse_perm("(3 2 1)", 4), AN) == ClassLabel(AN, ct, "-")
    with pytest.raises(ValueError):
        ClassLabel(AN, ct)
    with pytest.raises(ValueError):
        ClassLabel(AN, CycleType((3,), 5), "+")
    with pytest.raises(ValueError):
        ClassLabel(AN, CycleType((2,), 4))


def test_splitting_criterion():
    assert CycleType((5,), 5).splits()
    assert CycleType((3,), 4).splits()
    assert CycleType((3,), 3).splits()
    assert not CycleType((3,), 5).splits()
    assert CycleType((5, 3), 9).splits()
    assert not CycleType((3, 3), 7).splits()


@settings(max_examples=50)
@given(st.integers(2, 7).flatmap(lambda n: st.tuples(st.just(n), st.permutations(range(1, n + 1)))))
def test_label_of_matches_membership(data):
    n, img = data
    g = Permutation(img)
    lab = label_of(g, SN)
    assert lab.contains(g) and g.raw in set(class_elements(lab))
