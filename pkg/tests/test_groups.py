import random
from math import factorial

from hypothesis import given, settings
from hypothesis import strategies as st

from hurwitz.groups import an_generators, elements, generates, group_order, is_transitive, orbits
from hurwitz.perm import AN, SN

from . import oracles


def gen_sets():
    return st.integers(2, 6).flatmap(
        lambda n: st.tuples(st.just(n), st.lists(st.permutations(range(n)).map(tuple), min_size=1, max_size=3))
    )


@settings(max_examples=120, deadline=None)
@given(gen_sets())
def test_group_order_matches_closure(data):
    n, gens = data
    assert group_order(gens, n) == len(oracles.closure(gens, n))


def test_group_order_random_large():
    rng = random.Random(7)
    for _ in range(30):
        n = rng.randint(5, 7)
        gens = []
        for _ in range(2):
            img = list(range(n))
            rng.shuffle(img)
            gens.append(tuple(img))
        assert group_order(gens, n) == len(oracles.closure(gens, n))


def test_known_orders():
    for n in range(3, 9):
        assert group_order(an_generators(n), n) == factorial(n) // 2


@settings(max_examples=80, deadline=None)
@given(gen_sets())
def test_generates_matches_closure(data):
    n, gens = data
    if n < 3:
        return  # A_2 is trivial and not transitive
    size = len(oracles.closure(gens, n))
    alt = {p for p in oracles.alternating(n)}
    if all(g in alt for g in gens):
        assert generates(gens, AN, n) == (size == len(alt))
    assert generates(gens, SN, n) == (size == 2 * len(alt))


def test_orbits_and_transitivity():
    a = oracles.from_cycles([(1, 2)], 5)
    b = oracles.from_cycles([(3, 4)], 5)
    assert sorted(map(sorted, orbits([a, b], 5))) == [[0, 1], [2, 3], [4]]
    assert not is_transitive([a, b], 5)
    assert is_transitive([oracles.from_cycles([(1, 2, 3, 4, 5)], 5)], 5)


def test_elements_an():
    for n in (3, 4, 5):
        assert sorted(elements(an_generators(n), n)) == sorted(oracles.alternating(n))
