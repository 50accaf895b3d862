import json
from pathlib import Path

import pytest

from hurwitz.config import RunConfig
from hurwitz.nielsen import INNER, ABSOLUTE, NielsenSpec, a4_rep, enumerate_nielsen
from hurwitz.reduced import ReducedSystem, ShIncidence, component_genus4, load_label_fixture, sh_incidence

from . import oracles

FIXTURES = Path(__file__).parent / "fixtures"
A4_PM = NielsenSpec.parse(4, "+3^2 -3^2")
A5_34 = NielsenSpec.parse(5, "3^4")


@pytest.fixture(scope="module")
def a4_system():
    return ReducedSystem(A4_PM, INNER, fixture_labels=True)


def _q_inv(t, i):
    a, b = t[i - 1], t[i]
    return t[: i - 1] + (b, oracles.conjugate(a, b)) + t[i + 1 :]


def test_table_golden(a4_system):
    inc = sh_incidence(A4_PM, INNER, fixture_labels=True, system=a4_system)
    assert inc.to_text() == (FIXTURES / "table1_a4_pm3.txt").read_text()


def test_blocks_and_widths(a4_system):
    inc = sh_incidence(A4_PM, INNER, fixture_labels=True, system=a4_system)
    plus, minus = inc.blocks
    assert [inc.labels[i] for i in plus] == ["O_{1,1}^4", "O_{1,3}^2", "O_{3,1}^3"]
    assert [inc.labels[i] for i in minus] == ["O_{1,4}^4", "O_{3,4}^1", "O_{3,5}^1"]
    assert [inc.widths[i] for i in plus] == [4, 2, 3]
    assert [inc.widths[i] for i in minus] == [4, 1, 1]
    assert inc.block(0) == [[1, 1, 2], [1, 0, 1], [2, 1, 0]]
    assert inc.block(1) == [[2, 1, 1], [1, 0, 0], [1, 0, 0]]


def test_incidence_symmetric_with_row_sums(a4_system):
    m = a4_system.incidence("gamma1")
    assert all(m[i][j] == m[j][i] for i in range(len(m)) for j in range(len(m)))
    assert [sum(row) for row in m] == [o.width for o in a4_system.cusps]
    assert a4_system.incidence("gamma0") == m


def test_fixed_points(a4_system):
    g0, g1 = a4_system.gamma["gamma0"], a4_system.gamma["gamma1"]
    assert not any(g0[k] == k for k in range(len(g0)))
    by_label = {o.label: o for o in a4_system.cusps}
    fixed1 = {k for k in range(len(g1)) if g1[k] == k}
    assert len(fixed1 & set(by_label["O_{1,1}^4"].members)) == 1
    assert not fixed1 & set(by_label["O_{1,4}^4"].members)
    assert len(fixed1) == 1


def test_reduced_counts(a4_system):
    assert len(a4_system.reduced) == 15
    assert a4_system.qpp_orbit_lengths() == [2] * 15


def test_reduced_count_brute_force():
    # Q'' generated by sh^2 and q1 q3^-1, applied with the oracle's own moves
    raws = set(enumerate_nielsen(A4_PM, "raw").classes)
    a4 = oracles.alternating(4)

    def sh(t):
        for i in (1, 2, 3):
            t = oracles.q_move(t, i)
        return t

    parent = {t: t for t in raws}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for t in raws:
        for u in (sh(sh(t)), _q_inv(oracles.q_move(t, 1), 3)):
            a, b = find(t), find(u)
            if a != b:
                parent[a] = b
        for h in a4:
            a, b = find(t), find(tuple(oracles.conjugate(g, h) for g in t))
            if a != b:
                parent[a] = b
    assert len({find(t) for t in raws}) == 15


def test_components(a4_system):
    comps = a4_system.components()
    plus, minus = comps
    assert (plus.invariant, plus.degree, plus.fixed_gamma0, plus.fixed_gamma1) == (1, 9, 0, 1)
    assert plus.indices == (6, 4, 6) and plus.genus == 0
    assert (minus.invariant, minus.degree) == (-1, 6)
    assert minus.indices == (4, 3, 3) and minus.genus == 0


def test_gamma_relations(a4_system):
    g0, g1, gi = (a4_system.gamma[k] for k in ("gamma0", "gamma1", "gammainf"))
    for k in range(len(g0)):
        assert g0[g0[g0[k]]] == k
        assert g1[g1[k]] == k
        assert gi[g1[g0[k]]] == k


def test_reduced_of_representatives(a4_system):
    inv_of = {c.component: c.invariant for c in a4_system.components()}
    for sign in (1, -1):
        c = a4_system.reduced_of(a4_rep(4, 2, 2, sign))
        assert inv_of[a4_system.component_of[c.id] + 1] == sign


def test_a5_reduced():
    comps = component_genus4(A5_34)
    assert len(comps) == 1
    c = comps[0]
    assert (c.degree, c.genus, c.invariant) == (18, 0, 1)
    assert sorted(c.cusp_widths) == [2, 3, 3, 5, 5]
    assert c.indices == (12, 9, 13)
    assert len(ReducedSystem(A5_34, ABSOLUTE).reduced) == 9


def test_json_shape(a4_system):
    inc = sh_incidence(A4_PM, INNER, fixture_labels=True, system=a4_system)
    d = json.loads(json.dumps(inc.to_json()))
    assert len(d["orbits"]) == 6 and len(d["matrix"]) == 6
    assert d["components"][0]["indices"] == {"gamma0": 6, "gamma1": 4, "gammainf": 6}
    assert ShIncidence.from_json(d) == inc


def test_fixture_dir_override(tmp_path):
    default = load_label_fixture(None)
    (tmp_path / "a4_pm3_labels.txt").write_text((Path(__import__("hurwitz").__file__).parent
                                                 / "data" / "a4_pm3_labels.txt").read_text())
    assert load_label_fixture(str(tmp_path)) == default
    system = ReducedSystem(A4_PM, INNER, RunConfig(fixture_dir=str(tmp_path)), fixture_labels=True)
    assert sorted(o.label for o in system.cusps)[0] == "O_{1,1}^4"


def test_fixture_labels_refused_elsewhere():
    with pytest.raises(ValueError):
        ReducedSystem(A5_34, INNER, fixture_labels=True)


def test_only_r4():
    with pytest.raises(ValueError):
        ReducedSystem(NielsenSpec.parse(5, "3^5"))
