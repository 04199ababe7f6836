import json
import random

import pytest

from conftest import random_formula, random_minmatrix

from mmw.context import DegreeError, context
from mmw.formula import Const0, Const1, parse, render
from mmw.minmatrix import ContextMismatchError, Minmatrix, normalize
from mmw.orbit import orbit_map

K11 = context(1, 1)
K21 = context(2, 1)


def test_normalize_boolean_golden():
    m = normalize(parse("p+q+r->(p->q)r"), context(3, 0))
    assert set(m.members()) == {7, 3, 1, 0}


def test_normalize_T_golden():
    m = normalize(parse("[]p->p"), K11)
    assert set(m.members()) == {7, 6, 5, 4, 3, 1}


def test_normalize_constants():
    assert normalize(Const1(), K21).is_theorem_K()
    assert normalize(Const0(), K21).bits == 0


def test_normalize_diamond_one():
    m = normalize(parse("<>1"), K11)
    assert set(m.members()) == {7, 6, 5, 3, 2, 1}


def test_normalize_degree_and_variable_guards():
    with pytest.raises(DegreeError):
        normalize(parse("<><>p"), K11)
    with pytest.raises(ValueError):
        normalize(parse("q"), context(1, 0))


def test_boolean_ops():
    T = normalize(parse("[]p->p"), K11)
    D = normalize(parse("<>1"), K11)
    assert set((T & D).members()) == {7, 6, 5, 3, 1}
    assert (Minmatrix.full(K11) & T) == T
    assert ~Minmatrix.empty(K11) == Minmatrix.full(K11)
    assert Minmatrix.empty(K11) <= T <= Minmatrix.full(K11)


def test_context_mismatch():
    with pytest.raises(ContextMismatchError):
        Minmatrix.full(K11) & Minmatrix.full(K21)


def test_theoremhood():
    assert normalize(parse("p->p"), context(1, 0)).is_theorem_K()
    assert normalize(parse("[](p->q)->([]p->[]q)"), K21).is_theorem_K()
    assert not normalize(parse("[]p->p"), K11).is_theorem_K()


def test_to_formula():
    assert normalize(Const0(), K11).to_formula() == Const0()
    assert render(Minmatrix.from_indices(K11, [7]).to_formula()) == "p<>p<>!p"
    T = normalize(parse("[]p->p"), K11)
    cmm = Minmatrix.from_indices(K11, [7, 6, 3, 1])
    assert normalize(cmm.to_formula(), K11) == cmm
    assert normalize(T.to_formula(), K11) == T


def test_normalize_to_formula_identity(rng):
    for _ in range(300):
        m = random_minmatrix(rng, rng.choice((1, 2)), 1)
        assert normalize(m.to_formula(), m.ctx) == m


def test_promote_level0():
    m = Minmatrix.from_indices(context(1, 0), [1])      # [p]
    up = m.promote_v()
    assert up.ctx == context(2, 0) and set(up.members()) == {3, 2}
    assert Minmatrix.full(context(1, 0)).promote_v().is_theorem_K()


def test_promote_preserves_subsets_level0(rng):
    for _ in range(200):
        a = random_minmatrix(rng, 2, 0)
        b = random_minmatrix(rng, 2, 0)
        assert (a & b).promote_v() == a.promote_v() & b.promote_v()
        if a <= b:
            assert a.promote_v() <= b.promote_v()


def test_promote_orbits_coverage():
    # how the K[1,1] orbits land in K[2,1]: full or partial per target orbit
    small = orbit_map(K11)
    big = orbit_map(K21)

    def profile(label):
        up = small[label].promote_v()
        out = {}
        for lbl, orb in big.items():
            inter = up & orb
            if inter.bits:
                out[lbl] = "full" if orb <= up else "partial"
        return out

    assert profile("Vv0") == {"Vv0": "full"}
    assert profile("Dd0") == {"Dd0": "full", "Dc1": "partial", "Dw1": "partial"}
    assert profile("Dc1") == {"Dc1": "partial", "Dc2": "partial"}
    assert profile("Dw1") == {"Dw2": "full", "Dw3": "full", "Dc3": "full",
                              "Dw1": "partial", "Dc2": "partial"}


def test_render_matrix_T_cmm():
    cmm = Minmatrix.from_indices(K11, [7, 6, 3, 1])
    lines = cmm.render_matrix().splitlines()
    assert lines[0].startswith("   p |")
    cols = [c for c in lines[0].split("|")[1].split() if c != ":"]
    assert cols == ["1", "1", "0", "0"]
    rows = [[c for c in ln.split("|")[1].split() if c != ":"]
            for ln in (lines[0], lines[2], lines[3])]
    assert list(zip(*rows)) == [("1", "1", "1"), ("1", "1", "0"),
                                ("0", "1", "1"), ("0", "0", "1")]


def test_render_matrix_empty():
    assert Minmatrix.empty(K11).render_matrix() == "[ ]"


def test_render_matrix_level0():
    m = normalize(parse("p+q+r->(p->q)r"), context(3, 0))
    lines = m.render_matrix().splitlines()
    assert len(lines) == 3      # no modal separator at level 0
    assert lines[0].split("|")[1].split() == ["1", "0", "0", "0"]


def test_json_round_trip(rng):
    for _ in range(50):
        m = random_minmatrix(rng, 2, 1)
        doc = json.loads(json.dumps(m.to_json(include_hex=True)))
        assert Minmatrix.from_json(doc) == m
        doc2 = {"v": 2, "d": 1, "minterms": list(m.members())}
        assert Minmatrix.from_json(doc2) == m


def test_eq1_implication_subset(rng):
    # theoremhood of an implication is subset inclusion of the minmatrices
    from mmw.formula import Implies
    for _ in range(300):
        v = rng.choice((1, 2))
        ctx = context(v, 1)
        f = random_formula(rng, v, 3)
        g = random_formula(rng, v, 3)
        lhs = normalize(Implies(f, g), ctx).is_theorem_K()
        rhs = normalize(f, ctx) <= normalize(g, ctx)
        assert lhs == rhs


def test_powerset_lattice_structure(rng):
    # minmatrix algebra is the power set algebra of the minterm universe
    for _ in range(100):
        a = random_minmatrix(rng, 1, 1)
        b = random_minmatrix(rng, 1, 1)
        assert (a | b).members() == tuple(sorted(set(a.members()) | set(b.members())))
        assert (a & b).members() == tuple(sorted(set(a.members()) & set(b.members())))
        assert (~a).members() == tuple(i for i in range(8) if i not in a.members())
