from itertools import combinations

import pytest

from conftest import random_minmatrix

from mmw.context import context
from mmw.minmatrix import Minmatrix, normalize
from mmw.formula import parse
from mmw.lattice import (STAR, SystemCoord, build_hasse, cmm_from_coords,
                         collapse, coverage, dependency_rules_hold,
                         enumerate_cmms, map_to_star, surviving_orbit_sums)
from mmw.orbit import label_order, orbit_map
from mmw.substitution import (Substitution, all_substitutions,
                              critical_substitution, enumerate_primes)

K11 = context(1, 1)


def test_coordinate_validation():
    SystemCoord("K", 0, -1).resolve(4)
    SystemCoord("K", 3, 2).resolve(4)
    with pytest.raises(ValueError):
        SystemCoord("K", 1, -1).resolve(4)      # x > y+1
    with pytest.raises(ValueError):
        SystemCoord("K", 4, 3).resolve(4)
    with pytest.raises(ValueError):
        SystemCoord("X", 0, 0)


def test_collapse_T():
    m = collapse(normalize(parse("[]p->p"), K11))
    assert set(m.members()) == {7, 6, 3, 1}          # Dd + Dw


def test_collapse_full_and_empty():
    assert collapse(Minmatrix.full(K11)).is_theorem_K()
    assert collapse(Minmatrix.empty(K11)).bits == 0


def test_collapse_dc_dw_shrinks():
    om = orbit_map(K11)
    m = om["Dc1"] | om["Dw1"]
    out = collapse(m)
    assert out.bits != m.bits and out.bits == 0


def test_collapse_idempotent_monotone(rng):
    for _ in range(400):
        v = rng.choice((1, 2))
        m = random_minmatrix(rng, v, 1)
        c = collapse(m)
        assert c <= m
        assert collapse(c) == c
        sub = Minmatrix(m.ctx, m.bits & random_minmatrix(rng, v, 1).bits)
        assert collapse(sub) <= c


def test_collapse_default_equals_generic_default(rng):
    # fast path against the plain fixpoint loop over primes + critical
    for v in (1, 2):
        subs = list(enumerate_primes(v)) + [critical_substitution(v)]
        for _ in range(120):
            m = random_minmatrix(rng, v, 1)
            assert collapse(m) == collapse(m, subs)


def test_collapse_default_equals_exhaustive(rng):
    # the sufficiency of primes + one critical substitution at v <= 2
    for v in (1, 2):
        subs = all_substitutions(v)
        for _ in range(40):
            m = random_minmatrix(rng, v, 1)
            assert collapse(m) == collapse(m, subs)


def test_first_variable_transplant_is_too_weak():
    # moving the critical construction onto p_0 under this bit encoding
    # yields a weaker substitution: with it, the broken-staircase sum
    # Dd+Dw1+Dw3 survives, so it cannot replace the critical substitution
    ctx0 = context(2, 0)
    p0 = ctx0.var_mask(0)
    weak = Substitution(2, (p0 & ~(1 << 3) & ~(1 << 2), ctx0.var_mask(1)))
    subs = list(enumerate_primes(2)) + [weak]
    om = orbit_map(context(2, 1))
    broken = om["Dd0"] | om["Dw1"] | om["Dw3"]
    assert collapse(broken, subs) == broken          # spurious fixpoint
    assert collapse(broken).bits != broken.bits       # the real default trims it
    survivors = surviving_orbit_sums(2, subs)
    assert len(survivors) == 54                       # 28 real + 26 spurious


def test_cmm_from_coords_examples():
    assert cmm_from_coords(SystemCoord("K", 0, STAR), 1).orbits == \
        {"Vv0", "Dd0", "Dw1"}
    assert cmm_from_coords(SystemCoord("D", 0, 0), 1).orbits == {"Dd0"}
    assert cmm_from_coords(SystemCoord("K", 2, STAR), 2).orbits == \
        {"Vv0", "Dd0", "Dc1", "Dw1", "Dc2", "Dw2", "Dw3"}
    with pytest.raises(ValueError):
        cmm_from_coords(SystemCoord("K", 2, 0), 2)


def test_enumerate_cmms_counts():
    for v, want in ((0, 4), (1, 10), (2, 28), (3, 88)):
        cmms = enumerate_cmms(v)
        n = 1 << v
        assert len(cmms) == want == n * (n + 3)
        assert len({c.coord for c in cmms}) == want
        assert len({c.orbits for c in cmms}) == want


def test_enumerated_cmms_are_fixpoints():
    for v in (1, 2, 3):
        for c in enumerate_cmms(v):
            assert collapse(c.matrix) == c.matrix


def test_exhaustive_census():
    surv = surviving_orbit_sums(1, all_substitutions(1))
    assert len(surv) == 10
    assert set(surv) == {c.orbits for c in enumerate_cmms(1)}
    surv = surviving_orbit_sums(2, all_substitutions(2))
    assert len(surv) == 28
    assert set(surv) == {c.orbits for c in enumerate_cmms(2)}


def test_default_census_matches():
    for v in (1, 2):
        assert set(surviving_orbit_sums(v)) == {c.orbits for c in enumerate_cmms(v)}


def test_union_of_cmms_is_cmm():
    for v in (1, 2, 3):
        sets = {c.orbits for c in enumerate_cmms(v)}
        for a, b in combinations(sets, 2):
            assert (a | b) in sets


def test_level1_meet_is_intersection():
    for v in (1, 2):
        cmms = enumerate_cmms(v)
        for a, b in combinations(cmms, 2):
            inter = a.matrix & b.matrix
            assert collapse(inter) == inter


def test_dependency_rules_characterize_cmms():
    for v in (1, 2, 3):
        n = 1 << v
        coords = {frozenset(c.orbits) for c in enumerate_cmms(v)}
        labels = label_order(n)
        admitted = set()
        for r in range(len(labels) + 1):
            for combo in combinations(labels, r):
                if dependency_rules_hold(frozenset(combo), n):
                    admitted.add(frozenset(combo))
        assert admitted == coords


def test_coverage_identity_and_critical():
    from mmw.substitution import identity
    for v in (1, 2, 3):
        ctx = context(v, 1)
        crit = critical_substitution(v)
        labels = label_order(ctx.n)
        for j in labels:
            assert coverage(ctx, "Vv0", j, crit) == ("full" if j == "Vv0" else "none")
        dd_row = {j: coverage(ctx, "Dd0", j, crit) for j in labels}
        assert dd_row["Dd0"] == "full"
        # with more than two sections the spillover coverage is partial
        want = "partial" if v >= 2 else "full"
        assert dd_row["Dw1"] == want and dd_row["Dc1"] == want
        assert all(c == "none" for j, c in dd_row.items()
                   if j not in ("Dd0", "Dw1", "Dc1"))
        for i in labels:
            for j in labels:
                assert coverage(ctx, i, j, identity(v)) == \
                    ("full" if i == j else "none")


def test_map_to_star():
    assert map_to_star(SystemCoord("K", 1, 1), 1) == SystemCoord("K", STAR, STAR)
    assert map_to_star(SystemCoord("K", 0, 1), 1) == SystemCoord("K", 0, STAR)
    assert map_to_star(SystemCoord("K", 1, 2), 2) == SystemCoord("K", 1, 2)
    assert map_to_star(SystemCoord("D", 3, 3), 2) == SystemCoord("D", STAR, STAR)


def test_hasse_diagram_v1():
    hasse = build_hasse(1)
    assert len(hasse.nodes) == 10
    bottoms = [c for c in hasse.nodes if not c.orbits]
    assert len(bottoms) == 1 and bottoms[0].coord == SystemCoord("D", 0, -1)
    tops = [c for c in hasse.nodes if len(c.orbits) == 4]
    assert len(tops) == 1 and tops[0].coord == SystemCoord("K", 1, 1)
    # Ver covers F, the difference being Vv0
    assert (SystemCoord("D", 0, -1), SystemCoord("K", 0, -1), "Vv0") in hasse.edges
    join = hasse.join(SystemCoord("K", 0, -1), SystemCoord("D", 0, 0))
    assert join.orbits == {"Vv0", "Dd0"}             # Ver v Triv = K_triv
    meet = hasse.meet(SystemCoord("K", 0, 1), SystemCoord("D", 1, 1))
    assert meet.orbits == {"Dd0", "Dw1"}


def test_hasse_edges_are_single_orbit_steps():
    for v in (1, 2):
        hasse = build_hasse(v)
        byc = {c.coord: c for c in hasse.nodes}
        for a, b, orb in hasse.edges:
            assert byc[b].orbits - byc[a].orbits == {orb}
            assert byc[a].orbits < byc[b].orbits
