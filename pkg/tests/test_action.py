import pytest
from hypothesis import given, settings, strategies as st

import oracles as o
from conftest import catalog
from yoshida import action as act
from yoshida import groupoid as gpd

# |Ω| per group, frozen from oracles.omega_size
OMEGA_SIZE = {"C1": 1, "C2": 3, "C3": 4, "C4": 7, "S3": 18, "K4": 11}
SUBGROUP_COUNT = {"C1": 1, "C2": 2, "C3": 2, "C4": 3, "S3": 6, "K4": 5}


@pytest.mark.parametrize("name", list(OMEGA_SIZE))
def test_frozen_values_match_oracle(name):
    table = catalog()[name][1][0][0]
    assert o.omega_size(table) == OMEGA_SIZE[name]
    assert len(o.subgroups(table)) == SUBGROUP_COUNT[name]


@pytest.mark.parametrize("name", list(OMEGA_SIZE))
def test_subgroup_enumeration(name, groupoids):
    grp = gpd.isotropy(groupoids[name], 0)
    subs = act.enumerate_subgroups(grp)
    assert len(subs) == SUBGROUP_COUNT[name]
    assert all(act.is_subgroup(grp, H.elements) for H in subs)
    assert [H.key for H in subs] == sorted(H.key for H in subs)


def test_subgroup_bound():
    grp = gpd.isotropy(gpd.cyclic(5), 0)
    with pytest.raises(act.BoundExceeded):
        act.enumerate_subgroups(grp, bound=4)


@pytest.mark.parametrize("name", list(OMEGA_SIZE))
def test_cosets_partition(name, groupoids):
    grp = gpd.isotropy(groupoids[name], 0)
    for H in act.enumerate_subgroups(grp):
        reps = act.cosets(grp, H)
        assert len(reps) * len(H) == len(grp)
        assert all(act.coset_of(grp, H, r) == r for r in reps)


def test_cosets_reject_non_subgroup(groupoids):
    grp = gpd.isotropy(groupoids["S3"], 0)
    with pytest.raises(act.NotSubgroup):
        act.cosets(grp, {0, 1, 2})


@pytest.mark.parametrize("name", list(catalog()))
@pytest.mark.parametrize("seed", [None, 0, 1])
def test_omega_is_functorial(name, seed, groupoids):
    G = groupoids[name]
    Om = act.omega(G, gpd.transversal(G, seed))
    assert Om.validate()
    expected = []
    dec = gpd.connected_components(G)
    for x in G.objects:
        table, _ = catalog()[name][1][dec.partition[x]]
        expected.append(o.omega_size(table))
    assert [Om.size(x) for x in G.objects] == expected


def test_omega_orbits_are_subgroups(groupoids):
    # each summand G_x/H is one orbit, so the orbit count is the subgroup count
    Om = act.omega(groupoids["S3"], gpd.transversal(groupoids["S3"]))
    assert len(act.orbits(Om)) == 6


def test_omega_stabilizers_are_conjugates(groupoids):
    G = groupoids["S3"]
    Om = act.omega(G, gpd.transversal(G))
    grp = gpd.isotropy(G, 0)
    for i, (_, s, j) in enumerate(Om.fiber(0)):
        H = Om.subgroups[0][s]
        k = Om.coset_reps[0][s][j]
        assert act.stabilizer(Om, 0, i).elements == {grp.conj(k, h) for h in H.elements}


def test_bad_action_rejected(groupoids):
    G = groupoids["C2"]
    with pytest.raises(act.FunctorialityViolation):
        act.GSet(G, [[0, 1]], [[0, 1], [0, 0]])
    with pytest.raises(act.FunctorialityViolation):
        act.GSet(G, [[0, 1]], [[1, 0], [1, 0]])


def test_conjugation_monoid(groupoids):
    for name in ("S3", "C2xPair2", "union3"):
        M = act.conjugation_monoid(groupoids[name])
        assert M.validate()


def test_product_and_restriction(groupoids):
    U = groupoids["union3"]
    Om = act.omega(U, gpd.transversal(U))
    X = act.gset_product(Om, Om)
    X.validate()
    assert [X.size(x) for x in U.objects] == [Om.size(x) ** 2 for x in U.objects]
    H = gpd.component_subgroupoid(U, 0)
    R = act.restrict(X, H)
    R.validate()
    assert R.size(0) == 9


def test_restrict_needs_subgroupoid(groupoids):
    X = act.point_gset(groupoids["C2"])
    with pytest.raises(gpd.TransversalMismatch):
        act.restrict(X, groupoids["C3"])


@given(st.integers(0, 1000))
@settings(max_examples=20, deadline=None)
def test_orbit_count_independent_of_seed(seed):
    G = gpd.product(gpd.cyclic(3), gpd.pair_groupoid(2))
    Om = act.omega(G, gpd.transversal(G, seed))
    assert act.orbit_count_at_bases(Om) == 2
    assert len(act.orbits(Om)) == 2
