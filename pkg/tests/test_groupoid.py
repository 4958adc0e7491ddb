from itertools import product as iproduct

import pytest
from hypothesis import given, settings, strategies as st

import oracles as o
from conftest import catalog
from yoshida import groupoid as gpd


def _non_associative_magma():
    """First 3-element table with two-sided identity 0 that is not associative."""
    for a, b, c, d in iproduct(range(3), repeat=4):
        t = [[0, 1, 2], [1, a, b], [2, c, d]]
        if any(t[t[x][y]][z] != t[x][t[y][z]] for x in range(3) for y in range(3) for z in range(3)):
            return t
    raise AssertionError("no non-associative magma found")


# -- validation ---------------------------------------------------------------


@pytest.mark.parametrize("name", list(catalog()))
def test_catalog_groupoids_validate(name, groupoids):
    G = groupoids[name]
    H = gpd.validate(G.to_raw())
    assert (H.n_objects, H.n_morphisms) == (G.n_objects, G.n_morphisms)
    assert G.n_morphisms == o.morphism_count(catalog()[name][1])


@pytest.mark.parametrize("n", range(1, 7))
def test_cyclic_groups(n):
    G = gpd.cyclic(n)
    assert G.n_objects == 1 and G.n_morphisms == n
    assert len(gpd.isotropy(G, 0).conjugacy_classes()) == n


@pytest.mark.parametrize("n", range(1, 5))
def test_pair_groupoids(n):
    P = gpd.pair_groupoid(n)
    assert P.n_morphisms == n * n
    assert all(len(P.homset(x, y)) == 1 for x in P.objects for y in P.objects)


def test_non_associative_table_rejected():
    with pytest.raises(gpd.AssociativityViolation):
        gpd.group_as_groupoid(_non_associative_magma())


def test_identity_not_first_rejected():
    # element 1 is the identity here, but the format requires index 0
    with pytest.raises(gpd.BadIdentity):
        gpd.group_as_groupoid([[1, 0], [0, 1]])


def test_monoid_without_inverse_rejected():
    with pytest.raises(gpd.NoInverse):
        gpd.group_as_groupoid([[0, 1], [1, 1]])


def test_missing_composite_rejected():
    raw = gpd.pair_groupoid(2).to_raw()
    raw["compose"] = raw["compose"][1:]
    with pytest.raises(gpd.MissingComposite):
        gpd.validate(raw)


def test_wrong_endpoint_composite_rejected():
    raw = gpd.pair_groupoid(2).to_raw()
    g, f, h = raw["compose"][0]
    wrong = next(m["id"] for m in raw["morphisms"] if m["id"] != h)
    raw["compose"][0] = [g, f, wrong]
    with pytest.raises(gpd.InvalidComposite):
        gpd.validate(raw)


@pytest.mark.parametrize("text", [
    "", "x\n0", "2\n0 1\n", "2\n0 1\n1 a\n", "2\n0 1\n1 0 1\n", "2\n0 1\n1 2\n", "0\n",
])
def test_bad_table_format_rejected(text):
    with pytest.raises(gpd.TableFormatError):
        gpd.parse_table(text)


def test_malformed_raw_rejected():
    with pytest.raises(gpd.TableFormatError):
        gpd.validate({"objects": ["a"]})


def test_table_file_roundtrip(data_dir):
    G = gpd.read_table(data_dir / "s3.tbl")
    assert G.n_morphisms == 6
    assert len(gpd.isotropy(G, 0).conjugacy_classes()) == 3


# -- constructors -------------------------------------------------------------


def test_symmetric_table_matches_oracle():
    table, _ = gpd.symmetric_table(3)
    assert table == o.symmetric_table(3)


def test_product_and_union_sizes(groupoids):
    U = groupoids["union3"]
    assert U.n_objects == 6 and U.n_morphisms == 8 + 3 + 9
    assert gpd.connected_components(U).n_components == 3


def test_full_subgroupoid_inclusion(groupoids):
    U = groupoids["union3"]
    H = gpd.component_subgroupoid(U, 1)
    objs, mors = H.inclusion
    assert H.parent is U
    for g in H.morphisms:
        for f, gf in H.comp[g].items():
            assert U.compose(mors[g], mors[f]) == mors[gf]


# -- components, transversals, structure --------------------------------------


@pytest.mark.parametrize("name", list(catalog()))
def test_morphism_count_formula(name, groupoids):
    G = groupoids[name]
    assert gpd.morphism_count_formula(G) == G.n_morphisms


@pytest.mark.parametrize("name", list(catalog()))
@pytest.mark.parametrize("seed", [None, 0, 1, 2])
def test_structure_iso_every_component(name, seed, groupoids):
    G = groupoids[name]
    T = gpd.transversal(G, seed)
    for i in range(gpd.connected_components(G).n_components):
        assert gpd.structure_iso_check(G, T, component=i)


def test_structure_iso_needs_connected(groupoids):
    U = groupoids["union3"]
    with pytest.raises(gpd.NotConnected):
        gpd.structure_iso_check(U, gpd.transversal(U))


def test_transversal_mismatch(groupoids):
    T = gpd.transversal(groupoids["C2"])
    with pytest.raises(gpd.TransversalMismatch):
        T.check_for(groupoids["C3"])


@given(st.integers(min_value=0, max_value=10_000))
@settings(max_examples=25, deadline=None)
def test_lambda_identities(seed):
    G = gpd.product(gpd.cyclic(3), gpd.pair_groupoid(3))
    T = gpd.transversal(G, seed)
    for x in G.objects:
        assert T.lam(x, x) == G.identity[x]
        for y in G.objects:
            assert G.inverse[T.lam(x, y)] == T.lam(y, x)
            for z in G.objects:
                assert G.compose(T.lam(y, z), T.lam(x, y)) == T.lam(x, z)


@given(st.integers(min_value=0, max_value=10_000))
@settings(max_examples=25, deadline=None)
def test_seeded_transversal_is_deterministic(seed):
    G = gpd.product(gpd.cyclic(2), gpd.pair_groupoid(3))
    assert gpd.transversal(G, seed).connectors == gpd.transversal(G, seed).connectors


def test_isotropy_group_laws(groupoids):
    grp = gpd.isotropy(groupoids["S3"], 0)
    for a in grp.elements:
        assert grp.mul(a, grp.inv(a)) == grp.identity
        for b in grp.elements:
            assert grp.conj(b, a) == grp.mul(grp.mul(b, a), grp.inv(b))
    assert sorted(grp.order_of(a) for a in grp.elements) == [1, 2, 2, 2, 3, 3]
