"""Build a few groupoids, split them into components and compare the center
of the groupoid algebra with the conjugacy classes of the isotropy groups."""
from yoshida import algebra as al
from yoshida import groupoid as gpd

C2, C3, Pair = gpd.cyclic(2), gpd.cyclic(3), gpd.pair_groupoid
G = gpd.disjoint_union([gpd.product(C2, Pair(2)), C3, Pair(3)])
print(G)

dec = gpd.connected_components(G)
T = gpd.transversal(G, seed=0)
for i, b in enumerate(dec.representatives):
    grp = gpd.isotropy(G, b)
    print(f"component {i}: {len(dec.members(i))} objects, isotropy of order {len(grp)}, "
          f"{len(grp.conjugacy_classes())} classes, "
          f"structure check {gpd.structure_iso_check(G, T, component=i)}")

# each component contributes one central class sum per conjugacy class
basis, Z = al.center(al.groupoid_algebra(G))
print("dim Z(k[G]) =", Z.dim)
for v in basis:
    print("  ", " + ".join(str(G.mor_labels[g]) for g in sorted(v)))

f, rep = al.decompose_by_components(G, al.groupoid_algebra)
print("center splits over components:", rep["ok"] and rep["surjective"] and rep["injective"])
