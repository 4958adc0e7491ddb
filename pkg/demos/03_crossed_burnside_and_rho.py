"""The crossed Burnside ring of S3 and the map ρ onto the center of k[S3]."""
from yoshida import burnside as bs
from yoshida import groupoid as gpd

G = gpd.symmetric(3)
ring = bs.crossed_burnside(G)
print(f"{len(ring)} basis classes [H, a]:")
for c in ring.classes:
    print("  ", c.describe(G))

# products through labeled fiber products agree with the double-coset formula
agree = all(ring.basis_product(i, j) == ring.basis_product_oracle(i, j)
            for i in range(len(ring)) for j in range(len(ring)))
print("fiber product = double coset formula on every pair:", agree)

f, rep = bs.rho(G)
print(f"rho: unital {rep['unital']}, multiplicative {rep['multiplicative']}, "
      f"rank {rep['rank']} = dim Z(k[S3]) {rep['center_dim']}")
for c, img in zip(ring.classes, bs.rho_images(G)):
    terms = " + ".join(f"{k}*{G.mor_labels[g]}" if k != 1 else str(G.mor_labels[g])
                       for g, k in sorted(img.items()))
    print(f"   {c.describe(G)} -> {terms}")
