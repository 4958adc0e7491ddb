"""Ω, the Yoshida algebra End(k[Ω²]) and its center for small cyclic groups.

The dimension is found twice: by Burnside's lemma on the base fiber and by
solving the naturality equations directly.  The center is then compared
with the center of the group algebra by dimension and by counting
idempotents modulo a few primes.
"""
import time

from yoshida import action as act
from yoshida import algebra as al
from yoshida import groupoid as gpd
from yoshida.linalg import next_primes

for n in (1, 2, 3, 4):
    G = gpd.cyclic(n)
    T = gpd.transversal(G)
    Om = act.omega(G, T)
    X = act.gset_product(Om, Om)
    t0 = time.perf_counter()
    Y = al.yoshida_algebra(G, T)
    naive = len(al.naive_intertwiners(G, X))
    ZY = al.center(Y)[1]
    Zk = al.center(al.groupoid_algebra(G))[1]
    primes = next_primes(n, 3)
    print(f"C{n}: |Ω| = {Om.size(0)}, dim Y = {Y.dim} (naive {naive}), "
          f"dim Z(Y) = {ZY.dim}, dim Z(k[C{n}]) = {Zk.dim}, "
          f"idempotents {al.fingerprint(ZY, primes)[1]} vs {al.fingerprint(Zk, primes)[1]} "
          f"[{time.perf_counter() - t0:.2f}s]")

S3 = gpd.symmetric(3)
print("S3: dim Y =", al.yoshida_dimension(S3, gpd.transversal(S3)), "(orbit count only)")
