"""The crossed Burnside ring of a finite groupoid.

Elements are integer (or rational) coefficient lists over the canonical
class list of pairs ``(H, a)`` with ``H ≤ G_b`` and ``a`` centralizing ``H``,
one block per connected component.  Products are computed two ways: on
labeled G-sets over the whole groupoid (fiber product, labels multiplied,
then orbit normal form), and per component by the double-coset expansion.
"""
from __future__ import annotations

import weakref
from dataclasses import dataclass

from .action import (
    ActionError,
    GSet,
    cosets,
    enumerate_subgroups,
    orbits,
    stabilizer,
)
from .algebra import (
    AlgebraMap,
    SCAlgebra,
    center,
    direct_product,
    groupoid_algebra,
    is_central,
    verify_ring_map,
)
from .groupoid import (
    FiniteGroupoid,
    Transversal,
    connected_components,
    isotropy,
    isotropy_groupoid,
    transversal,
)


class EquivarianceViolation(ActionError):
    pass


class ClassListMismatch(ValueError):
    pass


@dataclass(frozen=True)
class CrossedBasisClass:
    """Conjugacy class of ``(H, a)`` at the base object of a component."""

    component: int
    base: int
    subgroup: tuple   # sorted morphism ids
    label: int        # morphism id of a ∈ C(H)
    canonical: bool = True

    @property
    def key(self):
        return (-len(self.subgroup), self.subgroup, self.label)

    def describe(self, G: FiniteGroupoid) -> str:
        H = ",".join(str(G.mor_labels[h]) for h in self.subgroup)
        return f"[{G.obj_labels[self.base]}; {{{H}}}, {G.mor_labels[self.label]}]"


class LabeledGSet:
    """A G-set with an equivariant labeling of points by isotropy elements.

    ``theta[x][i]`` is a morphism id in ``G(x, x)``; equivariance means
    ``theta[y][act(g)(i)] = g ∘ theta[x][i] ∘ g⁻¹`` for ``g: x -> y``.
    """

    def __init__(self, gset: GSet, theta, check=True):
        self.gset = gset
        self.theta = tuple(tuple(t) for t in theta)
        if check:
            self.validate()

    @property
    def base(self):
        return self.gset.base

    def validate(self):
        G, X = self.gset.base, self.gset
        for x in G.objects:
            if len(self.theta[x]) != X.size(x):
                raise EquivarianceViolation(f"labeling at {G.obj_labels[x]!r} has wrong length")
            for t in self.theta[x]:
                if G.dom[t] != x or G.cod[t] != x:
                    raise EquivarianceViolation(f"label {G.mor_labels[t]!r} is not a loop at "
                                                f"{G.obj_labels[x]!r}")
        for g in G.morphisms:
            x, y, gi = G.dom[g], G.cod[g], G.inverse[g]
            for i, j in enumerate(X.act[g]):
                if self.theta[y][j] != G.compose(G.compose(g, self.theta[x][i]), gi):
                    raise EquivarianceViolation(
                        f"labeling not equivariant along {G.mor_labels[g]!r} at point {i}")
        return True


def labeled_disjoint_union(parts) -> LabeledGSet:
    parts = list(parts)
    G = parts[0].base
    fibers, theta, act = [], [], []
    for x in G.objects:
        fibers.append([(k, p) for k, L in enumerate(parts) for p in L.gset.fibers[x]])
        theta.append([t for L in parts for t in L.theta[x]])
    for g in G.morphisms:
        y = G.cod[g]
        row, oy = [], 0
        for L in parts:
            row += [oy + j for j in L.gset.act[g]]
            oy += L.gset.size(y)
        act.append(row)
    return LabeledGSet(GSet(G, fibers, act, check=False), theta, check=False)


def labeled_product(L1: LabeledGSet, L2: LabeledGSet) -> LabeledGSet:
    """Fiber product with labels multiplied in the isotropy group."""
    G = L1.base
    if L2.base is not G:
        raise ActionError("labeled G-sets over different groupoids")
    X, Y = L1.gset, L2.gset
    fibers, theta, act = [], [], []
    for x in G.objects:
        fibers.append([(p, q) for p in X.fibers[x] for q in Y.fibers[x]])
        theta.append([G.compose(s, t) for s in L1.theta[x] for t in L2.theta[x]])
    for g in G.morphisms:
        ax, ay = X.act[g], Y.act[g]
        m = Y.size(G.cod[g])
        act.append([ax[i] * m + ay[j] for i in range(len(ax)) for j in range(len(ay))])
    return LabeledGSet(GSet(G, fibers, act, check=False), theta, check=False)


class CrossedBurnsideRing:
    """Class list, models and both multiplication rules for one groupoid."""

    def __init__(self, G: FiniteGroupoid):
        self.groupoid = G
        self.decomposition = connected_components(G)
        self.classes = []
        self.lookup = {}      # (component, frozenset H, a) -> class index
        self.units = []
        for comp, b in enumerate(self.decomposition.representatives):
            grp = isotropy(G, b)
            subs = enumerate_subgroups(grp)
            pairs = []
            for H in subs:
                for a in grp.elements:
                    if all(grp.mul(a, h) == grp.mul(h, a) for h in H.elements):
                        pairs.append((H.elements, a))
            orbit_of = {}
            for H, a in pairs:
                if (H, a) in orbit_of:
                    continue
                orb = {(frozenset(grp.conj(g, h) for h in H), grp.conj(g, a))
                       for g in grp.elements}
                rep = min(orb, key=lambda p: (-len(p[0]), tuple(sorted(p[0])), p[1]))
                for q in orb:
                    orbit_of[q] = rep
            reps = sorted(set(orbit_of.values()),
                          key=lambda p: (-len(p[0]), tuple(sorted(p[0])), p[1]))
            offset = len(self.classes)
            for k, (H, a) in enumerate(reps):
                self.classes.append(CrossedBasisClass(comp, b, tuple(sorted(H)), a))
            for q, rep in orbit_of.items():
                self.lookup[(comp, q[0], q[1])] = offset + reps.index(rep)
            self.units.append(self.lookup[(comp, frozenset(grp.elements), grp.identity)])
        self._table = {}
        self._models = {}
        self._algebra = None

    def __len__(self):
        return len(self.classes)

    def index_of(self, component, H, a) -> int:
        return self.lookup[(component, frozenset(H), a)]

    def unit(self) -> list:
        v = [0] * len(self)
        for i in self.units:
            v[i] = 1
        return v

    # -- labeled models ---------------------------------------------------

    def standard_model(self, i) -> LabeledGSet:
        """Transitive model of class ``i``: cosets ``gH`` of ``G(b, y)``, ``θ(gH) = g a g⁻¹``."""
        if i in self._models:
            return self._models[i]
        G = self.groupoid
        c = self.classes[i]
        H = c.subgroup
        members = set(self.decomposition.members(c.component))
        fibers, theta, where = [], [], []
        for y in G.objects:
            pts = []
            if y in members:
                seen = set()
                for g in sorted(G.homset(c.base, y)):
                    if g not in seen:
                        coset = frozenset(G.compose(g, h) for h in H)
                        seen |= coset
                        pts.append(g)
            fibers.append(pts)
            theta.append([G.compose(G.compose(g, c.label), G.inverse[g]) for g in pts])
            where.append({G.compose(g, h): k for k, g in enumerate(pts) for h in H})
        act = []
        for u in G.morphisms:
            x, y = G.dom[u], G.cod[u]
            act.append([where[y][G.compose(u, g)] for g in fibers[x]])
        L = LabeledGSet(GSet(G, [[G.mor_labels[g] for g in f] for f in fibers], act), theta)
        self._models[i] = L
        return L

    def normalize(self, L: LabeledGSet) -> list:
        """Coordinates of a labeled G-set: one class per orbit."""
        G = self.groupoid
        if L.base is not G:
            raise ClassListMismatch("labeled G-set is over a different groupoid")
        L.validate()
        dec = self.decomposition
        v = [0] * len(self)
        for orb in orbits(L.gset):
            comp = dec.partition[orb[0][0]]
            b = dec.representatives[comp]
            point = min(p for x, p in orb if x == b)
            H = stabilizer(L.gset, b, point)
            a = L.theta[b][point]
            grp = H.ambient
            if any(grp.mul(a, h) != grp.mul(h, a) for h in H.elements):
                raise EquivarianceViolation("label does not centralize the stabilizer")
            v[self.lookup[(comp, H.elements, a)]] += 1
        return v

    # -- multiplication ---------------------------------------------------

    def basis_product(self, i, j) -> list:
        """Product of two classes via the labeled fiber product."""
        if (i, j) not in self._table:
            if self.classes[i].component != self.classes[j].component:
                self._table[(i, j)] = [0] * len(self)
            else:
                self._table[(i, j)] = self.normalize(
                    labeled_product(self.standard_model(i), self.standard_model(j)))
        return self._table[(i, j)]

    def basis_product_oracle(self, i, j) -> list:
        """Double-coset expansion ``Σ_{HgK} [H ∩ gKg⁻¹, a·gbg⁻¹]`` at the base group."""
        ci, cj = self.classes[i], self.classes[j]
        v = [0] * len(self)
        if ci.component != cj.component:
            return v
        grp = isotropy(self.groupoid, ci.base)
        H, K = frozenset(ci.subgroup), frozenset(cj.subgroup)
        seen = set()
        for g in grp.elements:
            if g in seen:
                continue
            seen |= {grp.mul(grp.mul(h, g), k) for h in H for k in K}
            gKg = {grp.conj(g, k) for k in K}
            inter = frozenset(H & gKg)
            label = grp.mul(ci.label, grp.conj(g, cj.label))
            v[self.lookup[(ci.component, inter, label)]] += 1
        return v

    def _bilinear(self, u, v, rule):
        n = len(self)
        if len(u) != n or len(v) != n:
            raise ClassListMismatch(f"expected vectors of length {n}")
        out = [0] * n
        for i, a in enumerate(u):
            if a == 0:
                continue
            for j, b in enumerate(v):
                if b == 0:
                    continue
                for k, c in enumerate(rule(i, j)):
                    if c:
                        out[k] += a * b * c
        return out

    def multiply(self, u, v) -> list:
        return self._bilinear(u, v, self.basis_product)

    def multiply_oracle(self, u, v) -> list:
        return self._bilinear(u, v, self.basis_product_oracle)

    def algebra(self) -> SCAlgebra:
        if self._algebra is not None:
            return self._algebra
        G = self.groupoid
        n = len(self)
        table = {}
        for i in range(n):
            for j in range(n):
                prod = {k: c for k, c in enumerate(self.basis_product(i, j)) if c}
                if prod:
                    table[(i, j)] = prod
        A = SCAlgebra([c.describe(G) for c in self.classes], table,
                      {i: 1 for i in self.units}, name="B^c(G)")
        A.ring = self
        self._algebra = A
        return A


_rings = weakref.WeakKeyDictionary()


def crossed_burnside(G: FiniteGroupoid) -> CrossedBurnsideRing:
    ring = _rings.get(G)
    if ring is None:
        ring = _rings[G] = CrossedBurnsideRing(G)
    return ring


def enumerate_classes(G: FiniteGroupoid) -> list[CrossedBasisClass]:
    return list(crossed_burnside(G).classes)


def standard_model(c, G: FiniteGroupoid) -> LabeledGSet:
    ring = crossed_burnside(G)
    i = c if isinstance(c, int) else ring.classes.index(c)
    return ring.standard_model(i)


def normalize(L: LabeledGSet) -> list:
    return crossed_burnside(L.base).normalize(L)


def multiply(u, v, G: FiniteGroupoid) -> list:
    return crossed_burnside(G).multiply(u, v)


def multiply_oracle(u, v, G: FiniteGroupoid) -> list:
    return crossed_burnside(G).multiply_oracle(u, v)


def burnside_algebra(G: FiniteGroupoid) -> SCAlgebra:
    return crossed_burnside(G).algebra()


def component_decompose_burnside(G: FiniteGroupoid):
    """Verified isomorphism ``B^c(G) -> ∏_components B^c(G_b)`` (``G_b`` the base isotropy group).

    Returns ``(map, report)``.
    """
    ring = crossed_burnside(G)
    whole = ring.algebra()
    local_rings, local_maps = [], []
    for b in ring.decomposition.representatives:
        Gb = isotropy_groupoid(G, b)
        local_rings.append(crossed_burnside(Gb))
        local_maps.append({g: i for i, g in enumerate(Gb.inclusion[1])})
    P = direct_product([r.algebra() for r in local_rings], "prod B^c(G_b)")
    cols = []
    for c in ring.classes:
        m = local_maps[c.component]
        k = local_rings[c.component].index_of(0, [m[h] for h in c.subgroup], m[c.label])
        cols.append({P.offsets[c.component] + k: 1})
    f = AlgebraMap(whole, P, cols, name="burnside-decomposition")
    return f, verify_ring_map(f)


def rho_images(G: FiniteGroupoid, T: Transversal | None = None) -> list[dict]:
    """``[b; H, a] ↦ Σ_y Σ_{t ∈ G_b/H} (g_y t) a (g_y t)⁻¹`` as vectors of ``k[G]``."""
    T = T or transversal(G)
    T.check_for(G)
    ring = crossed_burnside(G)
    out = []
    for c in ring.classes:
        grp = isotropy(G, c.base)
        reps = cosets(grp, c.subgroup)
        img = {}
        for y in ring.decomposition.members(c.component):
            for t in reps:
                s = G.compose(T.connectors[y], t)
                m = G.compose(G.compose(s, c.label), G.inverse[s])
                img[m] = img.get(m, 0) + 1
        out.append(img)
    return out


def rho(G: FiniteGroupoid, T: Transversal | None = None):
    """``ρ: B^c_k(G) -> Z(k[G])`` with exact checks.

    Returns ``(map, report)``; the report adds centrality of every image and
    the surjectivity verdict (rank against ``dim Z(k[G])``).
    """
    images = rho_images(G, T)
    kG = groupoid_algebra(G)
    _, Z = center(kG)
    central = [is_central(kG, v) for v in images]
    report = {"images_central": all(central)}
    if not all(central):
        bad = central.index(False)
        report["noncentral_class"] = crossed_burnside(G).classes[bad].describe(G)
        f = AlgebraMap(burnside_algebra(G), Z, [{} for _ in images], name="rho")
        report.update(ok=False)
        return f, report
    f = AlgebraMap(burnside_algebra(G), Z, [Z.space.coords(v) for v in images], name="rho")
    report.update(verify_ring_map(f))
    report["center_dim"] = Z.dim
    report["ok"] = bool(report["ok"] and report["images_central"] and f.surjective)
    return f, report
