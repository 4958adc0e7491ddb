"""Groupoid actions on finite sets and monoids, subgroup and coset machinery,
and the coset-space G-set Ω.

A G-set stores, for every object ``x``, a list of point labels, and for every
morphism ``g: x -> y`` a tuple ``act[g]`` with ``act[g][i]`` the index in
``fiber(y)`` of the image of point ``i`` of ``fiber(x)``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .groupoid import (
    FiniteGroupoid,
    GroupoidError,
    IsotropyGroup,
    Transversal,
    TransversalMismatch,
    connected_components,
    isotropy,
)


class ActionError(GroupoidError):
    pass


class FunctorialityViolation(ActionError):
    pass


class NotSubgroup(ActionError):
    pass


class BoundExceeded(Exception):
    pass


SUBGROUP_BOUND = 48


class GSet:
    """A functor from a finite groupoid to finite sets."""

    def __init__(self, base: FiniteGroupoid, fibers, act, check=True):
        self.base = base
        self.fibers = tuple(tuple(f) for f in fibers)
        self.act = tuple(tuple(a) for a in act)
        if check:
            self.validate()

    def fiber(self, x):
        return self.fibers[x]

    def size(self, x):
        return len(self.fibers[x])

    def validate(self):
        G = self.base
        if len(self.fibers) != G.n_objects or len(self.act) != G.n_morphisms:
            raise ActionError("fiber or action data does not match the groupoid")
        for g in G.morphisms:
            a = self.act[g]
            if len(a) != self.size(G.dom[g]) or sorted(a) != list(range(self.size(G.cod[g]))):
                raise FunctorialityViolation(f"action of {G.mor_labels[g]!r} is not a bijection")
        for x in G.objects:
            if self.act[G.identity[x]] != tuple(range(self.size(x))):
                raise FunctorialityViolation(f"identity at {G.obj_labels[x]!r} acts nontrivially")
        for g, f in G.composable_pairs():
            ag, af, agf = self.act[g], self.act[f], self.act[G.compose(g, f)]
            if any(agf[i] != ag[af[i]] for i in range(len(af))):
                raise FunctorialityViolation(
                    f"act({G.mor_labels[g]!r}∘{G.mor_labels[f]!r}) != act ∘ act")
        return True

    def __repr__(self):
        return f"GSet(fiber sizes {[len(f) for f in self.fibers]})"


class GMonoid(GSet):
    """A G-set whose fibers are monoids and whose action is by homomorphisms.

    ``units[x]`` is the index of the unit in ``fiber(x)`` and
    ``mult[x][i][j]`` the index of the product of points ``i`` and ``j``.
    """

    def __init__(self, base, fibers, act, units, mult, check=True):
        self.units = tuple(units)
        self.mult = tuple(tuple(tuple(r) for r in m) for m in mult)
        super().__init__(base, fibers, act, check)

    def validate(self):
        super().validate()
        G = self.base
        for g in G.morphisms:
            a, x, y = self.act[g], G.dom[g], G.cod[g]
            if a[self.units[x]] != self.units[y]:
                raise FunctorialityViolation(f"{G.mor_labels[g]!r} does not preserve the unit")
            mx, my = self.mult[x], self.mult[y]
            n = self.size(x)
            for i in range(n):
                for j in range(n):
                    if a[mx[i][j]] != my[a[i]][a[j]]:
                        raise FunctorialityViolation(
                            f"{G.mor_labels[g]!r} is not a monoid homomorphism")
        return True


@dataclass(frozen=True)
class Subgroup:
    ambient: IsotropyGroup
    elements: frozenset

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self.elements

    @property
    def key(self):
        return (len(self.elements), tuple(sorted(self.elements)))

    def sorted_elements(self):
        return tuple(sorted(self.elements))


def is_subgroup(group: IsotropyGroup, elements) -> bool:
    S = set(elements)
    if group.identity not in S or not S <= set(group.elements):
        return False
    return all(group.mul(a, b) in S for a in S for b in S)


def closure(group: IsotropyGroup, gens) -> frozenset:
    out = {group.identity}
    frontier = list(out)
    gens = list(gens)
    while frontier:
        new = []
        for a in frontier:
            for s in gens:
                c = group.mul(a, s)
                if c not in out:
                    out.add(c)
                    new.append(c)
        frontier = new
    return frozenset(out)


def enumerate_subgroups(group: IsotropyGroup, bound: int = SUBGROUP_BOUND) -> list[Subgroup]:
    """All subgroups, ordered by size then by sorted element tuple."""
    if len(group) > bound:
        raise BoundExceeded(f"group of order {len(group)} exceeds subgroup bound {bound}")
    found = {frozenset([group.identity])}
    frontier = list(found)
    while frontier:
        new = []
        for H in frontier:
            for g in group.elements:
                if g not in H:
                    K = closure(group, list(H) + [g])
                    if K not in found:
                        found.add(K)
                        new.append(K)
        frontier = new
    subs = [Subgroup(group, H) for H in found]
    subs.sort(key=lambda s: s.key)
    return subs


def conjugate_subgroup(group_to: IsotropyGroup, lam, H: Subgroup) -> Subgroup:
    """``λ H λ⁻¹`` for a morphism ``λ`` from ``H``'s object to ``group_to``'s object."""
    G = group_to.groupoid
    inv = G.inverse[lam]
    return Subgroup(group_to, frozenset(G.compose(G.compose(lam, h), inv) for h in H.elements))


def cosets(group: IsotropyGroup, H) -> list[int]:
    """Left coset representatives ``kH``, each the smallest element of its coset."""
    elems = H.elements if isinstance(H, Subgroup) else frozenset(H)
    if not is_subgroup(group, elems):
        raise NotSubgroup("not a subgroup of the given group")
    reps, seen = [], set()
    for k in sorted(group.elements):
        if k not in seen:
            seen.update(group.mul(k, h) for h in elems)
            reps.append(k)
    return reps


def coset_of(group: IsotropyGroup, H: Subgroup, k) -> int:
    return min(group.mul(k, h) for h in H.elements)


def orbits(X: GSet) -> list[list[tuple[int, int]]]:
    """Orbits as sorted lists of ``(object, point)``, ordered by their minimum."""
    G = X.base
    out_mors = [[] for _ in G.objects]
    for g in G.morphisms:
        out_mors[G.dom[g]].append(g)
    seen = set()
    result = []
    for x in G.objects:
        for i in range(X.size(x)):
            if (x, i) in seen:
                continue
            orb = {(x, i)}
            queue = deque([(x, i)])
            while queue:
                y, j = queue.popleft()
                for g in out_mors[y]:
                    q = (G.cod[g], X.act[g][j])
                    if q not in orb:
                        orb.add(q)
                        queue.append(q)
            seen |= orb
            result.append(sorted(orb))
    return result


def stabilizer(X: GSet, x: int, point: int) -> Subgroup:
    grp = isotropy(X.base, x)
    return Subgroup(grp, frozenset(u for u in grp.elements if X.act[u][point] == point))


def conjugation_monoid(G: FiniteGroupoid) -> GMonoid:
    """Fiber at ``x`` is the isotropy group; ``g`` acts by ``u ↦ g u g⁻¹``."""
    fibers = [tuple(G.homset(x, x)) for x in G.objects]
    pos = [{u: i for i, u in enumerate(f)} for f in fibers]
    act = []
    for g in G.morphisms:
        x, y = G.dom[g], G.cod[g]
        gi = G.inverse[g]
        act.append(tuple(pos[y][G.compose(G.compose(g, u), gi)] for u in fibers[x]))
    units = [pos[x][G.identity[x]] for x in G.objects]
    mult = [[[pos[x][G.compose(a, b)] for b in fibers[x]] for a in fibers[x]] for x in G.objects]
    return GMonoid(G, [[G.mor_labels[u] for u in f] for f in fibers], act, units, mult)


class OmegaSet(GSet):
    """``Ω(x) = ⊔_{H ≤ G_x} G_x/H`` with points ``(x, subgroup index, coset index)``.

    Subgroups at non-base objects are the base subgroups transported along
    ``λ_{b,x}``, so a point's subgroup index is shared across a component.
    """

    def __init__(self, base, fibers, act, transversal, subgroups, coset_reps, check=True):
        self.transversal = transversal
        self.subgroups = subgroups      # per object: list of Subgroup
        self.coset_reps = coset_reps    # per object: list (per subgroup) of rep lists
        super().__init__(base, fibers, act, check)


def omega(G: FiniteGroupoid, T: Transversal, check=True) -> OmegaSet:
    T.check_for(G)
    subgroups, coset_reps, fibers, index = [], [], [], []
    base_subs = {}
    for x in G.objects:
        b = T.base_of(x)
        if b not in base_subs:
            base_subs[b] = enumerate_subgroups(isotropy(G, b))
        grp = isotropy(G, x)
        lam = T.lam(b, x)
        subs = [conjugate_subgroup(grp, lam, H) for H in base_subs[b]]
        reps = [cosets(grp, H) for H in subs]
        pts = [(x, i, j) for i, r in enumerate(reps) for j in range(len(r))]
        subgroups.append(subs)
        coset_reps.append(reps)
        fibers.append(pts)
        index.append({(i, reps[i][j]): n for n, (_, i, j) in enumerate(pts)})
    act = []
    for g in G.morphisms:
        x, y = G.dom[g], G.cod[g]
        lam_inv = G.inverse[T.lam(x, y)]
        grp_y = isotropy(G, y)
        images = []
        for (_, i, j) in fibers[x]:
            k = coset_reps[x][i][j]
            rep = coset_of(grp_y, subgroups[y][i], G.compose(G.compose(g, k), lam_inv))
            images.append(index[y][(i, rep)])
        act.append(images)
    return OmegaSet(G, fibers, act, T, subgroups, coset_reps, check)


def gset_product(X: GSet, Y: GSet) -> GSet:
    """Fiberwise product with diagonal action; point ``(i, j)`` has index ``i*|Y_x| + j``."""
    if X.base is not Y.base:
        raise ActionError("G-sets over different groupoids")
    G = X.base
    fibers = [[(p, q) for p in X.fibers[x] for q in Y.fibers[x]] for x in G.objects]
    act = []
    for g in G.morphisms:
        ax, ay = X.act[g], Y.act[g]
        m = Y.size(G.cod[g])
        act.append([ax[i] * m + ay[j] for i in range(len(ax)) for j in range(len(ay))])
    return GSet(G, fibers, act, check=False)


def restrict(X: GSet, sub: FiniteGroupoid) -> GSet:
    """Precompose with the inclusion of a subgroupoid of ``X.base``."""
    if sub.parent is not X.base:
        raise TransversalMismatch("subgroupoid is not a subgroupoid of the G-set's base")
    objs, mors = sub.inclusion
    return GSet(sub, [X.fibers[x] for x in objs], [X.act[g] for g in mors], check=False)


def point_gset(G: FiniteGroupoid) -> GSet:
    """The terminal G-set: one point over every object."""
    return GSet(G, [[0] for _ in G.objects], [[0] for _ in G.morphisms])


def orbit_count_at_bases(X: GSet) -> int:
    """Σ over components of the number of base-isotropy orbits on the base fiber."""
    G = X.base
    total = 0
    for b in connected_components(G).representatives:
        n = X.size(b)
        seen = [False] * n
        for i in range(n):
            if not seen[i]:
                total += 1
                stack = [i]
                seen[i] = True
                while stack:
                    j = stack.pop()
                    for u in G.homset(b, b):
                        k = X.act[u][j]
                        if not seen[k]:
                            seen[k] = True
                            stack.append(k)
    return total
