"""Finite groupoids stored as explicit composition tables.

Objects and morphisms are indexed ``0..n-1`` internally; the caller's
labels are kept alongside for reporting.  Composition follows the
"g after f" convention: ``compose(g, f)`` is defined when
``dom(g) == cod(f)`` and has domain ``dom(f)`` and codomain ``cod(g)``.
"""
from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass
from pathlib import Path


class GroupoidError(Exception):
    pass


class TableFormatError(GroupoidError):
    pass


class MissingComposite(GroupoidError):
    pass


class InvalidComposite(GroupoidError):
    pass


class AssociativityViolation(GroupoidError):
    pass


class NoInverse(GroupoidError):
    pass


class BadIdentity(GroupoidError):
    pass


class NotConnected(GroupoidError):
    pass


class TransversalMismatch(GroupoidError):
    pass


class FiniteGroupoid:
    """A validated finite groupoid.

    ``comp[g]`` maps each ``f`` with ``cod(f) == dom(g)`` to ``g∘f``.
    ``parent``/``inclusion`` are set on subgroupoids built by
    :func:`full_subgroupoid` and :func:`isotropy_groupoid`.
    """

    def __init__(self, obj_labels, mor_labels, dom, cod, comp, identity, inverse,
                 parent=None, inclusion=None):
        self.obj_labels = tuple(obj_labels)
        self.mor_labels = tuple(mor_labels)
        self.dom = tuple(dom)
        self.cod = tuple(cod)
        self.comp = comp
        self.identity = tuple(identity)
        self.inverse = tuple(inverse)
        self.parent = parent
        self.inclusion = inclusion
        self.hom = {}
        for g in range(len(self.dom)):
            self.hom.setdefault((self.dom[g], self.cod[g]), []).append(g)
        self._components = None

    @property
    def n_objects(self):
        return len(self.obj_labels)

    @property
    def n_morphisms(self):
        return len(self.mor_labels)

    @property
    def objects(self):
        return range(self.n_objects)

    @property
    def morphisms(self):
        return range(self.n_morphisms)

    def compose(self, g, f):
        return self.comp[g][f]

    def homset(self, x, y):
        return self.hom.get((x, y), [])

    def composable_pairs(self):
        for g in self.morphisms:
            for f in self.comp[g]:
                yield g, f

    def __repr__(self):
        return f"FiniteGroupoid({self.n_objects} objects, {self.n_morphisms} morphisms)"

    def to_raw(self) -> dict:
        """Raw JSON-able description (string ids) accepted by :func:`validate`."""
        oid = [str(x) for x in self.obj_labels]
        mid = [str(m) for m in self.mor_labels]
        return {
            "objects": oid,
            "morphisms": [{"id": mid[g], "dom": oid[self.dom[g]], "cod": oid[self.cod[g]]}
                          for g in self.morphisms],
            "identities": {oid[x]: mid[self.identity[x]] for x in self.objects},
            "compose": [[mid[g], mid[f], mid[h]] for g in self.morphisms
                        for f, h in sorted(self.comp[g].items())],
        }


def validate(raw: dict) -> FiniteGroupoid:
    """Build a groupoid from raw data, checking every groupoid axiom.

    ``raw`` has keys ``objects`` (ids), ``morphisms`` (records with ``id``,
    ``dom``, ``cod``), ``identities`` (object id -> morphism id) and
    ``compose`` (triples ``[g, f, gf]`` covering exactly the composable pairs).
    """
    try:
        obj_labels = list(raw["objects"])
        mors = list(raw["morphisms"])
        idents = dict(raw["identities"])
        entries = list(raw["compose"])
    except (KeyError, TypeError) as exc:
        raise TableFormatError(f"malformed groupoid data: {exc}") from None
    if not obj_labels:
        raise GroupoidError("a groupoid needs at least one object")
    oindex = {}
    for i, x in enumerate(obj_labels):
        if x in oindex:
            raise TableFormatError(f"duplicate object id {x!r}")
        oindex[x] = i
    mindex, mor_labels, dom, cod = {}, [], [], []
    for rec in mors:
        try:
            mid, d, c = rec["id"], rec["dom"], rec["cod"]
        except (KeyError, TypeError):
            raise TableFormatError(f"malformed morphism record {rec!r}") from None
        if mid in mindex:
            raise TableFormatError(f"duplicate morphism id {mid!r}")
        if d not in oindex or c not in oindex:
            raise TableFormatError(f"morphism {mid!r} has unknown endpoint")
        mindex[mid] = len(mor_labels)
        mor_labels.append(mid)
        dom.append(oindex[d])
        cod.append(oindex[c])

    n = len(mor_labels)
    comp = [dict() for _ in range(n)]
    for e in entries:
        try:
            g, f, h = (mindex[t] for t in e)
        except (KeyError, TypeError, ValueError):
            raise TableFormatError(f"malformed compose entry {e!r}") from None
        if dom[g] != cod[f]:
            raise InvalidComposite(f"{mor_labels[g]!r} and {mor_labels[f]!r} are not composable")
        if dom[h] != dom[f] or cod[h] != cod[g]:
            raise InvalidComposite(
                f"{mor_labels[g]!r}∘{mor_labels[f]!r} = {mor_labels[h]!r} has wrong endpoints")
        if f in comp[g]:
            raise InvalidComposite(f"duplicate entry for {mor_labels[g]!r}∘{mor_labels[f]!r}")
        comp[g][f] = h
    by_cod = {}
    for f in range(n):
        by_cod.setdefault(cod[f], []).append(f)
    for g in range(n):
        for f in by_cod.get(dom[g], ()):
            if f not in comp[g]:
                raise MissingComposite(f"no composite for {mor_labels[g]!r}∘{mor_labels[f]!r}")

    identity = []
    for x, lab in enumerate(obj_labels):
        if lab not in idents or idents[lab] not in mindex:
            raise BadIdentity(f"object {lab!r} has no identity")
        e = mindex[idents[lab]]
        if dom[e] != x or cod[e] != x:
            raise BadIdentity(f"identity {mor_labels[e]!r} of {lab!r} is not a loop at {lab!r}")
        for f in by_cod.get(x, ()):
            if comp[e][f] != f:
                raise BadIdentity(f"{mor_labels[e]!r} is not a left unit for {mor_labels[f]!r}")
        for g in range(n):
            if dom[g] == x and comp[g][e] != g:
                raise BadIdentity(f"{mor_labels[e]!r} is not a right unit for {mor_labels[g]!r}")
        identity.append(e)

    for h in range(n):
        for g, gh in comp[h].items():
            for f, gf in comp[g].items():
                if comp[h][gf] != comp[gh][f]:
                    raise AssociativityViolation(
                        "({0}{1}){2} != {0}({1}{2})".format(
                            *(repr(mor_labels[t]) for t in (h, g, f))))

    inverse = []
    for g in range(n):
        x, y = dom[g], cod[g]
        inv = next((f for f in by_cod.get(x, ()) if dom[f] == y
                    and comp[g][f] == identity[y] and comp[f][g] == identity[x]), None)
        if inv is None:
            raise NoInverse(f"morphism {mor_labels[g]!r} has no inverse")
        inverse.append(inv)

    return FiniteGroupoid(obj_labels, mor_labels, dom, cod, comp, identity, inverse)


# ---------------------------------------------------------------------------
# constructors


def group_as_groupoid(table, labels=None, name=0) -> FiniteGroupoid:
    """One-object groupoid from a Cayley table (identity at index 0)."""
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise TableFormatError("Cayley table must be square and nonempty")
    for row in table:
        for v in row:
            if not isinstance(v, int) or not 0 <= v < n:
                raise TableFormatError(f"entry {v!r} outside range 0..{n - 1}")
    labels = list(range(n)) if labels is None else list(labels)
    raw = {
        "objects": [name],
        "morphisms": [{"id": labels[i], "dom": name, "cod": name} for i in range(n)],
        "identities": {name: labels[0]},
        "compose": [[labels[i], labels[j], labels[table[i][j]]]
                    for i in range(n) for j in range(n)],
    }
    return validate(raw)


def cyclic_table(n: int):
    if n < 1:
        raise ValueError("cyclic group order must be >= 1")
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def symmetric_table(n: int):
    """Table of S_n on permutations in lexicographic order; ``i·j`` is i after j."""
    if n < 1:
        raise ValueError("symmetric degree must be >= 1")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(a[b[k]] for k in range(n))] for b in perms] for a in perms]
    return table, perms


def cyclic(n: int) -> FiniteGroupoid:
    return group_as_groupoid(cyclic_table(n))


def symmetric(n: int) -> FiniteGroupoid:
    table, perms = symmetric_table(n)
    return group_as_groupoid(table, labels=perms)


def klein4() -> FiniteGroupoid:
    return group_as_groupoid([[i ^ j for j in range(4)] for i in range(4)])


def parse_table(text: str):
    """Parse the ``.tbl`` Cayley-table format into a list of rows."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise TableFormatError("empty table file")
    try:
        n = int(lines[0])
    except ValueError:
        raise TableFormatError(f"first line must be the order, got {lines[0]!r}") from None
    if n < 1:
        raise TableFormatError("group order must be positive")
    if len(lines) - 1 != n:
        raise TableFormatError(f"expected {n} rows, found {len(lines) - 1}")
    rows = []
    for k, ln in enumerate(lines[1:], start=1):
        try:
            row = [int(t) for t in ln.split()]
        except ValueError:
            raise TableFormatError(f"row {k}: non-integer entry") from None
        if len(row) != n:
            raise TableFormatError(f"row {k}: expected {n} entries, found {len(row)}")
        for v in row:
            if not 0 <= v < n:
                raise TableFormatError(f"row {k}: entry {v} outside 0..{n - 1}")
        rows.append(row)
    return rows


def read_table(path) -> FiniteGroupoid:
    return group_as_groupoid(parse_table(Path(path).read_text()))


def pair_groupoid(n: int) -> FiniteGroupoid:
    """Pair({0..n-1}): one morphism (x, y) from x to y for every ordered pair."""
    if n < 1:
        raise GroupoidError("pair groupoid needs at least one object")
    objs = list(range(n))
    return _build(
        objs,
        [(x, y) for x in objs for y in objs],
        lambda m: m[0],
        lambda m: m[1],
        lambda g, f: (f[0], g[1]),
        lambda x: (x, x),
    )


def _build(objs, mors, dom_of, cod_of, mul, ident_of) -> FiniteGroupoid:
    """Assemble and validate a groupoid from label-level rules."""
    by_cod = {}
    for f in mors:
        by_cod.setdefault(cod_of(f), []).append(f)
    raw = {
        "objects": objs,
        "morphisms": [{"id": m, "dom": dom_of(m), "cod": cod_of(m)} for m in mors],
        "identities": {x: ident_of(x) for x in objs},
        "compose": [[g, f, mul(g, f)] for g in mors for f in by_cod.get(dom_of(g), ())],
    }
    return validate(raw)


def product(G: FiniteGroupoid, H: FiniteGroupoid) -> FiniteGroupoid:
    """Categorical product; objects and morphisms are label pairs."""
    ol = [(a, b) for a in G.obj_labels for b in H.obj_labels]
    ml = [(g, h) for g in G.morphisms for h in H.morphisms]
    out = _build(
        list(range(len(ol))),
        list(range(len(ml))),
        lambda m: G.dom[ml[m][0]] * H.n_objects + H.dom[ml[m][1]],
        lambda m: G.cod[ml[m][0]] * H.n_objects + H.cod[ml[m][1]],
        lambda a, b: _pair_index(H, G.compose(ml[a][0], ml[b][0]), H.compose(ml[a][1], ml[b][1])),
        lambda x: _pair_index(H, G.identity[x // H.n_objects], H.identity[x % H.n_objects]),
    )
    return _relabel(out, ol, [(G.mor_labels[g], H.mor_labels[h]) for g, h in ml])


def _pair_index(H, g, h):
    return g * H.n_morphisms + h


def _relabel(K: FiniteGroupoid, obj_labels, mor_labels) -> FiniteGroupoid:
    return FiniteGroupoid(obj_labels, mor_labels, K.dom, K.cod, K.comp, K.identity, K.inverse)


def disjoint_union(parts) -> FiniteGroupoid:
    """Coproduct; labels are tagged ``(index_of_part, label)``."""
    parts = list(parts)
    if not parts:
        raise GroupoidError("disjoint union of no groupoids is empty")
    ol, ml, dom, cod, identity, inverse, comp = [], [], [], [], [], [], []
    for k, P in enumerate(parts):
        o0, m0 = len(ol), len(ml)
        ol += [(k, x) for x in P.obj_labels]
        ml += [(k, m) for m in P.mor_labels]
        dom += [o0 + x for x in P.dom]
        cod += [o0 + x for x in P.cod]
        identity += [m0 + e for e in P.identity]
        inverse += [m0 + e for e in P.inverse]
        comp += [{m0 + f: m0 + h for f, h in P.comp[g].items()} for g in P.morphisms]
    return FiniteGroupoid(ol, ml, dom, cod, comp, identity, inverse)


def full_subgroupoid(G: FiniteGroupoid, objects, morphisms=None) -> FiniteGroupoid:
    """Subgroupoid on ``objects`` (all morphisms between them unless given).

    The result records ``parent = G`` and ``inclusion = (obj_map, mor_map)``
    sending local indices to indices of ``G``.
    """
    objs = sorted(set(objects))
    oloc = {x: i for i, x in enumerate(objs)}
    if morphisms is None:
        mors = [g for g in G.morphisms if G.dom[g] in oloc and G.cod[g] in oloc]
    else:
        mors = sorted(set(morphisms))
    mloc = {g: i for i, g in enumerate(mors)}
    comp = []
    for g in mors:
        row = {}
        for f, h in G.comp[g].items():
            if f in mloc:
                if h not in mloc:
                    raise GroupoidError("morphism set is not closed under composition")
                row[mloc[f]] = mloc[h]
        comp.append(row)
    try:
        identity = [mloc[G.identity[x]] for x in objs]
        inverse = [mloc[G.inverse[g]] for g in mors]
    except KeyError:
        raise GroupoidError("morphism set lacks identities or inverses") from None
    return FiniteGroupoid(
        [G.obj_labels[x] for x in objs], [G.mor_labels[g] for g in mors],
        [oloc[G.dom[g]] for g in mors], [oloc[G.cod[g]] for g in mors],
        comp, identity, inverse, parent=G, inclusion=(tuple(objs), tuple(mors)))


# ---------------------------------------------------------------------------
# components, isotropy, transversals


@dataclass(frozen=True)
class ConnectedDecomposition:
    partition: tuple        # object -> component index
    representatives: tuple  # component index -> smallest object

    @property
    def n_components(self):
        return len(self.representatives)

    def members(self, i):
        return [x for x, c in enumerate(self.partition) if c == i]


def connected_components(G: FiniteGroupoid) -> ConnectedDecomposition:
    if G._components is not None:
        return G._components
    parent = list(G.objects)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in G.morphisms:
        a, b = find(G.dom[g]), find(G.cod[g])
        if a != b:
            parent[max(a, b)] = min(a, b)
    roots = [find(x) for x in G.objects]
    reps = sorted(set(roots))
    cindex = {r: i for i, r in enumerate(reps)}
    # each root is the smallest object of its class because unions keep the min
    G._components = ConnectedDecomposition(tuple(cindex[r] for r in roots), tuple(reps))
    return G._components


def is_connected(G: FiniteGroupoid) -> bool:
    return connected_components(G).n_components == 1


def component_subgroupoid(G: FiniteGroupoid, i: int) -> FiniteGroupoid:
    return full_subgroupoid(G, connected_components(G).members(i))


class IsotropyGroup:
    """The group G(x, x) with multiplication inherited from composition."""

    def __init__(self, G: FiniteGroupoid, x: int):
        self.groupoid = G
        self.object = x
        self.elements = tuple(G.homset(x, x))
        self.identity = G.identity[x]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in set(self.elements)

    def mul(self, a, b):
        return self.groupoid.comp[a][b]

    def inv(self, a):
        return self.groupoid.inverse[a]

    def conj(self, g, a):
        """``g a g⁻¹``"""
        return self.mul(self.mul(g, a), self.inv(g))

    def conjugacy_classes(self):
        seen, out = set(), []
        for a in self.elements:
            if a not in seen:
                cls = sorted({self.conj(g, a) for g in self.elements})
                seen.update(cls)
                out.append(cls)
        return out

    def order_of(self, a):
        k, b = 1, a
        while b != self.identity:
            b = self.mul(b, a)
            k += 1
        return k


def isotropy(G: FiniteGroupoid, x: int) -> IsotropyGroup:
    return IsotropyGroup(G, x)


def isotropy_groupoid(G: FiniteGroupoid, x: int) -> FiniteGroupoid:
    """The isotropy group at ``x`` as a one-object subgroupoid of ``G``."""
    return full_subgroupoid(G, [x], G.homset(x, x))


class Transversal:
    """A base object per component and connectors ``g_y: base -> y``."""

    def __init__(self, G: FiniteGroupoid, connectors, seed=None):
        self.groupoid = G
        self.decomposition = connected_components(G)
        self.bases = self.decomposition.representatives
        self.connectors = tuple(connectors)
        self.seed = seed

    def base_of(self, y):
        return self.bases[self.decomposition.partition[y]]

    def lam(self, x, y):
        """``λ_{x,y} = g_y ∘ g_x⁻¹ : x -> y``"""
        G = self.groupoid
        return G.compose(self.connectors[y], G.inverse[self.connectors[x]])

    def check_for(self, G):
        if self.groupoid is not G:
            raise TransversalMismatch("transversal was built for a different groupoid")

    def restrict(self, H: FiniteGroupoid) -> "Transversal":
        """Transversal of a union of components of ``self.groupoid``."""
        if H.parent is not self.groupoid:
            raise TransversalMismatch("restriction target is not a subgroupoid of this groupoid")
        objs, mors = H.inclusion
        mloc = {g: i for i, g in enumerate(mors)}
        T = Transversal(H, [mloc[self.connectors[x]] for x in objs], self.seed)
        if [objs[b] for b in T.bases] != [self.base_of(objs[b]) for b in T.bases]:
            raise TransversalMismatch("subgroupoid does not contain the chosen base objects")
        return T

    def describe(self):
        G = self.groupoid
        return {str(G.obj_labels[y]): str(G.mor_labels[g]) for y, g in enumerate(self.connectors)}


def transversal(G: FiniteGroupoid, seed=None) -> Transversal:
    """Connectors from each component's smallest object.

    With ``seed=None`` the connector to ``y`` is the first morphism found by a
    breadth-first search from the base; otherwise a seeded random element of
    ``G(base, y)``.
    """
    dec = connected_components(G)
    conn = [None] * G.n_objects
    rng = random.Random(seed) if seed is not None else None
    for b in dec.representatives:
        conn[b] = G.identity[b]
        if rng is None:
            queue = deque([b])
            while queue:
                u = queue.popleft()
                for g in G.morphisms:
                    if G.dom[g] == u and conn[G.cod[g]] is None:
                        conn[G.cod[g]] = G.compose(g, conn[u])
                        queue.append(G.cod[g])
    if rng is not None:
        for y in G.objects:
            b = dec.representatives[dec.partition[y]]
            if y != b:
                conn[y] = rng.choice(G.homset(b, y))
    return Transversal(G, conn, seed)


def structure_iso_check(G: FiniteGroupoid, T: Transversal, component=None) -> bool:
    """Exhaustively verify ``u ↦ (g_cod⁻¹ u g_dom, (dom, cod))`` is an isomorphism
    onto ``G_b × Pair(objects)`` for one component.

    With ``component=None`` the groupoid must be connected.
    """
    T.check_for(G)
    dec = connected_components(G)
    if component is None:
        if dec.n_components != 1:
            raise NotConnected(f"groupoid has {dec.n_components} components")
        component = 0
    b = dec.representatives[component]
    objs = dec.members(component)
    mors = [g for g in G.morphisms if dec.partition[G.dom[g]] == component]
    Gb = set(G.homset(b, b))
    g_ = T.connectors
    inv = G.inverse

    def phi(u):
        loop = G.compose(inv[g_[G.cod[u]]], G.compose(u, g_[G.dom[u]]))
        return loop, (G.dom[u], G.cod[u])

    image = {}
    for u in mors:
        v = phi(u)
        if v[0] not in Gb or v in image:
            return False
        image[v] = u
    if len(image) != len(Gb) * len(objs) ** 2:
        return False
    for x in objs:
        if phi(G.identity[x]) != (G.identity[b], (x, x)):
            return False
    for g in mors:
        for f, gf in G.comp[g].items():
            (a, (y, z)), (c, (x, _)) = phi(g), phi(f)
            if phi(gf) != (G.compose(a, c), (x, z)):
                return False
    return True


def morphism_count_formula(G: FiniteGroupoid) -> int:
    """Σ over components of |isotropy| · (object count)²."""
    dec = connected_components(G)
    return sum(len(G.homset(b, b)) * len(dec.members(i)) ** 2
               for i, b in enumerate(dec.representatives))
