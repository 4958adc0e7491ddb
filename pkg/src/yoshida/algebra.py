"""Finite-dimensional associative algebras given by structure constants.

Elements are sparse coefficient dicts ``{basis index: scalar}``.  The
module builds groupoid algebras, endomorphism algebras of permutation
representations (orbit-indicator basis and, as an oracle, a direct solve of
the naturality equations), centers, the center transport map for connected
groupoids, component decompositions and mod-p fingerprints.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .action import (
    BoundExceeded,
    GSet,
    gset_product,
    omega,
    restrict,
)
from .groupoid import (
    FiniteGroupoid,
    NotConnected,
    Transversal,
    component_subgroupoid,
    connected_components,
    isotropy_groupoid,
)
from .linalg import QQ, Field, sparse_add, sparse_kernel, sparse_rank, sparse_rref


class AlgebraError(Exception):
    pass


class NotCentral(AlgebraError):
    pass


class NotCommutative(AlgebraError):
    pass


class BadPrime(AlgebraError):
    pass


class NotInSubspace(AlgebraError):
    pass


EXHAUSTIVE_ASSOC_DIM = 64
ASSOC_SAMPLES = 10_000
NAIVE_BOUND = 2500


def _canon(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _axpy(acc: dict, scale, v: dict):
    for k, x in v.items():
        y = _canon(acc.get(k, 0) + scale * x)
        if y == 0:
            acc.pop(k, None)
        else:
            acc[k] = y


def _combine(vectors, coeffs: dict) -> dict:
    out = {}
    for j, c in coeffs.items():
        _axpy(out, c, vectors[j])
    return out


class SCAlgebra:
    """Associative algebra with basis ``labels`` and sparse structure constants.

    ``table[(i, j)]`` is the product ``b_i b_j`` as a sparse dict; absent
    pairs multiply to zero.
    """

    def __init__(self, labels, table, unit, field: Field = QQ, name=""):
        self.labels = list(labels)
        self.table = {k: dict(v) for k, v in table.items() if v}
        self.unit = {i: c for i, c in dict(unit).items() if c != 0}
        self.field = field
        self.name = name
        self._center = None

    @property
    def dim(self):
        return len(self.labels)

    def __repr__(self):
        return f"SCAlgebra({self.name or 'unnamed'}, dim={self.dim})"

    def basis(self, i) -> dict:
        return {i: 1}

    def mul_basis(self, i, j) -> dict:
        return self.table.get((i, j), {})

    def mul(self, u: dict, v: dict) -> dict:
        out = {}
        table = self.table
        for i, a in u.items():
            for j, b in v.items():
                prod = table.get((i, j))
                if prod:
                    _axpy(out, a * b, prod)
        return out

    def element(self, coeffs) -> "AlgebraElement":
        if not isinstance(coeffs, dict):
            coeffs = {i: c for i, c in enumerate(coeffs) if c != 0}
        return AlgebraElement(self, coeffs)

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, dict(self.unit))

    def check_unit(self):
        """First basis index violating a unit law, or None."""
        for i in range(self.dim):
            e = {i: 1}
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                return i
        return None

    def triples(self, exhaustive_dim=EXHAUSTIVE_ASSOC_DIM, samples=ASSOC_SAMPLES, seed=0):
        n = self.dim
        if n <= exhaustive_dim:
            for i in range(n):
                for j in range(n):
                    for k in range(n):
                        yield i, j, k
            return
        rng = random.Random(seed)
        for _ in range(samples):
            yield rng.randrange(n), rng.randrange(n), rng.randrange(n)

    def check_associativity(self, exhaustive_dim=EXHAUSTIVE_ASSOC_DIM,
                            samples=ASSOC_SAMPLES, seed=0):
        """First triple ``(i, j, k)`` with ``(b_i b_j) b_k != b_i (b_j b_k)``, or None.

        Exhaustive up to ``exhaustive_dim``; above it a seeded sample of
        triples plus the unit laws.
        """
        for i, j, k in self.triples(exhaustive_dim, samples, seed):
            left = self.mul(self.mul_basis(i, j), {k: 1})
            right = self.mul({i: 1}, self.mul_basis(j, k))
            if left != right:
                return (i, j, k)
        if self.dim > exhaustive_dim:
            # two-sided unit laws settle every triple with a unit entry
            i = self.check_unit()
            if i is not None:
                return ("unit", i)
        return None

    def is_commutative(self) -> bool:
        return all(self.mul_basis(i, j) == self.mul_basis(j, i)
                   for i in range(self.dim) for j in range(i))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "field": self.field.name,
            "dim": self.dim,
            "labels": [str(l) for l in self.labels],
            "unit": [[i, str(c)] for i, c in sorted(self.unit.items())],
            "structure_constants": [[i, j, k, str(c)] for (i, j), prod in sorted(self.table.items())
                                    for k, c in sorted(prod.items())],
        }


class AlgebraElement:
    """Thin arithmetic wrapper around a sparse coefficient dict."""

    def __init__(self, algebra: SCAlgebra, coeffs: dict):
        self.algebra = algebra
        self.coeffs = {i: c for i, c in coeffs.items() if c != 0}

    def __add__(self, other):
        return AlgebraElement(self.algebra, sparse_add(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return AlgebraElement(self.algebra, sparse_add(self.coeffs, other.coeffs, -1))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return AlgebraElement(self.algebra, self.algebra.mul(self.coeffs, other.coeffs))
        return AlgebraElement(self.algebra, {i: _canon(c * other) for i, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.coeffs == other.coeffs

    def __repr__(self):
        terms = [f"{c}*{self.algebra.labels[i]}" for i, c in sorted(self.coeffs.items())]
        return " + ".join(terms) or "0"

    def dense(self):
        return [self.coeffs.get(i, 0) for i in range(self.algebra.dim)]


class Subspace:
    """Span of sparse vectors, kept in reduced echelon form."""

    def __init__(self, vectors, dim, field: Field = QQ):
        self.basis, self.pivots = sparse_rref(vectors, dim, field)
        self.dim = dim

    def __len__(self):
        return len(self.basis)

    def coords(self, v: dict) -> dict:
        c = {a: v[p] for a, p in enumerate(self.pivots) if v.get(p, 0) != 0}
        if _combine(self.basis, c) != {k: x for k, x in v.items() if x != 0}:
            raise NotInSubspace("vector is not in the subspace")
        return c

    def lift(self, coords: dict) -> dict:
        return _combine(self.basis, coords)


def _subalgebra(A: SCAlgebra, space: Subspace, name, labels=None) -> SCAlgebra:
    """Restriction of the multiplication of ``A`` to a subalgebra ``space``."""
    B = space.basis
    table = {}
    for a, u in enumerate(B):
        for b, v in enumerate(B):
            prod = A.mul(u, v)
            if prod:
                table[(a, b)] = space.coords(prod)
    unit = space.coords(A.unit)
    labels = labels or [f"z{a}" for a in range(len(B))]
    sub = SCAlgebra(labels, table, unit, A.field, name)
    sub.ambient = A
    sub.space = space
    return sub


def groupoid_algebra(G: FiniteGroupoid, field: Field = QQ) -> SCAlgebra:
    """Basis = morphisms; ``b_g b_f = b_{g∘f}`` if composable, else 0."""
    table = {(g, f): {h: 1} for g in G.morphisms for f, h in G.comp[g].items()}
    unit = {G.identity[x]: 1 for x in G.objects}
    A = SCAlgebra(list(G.mor_labels), table, unit, field, "k[G]")
    A.groupoid = G
    return A


def center(A: SCAlgebra):
    """Center by intersecting commutant kernels one basis element at a time.

    Returns ``(basis, Z)`` where ``basis`` is the reduced echelon basis of the
    center (sparse vectors of ``A``) and ``Z`` the center as an SCAlgebra,
    with ``Z.ambient = A`` and ``Z.space`` its embedding.
    """
    if A._center is not None:
        return A._center
    n = A.dim
    vecs = [{i: 1} for i in range(n)]
    for i in range(n):
        if len(vecs) <= 1:
            # the unit spans what is left and is always central
            break
        e = {i: 1}
        cols = [sparse_add(A.mul(v, e), A.mul(e, v), -1) for v in vecs]
        rows = {}
        for j, col in enumerate(cols):
            for k, x in col.items():
                rows.setdefault(k, {})[j] = x
        if not rows:
            continue
        ker = sparse_kernel(list(rows.values()), len(vecs), A.field)
        vecs = [_combine(vecs, c) for c in ker]
    space = Subspace(vecs, n, A.field)
    Z = _subalgebra(A, space, f"Z({A.name})")
    A._center = (space.basis, Z)
    return A._center


def is_central(A: SCAlgebra, v: dict) -> bool:
    return all(A.mul(v, {i: 1}) == A.mul({i: 1}, v) for i in range(A.dim))


def direct_product(algebras, name="product") -> SCAlgebra:
    labels, table, unit, offsets = [], {}, {}, []
    field = algebras[0].field if algebras else QQ
    for t, B in enumerate(algebras):
        o = len(labels)
        offsets.append(o)
        labels += [(t, l) for l in B.labels]
        for (i, j), prod in B.table.items():
            table[(o + i, o + j)] = {o + k: c for k, c in prod.items()}
        unit.update({o + i: c for i, c in B.unit.items()})
    P = SCAlgebra(labels, table, unit, field, name)
    P.factors = list(algebras)
    P.offsets = offsets
    return P


# ---------------------------------------------------------------------------
# permutation representations and their endomorphism algebras


class PermutationRepresentation:
    """``k[X]``: free module on each fiber, permutation matrices on morphisms."""

    def __init__(self, X: GSet):
        self.gset = X
        self.dims = [X.size(x) for x in X.base.objects]

    def matrix(self, g):
        """Dense 0/1 matrix of ``act(g)`` (columns indexed by the domain fiber)."""
        X = self.gset
        G = X.base
        a = X.act[g]
        rows, cols = self.dims[G.cod[g]], self.dims[G.dom[g]]
        M = [[0] * cols for _ in range(rows)]
        for s in range(cols):
            M[a[s]][s] = 1
        return M


def permutation_representation(X: GSet) -> PermutationRepresentation:
    return PermutationRepresentation(X)


def _matmul(P: dict, Q: dict) -> dict:
    """Product of sparse matrices ``{(row, col): value}``."""
    by_row = {}
    for (s, c), v in Q.items():
        by_row.setdefault(s, []).append((c, v))
    out = {}
    for (r, s), u in P.items():
        for c, v in by_row.get(s, ()):
            y = _canon(out.get((r, c), 0) + u * v)
            if y == 0:
                out.pop((r, c), None)
            else:
                out[(r, c)] = y
    return out


class CentralizerAlgebra(SCAlgebra):
    """``End`` of a permutation representation in the orbit-indicator basis.

    One block per connected component, computed at the component's base
    object ``b`` from the orbits of ``G_b`` on ``fiber(b) × fiber(b)``.
    ``orbital[t][p * N + q]`` is the local basis index of ``(p, q)`` in
    block ``t`` and ``reps[t][a]`` the first pair of orbital ``a``.
    """

    def orbital_matrix(self, i) -> dict:
        t, a = self.labels[i]
        N = self.sizes[t]
        return {(k // N, k % N): 1 for k, o in enumerate(self.orbital[t]) if o == a}

    def matrix(self, v: dict, t: int) -> dict:
        """Endomorphism of ``fiber(base_t)`` represented by ``v`` (block ``t`` part)."""
        o, N, orb = self.offsets[t], self.sizes[t], self.orbital[t]
        out = {}
        for k, a in enumerate(orb):
            c = v.get(o + a, 0)
            if c != 0:
                out[(k // N, k % N)] = c
        return out

    def coords_from_matrix(self, M: dict, t: int) -> dict:
        """Block-``t`` coordinates of a ``G_b``-equivariant matrix; verifies constancy."""
        o, N, orb = self.offsets[t], self.sizes[t], self.orbital[t]
        c = {}
        for a, (p, q) in enumerate(self.reps[t]):
            x = M.get((p, q), 0)
            if x != 0:
                c[o + a] = x
        if self.matrix(c, t) != {k: x for k, x in M.items() if x != 0}:
            raise NotInSubspace("matrix is not constant on orbitals")
        return c


def _orbitals(G: FiniteGroupoid, X: GSet, b: int):
    N = X.size(b)
    acts = [X.act[u] for u in G.homset(b, b)]
    orb = [-1] * (N * N)
    reps = []
    order = [(p, p) for p in range(N)] + [(p, q) for p in range(N) for q in range(N) if p != q]
    for p, q in order:
        if orb[p * N + q] < 0:
            a = len(reps)
            reps.append((p, q))
            for s in acts:
                orb[s[p] * N + s[q]] = a
    return orb, reps


def centralizer_algebra(G: FiniteGroupoid, X: GSet, name="End_G(k[X])") -> CentralizerAlgebra:
    """Endomorphism ring of ``k[X]`` built from base-object orbitals.

    For a connected component with base ``b`` and transversal connectors the
    restriction ``θ ↦ θ_b`` identifies ``End_G`` with ``End_{G_b}(k[X(b)])``;
    the full algebra is the direct product over components.  Structure
    constant ``c_{ij}^k`` counts ``z`` with ``(p, z) ∈ O_i`` and ``(z, q) ∈ O_j``
    for a fixed ``(p, q) ∈ O_k``.
    """
    if X.base is not G:
        raise AlgebraError("G-set is over a different groupoid")
    dec = connected_components(G)
    labels, table, unit = [], {}, {}
    orbital, reps_all, sizes, offsets = [], [], [], []
    for t, b in enumerate(dec.representatives):
        N = X.size(b)
        orb, reps = _orbitals(G, X, b)
        o = len(labels)
        offsets.append(o)
        labels += [(t, a) for a in range(len(reps))]
        for k, (p, q) in enumerate(reps):
            for z in range(N):
                key = (o + orb[p * N + z], o + orb[z * N + q])
                entry = table.setdefault(key, {})
                entry[o + k] = entry.get(o + k, 0) + 1
            if p == q:
                unit[o + k] = 1
        orbital.append(orb)
        reps_all.append(reps)
        sizes.append(N)
    A = CentralizerAlgebra(labels, table, unit, QQ, name)
    A.groupoid, A.gset = G, X
    A.orbital, A.reps, A.sizes, A.offsets = orbital, reps_all, sizes, offsets
    A.bases = dec.representatives
    return A


def dimension_via_orbits(G: FiniteGroupoid, X: GSet) -> int:
    """Σ over components of the orbit count of ``G_b`` on ``fiber(b)²`` (Burnside's lemma)."""
    total = 0
    for b in connected_components(G).representatives:
        loops = G.homset(b, b)
        fix2 = sum(sum(1 for i, j in enumerate(X.act[u]) if i == j) ** 2 for u in loops)
        q, r = divmod(fix2, len(loops))
        assert r == 0
        total += q
    return total


def yoshida_algebra(G: FiniteGroupoid, T: Transversal) -> CentralizerAlgebra:
    """Endomorphism ring of ``k[Ω²]`` for the Ω built from transversal ``T``."""
    Om = omega(G, T)
    A = centralizer_algebra(G, gset_product(Om, Om), name="Y(G)")
    A.transversal = T
    A.omega = Om
    return A


def yoshida_dimension(G: FiniteGroupoid, T: Transversal) -> int:
    Om = omega(G, T)
    return dimension_via_orbits(G, gset_product(Om, Om))


# ---------------------------------------------------------------------------
# oracle: solve the naturality equations over every morphism


def _naturality_rows(G: FiniteGroupoid, X: GSet, offsets):
    """Rows of ``X(g) θ_x - θ_y X(g) = 0`` for every ``g: x -> y``.

    Unknown ``offsets[x] + p * |X(x)| + q`` is entry ``(p, q)`` of ``θ_x``.
    """
    rows = []
    for g in G.morphisms:
        x, y = G.dom[g], G.cod[g]
        nx, ny = X.size(x), X.size(y)
        # P[r][s] = 1 iff act(g)(s) = r
        P_rows = [[] for _ in range(ny)]
        P_cols = [[] for _ in range(nx)]
        for s, r in enumerate(X.act[g]):
            P_rows[r].append(s)
            P_cols[s].append(r)
        for r in range(ny):
            for q in range(nx):
                row = {}
                for s in P_rows[r]:
                    k = offsets[x] + s * nx + q
                    row[k] = row.get(k, 0) + 1
                for s in P_cols[q]:
                    k = offsets[y] + r * ny + s
                    row[k] = row.get(k, 0) - 1
                row = {k: v for k, v in row.items() if v != 0}
                if row:
                    rows.append(row)
    return rows


def _unknown_offsets(G, X):
    offsets, n = [], 0
    for x in G.objects:
        offsets.append(n)
        n += X.size(x) ** 2
    return offsets, n


def _check_naive_bound(G, X, bound):
    offsets, n = _unknown_offsets(G, X)
    if n > bound:
        raise BoundExceeded(f"{n} unknowns exceed the naive-solve bound {bound}")
    return offsets, n


def naive_intertwiners(G: FiniteGroupoid, X: GSet, bound: int = NAIVE_BOUND):
    """Basis of natural endomorphisms of ``k[X]`` by a direct kernel solve.

    Each basis element is a list (per object) of sparse matrices.
    """
    offsets, n = _check_naive_bound(G, X, bound)
    ker = sparse_kernel(_naturality_rows(G, X, offsets), n, QQ)
    return [_unflatten(v, G, X, offsets) for v in ker]


def _unflatten(v: dict, G, X, offsets):
    mats = [dict() for _ in G.objects]
    for k, c in v.items():
        x = max(i for i in G.objects if offsets[i] <= k)
        r = k - offsets[x]
        mats[x][divmod(r, X.size(x))] = c
    return mats


def _flatten(mats, G, X, offsets) -> dict:
    out = {}
    for x in G.objects:
        n = X.size(x)
        for (p, q), c in mats[x].items():
            if c != 0:
                out[offsets[x] + p * n + q] = c
    return out


class NaturalEndomorphismAlgebra(SCAlgebra):
    """End of ``k[X]`` with basis the kernel of the naturality system."""

    def family(self, v: dict):
        """Per-object matrices of the element with coordinates ``v``."""
        return _unflatten(_combine(self._flat, v), self.groupoid, self.gset, self._offsets)

    def coords(self, mats) -> dict:
        flat = _flatten(mats, self.groupoid, self.gset, self._offsets)
        pos = self._free_pos
        c = {pos[f]: x for f, x in flat.items() if f in pos}
        if _combine(self._flat, c) != flat:
            raise NotInSubspace("family is not a natural endomorphism")
        return c


def _family_mul(F1, F2):
    return [_matmul(a, b) for a, b in zip(F1, F2)]


def natural_endomorphism_algebra(G: FiniteGroupoid, X: GSet, bound: int = NAIVE_BOUND,
                                 name="End_G(k[X]) (direct)") -> NaturalEndomorphismAlgebra:
    offsets, n = _check_naive_bound(G, X, bound)
    ker, free = sparse_kernel(_naturality_rows(G, X, offsets), n, QQ, with_free=True)
    fams = [_unflatten(v, G, X, offsets) for v in ker]
    A = NaturalEndomorphismAlgebra([f"nat{a}" for a in range(len(ker))], {}, {}, QQ, name)
    A.groupoid, A.gset = G, X
    A._flat, A._free, A._offsets = ker, free, offsets
    A._free_pos = {f: a for a, f in enumerate(free)}
    for a, Fa in enumerate(fams):
        for b, Fb in enumerate(fams):
            prod = A.coords(_family_mul(Fa, Fb))
            if prod:
                A.table[(a, b)] = prod
    ident = [{(p, p): 1 for p in range(X.size(x))} for x in G.objects]
    A.unit = A.coords(ident)
    return A


# ---------------------------------------------------------------------------
# maps between algebras


class AlgebraMap:
    """Linear map given by the images (target coordinates) of source basis vectors.

    The ``unital``/``multiplicative``/``injective``/``surjective`` flags stay
    ``None`` until :func:`verify_ring_map` has checked them exhaustively.
    """

    def __init__(self, source: SCAlgebra, target: SCAlgebra, columns, name=""):
        self.source = source
        self.target = target
        self.columns = [dict(c) for c in columns]
        self.name = name
        self.unital = self.multiplicative = self.injective = self.surjective = None
        self.rank = None

    def __call__(self, v: dict) -> dict:
        return _combine(self.columns, v)

    def matrix(self):
        """Dense ``target.dim × source.dim`` matrix."""
        return [[c.get(k, 0) for c in self.columns] for k in range(self.target.dim)]


def verify_ring_map(f: AlgebraMap) -> dict:
    """Exact unit, multiplicativity and rank checks; failures are reported, not raised."""
    S, T = f.source, f.target
    report = {"name": f.name, "source_dim": S.dim, "target_dim": T.dim}
    f.unital = f(S.unit) == T.unit
    report["unital"] = f.unital
    bad = None
    for i in range(S.dim):
        for j in range(S.dim):
            if f(S.mul_basis(i, j)) != T.mul(f.columns[i], f.columns[j]):
                bad = (i, j)
                break
        if bad:
            break
    f.multiplicative = bad is None
    report["multiplicative"] = f.multiplicative
    if bad:
        report["counterexample"] = [str(S.labels[bad[0]]), str(S.labels[bad[1]])]
    f.rank = sparse_rank(f.columns, T.dim, QQ)
    f.injective = f.rank == S.dim
    f.surjective = f.rank == T.dim
    report.update(rank=f.rank, injective=f.injective, surjective=f.surjective)
    report["ok"] = bool(f.unital and f.multiplicative)
    return report


# ---------------------------------------------------------------------------
# center transport for a connected groupoid


def _equivariant_at_base(G, X, b, theta: dict) -> bool:
    for u in G.homset(b, b):
        s = X.act[u]
        moved = {(s[p], s[q]): c for (p, q), c in theta.items()}
        if moved != theta:
            return False
    return True


def transport_center(theta_base: dict, G: FiniteGroupoid, T: Transversal, X: GSet):
    """Extend a central endomorphism at the base object to every object.

    ``θ_y = X(g_y) ∘ θ_b ∘ X(g_y)⁻¹``; returns the per-object matrices after
    checking naturality along every morphism.
    """
    T.check_for(G)
    dec = connected_components(G)
    if dec.n_components != 1:
        raise NotConnected(f"groupoid has {dec.n_components} components")
    b = dec.representatives[0]
    theta = {k: v for k, v in theta_base.items() if v != 0}
    if not _equivariant_at_base(G, X, b, theta):
        raise NotCentral("matrix is not equivariant under the base isotropy group")
    Gb = isotropy_groupoid(G, b)
    Ab = centralizer_algebra(Gb, restrict(X, Gb))
    for i in range(Ab.dim):
        Ai = Ab.orbital_matrix(i)
        if _matmul(theta, Ai) != _matmul(Ai, theta):
            raise NotCentral(f"matrix does not commute with orbital {Ab.labels[i]}")
    fam = []
    for y in G.objects:
        s = X.act[T.connectors[y]]
        fam.append({(s[p], s[q]): c for (p, q), c in theta.items()})
    for g in G.morphisms:
        s = X.act[g]
        moved = {(s[p], s[q]): c for (p, q), c in fam[G.dom[g]].items()}
        if moved != fam[G.cod[g]]:
            raise AlgebraError(f"transported family is not natural at {G.mor_labels[g]!r}")
    return fam


def center_transport_iso(G: FiniteGroupoid, T: Transversal, X: GSet,
                         bound: int = NAIVE_BOUND) -> tuple[AlgebraMap, dict]:
    """``φ: Z(End_{G_b}(X(b))) -> Z(End_G(X))`` with the target built by direct solve.

    Returns the map and its :func:`verify_ring_map` report.
    """
    T.check_for(G)
    dec = connected_components(G)
    if dec.n_components != 1:
        raise NotConnected(f"groupoid has {dec.n_components} components")
    _check_naive_bound(G, X, bound)
    b = dec.representatives[0]
    Gb = isotropy_groupoid(G, b)
    src_full = centralizer_algebra(Gb, restrict(X, Gb), name="End_{G_b}(k[X(b)])")
    src_basis, Zs = center(src_full)
    tgt_full = natural_endomorphism_algebra(G, X, bound)
    _, Zt = center(tgt_full)
    cols = []
    for z in src_basis:
        fam = transport_center(src_full.matrix(z, 0), G, T, X)
        cols.append(Zt.space.coords(tgt_full.coords(fam)))
    phi = AlgebraMap(Zs, Zt, cols, name="center-transport")
    return phi, verify_ring_map(phi)


# ---------------------------------------------------------------------------
# component decompositions


def decompose_by_components(G: FiniteGroupoid, builder, T: Transversal | None = None,
                            gset: GSet | None = None, bound: int = NAIVE_BOUND):
    """Verified isomorphism ``Z(whole) -> ∏ Z(component algebra)``.

    ``builder`` is :func:`groupoid_algebra`, :func:`yoshida_algebra` (needs
    ``T``) or :func:`centralizer_algebra` (needs ``gset``).  For the
    endomorphism builders the whole algebra is the direct naturality solve
    over all of ``G`` and the map restricts a natural family to each
    component's base object.  Returns ``(map, report)``.
    """
    dec = connected_components(G)
    comps = [component_subgroupoid(G, i) for i in range(dec.n_components)]
    if builder is groupoid_algebra:
        whole = groupoid_algebra(G)
        parts = [groupoid_algebra(H) for H in comps]
        src_basis, Zw = center(whole)
        Zparts = [center(P)[1] for P in parts]
        P = direct_product(Zparts, "prod Z(k[G_i])")
        cols = []
        for z in src_basis:
            col = {}
            for t, H in enumerate(comps):
                mloc = {g: i for i, g in enumerate(H.inclusion[1])}
                local = {mloc[g]: c for g, c in z.items() if g in mloc}
                col.update({P.offsets[t] + a: c for a, c in Zparts[t].space.coords(local).items()})
            cols.append(col)
    else:
        if builder is yoshida_algebra:
            if T is None:
                raise AlgebraError("yoshida builder needs a transversal")
            T.check_for(G)
            Om = omega(G, T)
            X = gset_product(Om, Om)
            _check_naive_bound(G, X, bound)
            parts = [yoshida_algebra(H, T.restrict(H)) for H in comps]
        elif builder is centralizer_algebra:
            if gset is None:
                raise AlgebraError("centralizer builder needs a G-set")
            X = gset
            _check_naive_bound(G, X, bound)
            parts = [centralizer_algebra(H, restrict(X, H)) for H in comps]
        else:
            raise AlgebraError(f"unsupported builder {builder!r}")
        whole = natural_endomorphism_algebra(G, X, bound)
        src_basis, Zw = center(whole)
        Zparts = [center(Pt)[1] for Pt in parts]
        P = direct_product(Zparts, "prod Z(End_i)")
        cols = []
        for z in src_basis:
            fam = whole.family(z)
            col = {}
            for t, H in enumerate(comps):
                Pt = parts[t]
                if restrict(X, H).act != Pt.gset.act:
                    raise AlgebraError("component G-set differs from the restricted G-set")
                b_local = Pt.bases[0]
                M = fam[H.inclusion[0][b_local]]
                local = Pt.coords_from_matrix(M, 0)
                col.update({P.offsets[t] + a: c
                            for a, c in Zparts[t].space.coords(local).items()})
            cols.append(col)
    f = AlgebraMap(Zw, P, cols, name="component-decomposition")
    return f, verify_ring_map(f)


# ---------------------------------------------------------------------------
# fingerprints


def _reduce(x, p):
    if isinstance(x, Fraction):
        if x.denominator % p == 0:
            raise BadPrime(f"{p} divides a denominator")
        return x.numerator * pow(x.denominator, -1, p) % p
    return x % p


def fingerprint(A: SCAlgebra, primes, order: int | None = None):
    """``(dim, {p: number of primitive idempotents of A ⊗ F_p})``.

    The count is the F_p-dimension of the fixed space of ``z ↦ z^p``, which is
    F_p-linear on a commutative F_p-algebra.
    """
    if not A.is_commutative():
        raise NotCommutative(f"{A.name} is not commutative")
    counts = {}
    for p in primes:
        F = Field(p)
        if order is not None and order % p == 0:
            raise BadPrime(f"{p} divides the groupoid order {order}")
        table = {}
        for key, prod in A.table.items():
            red = {k: _reduce(c, p) for k, c in prod.items()}
            red = {k: c for k, c in red.items() if c}
            if red:
                table[key] = red
        unit = {k: _reduce(c, p) for k, c in A.unit.items()}
        unit = {k: c for k, c in unit.items() if c}
        if not unit:
            raise BadPrime(f"unit vanishes mod {p}")

        def mul(u, v):
            out = {}
            for i, a in u.items():
                for j, b in v.items():
                    for k, c in table.get((i, j), {}).items():
                        out[k] = (out.get(k, 0) + a * b * c) % p
            return {k: c for k, c in out.items() if c}

        def power(v, e):
            result, base = dict(unit), dict(v)
            while e:
                if e & 1:
                    result = mul(result, base)
                base = mul(base, base)
                e >>= 1
            return result

        cols = []
        for i in range(A.dim):
            img = power({i: 1}, p)
            img[i] = (img.get(i, 0) - 1) % p
            cols.append({k: c for k, c in img.items() if c})
        rows = {}
        for j, col in enumerate(cols):
            for k, c in col.items():
                rows.setdefault(k, {})[j] = c
        counts[p] = len(sparse_kernel(list(rows.values()), A.dim, F))
    return A.dim, counts
