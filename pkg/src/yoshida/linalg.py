"""Exact dense and sparse linear algebra over the rationals and prime fields.

Vectors are either dense sequences or sparse ``{index: value}`` dicts.
Rational entries are kept as ``int`` whenever they are integral and as
``fractions.Fraction`` otherwise, which keeps elimination on integer data
fast.  Prime-field entries are ints in ``range(p)``.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Sequence


class LinalgError(Exception):
    pass


class DimensionMismatch(LinalgError):
    pass


class NotPrime(LinalgError):
    pass


class NoSolution(LinalgError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def next_primes(n: int, count: int) -> list[int]:
    """The ``count`` smallest primes strictly greater than ``n``."""
    out = []
    q = n + 1
    while len(out) < count:
        if is_prime(q):
            out.append(q)
        q += 1
    return out


class Field:
    """Scalar domain: ``Field()`` is the rationals, ``Field(p)`` is F_p."""

    def __init__(self, p: int | None = None):
        if p is not None and not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    @property
    def name(self) -> str:
        return "QQ" if self.p is None else f"GF({self.p})"

    def convert(self, x):
        if self.p is None:
            if isinstance(x, Fraction):
                return x.numerator if x.denominator == 1 else x
            if isinstance(x, int):
                return x
            return _canon(Fraction(x))
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def div(self, a, b):
        if self.p is None:
            return _qdiv(a, b)
        return a * pow(b, -1, self.p) % self.p

    def inv(self, a):
        return self.div(self.convert(1), a)


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


def _canon(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _qdiv(a, b):
    if isinstance(a, int) and isinstance(b, int):
        if a % b == 0:
            return a // b
        return Fraction(a, b)
    return _canon(Fraction(a) / b)


def _height(x) -> int:
    if isinstance(x, Fraction):
        return x.numerator.bit_length() + x.denominator.bit_length()
    return abs(x).bit_length()


# ---------------------------------------------------------------------------
# sparse elimination core


def sparse_rref(rows: Iterable[dict], ncols: int, field: Field = QQ):
    """Gauss-Jordan elimination on sparse rows.

    Returns ``(rref_rows, pivots)`` where ``rref_rows[i]`` has a 1 in column
    ``pivots[i]`` and zeros in every other pivot column.  The row supplying a
    pivot is the candidate with the smallest entry height, which keeps
    fraction growth down without changing the (unique) reduced form.
    """
    p = field.p
    work = []
    for r in rows:
        row = {}
        for c, v in r.items():
            if not 0 <= c < ncols:
                raise DimensionMismatch(f"column {c} outside 0..{ncols - 1}")
            v = field.convert(v)
            if v != 0:
                row[c] = v
        if row:
            work.append(row)

    colidx = defaultdict(set)
    for i, row in enumerate(work):
        for c in row:
            colidx[c].add(i)

    used = set()
    pivots = []
    for c in range(ncols):
        if c not in colidx:
            continue
        cands = [i for i in colidx[c] if i not in used]
        if not cands:
            continue
        pr = min(cands, key=lambda i: (_height(work[i][c]), len(work[i]), i))
        prow = work[pr]
        pv = prow[c]
        if pv != 1:
            if p is None:
                for cc in prow:
                    prow[cc] = _qdiv(prow[cc], pv)
            else:
                ip = pow(pv, -1, p)
                for cc in prow:
                    prow[cc] = prow[cc] * ip % p
        used.add(pr)
        pivots.append((c, pr))
        pitems = list(prow.items())
        for i in list(colidx[c]):
            if i == pr:
                continue
            row = work[i]
            f = row[c]
            for cc, v in pitems:
                old = row.get(cc)
                if p is None:
                    new = _canon(-f * v) if old is None else _canon(old - f * v)
                else:
                    new = (-f * v) % p if old is None else (old - f * v) % p
                if new == 0:
                    if old is not None:
                        del row[cc]
                        colidx[cc].discard(i)
                else:
                    if old is None:
                        colidx[cc].add(i)
                    row[cc] = new
    pivots.sort()
    return [work[i] for _, i in pivots], [c for c, _ in pivots]


def sparse_kernel(rows: Iterable[dict], ncols: int, field: Field = QQ, with_free=False):
    """Basis of ``{v : row . v = 0 for every row}``, one vector per free column.

    Each basis vector carries a 1 at its free column and 0 at the other free
    columns, so coordinates of a kernel element are its free-column values.
    With ``with_free=True`` returns ``(basis, free_columns)``.
    """
    R, piv = sparse_rref(rows, ncols, field)
    pivset = set(piv)
    p = field.p
    free = [c for c in range(ncols) if c not in pivset]
    basis = {f: {f: field.convert(1)} for f in free}
    for row, pc in zip(R, piv):
        for c, v in row.items():
            if c != pc:
                basis[c][pc] = (-v) % p if p else -v
    out = [basis[f] for f in free]
    return (out, free) if with_free else out


def sparse_rank(rows: Iterable[dict], ncols: int, field: Field = QQ) -> int:
    return len(sparse_rref(rows, ncols, field)[1])


def span_basis(vectors: Sequence[dict], dim: int, field: Field = QQ):
    """Canonical (reduced echelon) basis of the span of sparse vectors."""
    return sparse_rref(vectors, dim, field)


# ---------------------------------------------------------------------------
# dense matrices


class Matrix:
    """Small dense matrix with exact entries and a scalar-domain tag."""

    def __init__(self, entries, field: Field = QQ, ncols: int | None = None):
        self.field = field
        self.entries = [[field.convert(x) for x in row] for row in entries]
        self.nrows = len(self.entries)
        if ncols is None:
            ncols = len(self.entries[0]) if self.entries else 0
        for row in self.entries:
            if len(row) != ncols:
                raise DimensionMismatch("ragged matrix rows")
        self.ncols = ncols

    @classmethod
    def identity(cls, n, field: Field = QQ):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], field, n)

    @classmethod
    def from_columns(cls, columns, nrows, field: Field = QQ):
        cols = [_dense(c, nrows) for c in columns]
        return cls([[c[i] for c in cols] for i in range(nrows)], field, len(cols))

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and (self.nrows, self.ncols) == (other.nrows, other.ncols)
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"Matrix({self.entries!r}, {self.field!r})"

    def sparse_rows(self):
        return [{j: v for j, v in enumerate(row) if v != 0} for row in self.entries]

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionMismatch(f"{self.ncols} != {other.nrows}")
            cols = list(zip(*other.entries)) if other.nrows else [()] * other.ncols
            out = [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.entries]
            return Matrix(out, self.field, other.ncols)
        v = _dense(other, self.ncols)
        if len(v) != self.ncols:
            raise DimensionMismatch(f"vector length {len(v)} != {self.ncols}")
        return [self.field.convert(sum(a * b for a, b in zip(row, v))) for row in self.entries]


def _dense(v, n):
    if isinstance(v, dict):
        out = [0] * n
        for i, x in v.items():
            out[i] = x
        return out
    return list(v)


def _as_matrix(M, field):
    if isinstance(M, Matrix):
        return M
    return Matrix(M, field)


def rref(M, field: Field = QQ):
    """Reduced row echelon form: returns ``(R, rank, pivot_columns)``."""
    M = _as_matrix(M, field)
    rows, piv = sparse_rref(M.sparse_rows(), M.ncols, M.field)
    dense = [_dense(r, M.ncols) for r in rows]
    dense += [[0] * M.ncols for _ in range(M.nrows - len(rows))]
    return Matrix(dense, M.field, M.ncols), len(piv), piv


def rank(M, field: Field = QQ) -> int:
    M = _as_matrix(M, field)
    return sparse_rank(M.sparse_rows(), M.ncols, M.field)


def kernel_basis(M, field: Field = QQ) -> list[list]:
    M = _as_matrix(M, field)
    return [_dense(v, M.ncols) for v in sparse_kernel(M.sparse_rows(), M.ncols, M.field)]


def solve(M, b, field: Field = QQ) -> list:
    """One solution of ``M x = b``; raises NoSolution if inconsistent."""
    M = _as_matrix(M, field)
    b = _dense(b, M.nrows)
    if len(b) != M.nrows:
        raise DimensionMismatch(f"right-hand side has length {len(b)}, expected {M.nrows}")
    F = M.field
    aug = []
    for row, bi in zip(M.sparse_rows(), b):
        row = dict(row)
        bi = F.convert(bi)
        if bi != 0:
            row[M.ncols] = bi
        aug.append(row)
    R, piv = sparse_rref(aug, M.ncols + 1, F)
    if piv and piv[-1] == M.ncols:
        raise NoSolution("inconsistent system")
    x = [F.convert(0)] * M.ncols
    for row, pc in zip(R, piv):
        x[pc] = row.get(M.ncols, F.convert(0))
    return x


def intersect(space_a, space_b, dim: int, field: Field = QQ) -> list[list]:
    """Reduced echelon basis of span(space_a) ∩ span(space_b) in ``field^dim``."""
    A = [_dense(v, dim) for v in space_a]
    B = [_dense(v, dim) for v in space_b]
    for v in A + B:
        if len(v) != dim:
            raise DimensionMismatch(f"vector of length {len(v)} in a {dim}-dimensional space")
    if not A or not B:
        return []
    F = field
    # a.x - b.y = 0, unknowns (x, y)
    n = len(A) + len(B)
    rows = []
    for i in range(dim):
        row = {}
        for j, v in enumerate(A):
            if v[i] != 0:
                row[j] = v[i]
        for j, v in enumerate(B):
            if v[i] != 0:
                row[len(A) + j] = -F.convert(v[i])
        rows.append(row)
    vecs = []
    for sol in sparse_kernel(rows, n, F):
        w = {}
        for j, c in sol.items():
            if j < len(A):
                for i, a in enumerate(A[j]):
                    if a != 0:
                        w[i] = w.get(i, 0) + c * a
        vecs.append(w)
    R, _ = sparse_rref(vecs, dim, F)
    return [_dense(r, dim) for r in R]


def pivot_minor_determinant(M) -> int:
    """Determinant of a maximal nonsingular minor of an integer matrix.

    The rank of ``M`` mod ``p`` equals its rational rank whenever ``p`` does
    not divide this number, so its prime divisors bound the bad primes.
    """
    M = _as_matrix(M, QQ)
    if M.nrows == 0 or M.ncols == 0:
        return 1
    # pivots of the transpose pick independent rows of M
    _, _, rows_sel = rref(Matrix([list(c) for c in zip(*M.entries)], QQ, M.nrows))
    _, _, cols_sel = rref(M)
    sub = [[M.entries[i][j] for j in cols_sel] for i in rows_sel]
    return abs(int(_det(sub))) if sub else 1


def _det(A):
    n = len(A)
    A = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for c in range(n):
        pr = next((r for r in range(c, n) if A[r][c] != 0), None)
        if pr is None:
            return 0
        if pr != c:
            A[c], A[pr] = A[pr], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                for k in range(c, n):
                    A[r][k] -= f * A[c][k]
    return det


def sparse_add(u: dict, v: dict, scale=1) -> dict:
    """``u + scale*v`` without mutating inputs."""
    out = dict(u)
    for k, x in v.items():
        y = _canon(out.get(k, 0) + scale * x)
        if y == 0:
            out.pop(k, None)
        else:
            out[k] = y
    return out
