"""The matrix algebra spanned by words in a tuple, and what it decides.

Irreducibility is Burnside's criterion (the envelope is all of M_n), complete
reducibility is nondegeneracy of the trace form on the envelope (in
characteristic zero its kernel is the Jacobson radical), and the centraliser
is the commutant.  All three are dimensions of spaces defined over the
working field, so the verdicts hold over its algebraic closure too.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .linalg import (
    EchelonBasis, Matrix, Subspace, coerce, kernel, rank,
)
from .onepar import GL, GROUP_KIND, SL, GroupPoint


@dataclass(frozen=True)
class AlgebraData:
    n: int
    field: str
    generators: tuple
    basis: tuple           # Matrices, RREF of the vectorised span
    gram: tuple            # rows of the trace form in ``basis``
    radical: Subspace      # in coordinates w.r.t. ``basis``
    commutant_basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def radical_dim(self) -> int:
        return self.radical.dim

    @property
    def commutant_dim(self) -> int:
        return len(self.commutant_basis)

    def contains(self, m: Matrix) -> bool:
        eb = EchelonBasis(self.n * self.n, self.field)
        for b in self.basis:
            eb.add(b.vec())
        return eb.contains(m.vec())

    def radical_matrices(self) -> list[Matrix]:
        out = []
        for coords in self.radical.basis:
            m = Matrix.zero(self.n, self.field)
            for c, b in zip(coords, self.basis):
                if c:
                    m = m + b.scale(c)
            out.append(m)
        return out


def span_closure(generators: Sequence[Matrix], n: int, fld: str) -> list[Matrix]:
    """Basis of the unital algebra generated by ``generators``.

    Breadth first: every new word is multiplied on the left by each generator
    until nothing new appears (at most n^2 growth steps).
    """
    eb = EchelonBasis(n * n, fld)
    ident = Matrix.identity(n, fld)
    eb.add(ident.vec())
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for g in generators:
                p = g @ w
                if eb.add(p.vec()):
                    nxt.append(p)
        frontier = nxt
    return [Matrix.from_vec(r, n, fld) for r in eb.rows]


def trace_form(basis: Sequence[Matrix]) -> list[list]:
    vecs = [b.vec() for b in basis]
    tvecs = [b.transpose().vec() for b in basis]
    fld = basis[0].field
    zero = coerce(0, fld)
    return [[sum((p * q for p, q in zip(u, tv) if p and q), zero) for tv in tvecs]
            for u in vecs]


def commutant(mats: Sequence[Matrix], n: int, fld: str) -> list[Matrix]:
    """Basis of ``{g : g m = m g for every m in mats}``."""
    nn = n * n
    zero = coerce(0, fld)
    rows = []
    for m in mats:
        for r in range(n):
            for c in range(n):
                # (g m - m g)[r][c] as a linear form in vec(g)
                row = [zero] * nn
                for k in range(n):
                    a = m.rows[k][c]
                    if a:
                        row[r * n + k] += a
                    b = m.rows[r][k]
                    if b:
                        row[k * n + c] -= b
                if any(row):
                    rows.append(row)
    ker = kernel(rows, nn, fld)
    return [Matrix.from_vec(v, n, fld) for v in ker.basis]


def algebra_closure(x: GroupPoint | Sequence[Matrix]) -> AlgebraData:
    mats = tuple(x.mats if isinstance(x, GroupPoint) else x)
    n, fld = mats[0].n, mats[0].field
    basis = span_closure(mats, n, fld)
    gram = trace_form(basis)
    radical = kernel(gram, len(basis), fld)
    comm = commutant(mats, n, fld)
    data = AlgebraData(n, fld, mats, tuple(basis), tuple(tuple(r) for r in gram),
                       radical, tuple(comm))
    if isinstance(x, GroupPoint) and x.kind == GROUP_KIND and __debug__:
        # inverses are in the envelope by Cayley-Hamilton
        for m in mats:
            assert data.contains(m.inverse()), "generator inverse escaped the envelope"
    return data


def is_irreducible(a: AlgebraData) -> bool:
    return a.dim == a.n * a.n


def is_completely_reducible(a: AlgebraData) -> bool:
    return a.radical_dim == 0


def is_isotropic(a: AlgebraData, group: str = GL) -> bool:
    # the unit group of the scalar matrices meets GL_n / SL_n exactly in the centre
    return is_completely_reducible(a) and a.commutant_dim == 1


def radical_invariant_subspace(a: AlgebraData) -> Subspace | None:
    """``rad(A) V``: proper, nonzero and invariant whenever the radical is nonzero."""
    if a.radical_dim == 0:
        return None
    cols = [tuple(col) for m in a.radical_matrices() for col in zip(*m.rows)]
    return Subspace.span(cols, a.n, a.field)


def radical_series(a: AlgebraData) -> list[Subspace]:
    """``rad V > rad^2 V > ...`` down to (excluding) zero."""
    first = radical_invariant_subspace(a)
    if first is None:
        return []
    rad = a.radical_matrices()
    out = [first]
    while True:
        cur = out[-1]
        nxt = Subspace.span([r.apply(v) for r in rad for v in cur.basis], a.n, a.field)
        if nxt.dim == 0:
            return out
        out.append(nxt)


def sl_basis(n: int, fld: str) -> list[Matrix]:
    """E_ij (i != j) and E_ii - E_nn, in row-major order of (i, j)."""
    out = []
    for i in range(n):
        for j in range(n):
            if i != j:
                out.append(Matrix.unit(i, j, n, fld))
            elif i < n - 1:
                out.append(Matrix.unit(i, i, n, fld) - Matrix.unit(n - 1, n - 1, n, fld))
    return out


def _sl_coords(m: Matrix) -> list:
    n = m.n
    return [m.rows[i][j] for i in range(n) for j in range(n) if i != j or i < n - 1]


def adjoint_matrix(g: Matrix, space: str = "gl") -> Matrix:
    """Matrix of ``v -> g v g^-1`` on gl_n (basis E_ij) or on sl_n."""
    g_inv = g.inverse()
    n, fld = g.n, g.field
    if space == "gl":
        basis = [Matrix.unit(i, j, n, fld) for i in range(n) for j in range(n)]
        coords = [(g @ b @ g_inv).vec() for b in basis]
    elif space == "sl":
        basis = sl_basis(n, fld)
        coords = [_sl_coords(g @ b @ g_inv) for b in basis]
    else:
        raise ValueError(f"unknown space {space!r}")
    return Matrix(list(zip(*coords)), fld)


def ad_matrices(x: GroupPoint, space: str | None = None) -> GroupPoint:
    """The tuple ``(Ad x_1, ..., Ad x_N)`` as a point of GL(gl_n) or GL(sl_n)."""
    if x.kind != GROUP_KIND:
        raise ValueError("adjoint matrices need a group tuple")
    if space is None:
        space = "sl" if x.group == SL else "gl"
    return GroupPoint(GL, GROUP_KIND, tuple(adjoint_matrix(m, space) for m in x.mats))


def double_commutant_contains(a: AlgebraData) -> bool:
    cc = commutant(a.commutant_basis, a.n, a.field)
    eb = EchelonBasis(a.n * a.n, a.field)
    for m in cc:
        eb.add(m.vec())
    return all(eb.contains(b.vec()) for b in a.basis)


def gram_rank(a: AlgebraData) -> int:
    return rank(a.gram, a.dim)

