"""One-parameter subgroups of GL_n and SL_n.

A cocharacter is stored as a conjugator ``h`` and integer weights ``k`` and
stands for ``t -> h diag(t^k_1, ..., t^k_n) h^-1``.  Conjugating ``g`` by it
scales entry ``(i, j)`` of ``h^-1 g h`` by ``t^(k_i - k_j)``, so every limit
question reduces to a zero pattern after one change of basis.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Sequence

from .linalg import (
    Q, Flag, Matrix, ShapeError, SingularMatrixError, adapted_basis,
    columns_matrix, coerce,
)

GL = "GL"
SL = "SL"
GROUP_KIND = "group"
LIE_KIND = "lie"

# permutation conjugators are enumerated exhaustively, so keep n small
MAX_SAMPLING_N = 4


class InvalidPointError(ValueError):
    def __init__(self, code: str, message: str, index: int | None = None):
        super().__init__(message)
        self.code = code
        self.index = index


@dataclass(frozen=True)
class GroupPoint:
    """A tuple ``x`` in G^N (kind ``group``) or in (Lie G)^N (kind ``lie``).

    For SL_n the ``lie`` kind ranges over all n x n matrices, which is the
    conjugation representation on M_n; traces are not constrained.
    """

    group: str
    kind: str
    mats: tuple

    def __post_init__(self):
        object.__setattr__(self, "mats", tuple(self.mats))
        self.validate()

    def validate(self):
        if self.group not in (GL, SL):
            raise InvalidPointError("BAD_GROUP", f"unknown group {self.group!r}")
        if self.kind not in (GROUP_KIND, LIE_KIND):
            raise InvalidPointError("BAD_KIND", f"unknown kind {self.kind!r}")
        if not self.mats:
            raise InvalidPointError("EMPTY_TUPLE", "a point needs at least one matrix")
        n = self.mats[0].n
        fld = self.mats[0].field
        for idx, m in enumerate(self.mats):
            if m.n != n:
                raise InvalidPointError("SIZE_MISMATCH", f"matrix {idx} has size {m.n}, expected {n}", idx)
            if m.field != fld:
                raise InvalidPointError("FIELD_MISMATCH", f"matrix {idx} is over {m.field}", idx)
            if self.kind == GROUP_KIND:
                d = m.det()
                if not d:
                    raise InvalidPointError("NOT_INVERTIBLE", f"matrix {idx} is singular", idx)
                if self.group == SL and d != 1:
                    raise InvalidPointError("DET_NOT_ONE", f"matrix {idx} has determinant {d}", idx)

    @property
    def n(self) -> int:
        return self.mats[0].n

    @property
    def field(self) -> str:
        return self.mats[0].field

    def __len__(self):
        return len(self.mats)

    def replace(self, mats) -> "GroupPoint":
        return GroupPoint(self.group, self.kind, tuple(mats))

    def conjugate(self, g: Matrix, g_inv: Matrix | None = None) -> "GroupPoint":
        """The point ``g x g^-1`` (the action used throughout)."""
        if g_inv is None:
            g_inv = g.inverse()
        return self.replace(g @ m @ g_inv for m in self.mats)

    def concat(self, other: "GroupPoint") -> "GroupPoint":
        return self.replace(self.mats + other.mats)

    def lift(self) -> "GroupPoint":
        return self.replace(m.lift() for m in self.mats)


@dataclass(frozen=True)
class Cochar:
    weights: tuple
    conjugator: Matrix

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(k) for k in self.weights))
        if len(self.weights) != self.conjugator.n:
            raise ShapeError("weight vector length must match the conjugator size")

    @classmethod
    def diagonal(cls, weights: Sequence[int], field: str = Q) -> "Cochar":
        return cls(tuple(weights), Matrix.identity(len(weights), field))

    @property
    def n(self) -> int:
        return len(self.weights)

    @cached_property
    def conjugator_inv(self) -> Matrix:
        try:
            return self.conjugator.inverse()
        except SingularMatrixError:
            raise SingularMatrixError("cocharacter conjugator is singular") from None

    @property
    def is_trivial(self) -> bool:
        return not any(self.weights)

    @property
    def is_central(self) -> bool:
        """Image lies in the centre of GL_n (all weights equal)."""
        return len(set(self.weights)) <= 1

    def for_field(self, fld: str) -> "Cochar":
        if self.conjugator.field == fld:
            return self
        return Cochar(self.weights, Matrix(self.conjugator.rows, fld))

    def value(self, t) -> Matrix:
        """``lambda(t)`` for a nonzero exact scalar ``t``."""
        h = self.conjugator
        d = Matrix.diag([coerce(t, h.field) ** k for k in self.weights], h.field)
        return h @ d @ self.conjugator_inv


def _block_part(gp: Matrix, weights) -> Matrix | None:
    rows = gp.rows
    zero = coerce(0, gp.field)
    out = []
    for i, r in enumerate(rows):
        ki = weights[i]
        row = []
        for j, a in enumerate(r):
            kj = weights[j]
            if ki < kj:
                if a:
                    return None
                row.append(zero)
            elif ki == kj:
                row.append(a)
            else:
                row.append(zero)
        out.append(tuple(row))
    return Matrix._raw(tuple(out), gp.field)


def limit_conj(lam: Cochar, g: Matrix) -> Matrix | None:
    """``lim_{t->0} lambda(t) g lambda(t)^-1`` or None when it does not exist.

    The same formula serves group elements and Lie algebra elements.
    """
    if g.n != lam.n:
        raise ShapeError(f"cocharacter of size {lam.n} applied to matrix of size {g.n}")
    lam = lam.for_field(g.field)
    h, h_inv = lam.conjugator, lam.conjugator_inv
    block = _block_part(h_inv @ g @ h, lam.weights)
    if block is None:
        return None
    return h @ block @ h_inv


def in_parabolic(lam: Cochar, g: Matrix) -> bool:
    return limit_conj(lam, g) is not None


def in_levi(lam: Cochar, g: Matrix) -> bool:
    return limit_conj(lam, g) == g


def in_unipotent(lam: Cochar, g: Matrix) -> bool:
    return limit_conj(lam, g) == Matrix.identity(g.n, g.field)


def limit_tuple(lam: Cochar, x: GroupPoint) -> GroupPoint | None:
    """Componentwise limit; exists exactly when ``lam`` lies in Lambda_x."""
    if x.group == SL and sum(lam.weights) != 0:
        raise ValueError("SL_n cocharacters need weights summing to zero")
    out = []
    for m in x.mats:
        lim = limit_conj(lam, m)
        if lim is None:
            return None
        out.append(lim)
    return x.replace(out)


def opposite(lam: Cochar) -> Cochar:
    return Cochar(tuple(-k for k in lam.weights), lam.conjugator)


@dataclass(frozen=True)
class WeightDecomp:
    components: tuple  # (weight, Matrix) pairs, weights strictly increasing

    @property
    def weights(self) -> tuple:
        return tuple(w for w, _ in self.components)

    def total(self, n: int, fld: str) -> Matrix:
        out = Matrix.zero(n, fld)
        for _, c in self.components:
            out = out + c
        return out


def weight_decomp(lam: Cochar, v: Matrix) -> WeightDecomp:
    """Split ``v`` into eigencomponents of the adjoint action of ``lam``."""
    if v.n != lam.n:
        raise ShapeError("size mismatch")
    lam = lam.for_field(v.field)
    h, h_inv = lam.conjugator, lam.conjugator_inv
    vp = h_inv @ v @ h
    zero = coerce(0, v.field)
    k = lam.weights
    buckets: dict[int, list] = {}
    for i, r in enumerate(vp.rows):
        for j, a in enumerate(r):
            if a:
                buckets.setdefault(k[i] - k[j], []).append((i, j, a))
    comps = []
    for w in sorted(buckets):
        rows = [[zero] * v.n for _ in range(v.n)]
        for i, j, a in buckets[w]:
            rows[i][j] = a
        comps.append((w, h @ Matrix(rows, v.field) @ h_inv))
    return WeightDecomp(tuple(comps))


def mu(lam: Cochar, v: Matrix) -> int:
    """Least weight occurring in the decomposition of a nonzero ``v``."""
    dec = weight_decomp(lam, v)
    if not dec.components:
        raise ValueError("mu is undefined for the zero vector")
    return dec.components[0][0]


def flag_to_cochar(flag: Flag, group: str = GL) -> Cochar:
    """A cocharacter whose parabolic is the stabiliser of ``flag``.

    The first (smallest) subspace gets the largest weight; weights drop by one
    at each step and the complement gets weight 0.  For SL_n the weights are
    recentred to sum zero and reduced by their gcd.
    """
    basis = adapted_basis(flag)
    n = flag.ambient
    fld = flag.subspaces[0].field
    steps = len(flag.subspaces)
    weights = []
    prev = 0
    for s, sub in enumerate(flag.subspaces):
        weights += [steps - s] * (sub.dim - prev)
        prev = sub.dim
    weights += [0] * (n - prev)
    if group == SL:
        total = sum(weights)
        weights = [n * k - total for k in weights]
        g = 0
        for k in weights:
            g = gcd(g, k)
        if g > 1:
            weights = [k // g for k in weights]
    return Cochar(tuple(weights), columns_matrix(basis, fld))


def permutation_matrices(n: int, fld: str = Q) -> list[Matrix]:
    out = []
    for perm in itertools.permutations(range(n)):
        out.append(Matrix([[1 if perm[i] == j else 0 for j in range(n)] for i in range(n)], fld))
    return out


def weight_grid(n: int, bound: int, group: str) -> list[tuple]:
    grid = itertools.product(range(-bound, bound + 1), repeat=n)
    if group == SL:
        return [w for w in grid if sum(w) == 0]
    return list(grid)


@dataclass
class _ConjugatedPoint:
    h: Matrix
    h_inv: Matrix
    mats: tuple
    support: tuple = field(default=())  # off-diagonal (i, j) with some nonzero entry


class LambdaSampler:
    """Finite sample of Lambda_x over a conjugator pool and a weight box.

    Each conjugator is applied once; membership of a weight vector is then a
    check on the cached off-diagonal support.
    """

    def __init__(self, x: GroupPoint, conjugators: Sequence[Matrix] = ()):
        if x.n > MAX_SAMPLING_N:
            raise ValueError(f"sampling is limited to n <= {MAX_SAMPLING_N}")
        self.x = x
        pool = [Matrix.identity(x.n, x.field)] + permutation_matrices(x.n, x.field)
        pool += [Matrix(h.rows, x.field) for h in conjugators]
        seen = set()
        self.pool: list[_ConjugatedPoint] = []
        for h in pool:
            if h in seen:
                continue
            seen.add(h)
            h_inv = h.inverse()
            mats = tuple(h_inv @ m @ h for m in x.mats)
            support = tuple(sorted({(i, j) for m in mats for i, r in enumerate(m.rows)
                                    for j, a in enumerate(r) if a and i != j}))
            self.pool.append(_ConjugatedPoint(h, h_inv, mats, support))

    def sample(self, bound: int) -> list[Cochar]:
        if bound < 1:
            raise ValueError("bound must be at least 1")
        grid = weight_grid(self.x.n, bound, self.x.group)
        out = []
        for cp in self.pool:
            for w in grid:
                if all(w[i] >= w[j] for i, j in cp.support):
                    out.append(Cochar(w, cp.h))
        return out

    def limit(self, lam: Cochar) -> GroupPoint | None:
        for cp in self.pool:
            if cp.h == lam.conjugator:
                blocks = [_block_part(m, lam.weights) for m in cp.mats]
                if any(b is None for b in blocks):
                    return None
                return self.x.replace(cp.h @ b @ cp.h_inv for b in blocks)
        return limit_tuple(lam, self.x)


def lambda_sample(x: GroupPoint, bound: int, conjugators: Sequence[Matrix] = ()) -> list[Cochar]:
    """All sampled cocharacters whose limit on ``x`` exists.

    Weights range over ``[-bound, bound]^n`` (summing to zero for SL_n) and
    conjugators over the identity, the permutation matrices and
    ``conjugators``.  Order is (pool position, weights), duplicates dropped.
    """
    return LambdaSampler(x, conjugators).sample(bound)


def exp_nilpotent(v: Matrix) -> Matrix:
    """``exp(v)`` for nilpotent ``v`` as the terminating power series."""
    term = Matrix.identity(v.n, v.field)
    total = term
    for k in range(1, v.n + 1):
        term = (term @ v).scale(coerce(1, Q) / k)
        if term.is_zero():
            return total
        total = total + term
    raise ValueError("exp is only available for nilpotent matrices")
