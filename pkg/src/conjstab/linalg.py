"""Exact linear algebra over the rationals and the Gaussian rationals.

Rational scalars are plain :class:`fractions.Fraction` values; Gaussian
rationals use :class:`QI`.  Every matrix carries a field tag (``"Q"`` or
``"QI"``) and all of its entries are coerced to that field on construction.
Nothing in this module ever touches a float.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Q = "Q"
QI_FIELD = "QI"
FIELDS = (Q, QI_FIELD)


class LinalgError(Exception):
    code = "LINALG_ERROR"


class FieldMismatchError(LinalgError):
    code = "FIELD_MISMATCH"


class SingularMatrixError(LinalgError):
    code = "SINGULAR_MATRIX"


class ShapeError(LinalgError):
    code = "SIZE_MISMATCH"


class ScalarFormatError(LinalgError):
    code = "MALFORMED_SCALAR"


class QI:
    """Gaussian rational ``re + im*i`` with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @staticmethod
    def _coerce(other):
        if isinstance(other, QI):
            return other
        if isinstance(other, (int, Fraction)):
            return QI(other)
        return None

    def __add__(self, other):
        o = QI._coerce(other)
        if o is None:
            return NotImplemented
        return QI(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = QI._coerce(other)
        if o is None:
            return NotImplemented
        return QI(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = QI._coerce(other)
        if o is None:
            return NotImplemented
        return QI(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = QI._coerce(other)
        if o is None:
            return NotImplemented
        return QI(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QI._coerce(other)
        if o is None:
            return NotImplemented
        norm = o.re * o.re + o.im * o.im
        if not norm:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return QI((self.re * o.re + self.im * o.im) / norm,
                  (self.im * o.re - self.re * o.im) / norm)

    def __rtruediv__(self, other):
        o = QI._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __pos__(self):
        return self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, QI):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def conjugate(self):
        return QI(self.re, -self.im)

    def __repr__(self):
        return f"QI({format_scalar(self)!r})"


I = QI(0, 1)


def field_of_value(a) -> str:
    if isinstance(a, QI):
        return QI_FIELD
    if isinstance(a, (int, Fraction)):
        return Q
    raise TypeError(f"not an exact scalar: {a!r}")


def coerce(a, field: str):
    """Convert ``a`` into the canonical scalar type of ``field``."""
    if field == Q:
        if isinstance(a, QI):
            if a.im:
                raise FieldMismatchError(f"{format_scalar(a)} is not rational")
            return a.re
        if type(a) is Fraction:
            return a
        if isinstance(a, (int, Fraction)):
            return Fraction(a)
        raise TypeError(f"not an exact scalar: {a!r}")
    if field == QI_FIELD:
        if isinstance(a, QI):
            return a
        if isinstance(a, (int, Fraction)):
            return QI(a)
        raise TypeError(f"not an exact scalar: {a!r}")
    raise ValueError(f"unknown field {field!r}")


def field_of(values: Iterable) -> str | None:
    """Shared field tag of ``values``; raises on a mix of Q and QI entries."""
    seen = None
    for a in values:
        f = field_of_value(a)
        if seen is None:
            seen = f
        elif f != seen:
            raise FieldMismatchError("entries mix rational and Gaussian scalars")
    return seen


# -- scalar text format ------------------------------------------------------

_RAT = r"\d+(?:/\d+)?"
_IMAG = rf"(?:(?P<icoef>{_RAT})\*?)?i"
_SCALAR_RE = re.compile(
    rf"^(?:(?P<re>[+-]?{_RAT})(?:(?P<isign>[+-]){_IMAG})?"
    rf"|(?P<lone>[+-]?){_IMAG.replace('icoef', 'lcoef')})$"
)


def _parse_rat(text: str) -> Fraction:
    text = text.lstrip("+")
    if "/" in text:
        p, q = text.split("/")
        if int(q) == 0:
            raise ScalarFormatError(f"zero denominator in {text!r}")
        return Fraction(int(p), int(q))
    return Fraction(int(text))


def parse_scalar(text: str, field: str = Q):
    """Parse ``"p"``, ``"p/q"`` or a Gaussian rational such as ``"1/2-3*i"``, ``"3*i"``, ``"-i"``."""
    if not isinstance(text, str) or not text or any(c.isspace() for c in text):
        raise ScalarFormatError(f"malformed scalar {text!r}")
    m = _SCALAR_RE.match(text)
    if m is None:
        raise ScalarFormatError(f"malformed scalar {text!r}")
    if m.group("re") is not None:
        re_part = _parse_rat(m.group("re"))
        sign, coef = m.group("isign"), m.group("icoef")
    else:
        re_part = Fraction(0)
        sign, coef = m.group("lone") or "+", m.group("lcoef")
    im_part = Fraction(0)
    if sign is not None:
        if field != QI_FIELD:
            raise FieldMismatchError(f"Gaussian scalar {text!r} under field Q")
        im_part = _parse_rat(coef) if coef else Fraction(1)
        if sign == "-":
            im_part = -im_part
    if field == QI_FIELD:
        return QI(re_part, im_part)
    return re_part


def _format_rat(a: Fraction) -> str:
    return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


def format_scalar(a) -> str:
    if isinstance(a, QI):
        if not a.im:
            return _format_rat(a.re)
        coef = abs(a.im)
        imag = "i" if coef == 1 else f"{_format_rat(coef)}*i"
        sign = "-" if a.im < 0 else "+"
        if not a.re:
            return ("-" if a.im < 0 else "") + imag
        return f"{_format_rat(a.re)}{sign}{imag}"
    return _format_rat(Fraction(a))


# -- row reduction -----------------------------------------------------------

def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(basis, rank, pivots)`` where ``basis`` holds the nonzero rows of
    the canonical RREF as tuples.  Pivots are taken left to right, first
    nonzero entry, so the output only depends on the row space.
    """
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    for r in rows:
        if len(r) != ncols:
            raise ShapeError("rows of unequal length")
    field = field_of(a for r in rows for a in r)
    if field is not None:
        rows = [[coerce(a, field) for a in r] for r in rows]
    pivots = []
    rank = 0
    nrows = len(rows)
    for c in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        inv = 1 / prow[c]
        if inv != 1:
            prow = [a * inv for a in prow]
            rows[rank] = prow
        for i in range(nrows):
            if i != rank:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    rows[i] = [a - f * b if b else a for a, b in zip(row, prow)]
        pivots.append(c)
        rank += 1
    basis = tuple(tuple(r) for r in rows[:rank])
    return basis, rank, tuple(pivots)


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    return rref(rows, ncols)[1]


def kernel(rows: Sequence[Sequence], ncols: int, field: str | None = None) -> "Subspace":
    """Null space ``{v : M v = 0}`` of the matrix with the given rows."""
    basis, _, pivots = rref(rows, ncols)
    if field is None:
        field = field_of(a for r in rows for a in r) or Q
    one, zero = coerce(1, field), coerce(0, field)
    pivot_set = set(pivots)
    vecs = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [zero] * ncols
        v[free] = one
        for row, p in zip(basis, pivots):
            v[p] = -row[free]
        vecs.append(v)
    return Subspace.span(vecs, ncols, field)


class EchelonBasis:
    """Incrementally maintained RREF basis of a growing span."""

    def __init__(self, ncols: int, field: str):
        self.ncols = ncols
        self.field = field
        self.rows: list[list] = []
        self.pivots: list[int] = []

    def reduce(self, v: Sequence) -> list:
        v = [coerce(a, self.field) for a in v]
        for row, p in zip(self.rows, self.pivots):
            f = v[p]
            if f:
                v = [a - f * b if b else a for a, b in zip(v, row)]
        return v

    def add(self, v: Sequence) -> bool:
        """Add ``v`` to the span; return True when the span grew."""
        w = self.reduce(v)
        p = next((i for i, a in enumerate(w) if a), None)
        if p is None:
            return False
        inv = 1 / w[p]
        w = [a * inv for a in w]
        for k, row in enumerate(self.rows):
            f = row[p]
            if f:
                self.rows[k] = [a - f * b if b else a for a, b in zip(row, w)]
        pos = next((k for k, q in enumerate(self.pivots) if q > p), len(self.pivots))
        self.rows.insert(pos, w)
        self.pivots.insert(pos, p)
        return True

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def coordinates(self, v: Sequence) -> list:
        """Coordinates of ``v`` in the echelon basis (v must lie in the span)."""
        coords = [v[p] for p in self.pivots]
        if any(self.reduce(v)):
            raise ValueError("vector not in span")
        return [coerce(c, self.field) for c in coords]

    def __len__(self):
        return len(self.rows)


# -- matrices ----------------------------------------------------------------

class Matrix:
    """Dense square matrix with exact entries of a single field."""

    __slots__ = ("rows", "n", "field")

    def __init__(self, rows, field: str | None = None):
        rows = [list(r) for r in rows]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ShapeError("matrix must be square and nonempty")
        if field is None:
            field = field_of(a for r in rows for a in r)
        self.rows = tuple(tuple(coerce(a, field) for a in r) for r in rows)
        self.n = n
        self.field = field

    @classmethod
    def _raw(cls, rows, field):
        m = object.__new__(cls)
        m.rows = rows
        m.n = len(rows)
        m.field = field
        return m

    @classmethod
    def identity(cls, n: int, field: str = Q) -> "Matrix":
        one, zero = coerce(1, field), coerce(0, field)
        return cls._raw(tuple(tuple(one if i == j else zero for j in range(n))
                              for i in range(n)), field)

    @classmethod
    def zero(cls, n: int, field: str = Q) -> "Matrix":
        z = coerce(0, field)
        return cls._raw(tuple((z,) * n for _ in range(n)), field)

    @classmethod
    def diag(cls, entries: Sequence, field: str | None = None) -> "Matrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], field)

    @classmethod
    def from_vec(cls, v: Sequence, n: int, field: str) -> "Matrix":
        return cls._raw(tuple(tuple(v[i * n:(i + 1) * n]) for i in range(n)), field)

    @classmethod
    def unit(cls, i: int, j: int, n: int, field: str = Q) -> "Matrix":
        one, zero = coerce(1, field), coerce(0, field)
        return cls._raw(tuple(tuple(one if (r, c) == (i, j) else zero for c in range(n))
                              for r in range(n)), field)

    def vec(self) -> tuple:
        return tuple(a for r in self.rows for a in r)

    def _check(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError("expected Matrix")
        if other.n != self.n:
            raise ShapeError(f"size mismatch {self.n} vs {other.n}")
        if other.field != self.field:
            raise FieldMismatchError(f"field mismatch {self.field} vs {other.field}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        cols = list(zip(*other.rows))
        zero = coerce(0, self.field)
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                s = zero
                for a, b in zip(r, c):
                    if a and b:
                        s = s + a * b
                row.append(s)
            out.append(tuple(row))
        return Matrix._raw(tuple(out), self.field)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix._raw(tuple(tuple(a + b for a, b in zip(r, s))
                                 for r, s in zip(self.rows, other.rows)), self.field)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix._raw(tuple(tuple(a - b for a, b in zip(r, s))
                                 for r, s in zip(self.rows, other.rows)), self.field)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self.rows), self.field)

    def scale(self, c) -> "Matrix":
        return Matrix._raw(tuple(tuple(coerce(c * a, self.field) for a in r)
                                 for r in self.rows), self.field)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self.rows)), self.field)

    def trace(self):
        return sum((self.rows[i][i] for i in range(self.n)), coerce(0, self.field))

    def is_zero(self) -> bool:
        return not any(a for r in self.rows for a in r)

    def is_scalar(self) -> bool:
        d = self.rows[0][0]
        return all((a == d) if i == j else not a
                   for i, r in enumerate(self.rows) for j, a in enumerate(r))

    def lift(self) -> "Matrix":
        """The same matrix viewed over the Gaussian rationals."""
        return Matrix(self.rows, QI_FIELD)

    def det(self):
        rows = [list(r) for r in self.rows]
        n = self.n
        d = coerce(1, self.field)
        for c in range(n):
            piv = next((i for i in range(c, n) if rows[i][c]), None)
            if piv is None:
                return coerce(0, self.field)
            if piv != c:
                rows[c], rows[piv] = rows[piv], rows[c]
                d = -d
            p = rows[c][c]
            d = d * p
            for i in range(c + 1, n):
                f = rows[i][c]
                if f:
                    f = f / p
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
        return d

    def inverse(self) -> "Matrix":
        n = self.n
        one, zero = coerce(1, self.field), coerce(0, self.field)
        aug = [list(r) + [one if i == j else zero for j in range(n)]
               for i, r in enumerate(self.rows)]
        basis, rk, pivots = rref(aug, 2 * n)
        if rk < n or pivots[n - 1] != n - 1:
            raise SingularMatrixError("matrix is singular")
        return Matrix._raw(tuple(tuple(r[n:]) for r in basis), self.field)

    def apply(self, v: Sequence) -> tuple:
        """Matrix times column vector."""
        zero = coerce(0, self.field)
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), zero) for r in self.rows)

    def power(self, k: int) -> "Matrix":
        out = Matrix.identity(self.n, self.field)
        for _ in range(k):
            out = out @ self
        return out

    def to_strings(self) -> list[list[str]]:
        return [[format_scalar(a) for a in r] for r in self.rows]

    def __repr__(self):
        return f"Matrix({self.to_strings()!r}, {self.field!r})"


def inverse(m: Matrix) -> Matrix:
    return m.inverse()


def conj(h: Matrix, g: Matrix, h_inv: Matrix | None = None) -> Matrix:
    """``h g h^-1``."""
    if h_inv is None:
        h_inv = h.inverse()
    return h @ g @ h_inv


# -- subspaces and flags -----------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    ambient: int
    basis: tuple
    field: str = Q

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient: int, field: str | None = None) -> "Subspace":
        vectors = [tuple(v) for v in vectors]
        if field is None:
            field = field_of(a for v in vectors for a in v) or Q
        vectors = [tuple(coerce(a, field) for a in v) for v in vectors]
        basis, _, _ = rref(vectors, ambient)
        return cls(ambient, basis, field)

    @classmethod
    def whole(cls, ambient: int, field: str = Q) -> "Subspace":
        return cls(ambient, Matrix.identity(ambient, field).rows, field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        return rank(list(self.basis) + [tuple(coerce(a, self.field) for a in v)], self.ambient) == self.dim

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(list(self.basis) + list(other.basis), self.ambient, self.field)

    def image(self, m: Matrix) -> "Subspace":
        return Subspace.span([m.apply(v) for v in self.basis], self.ambient, self.field)

    def is_invariant(self, m: Matrix) -> bool:
        return all(self.contains(m.apply(v)) for v in self.basis)

    def annihilator(self) -> tuple:
        """Row vectors ``a`` with ``a . v = 0`` for every ``v`` in the subspace."""
        if not self.basis:
            return Matrix.identity(self.ambient, self.field).rows
        return kernel(self.basis, self.ambient, self.field).basis

    def lift(self) -> "Subspace":
        return Subspace.span(self.basis, self.ambient, QI_FIELD)

    def to_strings(self) -> list[list[str]]:
        return [[format_scalar(a) for a in v] for v in self.basis]


@dataclass(frozen=True)
class Flag:
    """Strictly increasing chain of proper nonzero subspaces."""

    subspaces: tuple

    def __post_init__(self):
        subs = self.subspaces
        if not subs:
            raise ValueError("flag must contain at least one subspace")
        n = subs[0].ambient
        dims = [s.dim for s in subs]
        if dims[0] == 0 or dims[-1] >= n:
            raise ValueError("flag subspaces must be proper and nonzero")
        for a, b in zip(subs, subs[1:]):
            if a.ambient != b.ambient or not a.dim < b.dim or not a <= b:
                raise ValueError("flag subspaces must increase strictly")

    @property
    def ambient(self) -> int:
        return self.subspaces[0].ambient

    @property
    def dims(self) -> tuple:
        return tuple(s.dim for s in self.subspaces)

    def is_invariant(self, m: Matrix) -> bool:
        return all(s.is_invariant(m) for s in self.subspaces)

    def to_strings(self) -> list:
        return [s.to_strings() for s in self.subspaces]


def adapted_basis(flag: Flag | Sequence[Subspace]) -> list[tuple]:
    """Basis running through the flag, completed greedily by standard vectors."""
    subs = flag.subspaces if isinstance(flag, Flag) else tuple(flag)
    n = subs[0].ambient
    field = subs[0].field
    eb = EchelonBasis(n, field)
    out = []
    for s in subs:
        for v in s.basis:
            if eb.add(v):
                out.append(v)
    one, zero = coerce(1, field), coerce(0, field)
    for i in range(n):
        e = tuple(one if j == i else zero for j in range(n))
        if eb.add(e):
            out.append(e)
    return out


def columns_matrix(vectors: Sequence[Sequence], field: str) -> Matrix:
    """Matrix whose columns are ``vectors``."""
    return Matrix(list(zip(*vectors)), field)
