"""Stability verdicts for tuples under simultaneous conjugation.

For X = G^N (or (Lie G)^N) with G = GL_n or SL_n:

* polystable  <=> the envelope algebra is semisimple (the tuple's subgroup is
  completely reducible),
* stable      <=> the envelope is all of M_n (irreducible),
* equicentral <=> completely reducible with scalar commutant (isotropic).

The one-parameter-subgroup side (witnesses, sampled Hilbert-Mumford checks,
flag stabilisers) is computed independently and used to cross-check these.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt, lcm
from typing import Sequence

from . import jsonio
from .algebra import (
    AlgebraData, algebra_closure, commutant, is_completely_reducible,
    is_irreducible, is_isotropic, radical_series,
)
from .linalg import (
    EchelonBasis, Flag, Matrix, Q, QI, ShapeError, Subspace, adapted_basis,
    columns_matrix, coerce, kernel, rank,
)
from .onepar import (
    GL, GROUP_KIND, SL, Cochar, GroupPoint, LambdaSampler, flag_to_cochar,
    limit_tuple, opposite,
)

# beyond this many free parameters the determinant search turns randomized
GRID_MAX_PARAMS = 6
RANDOM_TRIALS = 32

CENTRAL_NOTE = ("equicentral presumes the central case G_X = Z(G), which holds for "
                "X = G^N and X = (Lie G)^N with G = GL_n or SL_n")
COINCIDE_NOTE = ("stable and equicentral coincide for GL_n/SL_n tuples: an irreducible "
                 "tuple has scalar commutant")
NO_WITNESS_NOTE = "witness unavailable over working field"


class NotARepresentationError(ValueError):
    code = "RELATOR_FAILED"

    def __init__(self, index: int, message: str):
        super().__init__(message)
        self.index = index


@dataclass(frozen=True)
class DestabWitness:
    cochar: Cochar
    limit: GroupPoint
    limit_in_orbit: bool
    flag: Flag
    refinements: int = 1

    def to_dict(self) -> dict:
        return {
            "cochar": jsonio.cochar_to_json(self.cochar),
            "limit": jsonio.point_to_json(self.limit),
            "limit_in_orbit": self.limit_in_orbit,
            "flag": jsonio.flag_to_json(self.flag),
            "refinements": self.refinements,
        }


@dataclass
class ClassificationReport:
    flags: dict
    labels: dict
    dims: dict
    witness: DestabWitness | None = None
    notes: list = field(default_factory=list)
    seed: int = 0
    representation: dict | None = None

    @property
    def polystable(self) -> bool:
        return self.labels["polystable"]

    @property
    def stable(self) -> bool:
        return self.labels["stable"]

    @property
    def equicentral(self) -> bool:
        return self.labels["equicentral"]

    def to_dict(self) -> dict:
        out = {
            "flags": dict(self.flags),
            "labels": dict(self.labels),
            "dims": dict(self.dims),
            "witness": self.witness.to_dict() if self.witness else None,
            "notes": list(self.notes),
        }
        if self.representation is not None:
            out["representation"] = dict(self.representation)
        out["seed"] = self.seed
        return out


def center_dim(group: str) -> int:
    return 1 if group == GL else 0


def group_dim(group: str, n: int) -> int:
    return n * n if group == GL else n * n - 1


def stabilizer_dim(group: str, commutant_dim: int) -> int:
    # units of the commutant form an open subset; det = 1 cuts one dimension
    return commutant_dim if group == GL else commutant_dim - 1


# -- invariant subspaces and conjugator pools ---------------------------------

def charpoly(m: Matrix) -> list:
    """Coefficients ``[c_0, ..., c_n]`` (monic) of ``det(tI - m)``."""
    n = m.n
    coeffs = [coerce(0, m.field)] * (n + 1)
    coeffs[n] = coerce(1, m.field)
    mk = Matrix.zero(n, m.field)
    ident = Matrix.identity(n, m.field)
    for k in range(1, n + 1):
        mk = m @ mk + ident.scale(coeffs[n - k + 1])
        coeffs[n - k] = -(m @ mk).trace() / k
    return coeffs


def _divisors(a: int, cap: int = 10 ** 10) -> list[int]:
    a = abs(a)
    if a == 0 or a > cap:
        return []
    small = [d for d in range(1, isqrt(a) + 1) if a % d == 0]
    return sorted(set(small + [a // d for d in small]))


def rational_roots(coeffs: Sequence) -> list[Fraction]:
    """Rational roots of a polynomial with rational coefficients (low degree first)."""
    real = [Fraction(c) for c in coeffs]
    while real and not real[-1]:
        real.pop()
    if not real:
        return []
    roots = set()
    while not real[0]:
        roots.add(Fraction(0))
        real = real[1:]
    if len(real) > 1:
        den = lcm(*(c.denominator for c in real))
        ints = [int(c * den) for c in real]
        for p in _divisors(ints[0]):
            for q in _divisors(ints[-1]):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if sum(c * cand ** k for k, c in enumerate(ints)) == 0:
                        roots.add(cand)
    return sorted(roots)


def _gaussian_divisors(re: int, im: int) -> list[tuple]:
    norm = re * re + im * im
    out = set()
    for d in _divisors(norm):
        for a in range(isqrt(d) + 1):
            b = isqrt(d - a * a)
            if a * a + b * b != d:
                continue
            for u in {(a, b), (-a, b), (a, -b), (-a, -b)}:
                # u | c  <=>  c * conj(u) / N(u) is a Gaussian integer
                x = re * u[0] + im * u[1]
                y = im * u[0] - re * u[1]
                if x % d == 0 and y % d == 0:
                    out.add(u)
    return sorted(out)


def gaussian_roots(coeffs: Sequence) -> list[QI]:
    """Roots in Q(i) of a polynomial with Gaussian rational coefficients."""
    cs = [c if isinstance(c, QI) else QI(c) for c in coeffs]
    while cs and not cs[-1]:
        cs.pop()
    if not cs:
        return []
    roots = {}
    while not cs[0]:
        roots[(Fraction(0), Fraction(0))] = QI(0)
        cs = cs[1:]
    if len(cs) > 1:
        den = lcm(*(c.re.denominator for c in cs), *(c.im.denominator for c in cs))
        ints = [(int(c.re * den), int(c.im * den)) for c in cs]
        for u in _gaussian_divisors(*ints[0]):
            for v in _gaussian_divisors(*ints[-1]):
                cand = QI(u[0], u[1]) / QI(v[0], v[1])
                val = QI(0)
                for c in reversed(cs):
                    val = val * cand + c
                if not val:
                    roots[(cand.re, cand.im)] = cand
    return [roots[k] for k in sorted(roots)]


def field_roots(coeffs: Sequence, fld: str) -> list:
    """Roots of the polynomial lying in the working field."""
    if fld == Q:
        return rational_roots(coeffs)
    return gaussian_roots(coeffs)


def _cyclic_submodule(a: AlgebraData, v: Sequence) -> Subspace:
    return Subspace.span([b.apply(v) for b in a.basis], a.n, a.field)


def invariant_subspaces(x: GroupPoint, a: AlgebraData | None = None) -> list[Subspace]:
    """Proper nonzero subspaces invariant under every entry of ``x``, found
    over the working field from the radical series, eigenspaces of commutant
    elements and cyclic submodules of eigenvectors of the entries."""
    if a is None:
        a = algebra_closure(x)
    n, fld = x.n, x.field
    found: dict[tuple, Subspace] = {}

    def keep(s: Subspace):
        if 0 < s.dim < n and all(s.is_invariant(m) for m in x.mats):
            found.setdefault(s.basis, s)

    for s in radical_series(a):
        keep(s)
    ident = Matrix.identity(n, fld)
    for c in a.commutant_basis:
        if c.is_scalar():
            continue
        for r in field_roots(charpoly(c), fld):
            ker = kernel((c - ident.scale(r)).rows, n, fld)
            keep(ker)
            keep(Subspace.span([(c - ident.scale(r)).apply(v) for v in ident.rows], n, fld))
    for m in x.mats:
        for r in field_roots(charpoly(m), fld):
            for v in kernel((m - ident.scale(r)).rows, n, fld).basis:
                keep(_cyclic_submodule(a, v))
    return [found[k] for k in sorted(found, key=lambda b: (len(b), [[str(t) for t in row] for row in b]))]


def eigenspaces(x: GroupPoint) -> list[Subspace]:
    """Eigenspaces (over the working field) of the individual entries."""
    n, fld = x.n, x.field
    ident = Matrix.identity(n, fld)
    out = []
    for m in x.mats:
        for r in field_roots(charpoly(m), fld):
            s = kernel((m - ident.scale(r)).rows, n, fld)
            if 0 < s.dim < n:
                out.append(s)
    return out


def conjugator_pool(x: GroupPoint, a: AlgebraData | None = None,
                    extra: Sequence[Matrix] = ()) -> list[Matrix]:
    """Flag-adapted bases for every subspace discovered, plus ``extra``.

    Identity and permutation matrices are added by the sampler itself.
    """
    pool = []
    seen = set()
    for s in invariant_subspaces(x, a) + eigenspaces(x):
        h = columns_matrix(adapted_basis([s]), x.field)
        if h not in seen:
            seen.add(h)
            pool.append(h)
    for h in extra:
        h = Matrix(h.rows, x.field)
        if h not in seen:
            seen.add(h)
            pool.append(h)
    return pool


# -- orbit membership ----------------------------------------------------------

def _word_traces(x: GroupPoint, max_len: int) -> list:
    out = []
    for length in range(1, max_len + 1):
        for word in itertools.product(range(len(x.mats)), repeat=length):
            m = x.mats[word[0]]
            for k in word[1:]:
                m = m @ x.mats[k]
            out.append(m.trace())
    return out


def intertwiner_space(x: GroupPoint, y: GroupPoint) -> list[Matrix]:
    """Basis of ``{g : g x_i = y_i g for all i}``."""
    n, fld = x.n, x.field
    nn = n * n
    zero = coerce(0, fld)
    rows = []
    for xm, ym in zip(x.mats, y.mats):
        for r in range(n):
            for c in range(n):
                row = [zero] * nn
                for k in range(n):
                    a = xm.rows[k][c]
                    if a:
                        row[r * n + k] += a
                    b = ym.rows[r][k]
                    if b:
                        row[k * n + c] -= b
                if any(row):
                    rows.append(row)
    return [Matrix.from_vec(v, n, fld) for v in kernel(rows, nn, fld).basis]


def _combination(basis: Sequence[Matrix], coeffs: Sequence[int]) -> Matrix:
    n, fld = basis[0].n, basis[0].field
    out = Matrix.zero(n, fld)
    for c, b in zip(coeffs, basis):
        if c:
            out = out + b.scale(c)
    return out


def find_intertwiner(x: GroupPoint, y: GroupPoint, seed: int = 0) -> Matrix | None:
    """An invertible ``g`` with ``g x g^-1 = y``, or None when none exists.

    ``det`` restricted to the intertwiner space is a polynomial of degree n in
    m variables.  For m <= 6 it is evaluated on the full grid {0..n}^m, which
    decides vanishing exactly; above that, 32 seeded random points in
    [0, 2^64) decide it with failure probability at most (n / 2^64)^32.
    """
    if (x.group, x.kind, x.n, len(x.mats)) != (y.group, y.kind, y.n, len(y.mats)):
        raise ShapeError("points differ in group, kind, size or length")
    if x.field != y.field:
        raise ShapeError("points live over different fields")
    if _word_traces(x, 2) != _word_traces(y, 2):
        return None
    space = intertwiner_space(x, y)
    m = len(space)
    if m == 0 or m != len(commutant(x.mats, x.n, x.field)):
        return None
    n = x.n
    if m <= GRID_MAX_PARAMS:
        values = list(range(1, n + 1)) + [0]
        points = itertools.product(values, repeat=m)
    else:
        rng = random.Random(seed)
        points = ([rng.randrange(2 ** 64) for _ in range(m)] for _ in range(RANDOM_TRIALS))
    for pt in points:
        g = _combination(space, pt)
        if g.det():
            return g
    return None


def orbit_member(x: GroupPoint, y: GroupPoint, seed: int = 0) -> bool:
    return find_intertwiner(x, y, seed) is not None


def _iroot(k: int, n: int) -> int | None:
    """Exact integer n-th root of ``k >= 0`` or None."""
    lo, hi = 0, 1
    while hi ** n <= k:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** n < k:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo ** n == k else None


def _is_nth_power(a, n: int) -> bool | None:
    if isinstance(a, QI):
        if a.im:
            return None
        a = a.re
    a = Fraction(a)
    if a < 0 and n % 2 == 0:
        return False
    return _iroot(abs(a.numerator), n) is not None and _iroot(a.denominator, n) is not None


def orbit_notes(x: GroupPoint, g: Matrix | None) -> list[str]:
    if g is None or x.group != SL:
        return []
    ok = _is_nth_power(g.det(), x.n)
    if ok:
        return ["intertwiner rescales to determinant 1 over the working field"]
    return ["GL-conjugate; the found intertwiner rescales to determinant 1 only over "
            "the algebraic closure"]


# -- classification -----------------------------------------------------------

def destabilize(x: GroupPoint, seed: int = 0, a: AlgebraData | None = None) -> DestabWitness | None:
    """A cocharacter whose limit lies outside the orbit, when the orbit is not closed.

    The flag is the radical series ``rad^k V``; its associated graded is a
    module over the semisimple quotient, so the limit is polystable.
    """
    if a is None:
        a = algebra_closure(x)
    series = radical_series(a)
    if not series:
        return None
    flag = Flag(tuple(reversed(series)))
    lam = flag_to_cochar(flag, x.group)
    limit = limit_tuple(lam, x)
    if limit is None:
        raise AssertionError("radical flag is not preserved by the tuple")
    refinements = 1
    if not is_completely_reducible(algebra_closure(limit)):
        raise AssertionError("associated graded of the radical flag is not semisimple")
    return DestabWitness(lam, limit, orbit_member(x, limit, seed), flag, refinements)


def classify(x: GroupPoint, seed: int = 0, witness: bool = True) -> ClassificationReport:
    a = algebra_closure(x)
    irreducible = is_irreducible(a)
    cr = is_completely_reducible(a)
    iso = is_isotropic(a, x.group)
    flags = {"irreducible": irreducible, "completely_reducible": cr, "isotropic": iso}
    labels = {"polystable": cr, "stable": irreducible, "equicentral": iso}
    dims = {
        "algebra_dim": a.dim,
        "radical_dim": a.radical_dim,
        "commutant_dim": a.commutant_dim,
        "stabilizer_dim": stabilizer_dim(x.group, a.commutant_dim),
        "center_dim": center_dim(x.group),
    }
    notes = [CENTRAL_NOTE, COINCIDE_NOTE]
    if x.n == 1:
        notes.append("n = 1: every tuple is irreducible, so stability holds trivially")
    wit = destabilize(x, seed, a) if (witness and not cr) else None
    if cr and not irreducible:
        subs = invariant_subspaces(x, a)
        if subs:
            notes.append("not stable: proper invariant subspace found over working field")
        else:
            notes.append(NO_WITNESS_NOTE)
    return ClassificationReport(flags, labels, dims, wit, notes, seed)


# -- sampled Hilbert-Mumford cross-check --------------------------------------

@dataclass
class HMEntry:
    cochar: Cochar
    central: bool
    limit_in_orbit: bool | None
    opposite_fixes_limit: bool
    opposite_in_sample: bool

    def to_dict(self) -> dict:
        return {
            "weights": list(self.cochar.weights),
            "conjugator": jsonio.matrix_to_json(self.cochar.conjugator),
            "central": self.central,
            "limit_in_orbit": self.limit_in_orbit,
            "opposite_fixes_limit": self.opposite_fixes_limit,
            "opposite_in_sample": self.opposite_in_sample,
        }


@dataclass
class HMReport:
    bound: int
    classification: ClassificationReport
    sampled: int
    entries: list
    violations: list
    witness_found: bool

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def noncentral(self) -> list:
        return [e for e in self.entries if not e.central]

    def to_dict(self) -> dict:
        return {
            "bound": self.bound,
            "labels": dict(self.classification.labels),
            "sampled": self.sampled,
            "in_lambda": len(self.entries),
            "noncentral_in_lambda": len(self.noncentral),
            "symmetric_pairs": sum(1 for e in self.entries if e.opposite_in_sample and not e.central),
            "witness_found": self.witness_found,
            "violations": list(self.violations),
            "entries": [e.to_dict() for e in self.entries],
        }


def _partition_key(weights: Sequence[int]) -> tuple:
    return tuple(weights.index(k) for k in weights)


def hm_crosscheck(x: GroupPoint, bound: int = 2, seed: int = 0,
                  conjugators: Sequence[Matrix] = ()) -> HMReport:
    """Check the algebraic verdict against a finite sample of Lambda_x.

    (a) polystable: every sampled limit is in the orbit and is fixed by the
        opposite cocharacter;
    (b) stable: every sampled member of Lambda_x is central;
    (c) not polystable: a witness exists, its limit is outside the orbit and
        is itself polystable.
    """
    a = algebra_closure(x)
    report = classify(x, seed)
    extra = list(conjugators)
    if report.witness is not None:
        extra.append(report.witness.cochar.conjugator)
    sampler = LambdaSampler(x, conjugator_pool(x, a, extra))
    lams = sampler.sample(bound)
    members = {(lam.conjugator, lam.weights) for lam in lams}
    violations = []
    entries = []
    limits: dict[tuple, tuple] = {}
    for lam in lams:
        central = lam.is_trivial if x.group == SL else lam.is_central
        key = (lam.conjugator, _partition_key(lam.weights))
        if key not in limits:
            lim = sampler.limit(lam)
            fixes = limit_tuple(opposite(lam), lim) == lim
            in_orbit = orbit_member(x, lim, seed) if report.polystable else None
            limits[key] = (lim, fixes, in_orbit)
        lim, fixes, in_orbit = limits[key]
        opp_in = (lam.conjugator, tuple(-k for k in lam.weights)) in members
        entries.append(HMEntry(lam, central, in_orbit, fixes, opp_in))
        tag = f"weights={list(lam.weights)}"
        if report.polystable and not in_orbit:
            violations.append(f"polystable but limit outside orbit ({tag})")
        if report.polystable and not fixes:
            violations.append(f"opposite cocharacter moves the limit ({tag})")
        if report.stable and not central:
            violations.append(f"stable but non-central cocharacter in Lambda_x ({tag})")
    wit = report.witness
    if not report.polystable:
        if wit is None:
            violations.append("not polystable but no destabilizing witness")
        else:
            if wit.limit_in_orbit:
                violations.append("witness limit lies in the orbit")
            if not classify(wit.limit, seed, witness=False).polystable:
                violations.append("witness limit is not polystable")
            if wit.refinements > max(x.n - 1, 1):
                violations.append("too many refinements")
            in_grid = max(abs(k) for k in wit.cochar.weights) <= bound
            if in_grid and (wit.cochar.conjugator, wit.cochar.weights) not in members:
                violations.append("witness cocharacter missing from the sample")
    elif wit is not None:
        violations.append("polystable point produced a destabilizing witness")
    return HMReport(bound, report, len(lams), entries, violations, wit is not None)


# -- flag-stabiliser approximation of H_x --------------------------------------

@dataclass
class HApprox:
    group: str
    n: int
    field: str
    subspaces: list
    upper_bound_dim: int
    group_dim: int
    phi_span_dim: int
    generators_in_bound: bool

    def contains(self, g: Matrix) -> bool:
        g = Matrix(g.rows, self.field)
        return all(s.is_invariant(g) for s in self.subspaces)

    def to_dict(self) -> dict:
        return {
            "upper_bound_dim": self.upper_bound_dim,
            "group_dim": self.group_dim,
            "whole_group": self.upper_bound_dim == self.group_dim,
            "flag_subspaces": [jsonio.subspace_to_json(s) for s in self.subspaces],
            "phi_span_dim": self.phi_span_dim,
            "generators_in_bound": self.generators_in_bound,
        }


def weight_filtration(lam: Cochar, fld: str) -> list[Subspace]:
    """Subspaces spanned by conjugator columns of weight >= w, proper ones only."""
    h = Matrix(lam.conjugator.rows, fld)
    cols = list(zip(*h.rows))
    out = []
    for w in sorted(set(lam.weights), reverse=True)[:-1]:
        out.append(Subspace.span([c for c, k in zip(cols, lam.weights) if k >= w], lam.n, fld))
    return out


def stabilizer_lie_dim(subspaces: Sequence[Subspace], n: int, fld: str, group: str) -> int:
    nn = n * n
    zero = coerce(0, fld)
    rows = []
    for s in subspaces:
        for ann in s.annihilator():
            for w in s.basis:
                # ann . g . w as a linear form in vec(g)
                row = [zero] * nn
                for r in range(n):
                    if ann[r]:
                        for c in range(n):
                            if w[c]:
                                row[r * n + c] += ann[r] * w[c]
                rows.append(row)
    if group == SL:
        rows.append([coerce(1, fld) if i % (n + 1) == 0 else zero for i in range(nn)])
    return nn - rank(rows, nn)


def h_approx(x: GroupPoint, bound: int = 1, conjugators: Sequence[Matrix] | None = None) -> HApprox:
    """Intersection of P(lambda) over a finite sample of Lambda_x.

    The result contains H_x (upper bound); the tuple's own entries lie in it
    (lower-bound check).
    """
    a = algebra_closure(x)
    pool = conjugator_pool(x, a) if conjugators is None else list(conjugators)
    lams = LambdaSampler(x, pool).sample(bound)
    subs: dict[tuple, Subspace] = {}
    for lam in lams:
        for s in weight_filtration(lam, x.field):
            subs.setdefault(s.basis, s)
    subspaces = list(subs.values())
    dim = stabilizer_lie_dim(subspaces, x.n, x.field, x.group)
    res = HApprox(x.group, x.n, x.field, subspaces, dim, group_dim(x.group, x.n), a.dim, True)
    res.generators_in_bound = all(res.contains(m) for m in x.mats)
    return res


# -- representation varieties --------------------------------------------------

@dataclass(frozen=True)
class RepPresentation:
    generators: int
    relators: tuple  # words: tuples of (generator index, +-1)

    def __post_init__(self):
        for r, word in enumerate(self.relators):
            for g, e in word:
                if not 0 <= g < self.generators or e not in (1, -1):
                    raise ValueError(f"relator {r} has an invalid letter ({g}, {e})")


def evaluate_word(word: Sequence[tuple], images: GroupPoint) -> Matrix:
    inverses: dict[int, Matrix] = {}
    out = Matrix.identity(images.n, images.field)
    for g, e in word:
        m = images.mats[g]
        if e == -1:
            if g not in inverses:
                inverses[g] = m.inverse()
            m = inverses[g]
        out = out @ m
    return out


def classify_rep(p: RepPresentation, images: GroupPoint, seed: int = 0) -> ClassificationReport:
    if images.kind != GROUP_KIND:
        raise ValueError("representation images must be group elements")
    if len(images.mats) != p.generators:
        raise ValueError(f"expected {p.generators} images, got {len(images.mats)}")
    ident = Matrix.identity(images.n, images.field)
    for r, word in enumerate(p.relators):
        if evaluate_word(word, images) != ident:
            raise NotARepresentationError(r, f"relator {r} does not evaluate to the identity")
    report = classify(images, seed)
    report.representation = {
        "reductive": report.labels["polystable"],
        "irreducible": report.labels["stable"],
        "good": report.flags["isotropic"],
    }
    report.notes.append("good <=> equicentral uses the centrality hypothesis G_X = Z(G); "
                        "good is computed directly as isotropy of the image")
    return report


def trace_words(x: GroupPoint, max_len: int = 3) -> list:
    """Traces of all words of length 1..max_len in the entries."""
    return _word_traces(x, max_len)


def limit_preserves_traces(x: GroupPoint, y: GroupPoint, max_len: int = 3) -> bool:
    return trace_words(x, max_len) == trace_words(y, max_len)


def algebra_contains_all(a: AlgebraData, mats: Sequence[Matrix]) -> bool:
    eb = EchelonBasis(a.n * a.n, a.field)
    for b in a.basis:
        eb.add(b.vec())
    return all(eb.contains(m.vec()) for m in mats)
