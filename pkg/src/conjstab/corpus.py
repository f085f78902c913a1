"""Worked examples that ship with the CLI (``conjstab corpus``)."""
from __future__ import annotations

from fractions import Fraction

from .algebra import algebra_closure, is_irreducible
from .linalg import QI_FIELD, I, Matrix
from .onepar import (
    GL, GROUP_KIND, LIE_KIND, SL, GroupPoint, exp_nilpotent, lambda_sample,
    limit_conj, weight_grid, LambdaSampler,
)
from .stability import RepPresentation, classify, classify_rep, h_approx


def point(group: str, kind: str, mats, field: str | None = None) -> GroupPoint:
    return GroupPoint(group, kind, tuple(Matrix(m, field) for m in mats))


def sl2_diagonal() -> GroupPoint:
    return point(SL, LIE_KIND, [[[1, 0], [0, 2]]])


def sl2_scalar() -> GroupPoint:
    return point(SL, LIE_KIND, [[[1, 0], [0, 1]]])


def sl2_unipotent() -> GroupPoint:
    return point(SL, LIE_KIND, [[[1, 1], [0, 1]]])


def quaternion_pair() -> GroupPoint:
    """diag(i, -i) and the rotation [[0, 1], [-1, 0]] in GL_2 over Q(i)."""
    g1 = Matrix([[I, 0], [0, -I]], QI_FIELD)
    g2 = Matrix([[0, 1], [-1, 0]], QI_FIELD)
    return GroupPoint(GL, GROUP_KIND, (g1, g2))


def _case_diagonal():
    x = sl2_diagonal()
    r = classify(x)
    h = h_approx(x, 1)
    ok = r.polystable and not r.stable and h.upper_bound_dim == 1
    return ok, f"polystable={r.polystable} stable={r.stable} stabilizer_dim={h.upper_bound_dim}"


def _case_scalar():
    x = sl2_scalar()
    r = classify(x)
    sampler = LambdaSampler(x)
    total = len(weight_grid(2, 2, SL)) * len(sampler.pool)
    got = len(sampler.sample(2))
    ok = r.polystable and not r.stable and got == total
    return ok, f"polystable={r.polystable} stable={r.stable} lambda_sample={got}/{total}"


def _case_unipotent():
    x = sl2_unipotent()
    r = classify(x)
    w = r.witness
    ok = (not r.polystable and w is not None and w.cochar.weights == (1, -1)
          and w.limit.mats[0] == Matrix.identity(2) and not w.limit_in_orbit)
    detail = f"polystable={r.polystable}"
    if w is not None:
        detail += f" weights={list(w.cochar.weights)} limit_in_orbit={w.limit_in_orbit}"
    return ok, detail


def _case_quaternion():
    x = quaternion_pair()
    r = classify(x)
    ok = (r.polystable and r.stable and r.equicentral
          and r.dims["commutant_dim"] == 1 and r.dims["algebra_dim"] == 4)
    return ok, (f"labels={r.labels} commutant_dim={r.dims['commutant_dim']} "
                f"algebra_dim={r.dims['algebra_dim']}")


def _case_exp_nilpotent():
    samples = [
        [[0, 1], [0, 0]],
        [[0, 0], [1, 0]],
        [[1, -1], [1, -1]],
        [[0, 1, 2], [0, 0, 3], [0, 0, 0]],
        [[0, 0, 0], [1, 0, 0], [0, 1, 0]],
    ]
    checked = 0
    for rows in samples:
        v = Matrix(rows)
        x = GroupPoint(GL, LIE_KIND, (Matrix.identity(v.n),))
        for lam in lambda_sample(x, 1):
            a = limit_conj(lam, v) is not None
            b = limit_conj(lam, exp_nilpotent(v)) is not None
            if a != b:
                return False, f"mismatch at weights {list(lam.weights)}"
            checked += 1
    return True, f"{checked} cocharacter checks"


def _case_commuting_pair():
    p = RepPresentation(2, (((0, 1), (1, 1), (0, -1), (1, -1)),))
    x = point(GL, GROUP_KIND, [[[1, 0], [0, 2]], [[3, 0], [0, Fraction(1, 3)]]])
    r = classify_rep(p, x)
    ok = r.representation["reductive"] and not r.representation["irreducible"]
    return ok, f"representation={r.representation}"


def _case_free_quaternion():
    r = classify_rep(RepPresentation(2, ()), quaternion_pair())
    ok = r.representation["good"] and is_irreducible(algebra_closure(quaternion_pair()))
    return ok, f"representation={r.representation}"


CASES = [
    ("sl2-diagonal", _case_diagonal),
    ("sl2-scalar", _case_scalar),
    ("sl2-unipotent", _case_unipotent),
    ("gl2-quaternion-pair", _case_quaternion),
    ("nilpotent-exp-limits", _case_exp_nilpotent),
    ("z2-commuting-pair", _case_commuting_pair),
    ("free-group-quaternion-pair", _case_free_quaternion),
]


def run_corpus() -> list[dict]:
    out = []
    for name, fn in CASES:
        ok, detail = fn()
        out.append({"name": name, "passed": bool(ok), "detail": detail})
    return out
