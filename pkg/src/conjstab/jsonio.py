"""Strict JSON reading and writing of points, cocharacters and presentations.

Scalars travel as strings (``"3/4"``, ``"1-2*i"``).  Unknown keys are
rejected so that schema drift shows up as an error instead of being ignored.
"""
from __future__ import annotations

import json
from typing import Any

from .linalg import (
    FieldMismatchError, Flag, Matrix, Q, QI_FIELD, ScalarFormatError, Subspace,
    format_scalar, parse_scalar,
)
from .onepar import GL, GROUP_KIND, LIE_KIND, SL, Cochar, GroupPoint, InvalidPointError


class InputError(ValueError):
    """Malformed input; ``code`` is a stable identifier, ``location`` a JSON path."""

    def __init__(self, code: str, message: str, location: str = "$"):
        super().__init__(f"{code} at {location}: {message}")
        self.code = code
        self.location = location


def _expect_keys(obj, allowed: set, required: set, loc: str):
    if not isinstance(obj, dict):
        raise InputError("BAD_TYPE", "expected an object", loc)
    for k in obj:
        if k not in allowed:
            raise InputError("UNKNOWN_KEY", f"unexpected key {k!r}", f"{loc}.{k}")
    for k in required:
        if k not in obj:
            raise InputError("MISSING_KEY", f"missing key {k!r}", loc)


def parse_matrix(rows: Any, field: str, loc: str = "$") -> Matrix:
    if not isinstance(rows, list) or not rows:
        raise InputError("NONSQUARE", "matrix must be a nonempty list of rows", loc)
    n = len(rows)
    out = []
    for i, r in enumerate(rows):
        if not isinstance(r, list) or len(r) != n:
            raise InputError("NONSQUARE", f"row {i} does not have {n} entries", f"{loc}[{i}]")
        row = []
        for j, s in enumerate(r):
            where = f"{loc}[{i}][{j}]"
            if isinstance(s, int) and not isinstance(s, bool):
                s = str(s)
            try:
                row.append(parse_scalar(s, field))
            except FieldMismatchError as e:
                raise InputError("FIELD_MISMATCH", str(e), where) from None
            except (ScalarFormatError, ValueError) as e:
                raise InputError("MALFORMED_SCALAR", str(e), where) from None
        out.append(row)
    return Matrix(out, field)


def parse_point(obj: Any, field: str = Q, loc: str = "$") -> GroupPoint:
    _expect_keys(obj, {"group", "kind", "matrices"}, {"group", "kind", "matrices"}, loc)
    grp = obj["group"]
    _expect_keys(grp, {"type", "n"}, {"type", "n"}, f"{loc}.group")
    gtype, n = grp["type"], grp["n"]
    if gtype not in (GL, SL):
        raise InputError("BAD_GROUP", f"group type must be GL or SL, got {gtype!r}", f"{loc}.group.type")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError("BAD_SIZE", "n must be a positive integer", f"{loc}.group.n")
    kind = obj["kind"]
    if kind not in (GROUP_KIND, LIE_KIND):
        raise InputError("BAD_KIND", f"kind must be 'group' or 'lie', got {kind!r}", f"{loc}.kind")
    mats_in = obj["matrices"]
    if not isinstance(mats_in, list) or not mats_in:
        raise InputError("EMPTY_TUPLE", "at least one matrix is required", f"{loc}.matrices")
    mats = []
    for idx, rows in enumerate(mats_in):
        m = parse_matrix(rows, field, f"{loc}.matrices[{idx}]")
        if m.n != n:
            raise InputError("SIZE_MISMATCH", f"matrix {idx} is {m.n}x{m.n}, group has n={n}",
                             f"{loc}.matrices[{idx}]")
        mats.append(m)
    try:
        return GroupPoint(gtype, kind, tuple(mats))
    except InvalidPointError as e:
        where = f"{loc}.matrices[{e.index}]" if e.index is not None else loc
        raise InputError(e.code, str(e), where) from None


def parse_cochar(obj: Any, n: int | None = None, field: str = Q, loc: str = "$") -> Cochar:
    _expect_keys(obj, {"weights", "conjugator"}, {"weights"}, loc)
    w = obj["weights"]
    if not isinstance(w, list) or not w or not all(isinstance(k, int) and not isinstance(k, bool) for k in w):
        raise InputError("BAD_WEIGHTS", "weights must be a nonempty list of integers", f"{loc}.weights")
    if n is not None and len(w) != n:
        raise InputError("SIZE_MISMATCH", f"expected {n} weights", f"{loc}.weights")
    if "conjugator" in obj:
        h = parse_matrix(obj["conjugator"], field, f"{loc}.conjugator")
        if h.n != len(w):
            raise InputError("SIZE_MISMATCH", "conjugator size differs from weight count", f"{loc}.conjugator")
        if not h.det():
            raise InputError("NOT_INVERTIBLE", "conjugator is singular", f"{loc}.conjugator")
    else:
        h = Matrix.identity(len(w), field)
    return Cochar(tuple(w), h)


def parse_word(obj: Any, ngens: int, loc: str) -> tuple:
    if not isinstance(obj, list):
        raise InputError("BAD_WORD", "a relator is a list of [generator, exponent] pairs", loc)
    out = []
    for k, letter in enumerate(obj):
        where = f"{loc}[{k}]"
        if (not isinstance(letter, list) or len(letter) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in letter)):
            raise InputError("BAD_WORD", "letters are [generator, exponent] pairs", where)
        g, e = letter
        if not 0 <= g < ngens:
            raise InputError("BAD_WORD", f"generator index {g} out of range", where)
        if e not in (1, -1):
            raise InputError("BAD_WORD", "exponents must be 1 or -1", where)
        out.append((g, e))
    return tuple(out)


def parse_field(name: str) -> str:
    if name not in (Q, QI_FIELD):
        raise InputError("BAD_FIELD", f"field must be Q or QI, got {name!r}")
    return name


def load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError("BAD_JSON", e.msg, f"line {e.lineno} column {e.colno}") from None


# -- output ------------------------------------------------------------------

def matrix_to_json(m: Matrix) -> list:
    return m.to_strings()


def point_to_json(x: GroupPoint) -> dict:
    return {
        "group": {"type": x.group, "n": x.n},
        "kind": x.kind,
        "matrices": [matrix_to_json(m) for m in x.mats],
    }


def cochar_to_json(lam: Cochar) -> dict:
    return {"weights": list(lam.weights), "conjugator": matrix_to_json(lam.conjugator)}


def subspace_to_json(s: Subspace) -> list:
    return s.to_strings()


def flag_to_json(f: Flag) -> list:
    return f.to_strings()


def scalar_to_json(a) -> str:
    return format_scalar(a)


def dumps(obj: Any) -> str:
    """Canonical text: insertion-ordered keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
