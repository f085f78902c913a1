import io
import json
import subprocess
import sys

import pytest

from conjstab import jsonio
from conjstab.cli import build_parser, run


def call(tmp_path, command, payload, *flags):
    f = tmp_path / "in.json"
    f.write_text(payload if isinstance(payload, str) else json.dumps(payload))
    out = io.StringIO()
    code = run(build_parser().parse_args([command, "--input", str(f), *flags]), out)
    return code, out.getvalue()


def point(mats, group="GL", kind="group", n=2):
    return {"group": {"type": group, "n": n}, "kind": kind, "matrices": mats}


UNIPOTENT = point([[["1", "1"], ["0", "1"]]], "SL", "lie")
QUATERNION = point([[["i", "0"], ["0", "-i"]], [["0", "1"], ["-1", "0"]]])


def test_algebra_output(tmp_path):
    code, text = call(tmp_path, "algebra", QUATERNION, "--field", "QI")
    assert code == 0
    assert json.loads(text) == {"dim": 4, "radical_dim": 0, "commutant_dim": 1, "irreducible": True,
                                "completely_reducible": True, "isotropic": True}


def test_classify_field_order(tmp_path):
    code, text = call(tmp_path, "classify", UNIPOTENT)
    assert code == 0
    rep = json.loads(text)
    assert list(rep) == ["flags", "labels", "dims", "witness", "notes", "seed"]
    assert rep["labels"] == {"polystable": False, "stable": False, "equicentral": False}
    assert rep["witness"]["cochar"]["weights"] == [1, -1]


def test_classify_is_byte_deterministic(tmp_path):
    a = call(tmp_path, "classify", UNIPOTENT, "--seed", "3")
    b = call(tmp_path, "classify", UNIPOTENT, "--seed", "3")
    assert a == b


def test_witness_round_trips(tmp_path):
    _, text = call(tmp_path, "classify", UNIPOTENT)
    w = json.loads(text)["witness"]
    lim = jsonio.parse_point(w["limit"])
    lam = jsonio.parse_cochar(w["cochar"], lim.n)
    assert lam.weights == (1, -1)
    assert jsonio.point_to_json(lim) == w["limit"]


def test_every_command_round_trips(tmp_path):
    inputs = {
        "classify": QUATERNION, "algebra": QUATERNION, "centralizer": QUATERNION,
        "destab": QUATERNION, "hm-check": QUATERNION, "h-approx": QUATERNION,
        "limit": {"point": QUATERNION, "cochar": {"weights": [0, 0]}},
        "mu": {"cochar": {"weights": [1, -1]}, "matrix": [["0", "1"], ["0", "0"]]},
        "orbit-member": {"x": QUATERNION, "y": QUATERNION},
        "check-rep": {"presentation": {"generators": 2, "relators": []}, "point": QUATERNION},
    }
    for cmd, payload in inputs.items():
        code, text = call(tmp_path, cmd, payload, "--field", "QI")
        assert code == 0, (cmd, text)
        assert jsonio.dumps(json.loads(text)) == text


def test_limit_trivial_cochar_echoes_input(tmp_path):
    x = point([[["1", "2"], ["3", "4"]]], kind="lie")
    code, text = call(tmp_path, "limit", {"point": x, "cochar": {"weights": [0, 0]}})
    assert code == 0
    assert json.loads(text) == {"exists": True, "limit": x}


def test_limit_missing(tmp_path):
    x = point([[["1", "0"], ["1", "1"]]], kind="lie")
    _, text = call(tmp_path, "limit", {"point": x, "cochar": {"weights": [1, 0]}})
    assert json.loads(text) == {"exists": False, "limit": None}


def test_mu_output(tmp_path):
    code, text = call(tmp_path, "mu", {"cochar": {"weights": [1, -1]},
                                       "matrix": [["1", "1"], ["0", "1"]]})
    out = json.loads(text)
    assert code == 0 and out["mu"] == 0 and out["limit_exists"]
    assert [c["weight"] for c in out["components"]] == [0, 2]


def test_orbit_member_output(tmp_path):
    y = point([[["0", "1"], ["-1", "0"]], [["-i", "0"], ["0", "i"]]])
    _, text = call(tmp_path, "orbit-member", {"x": QUATERNION, "y": y}, "--field", "QI")
    out = json.loads(text)
    assert out["member"] and out["intertwiner"] is not None and out["seed"] == 0


@pytest.mark.parametrize("payload, code, location", [
    (point([[["1", "0"], ["0", "1"]], [["2", "0"], ["0", "1"]]], "SL"), "DET_NOT_ONE", "$.matrices[1]"),
    (point([[["1", "i"], ["0", "1"]]]), "FIELD_MISMATCH", "$.matrices[0][0][1]"),
    (point([[["1", "2"], ["2", "4"]]]), "NOT_INVERTIBLE", "$.matrices[0]"),
    (point([[["1", "x"], ["0", "1"]]]), "MALFORMED_SCALAR", "$.matrices[0][0][1]"),
    (point([[["1", "0"]]]), "NONSQUARE", "$.matrices[0][0]"),
    (point([]), "EMPTY_TUPLE", "$.matrices"),
    (point([[["1"]]]), "SIZE_MISMATCH", "$.matrices[0]"),
    (dict(point([[["1", "0"], ["0", "1"]]]), extra=1), "UNKNOWN_KEY", "$.extra"),
    ("{not json", "BAD_JSON", None),
])
def test_input_errors(tmp_path, payload, code, location):
    status, text = call(tmp_path, "classify", payload)
    err = json.loads(text)["error"]
    assert status == 2
    assert err["code"] == code
    if location:
        assert err["location"] == location


def test_relator_failure(tmp_path):
    x = point([[["1", "1"], ["0", "1"]], [["1", "0"], ["1", "1"]]])
    pres = {"generators": 2, "relators": [[[0, 1], [1, 1], [0, -1], [1, -1]]]}
    status, text = call(tmp_path, "check-rep", {"presentation": pres, "point": x})
    err = json.loads(text)["error"]
    assert status == 2 and err["code"] == "RELATOR_FAILED"
    assert err["location"] == "$.presentation.relators[0]"


def test_mu_of_zero_is_domain_error(tmp_path):
    status, text = call(tmp_path, "mu", {"cochar": {"weights": [1, -1]},
                                         "matrix": [["0", "0"], ["0", "0"]]})
    assert status == 2 and json.loads(text)["error"]["code"] == "ZERO_VECTOR"


def test_corpus_subprocess():
    proc = subprocess.run([sys.executable, "-m", "conjstab", "corpus"], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stdout
    out = json.loads(proc.stdout)
    assert out["passed"] and len(out["cases"]) == 7


def test_stdin_input():
    proc = subprocess.run([sys.executable, "-m", "conjstab", "algebra"], input=json.dumps(UNIPOTENT),
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["radical_dim"] == 1
