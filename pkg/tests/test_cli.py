import io
import json

import pytest

from lldspace.cli import run
from lldspace.cli.spacefile import read, write
from lldspace.catalog import build_entry
from lldspace.exactfield import make_field
from lldspace.matspace import fingerprint, reduce


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def fields(text):
    return dict(line.split("\t", 1) for line in text.splitlines())


@pytest.fixture
def files(tmp_path):
    F5, F3 = make_field(5), make_field(3)
    paths = {}
    for name, id_, F, params in [
        ("mata3", "mat3-alt", F3, {}),
        ("wedge3_gf3", "wedge", F3, {"n": 3}),
        ("wedge4", "wedge", F5, {"n": 4}),
        ("d0", "plane-D0", F5, {}),
        ("a5", "a5", F5, {}),
        ("d1plane", "plane-D1", F5, {}),
    ]:
        path = tmp_path / f"{name}.llds"
        E = build_entry(id_, F, params)
        write(str(path), E.plane if name == "d1plane" else E.space)
        paths[name] = str(path)
    return paths


def test_analyze(files):
    code, out, _ = call("analyze", files["mata3"])
    rep = fields(out)
    assert code == 0
    assert rep["fingerprint"] == "[3,3,3,2,2,1]"
    assert rep["input"].startswith("mata3.llds\tsha256:")
    assert rep["status"] == "ok"


def test_check_exit_codes(files):
    assert call("check", "column", files["wedge3_gf3"])[0] == 0
    code, out, _ = call("check", "primitive", files["d0"])
    assert code == 1
    rep = fields(out)
    assert rep["holds"] == "false" and rep["status"] == "fail"
    assert rep["witness.kind"] == "line" and rep["witness.v"].startswith("[")
    assert call("check", "semiprimitive", files["d0"])[0] == 0
    assert call("check", "lld", files["mata3"], "--c", "1")[0] == 0
    assert call("check", "lld", files["mata3"], "--c", "2")[0] == 1
    assert call("check", "minimal", files["mata3"])[0] == 0
    assert call("check", "flanders", files["wedge4"])[0] == 0


def test_check_column_randomized_records_seed(files):
    code, out, _ = call("check", "column", files["wedge4"], "--mode", "randomized",
                        "--trials", "20", "--seed", "7")
    rep = fields(out)
    assert code == 0 and rep["tag.seed"] == "7" and rep["tag.trials"] == "20"


def test_dual_twice_then_reduce(files, tmp_path):
    h1, h2 = str(tmp_path / "h1.llds"), str(tmp_path / "h2.llds")
    r0, r2 = str(tmp_path / "r0.llds"), str(tmp_path / "r2.llds")
    assert call("dual", files["d0"], "-o", h1)[0] == 0
    assert call("dual", h1, "-o", h2)[0] == 0
    assert call("reduce", h2, "-o", r2)[0] == 0
    assert call("reduce", files["d0"], "-o", r0)[0] == 0
    assert fingerprint(read(r2)) == fingerprint(read(r0))


def test_split_thin_and_core(files, tmp_path):
    code, out, _ = call("split", "thin", files["wedge4"], "-o", str(tmp_path / "h.llds"))
    rep = fields(out)
    assert code == 0 and rep["p"] == "3" and rep["bound"] == "[6,6]"
    code, out, _ = call("split", "onedim", files["d0"], "--x", "0 0 0 1")
    assert code == 0 and fields(out)["q"] == "3"


def test_quadclass(files):
    code, out, _ = call("quadclass", files["a5"])
    assert code == 0 and fields(out)["rank"] == "3"
    code, out, _ = call("quadclass", files["d1plane"])
    assert fields(out)["class"] == "D1"
    assert call("quadclass", files["mata3"])[0] == 2


def test_catalog_list_and_emit(tmp_path):
    code, out, _ = call("catalog", "list")
    assert code == 0 and "plane-D0\t" in out
    code, out, _ = call("catalog", "emit", "plane-R", "--field", "5", "--delta", "2")
    assert code == 0 and out.startswith("llds 1\nfield 5\nspace 4 4 4\n")
    path = tmp_path / "r.llds"
    assert call("catalog", "emit", "lld4-R", "--field", "GF(4)", "--delta", "1:0",
                "-o", str(path))[0] == 0
    assert read(str(path)).field == make_field(2, 2)
    code, out, _ = call("catalog", "emit", "plane-R", "--field", "5", "--delta", "1")
    assert code == 2 and fields(out)["error"] == "BadParams"
    code, out, _ = call("catalog", "emit", "plane-D2", "--field", "4", "--t", "1:0")
    assert code == 2 and fields(out)["error"] == "VacuousClass"


def test_verify_and_search():
    code, out, _ = call("verify", "pfaffian", "--field", "3", "--field", "4")
    assert code == 0 and fields(out)["failed"] == "0"
    code, out, _ = call("search", "conjecture", "--r", "2", "--field", "5",
                        "--trials", "30", "--seed", "1")
    rep = fields(out)
    assert code == 0 and rep["violations"] == "0" and rep["tag.seed"] == "1"


def test_usage_errors(files, tmp_path):
    assert call()[0] == 2
    assert call("frobnicate")[0] == 2
    assert call("check", "nonsense", files["mata3"])[0] == 2
    assert call("verify", "nonsense")[0] == 2
    assert call("split", "onedim", files["d0"])[0] == 2
    code, out, _ = call("analyze", str(tmp_path / "missing.llds"))
    assert code == 2 and fields(out)["status"] == "error"
    bad = tmp_path / "bad.llds"
    bad.write_text("llds 1\nfield 5\nspace 1 1 1\nmatrix\n9\n")
    code, out, _ = call("analyze", str(bad))
    assert code == 2 and fields(out)["error"] == "ValueOutOfRange"


def test_json_mirror(files):
    code, out, _ = call("--json", "analyze", files["mata3"])
    doc = json.loads(out)
    assert doc["results"]["fingerprint"] == [3, 3, 3, 2, 2, 1]
    code2, out2, _ = call("analyze", files["mata3"], "--json")
    assert out2 == out


def test_determinism(files):
    argv = ["search", "conjecture", "--r", "3", "--field", "5", "--trials", "20", "--seed", "9"]
    assert call(*argv) == call(*argv)
    argv = ["check", "column", files["wedge4"], "--mode", "randomized", "--seed", "3"]
    assert call(*argv) == call(*argv)
