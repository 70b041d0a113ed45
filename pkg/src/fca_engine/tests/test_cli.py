import json

import pytest

from fca_engine.commands import COMMANDS
from fca_engine.formats import dump_bundle, encode_galois
from fca_engine.galois import identity_connection
from fca_engine.main import EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, run
from fca_engine.order_core import chain, make_preorder

K1_CONTEXT = {"instances": ["1", "2"], "types": ["a", "b"], "incidence": [[0, 0], [1, 0], [1, 1]]}


def write_json(path, payload):
    path.write_text(json.dumps(payload))
    return str(path)


def test_every_command_is_registered():
    assert set(COMMANDS) == {
        "check-galois",
        "check-info",
        "clg",
        "clsn",
        "concepts",
        "factorize",
        "lattice-dot",
        "roundtrip",
        "theories",
        "verify",
    }


def test_concepts(k1_file, capsys):
    assert run(["concepts", str(k1_file)]) == EXIT_OK
    assert json.loads(capsys.readouterr().out) == [
        {"extent": ["2"], "intent": ["a", "b"]},
        {"extent": ["1", "2"], "intent": ["a"]},
    ]


def test_lattice_dot_to_file(k1_file, tmp_path, capsys):
    out = tmp_path / "k1.dot"
    assert run(["lattice-dot", str(k1_file), "--out", str(out)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert out.read_text().count("->") == 1


def test_clg_then_clsn_recovers_the_cxt(k1_file, k1_cxt, tmp_path, capsys):
    lattice = tmp_path / "k1_lattice.json"
    assert run(["clg", str(k1_file), "--out", str(lattice)]) == EXIT_OK
    assert run(["clsn", str(lattice)]) == EXIT_OK
    assert capsys.readouterr().out == k1_cxt


def test_clg_as_dot(k1_file, capsys):
    assert run(["clg", str(k1_file), "--format", "dot"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("digraph concepts {")


def test_check_info_reports_the_witness(tmp_path, capsys):
    bundle = write_json(
        tmp_path / "bad.json",
        {"source": K1_CONTEXT, "target": K1_CONTEXT, "inst_map": [0, 0], "typ_map": [0, 1]},
    )
    assert run(["check-info", bundle]) == EXIT_VIOLATION
    witness = json.loads(capsys.readouterr().out)
    assert witness["error"] == "FundamentalConditionViolated"
    assert witness["witness"] == {"x2": "2", "y1": "b"}


def test_check_info_accepts_the_identity(tmp_path, capsys):
    bundle = write_json(
        tmp_path / "id.json",
        {"source": K1_CONTEXT, "target": K1_CONTEXT, "inst_map": [0, 1], "typ_map": [0, 1]},
    )
    assert run(["check-info", bundle]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["valid"] is True


def test_check_galois(tmp_path, capsys):
    good = tmp_path / "id.json"
    good.write_text(dump_bundle(encode_galois(identity_connection(chain(2)))))
    assert run(["check-galois", str(good)]) == EXIT_OK
    summary = json.loads(capsys.readouterr().out)
    assert summary["reflection"] and summary["coreflection"]

    broken = json.loads(good.read_text())
    broken["left"], broken["right"] = [1, 1], [0, 0]
    assert run(["check-galois", write_json(tmp_path / "bad.json", broken)]) == EXIT_VIOLATION
    assert json.loads(capsys.readouterr().out)["error"] == "AdjointnessViolated"


def test_check_galois_dispatches_on_bundle_shape(tmp_path, capsys):
    # element labels that collide with quartet field names
    g1_poset = identity_connection(make_preorder(["g1", "x"], [("g1", "x")], close=True))
    connection = tmp_path / "g1.json"
    connection.write_text(dump_bundle(encode_galois(g1_poset)))
    assert run(["check-galois", str(connection)]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["law"] == "fundamental adjointness"

    side = encode_galois(identity_connection(chain(2))).model_dump()
    quartet = write_json(tmp_path / "square.json", {"g1": side, "g2": side, "a": side, "b": side})
    assert run(["check-galois", quartet]) == EXIT_OK
    assert json.loads(capsys.readouterr().out) == {"valid": True, "law": "quartet condition"}

    assert run(["check-galois", write_json(tmp_path / "neither.json", {"g1": side})]) == EXIT_VIOLATION
    assert json.loads(capsys.readouterr().out)["error"] == "BadBundle"


def test_factorize(tmp_path, capsys):
    bundle = tmp_path / "id.json"
    bundle.write_text(dump_bundle(encode_galois(identity_connection(chain(2)))))
    assert run(["factorize", str(bundle)]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["bipoles"] == [[0, 0], [1, 1]]


def test_roundtrip_and_theories(k1_file, capsys):
    assert run(["roundtrip", str(k1_file)]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["forward"] == [0, 1]
    assert run(["theories", str(k1_file)]) == EXIT_OK
    assert len(json.loads(capsys.readouterr().out)["theories"]) == 4


def test_verify_is_deterministic(capsys):
    argv = ["verify", "--seed", "7", "--batch-size", "5", "--max-side", "3"]
    assert run(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert run(argv) == EXIT_OK
    assert capsys.readouterr().out == first
    assert first.startswith("verify generated (seed 7)\n")
    assert "0 failed" in first


def test_verify_a_context_as_json(k1_file, capsys):
    assert run(["verify", str(k1_file), "--format", "json"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["source"] == str(k1_file)
    assert all(law["status"] != "fail" for law in report["laws"])


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["concepts"],
        ["no-such-command"],
        ["concepts", "missing.cxt"],
        ["verify", "--batch-size", "0"],
        ["verify", "--format", "svg"],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(argv) == EXIT_USAGE
    assert capsys.readouterr().err.startswith("fca-engine:")


def test_clg_rejects_cxt_output(k1_file):
    assert run(["clg", str(k1_file), "--format", "cxt"]) == EXIT_USAGE
