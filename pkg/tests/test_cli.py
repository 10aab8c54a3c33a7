import json

import numpy as np
import pytest

from surfrigid.cli import main
from surfrigid.document import framework_document
from surfrigid.graph import complete_graph
from surfrigid.rigidity import random_framework
from surfrigid.surface import Kind


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def k5e_file(tmp_path, capsys):
    path = tmp_path / "k5e.json"
    assert run(capsys, "fixture", "K5_E", "-o", path)[0] == 0
    return path


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return path


def test_fixture_document_round_trip(k5e_file, capsys):
    doc = json.loads(k5e_file.read_text())
    assert len(doc["vertices"]) == 5 and len(doc["edges"]) == 9
    assert doc["surface"]["kind"] == "cylinder"
    code, out, _ = run(capsys, "analyze", k5e_file)
    assert code == 0
    report = json.loads(out)
    assert report["exact"] is True
    assert report["rigidity_rank"] == 13
    assert report["infinitesimally_rigid"] is True
    assert report["stress_space_dim"] == 1
    assert report["stress_ranks"] == [9]
    assert report["fully_realised"] is True
    assert report["given_stress"] == {"equilibrium": True, "stress_rank": 9}


def test_induced_radii_document(tmp_path, capsys):
    path = tmp_path / "h1.json"
    run(capsys, "fixture", "H1", "--induced", "-o", path)
    assert json.loads(path.read_text())["surface"]["radii"] == "induced"
    report = json.loads(run(capsys, "analyze", path)[1])
    assert (report["rigidity_rank"], report["stress_ranks"]) == (16, [12])


def test_exact_reports_are_byte_identical(k5e_file, capsys):
    a = run(capsys, "analyze", k5e_file)[1]
    b = run(capsys, "analyze", k5e_file)[1]
    assert a == b


def test_float_mode(k5e_file, capsys):
    report = json.loads(run(capsys, "analyze", k5e_file, "--float")[1])
    assert report["exact"] is False
    assert report["rigidity_rank"] == 13


def test_certify_base(capsys):
    code, out, _ = run(capsys, "certify", "--base", "H1", "--random-steps", 2, "--seed", 3)
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "pass"
    assert len(report["steps"]) == 4


def test_certify_base_with_steps_file(tmp_path, capsys):
    steps = write(tmp_path, "steps.json", [{"op": "one_extension", "edge": [0, 1], "v3": 2}])
    code, out, _ = run(capsys, "certify", "--base", "K5_E", "--steps", steps, "--seed", 0)
    assert code == 0
    last = json.loads(out)["steps"][-1]
    assert (last["rigidity_rank"], last["stress_rank"]) == (16, 12)


def test_certify_missing_edge_step_fails(tmp_path, capsys):
    steps = write(tmp_path, "steps.json", [{"op": "one_extension", "edge": [2, 3], "v3": 0}])
    code, out, _ = run(capsys, "certify", "--base", "K5_E", "--steps", steps, "--seed", 0)
    assert code == 1
    report = json.loads(out)
    assert report["failed_step"] == 1


def test_certify_framework_generic(k5e_file, capsys):
    code, out, _ = run(capsys, "certify", k5e_file, "--generic", "--seed", 0)
    assert code == 0
    report = json.loads(out)
    assert report["theorem"] == "MAX_RANK_GENERIC"
    assert report["genericity"] == "asserted"


def test_certify_framework_without_assertion(k5e_file, capsys):
    code, out, _ = run(capsys, "certify", k5e_file, "--seed", 0)
    assert code == 1
    assert json.loads(out)["theorem"] == "NO_CERTIFICATE"


def test_certify_cone_refused(capsys):
    code, _, err = run(capsys, "certify", "--base", "K5_E", "--surface", "cone", "--seed", 0)
    assert code == 2
    assert "cone" in err


def test_seed_reported_when_missing(capsys):
    code, _, err = run(capsys, "certify", "--base", "K5_E")
    assert code == 0
    assert err.startswith("seed: ")


def test_malformed_json(tmp_path, capsys):
    path = write(tmp_path, "bad.json", "{not json")
    code, _, err = run(capsys, "analyze", path)
    assert code == 2
    assert err.startswith("error")


def test_missing_file(tmp_path, capsys):
    assert run(capsys, "analyze", tmp_path / "nope.json")[0] == 2


def test_degenerate_point(tmp_path, capsys):
    doc = {"surface": {"kind": "cylinder"}, "edges": [[0, 1]], "vertices": [[1, 0, 0], [0, 0, 2]]}
    assert run(capsys, "analyze", write(tmp_path, "axis.json", doc))[0] == 3


def test_sparsity(tmp_path, capsys):
    k4 = {"n": 4, "edges": [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]}
    path = write(tmp_path, "k4.json", k4)
    code, out, _ = run(capsys, "sparsity", path, "--k", 2)
    assert code == 0
    assert json.loads(out)["tight"] is True
    assert run(capsys, "sparsity", path, "--k", 3)[0] == 1


def test_hendrickson(tmp_path, k5e_file, capsys):
    code, out, _ = run(capsys, "hendrickson", k5e_file, "--seed", 0)
    assert code == 0
    assert json.loads(out)["passes"] is True
    k4 = {"n": 4, "edges": [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]}
    code, out, _ = run(capsys, "hendrickson", write(tmp_path, "k4.json", k4), "--seed", 0)
    assert code == 1
    assert json.loads(out)["redundantly_rigid"] is False


def _random_document(g, kind, seed):
    return framework_document(random_framework(g, kind, np.random.default_rng(seed)))


def test_analyze_random_k4(tmp_path, capsys):
    path = write(tmp_path, "k4.json", _random_document(complete_graph(4), Kind.CYLINDER, 0))
    report = json.loads(run(capsys, "analyze", path)[1])
    assert report["exact"] is False
    assert report["infinitesimally_rigid"] is True
    assert report["stress_space_dim"] == 0


def test_cone_framework_max_rank_refused(tmp_path, capsys):
    path = write(tmp_path, "cone.json", _random_document(complete_graph(6), Kind.CONE, 0))
    code, _, err = run(capsys, "certify", path, "--route", "max-rank", "--seed", 0)
    assert code == 2
    assert "cylinder" in err and "ellipsoid" in err
