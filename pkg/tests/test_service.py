import json
import warnings
from importlib import resources

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient

from hk33.service import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def fixture_doc(name: str) -> dict:
    text = resources.files("hk33").joinpath("fixtures", name).read_text("utf-8")
    return json.loads(text)


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok"}


def test_rules_registry(client):
    response = client.get("/rules")
    assert response.status_code == 200
    rules = response.json()["rules"]
    assert "rule:unique-unknotted-odd-slope" in rules


def test_classify_endpoint_happy_path(client):
    response = client.post("/classify", json=fixture_doc("diagonal_three.json"))
    assert response.status_code == 200
    body = response.json()
    assert body["schema"] == "annulus-report/1"
    assert body["verdicts"]["unique_annulus"]["verdict"] == "proved"
    assert body["slope"]["type"] == [2, 1]


def test_classify_endpoint_schema_error(client):
    doc = fixture_doc("diagonal_three.json")
    doc["l1"]["kind"] = "pretzel"
    response = client.post("/classify", json=doc)
    assert response.status_code == 400
    error = response.json()["error"]
    assert error["kind"] == "schema" and error["path"] == "l1.kind"


def test_classify_endpoint_validation_error(client):
    doc = fixture_doc("diagonal_three.json")
    doc["p"] = 0
    doc["h_l_plus"] = [1, -1]
    doc["h_l_minus"] = [0, 0]
    doc["w_l_plus"] = None
    doc["w_l_minus"] = None
    response = client.post("/classify", json=doc)
    assert response.status_code == 422
    error = response.json()["error"]
    assert error["kind"] == "validation"
    assert any("non-trivial boundary slope" in v for v in error["violations"])


def test_family_endpoint_presentations(client):
    response = client.post("/family", json={"spec": "T:3,3"})
    assert response.status_code == 200
    docs = response.json()["presentations"]
    assert len(docs) == 1 and docs[0]["label"] == "T:3,3"


def test_family_endpoint_classify(client):
    response = client.post("/family", json={"spec": "U:3,1", "classify": True})
    assert response.status_code == 200
    reports = response.json()["reports"]
    assert len(reports) == 1
    assert reports[0]["symmetry"]["upper"] == "trivial"
    assert reports[0]["symmetry"]["exact"] == "trivial"


def test_family_endpoint_bad_spec(client):
    response = client.post("/family", json={"spec": "Q:1,1"})
    assert response.status_code == 400
    assert response.json()["error"]["kind"] == "spec"


def test_table_endpoint_diagonal(client):
    response = client.post("/table", json={"name": "V", "start": 3, "stop": 9})
    assert response.status_code == 200
    body = response.json()
    assert [row["label"] for row in body["rows"]] == ["T:3,3", "T:5,5", "T:7,7", "T:9,9"]
    assert all(row["sym_exact"] == "Z2xZ2" for row in body["rows"])
    assert len(body["reports"]) == 4
    for report in body["reports"]:
        assert report["verdicts"]["unique_annulus"]["citation"]


def test_table_endpoint_unknown_name(client):
    response = client.post("/table", json={"name": "XX", "start": 1, "stop": 2})
    assert response.status_code == 400
    assert response.json()["error"]["kind"] == "spec"


def test_oracle_endpoint(client):
    response = client.post("/oracle", json={"suite": "normalize", "cases": 25, "seed": 0})
    assert response.status_code == 200
    body = response.json()
    assert body["passed"] is True and body["checked"] == 25
    response = client.post("/oracle", json={"suite": "nope"})
    assert response.status_code == 400
