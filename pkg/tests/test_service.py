import pytest
from fastapi.testclient import TestClient

from ilrs.service import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health(client):
    assert client.get("/health").json() == {"status": "ok"}


def test_bounds(client):
    r = client.post("/bounds", json={"s": 4, "taus": [3, 4]})
    assert r.status_code == 200
    rows = r.json()["rows"]
    assert [row["tau"] for row in rows] == [3, 4]
    assert f"{rows[1]['bound_impr']:.3e}" == "3.985e-02"


def test_bounds_rejects_radius(client):
    assert client.post("/bounds", json={"s": 4, "taus": [5]}).status_code == 422


def test_bounds_validation(client):
    assert client.post("/bounds", json={"q": 1}).status_code == 422


def test_simulate(client):
    r = client.post("/simulate", json={"mode": "hilrs", "tau": 1, "trials": 10, "seed": 2})
    assert r.status_code == 200
    body = r.json()
    assert body["trials"] == 10 and body["failures"] == 0
    assert body["outcomes"]["success"] == 10


def test_simulate_config_error(client):
    r = client.post("/simulate", json={"tau": 1})
    assert r.status_code == 422 and "stop rule" in r.json()["detail"]
    assert client.post("/simulate", json={"mode": "other", "trials": 1}).status_code == 422


def test_selftest(client):
    r = client.get("/selftest", params={"trials": 3})
    assert r.status_code == 200 and r.json()["ok"] is True
