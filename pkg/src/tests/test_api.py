import pytest
from fastapi.testclient import TestClient

from src.config import get_settings
from src.main import app


@pytest.fixture
def client():
    return TestClient(app)


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"
    assert response.json()["suites"] == 13


def test_suites(client):
    response = client.get("/api/v1/suites")
    assert response.status_code == 200
    names = [s["name"] for s in response.json()]
    assert "p-exchange" in names
    assert "traciality" in names


def test_verify_inline(client):
    response = client.post("/api/v1/verify", json={"suite": "f-projection", "max": 2})
    assert response.status_code == 200
    body = response.json()
    assert body["passed"] is True
    assert body["total"] == 12
    assert body["failed"] == 0


def test_verify_rejects_unknown_suite(client):
    response = client.post("/api/v1/verify", json={"suite": "no-such-suite"})
    assert response.status_code == 422


def test_verify_job_is_accepted(client):
    response = client.post("/api/v1/jobs/verify", json={"suite": "f-projection", "max": 1})
    assert response.status_code == 202
    body = response.json()
    assert body["status"] == "processing"
    assert body["job_id"].startswith("verify_f-projection_")


def test_gram(client):
    response = client.post("/api/v1/gram", json={"n": 2, "domain": "index=2"})
    assert response.status_code == 200
    assert response.json()["determinant"] == "1/4"


def test_algebra_errors_are_422(client):
    response = client.post("/api/v1/gram", json={"n": 2, "domain": "index=banana"})
    assert response.status_code == 422
    assert response.json()["detail"].startswith("DomainSpecError")


def test_dims(client):
    response = client.post("/api/v1/dims", json={"graph": "A4", "levels": 5, "hilbert_dim": 2})
    assert response.status_code == 200
    body = response.json()
    assert [row["d_r"] for row in body["rows"]] == [1, 1, 2, 5, 13, 34]
    assert body["growth_estimate"] == pytest.approx(34 / 13)
    assert "not embedable" in body["embedability"]

    short = client.post("/api/v1/dims", json={"adjacency": [[0, 1], [1, 0]], "levels": 2}).json()
    assert short["growth_estimate"] is None
    assert short["graph"] == "custom"


def test_api_key_is_enforced_when_configured(client, monkeypatch):
    monkeypatch.setattr(get_settings(), "api_secret_key", "s3cret")
    assert client.get("/api/v1/suites").status_code == 401
    assert client.get("/api/v1/suites", headers={"X-API-Key": "wrong"}).status_code == 401
    assert client.get("/api/v1/suites", headers={"X-API-Key": "s3cret"}).status_code == 200
    assert client.get("/health").status_code == 200
