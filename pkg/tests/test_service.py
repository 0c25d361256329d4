"""HTTP surface of the verification service, exercised in-process."""

import warnings

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore", DeprecationWarning)
    from fastapi.testclient import TestClient

from yanginv.service import app


@pytest.fixture()
def client():
    with TestClient(app) as c:
        yield c


def test_health_and_version(client):
    assert client.get("/health").json() == {"status": "ok"}
    data = client.get("/version").json()
    assert data["schema_version"] == 1


def test_run_verify_job(client):
    response = client.post(
        "/jobs/run",
        json={"kind": "verify-invariant", "family": "TwoOne", "n": 2, "s": [1]},
    )
    assert response.status_code == 200
    body = response.json()
    assert body["passed"] is True
    assert body["metrics"]["grassmannian_ratio"] == "1/1"
    assert body["timing_ms"] is not None


def test_run_lattice_job(client):
    response = client.post(
        "/jobs/run",
        json={
            "kind": "lattice-z",
            "n": 2,
            "lines": [
                {"i": 1, "j": 3, "theta": "1/2"},
                {"i": 2, "j": 4, "theta": "-1/3"},
            ],
            "alpha": [1, 2, 2, 1],
        },
    )
    assert response.status_code == 200
    assert response.json()["passed"] is True


def test_render_endpoint_is_canonical(client):
    payload = {"kind": "verify-invariant", "family": "TwoOne", "n": 2, "s": [1]}
    a = client.post("/jobs/render", json=payload).json()
    b = client.post("/jobs/render", json=payload).json()
    assert a["text"] == b["text"]
    assert "timing_ms" not in a["text"]
    assert a["passed"] is True


def test_validation_errors_are_422(client):
    response = client.post(
        "/jobs/run",
        json={"kind": "verify-invariant", "family": "NoSuch", "n": 2, "s": [1]},
    )
    assert response.status_code == 422
    response = client.post(
        "/jobs/run",
        json={
            "kind": "verify-invariant",
            "family": "TwoOne",
            "n": 2,
            "s": [1],
            "base_v": "not-a-rational",
        },
    )
    assert response.status_code == 422


def test_domain_errors_surface_verbatim(client):
    """Mixed-representation crossings have no weight rule; the module
    error text reaches the client."""
    response = client.post(
        "/jobs/run",
        json={
            "kind": "lattice-z",
            "n": 2,
            "lines": [
                {"i": 1, "j": 3, "rep": "symmetric", "s": 1, "theta": "1/2"},
                {"i": 2, "j": 4, "rep": "conjugate", "s": 1, "theta": "-1/3"},
            ],
            "alpha": [[1, 0], [1, 0], [1, 0], [1, 0]],
        },
    )
    assert response.status_code == 422
    assert "mixed" in response.json()["detail"]


def test_render_matches_golden_file(client):
    import pathlib

    import yaml

    golden = pathlib.Path(__file__).parent / "golden"
    job = yaml.safe_load((golden / "verify_two_one.job.yaml").read_text())
    rendered = client.post("/jobs/render", json=job).json()["text"]
    assert rendered == (golden / "verify_two_one.report.yaml").read_text()
