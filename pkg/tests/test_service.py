"""HTTP service endpoints mirror the in-process handlers exactly."""
import pytest
from fastapi.testclient import TestClient

from toricgw.api.handlers import handle_gw
from toricgw.api.schemas import GwRequest
from toricgw.api.service import create_app

P2 = {
    "dim": 2,
    "rays": [[1, 0], [0, 1], [-1, -1]],
    "max_cones": [[0, 1], [0, 2], [1, 2]],
}


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json() == {"status": "ok"}


def test_psi_endpoint(client):
    resp = client.post("/v1/psi", json={"m": 6, "d": [1, 1, 1, 0, 0, 0]})
    assert resp.status_code == 200
    assert resp.json() == {"value": "6"}


def test_psi_missing_field_is_422(client):
    resp = client.post("/v1/psi", json={"m": 6})
    assert resp.status_code == 422


def test_gw_endpoint(client):
    resp = client.post(
        "/v1/gw",
        json={
            "fan": P2,
            "curve_class": [1, 1, 1],
            "insertions": [[1, 1, 0], [0, 1, 1], [0, 0, 1]],
        },
    )
    assert resp.status_code == 200
    assert resp.json() == {
        "invariant": "1",
        "mode": "classical",
        "n_graphs": 1,
        "seeds": [0, 1],
    }


def test_gw_error_payload(client):
    resp = client.post(
        "/v1/gw",
        json={"fan": P2, "curve_class": [1, 0, 0], "insertions": [[1, 1, 0]]},
    )
    assert resp.status_code == 400
    body = resp.json()
    assert body["error"]["kind"] == "input"
    assert "curve class" in body["error"]["message"]


def test_validate_endpoint_failing_fan(client):
    resp = client.post(
        "/v1/validate",
        json={"fan": {"dim": 2, "rays": [[1, 0], [0, 1], [-1, -1]],
                      "max_cones": [[0, 1], [0, 2]]}},
    )
    # a structurally readable fan that fails checks is still a 200
    assert resp.status_code == 200
    report = resp.json()
    assert report["passed"] is False
    assert any(not c["passed"] for c in report["checks"])


def test_moment_graph_endpoint(client):
    resp = client.post("/v1/moment-graph", json={"fan": P2})
    assert resp.status_code == 200
    payload = resp.json()
    assert len(payload["points"]) == 3
    assert all(len(p["weights"]) == 2 for p in payload["points"])


def test_check_relation_endpoint(client):
    resp = client.post(
        "/v1/check-relation",
        json={
            "fan": P2,
            "lhs": [[1, 0, 0], [1, 0, 0], [1, 0, 0]],
            "rhs": [],
            "rhs_shift": [1, 1, 1],
            "caps": [1],
        },
    )
    assert resp.status_code == 200
    assert resp.json()["passed"] is True


def test_qprod_endpoint(client):
    resp = client.post(
        "/v1/qprod",
        json={"fan": P2, "factors": [[1, 0, 0], [1, 0, 0]], "caps": [1]},
    )
    assert resp.status_code == 200
    payload = resp.json()
    assert payload["generators"] == [[1, 1, 1]]
    assert len(payload["terms"]) == 1


def test_endpoint_matches_in_process_handler(client):
    """The HTTP body equals the handler's own serialization, field for field."""
    request = GwRequest(
        fan=P2,
        curve_class=[2, 2, 2],
        insertions=[[1, 1, 0]] * 5,
        trace=True,
        dump_graphs=True,
    )
    direct = handle_gw(request).model_dump(mode="json", by_alias=True, exclude_none=True)
    resp = client.post("/v1/gw", json=request.model_dump(mode="json", by_alias=True))
    assert resp.status_code == 200
    assert resp.json() == direct
