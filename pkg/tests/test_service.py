import pytest
from fastapi.testclient import TestClient

from votewelfare.service.app import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


class TestInfoEndpoints:
    def test_health(self, client):
        response = client.get("/health")
        assert response.status_code == 200
        assert response.json()["status"] == "ok"

    def test_rules(self, client):
        response = client.get("/rules")
        assert response.status_code == 200
        names = [r["name"] for r in response.json()]
        assert len(names) == 15
        assert names[0] == "borda" and names[-1] == "nash"

    def test_cultures(self, client):
        response = client.get("/cultures")
        names = [c["name"] for c in response.json()]
        assert names == [
            "ic", "euclid_1", "euclid_2", "euclid_5", "mallows_0.8",
            "mallows_0.5", "mixed_mallows", "sushi", "skating_bag",
        ]


class TestSample:
    def test_shape_and_determinism(self, client):
        payload = {"culture": "ic", "m": 4, "n": 3, "count": 2, "seed": 1}
        first = client.post("/sample", json=payload)
        second = client.post("/sample", json=payload)
        assert first.status_code == 200
        body = first.json()
        assert len(body["profiles"]) == 2
        assert all(len(p) == 3 for p in body["profiles"])
        assert all(sorted(ballot) == [0, 1, 2, 3] for p in body["profiles"] for ballot in p)
        assert body == second.json()

    def test_text_rendering(self, client):
        payload = {"culture": "ic", "m": 3, "n": 2, "count": 2, "seed": 5}
        body = client.post("/sample", json=payload).json()
        blocks = [b for b in body["text"].split("\n\n") if b.strip()]
        assert len(blocks) == 2

    def test_data_culture_defaults_m(self, client):
        body = client.post("/sample", json={"culture": "skating_bag", "n": 2}).json()
        assert len(body["profiles"][0][0]) == 30

    def test_missing_m_rejected(self, client):
        response = client.post("/sample", json={"culture": "ic", "n": 2})
        assert response.status_code == 400

    def test_unknown_culture(self, client):
        response = client.post("/sample", json={"culture": "urn", "m": 3, "n": 2})
        assert response.status_code == 400


class TestManipulate:
    def test_worked_example(self, client):
        payload = {"ballots": [[1, 0, 2], [0, 2, 1], [1, 0, 2]], "rule": "borda"}
        body = client.post("/manipulate", json=payload).json()
        assert body["sincere_winner"] == 0
        assert body["winner"] == 1
        assert body["improved"] is True
        assert body["achievable"] == [0, 1]
        # winner b holds positions (1, 3, 1): points 2 + 0 + 2 of a possible 6
        assert body["welfare_manipulated"]["borda"] == pytest.approx(100 * 4 / 6)

    def test_no_improvement(self, client):
        payload = {"ballots": [[0, 1, 2], [0, 1, 2]], "rule": "plurality"}
        body = client.post("/manipulate", json=payload).json()
        assert body["improved"] is False
        assert body["ballot"] == [0, 1, 2]

    def test_invalid_profile(self, client):
        response = client.post("/manipulate", json={"ballots": [[0, 0, 2]], "rule": "borda"})
        assert response.status_code == 400
        assert "duplicate" in response.json()["detail"]

    def test_voter_out_of_range(self, client):
        response = client.post(
            "/manipulate", json={"ballots": [[0, 1, 2]], "rule": "borda", "voter": 4}
        )
        assert response.status_code == 400

    def test_type_errors_are_422(self, client):
        response = client.post("/manipulate", json={"ballots": "nope", "rule": "borda"})
        assert response.status_code == 422


class TestSweep:
    def test_small_sweep(self, client):
        payload = {
            "culture": "ic",
            "rules": ["borda", "plurality"],
            "n_values": [4],
            "m_values": [4],
            "trials": 5,
            "seed": 3,
        }
        body = client.post("/sweep", json=payload).json()
        assert len(body["records"]) == 12
        lines = body["csv"].splitlines()
        assert lines[0] == "culture,rule,behaviour,measure,n,m,mean,stderr,trials,seed"
        assert len(lines) == 13

    def test_unknown_rule(self, client):
        payload = {"culture": "ic", "rules": ["star"], "m_values": [4], "trials": 1}
        assert client.post("/sweep", json=payload).status_code == 400

    def test_trials_must_be_positive(self, client):
        payload = {"culture": "ic", "m_values": [4], "trials": 0}
        assert client.post("/sweep", json=payload).status_code == 422
