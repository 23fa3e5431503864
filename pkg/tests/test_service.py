import pytest
from fastapi.testclient import TestClient

from refmonoids.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def values(report):
    return {r["label"]: r["value"] for r in report["results"]}


class TestOrderEndpoint:
    def test_boolean_a3_both_methods_match(self, client):
        r = client.post(
            "/order",
            json={"family": "A", "n": 3, "system": "boolean", "method": "both"},
        )
        assert r.status_code == 200
        body = r.json()
        vals = values(body)
        assert vals["general formula"] == "34"
        assert vals["enumerated order"] == "34"
        assert vals["verdict"] == "match"
        assert body["discrepancies"] == []

    def test_b2_arrangement_reports_printed_mismatch(self, client):
        r = client.post(
            "/order",
            json={"family": "B", "n": 2, "system": "arrangement", "method": "both"},
        )
        body = r.json()
        vals = values(body)
        assert vals["orbit/isotropy formula"] == "25"
        assert vals["printed closed form"] == "7"
        assert vals["enumerated order"] == "25"
        assert vals["verdict"] == "match"
        assert any(
            d["printed"] == "7" and d["oracle"] == "25" for d in body["discrepancies"]
        )

    def test_d2_arrangement_mismatch(self, client):
        r = client.post(
            "/order",
            json={"family": "D", "n": 2, "system": "arrangement", "method": "both"},
        )
        body = r.json()
        assert any(
            d["printed"] == "4" and d["oracle"] == "9" for d in body["discrepancies"]
        )

    def test_d4_boolean_table_mismatch_reported(self, client):
        r = client.post(
            "/order", json={"family": "D", "n": 4, "system": "boolean"}
        )
        body = r.json()
        vals = values(body)
        assert vals["general formula"] == "1281"
        assert vals["tabulated specialization"] == "1664"
        assert vals["adjusted specialization"] == "1281"
        assert any(d["printed"] == "1664" for d in body["discrepancies"])

    def test_g2_both_pipelines(self, client):
        r = client.post(
            "/order",
            json={"family": "G2", "system": "arrangement", "method": "both"},
        )
        vals = values(r.json())
        assert vals["orbit-data order"] == "49"
        assert vals["enumerated order"] == "49"
        assert vals["verdict"] == "match"

    def test_exceptional_values(self, client):
        expected = {
            "F4": "54241",
            "E6": "16217200",
            "E7": "8362300467",
            "E8": "47881782744961",
        }
        for family, value in expected.items():
            r = client.post("/order", json={"family": family})
            assert values(r.json())["orbit-data order"] == value

    def test_usage_error_on_exceptional_enumeration(self, client):
        r = client.post("/order", json={"family": "E7", "method": "enumerate"})
        assert r.status_code == 400
        assert r.json()["detail"]["code"] == "usage"

    def test_cap_error(self, client):
        r = client.post(
            "/order",
            json={"family": "B", "n": 8, "system": "boolean", "method": "enumerate"},
        )
        assert r.status_code == 400
        assert r.json()["detail"]["code"] == "cap"

    def test_validation_error_on_unknown_family(self, client):
        r = client.post("/order", json={"family": "Z", "n": 2})
        assert r.status_code == 422

    def test_boolean_system_for_exceptional_rejected(self, client):
        r = client.post("/order", json={"family": "G2", "system": "boolean"})
        assert r.status_code == 400
        assert r.json()["detail"]["code"] == "usage"


class TestGreenEndpoint:
    def test_a3_arrangement(self, client):
        r = client.post(
            "/green", json={"family": "A", "n": 3, "system": "arrangement"}
        )
        vals = values(r.json())
        assert vals["D-classes"] == "3"
        assert vals["J-classes"] == "3"
        assert vals["order"] == "16"

    def test_boolean_r_classes(self, client):
        r = client.post("/green", json={"family": "A", "n": 3, "system": "boolean"})
        assert values(r.json())["R-classes"] == "8"


class TestMuEndpoint:
    def test_signed_model_not_fundamental(self, client):
        r = client.post("/mu", json={"model": "Jn", "n": 2})
        vals = values(r.json())
        assert vals["fundamental"] == "False"
        assert "witness" in vals

    def test_plain_model_fundamental(self, client):
        r = client.post("/mu", json={"model": "In", "n": 3})
        vals = values(r.json())
        assert vals["fundamental"] == "True"
        assert vals["order"] == "34"

    def test_hexagon(self, client):
        r = client.post("/mu", json={"model": "hexagon"})
        vals = values(r.json())
        assert vals["fundamental"] == "False"
        assert vals["mu trivial on units"] == "True"

    def test_family_mode(self, client):
        r = client.post(
            "/mu", json={"family": "B", "n": 2, "system": "boolean"}
        )
        assert values(r.json())["fundamental"] == "False"

    def test_requires_model_or_family(self, client):
        r = client.post("/mu", json={"n": 2})
        assert r.status_code == 400
        assert r.json()["detail"]["code"] == "usage"


class TestTableEndpoint:
    def test_rank_counts_b3(self, client):
        r = client.post(
            "/table",
            json={"family": "B", "n": 3, "system": "arrangement", "kind": "ranks"},
        )
        vals = values(r.json())
        assert [vals[f"rank {k}"] for k in range(4)] == ["1", "9", "13", "1"]
        assert vals["closed-form agreement"] == "match"

    def test_orbit_table(self, client):
        r = client.post(
            "/table",
            json={"family": "B", "n": 2, "system": "arrangement", "kind": "orbits"},
        )
        rows = [x["value"] for x in r.json()["results"]]
        assert "size 2, stabilizer order 2" in rows

    def test_orbit_data_kind(self, client):
        r = client.post("/table", json={"family": "G2", "kind": "orbit-data"})
        vals = values(r.json())
        assert vals["orbit data"] == "1a0:3a1.3a1:1g2"
        assert vals["rank 1 subspaces"] == "6"

    def test_orbit_data_get(self, client):
        r = client.get("/orbit-data/e6")
        assert r.status_code == 200
        assert r.json()["family"] == "E6"
        r = client.get("/orbit-data/H4")
        assert r.status_code == 400

    def test_orbit_data_for_classical_rejected(self, client):
        r = client.post("/table", json={"family": "B", "n": 2, "kind": "orbit-data"})
        assert r.status_code == 400


class TestDeterminism:
    def test_identical_requests_identical_reports(self, client):
        payload = {"family": "B", "n": 2, "system": "arrangement", "kind": "orbits"}
        first = client.post("/table", json=payload).json()
        second = client.post("/table", json=payload).json()
        assert first == second

    def test_healthz(self, client):
        assert client.get("/healthz").json() == {"status": "ok"}
