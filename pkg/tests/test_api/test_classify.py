"""Tests for the classify and catalog endpoints."""


def _antichain(n):
    return {"kind": "poset", "n": n}


class TestClassifyEndpoint:
    def test_poset(self, client):
        resp = client.post("/api/v1/classify", json=_antichain(4))
        assert resp.status_code == 200
        data = resp.json()
        assert data["verdict"] == "Tame"
        assert data["lines"] == ["Tame; rho = 4"]
        assert data["exit_code"] == 0

    def test_wild_is_still_ok(self, client):
        data = client.post("/api/v1/classify", json=_antichain(5)).json()
        assert data["verdict"] == "Wild"
        assert data["exit_code"] == 1

    def test_graph(self, client):
        body = {"kind": "graph", "edges": [{"ends": ["a", "b"]}, {"ends": ["b", "c"]}]}
        data = client.post("/api/v1/classify", json=body).json()
        assert data["verdict"] == "Dynkin"
        assert data["data"]["name"] == "A3"

    def test_coxeter_mode(self, client):
        body = {"kind": "graph", "coxeter_matrix": [[1, 3, 2], [3, 1, 5], [2, 5, 1]]}
        data = client.post("/api/v1/classify", params={"mode": "coxeter"}, json=body).json()
        assert data["data"]["name"] == "H3"

    def test_quiver(self, client):
        body = {"kind": "quiver", "arrows": [{"t": "a", "h": "b"}]}
        data = client.post("/api/v1/classify", json=body).json()
        assert data["verdict"] == "Finite"
        assert data["data"]["route"] == "rho-degree"

    def test_missing_kind(self, client):
        assert client.post("/api/v1/classify", json={"n": 3}).status_code == 400

    def test_triadic(self, client):
        resp = client.post("/api/v1/classify", json={"kind": "triadic", "n": 3})
        assert resp.status_code == 400
        assert "triadic" in resp.json()["detail"]

    def test_cycle(self, client):
        body = {"kind": "poset", "n": 2, "covers": [[0, 1], [1, 0]]}
        assert client.post("/api/v1/classify", json=body).status_code == 400

    def test_cap(self, client):
        resp = client.post("/api/v1/classify", json=_antichain(21))
        assert resp.status_code == 413

    def test_bad_edge_order(self, client):
        resp = client.post("/api/v1/classify", params={"edge_order": "sideways"}, json=_antichain(2))
        assert resp.status_code == 422


class TestCatalogEndpoints:
    def test_lists(self, client):
        data = client.get("/api/v1/catalog").json()
        assert [entry["id"] for entry in data["lists"]] == ["I", "II", "III", "IV"]

    def test_members(self, client):
        data = client.get("/api/v1/catalog/I", params={"bound": 4}).json()
        assert data["name"] == "Dynkin schemes"
        assert len(data["members"]) == 13

    def test_unknown_list(self, client):
        assert client.get("/api/v1/catalog/V").status_code == 404
