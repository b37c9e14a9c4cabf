from fastapi.testclient import TestClient

from main import app

client = TestClient(app)

EXAMPLE = ["10111", "10001", "11010", "00111"]


def test_root():
    response = client.get("/")
    assert response.status_code == 200
    assert "running" in response.json()["message"]


def test_rank():
    response = client.post("/rank", json={"rows": EXAMPLE})
    assert response.status_code == 200
    assert response.json() == {"rank": 4}


def test_decompose_example():
    for variant in ("block", "recursive"):
        body = client.post("/decompose", json={"rows": EXAMPLE, "variant": variant}).json()
        assert body["rank"] == 4
        assert sorted(body["permutation"]) == [0, 1, 2, 3]
        assert len(body["L"]) == 4 and all(len(row) == 4 for row in body["L"])
        assert len(body["U"]) == 4 and all(len(row) == 5 for row in body["U"])
        assert body["blockRanks"] == [4]


def test_multiply():
    response = client.post("/multiply", json={"left": ["11", "01"], "right": ["10", "11"]})
    assert response.json() == {"rows": ["01", "11"]}


def test_multiply_shape_mismatch():
    response = client.post("/multiply", json={"left": ["11"], "right": ["1"]})
    assert response.status_code == 422


def test_nullspace():
    body = client.post("/nullspace", json={"rows": ["110", "011"]}).json()
    assert body == {"basis": ["111"]}


def test_solve():
    body = client.post("/solve", json={"rows": ["110", "011", "001"], "rhs": "001"}).json()
    assert body == {"solution": "111", "consistent": True}
    body = client.post("/solve", json={"rows": ["10", "10"], "rhs": "10"}).json()
    assert body == {"solution": None, "consistent": False}


def test_bad_rows():
    assert client.post("/rank", json={"rows": ["101", "1"]}).status_code == 422
    assert client.post("/rank", json={"rows": ["1a1"]}).status_code == 422
