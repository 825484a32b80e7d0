from pathlib import Path

from fastapi.testclient import TestClient

from fuzzydepth.main import app
from fuzzydepth.runlog import clear_logs

DATA_DIR = Path(__file__).resolve().parents[1] / "data"


def _upload(name: str) -> tuple[str, bytes, str]:
    return (name, (DATA_DIR / name).read_bytes(), "text/csv")


def test_settings_endpoint():
    client = TestClient(app)
    response = client.get("/api/settings")
    assert response.status_code == 200
    assert response.json()["pairs"] == "strict"
    assert response.json()["quadrature"] == 256


def test_depth_endpoint_with_queries():
    client = TestClient(app)
    response = client.post(
        "/api/depth",
        files=[
            ("sample", _upload("two_intervals_sample.csv")),
            ("queries", _upload("two_intervals_queries.csv")),
        ],
    )
    assert response.status_code == 200
    items = response.json()["items"]
    assert [item["label"] for item in items] == ["R_i", "G_i", "R_ii", "G_ii"]
    assert [item["d_mS"] for item in items] == [0.625, 0.625, 0.125, 0.25]
    assert response.json()["median"] == [2.5, 2.5, 3.5, 3.5]


def test_depth_endpoint_csv_and_logs():
    clear_logs()
    client = TestClient(app)
    response = client.post(
        "/api/depth",
        files=[("sample", _upload("trees_chain_synthetic.csv"))],
        data={"format": "csv", "pairs": "with-diagonal"},
    )
    assert response.status_code == 200
    assert response.headers["content-type"].startswith("text/csv")
    assert response.text.splitlines()[0].startswith("label,a,b,c,d,count")
    logs = client.get("/api/depth-logs", params={"limit": 5}).json()["items"]
    assert logs[0]["operation"] == "rank_sample"
    assert "pairs=with-diagonal" in logs[0]["summary"]


def test_bad_upload_is_a_400():
    client = TestClient(app)
    response = client.post(
        "/api/depth",
        files=[("sample", ("bad.csv", b"a,b,c,d\n2,1,3,4\n", "text/csv"))],
    )
    assert response.status_code == 400
    assert "line 2" in response.json()["detail"]


def test_median_endpoint():
    client = TestClient(app)
    response = client.post("/api/median", files=[("sample", _upload("trees_chain_synthetic.csv"))])
    assert response.status_code == 200
    assert response.json()["median"] == [2.1, 2.7, 3.0, 3.2]


def test_simulate_and_plot_endpoints():
    client = TestClient(app)
    simulated = client.post("/api/simulate", data={"n": "40", "seed": "5"})
    assert simulated.status_code == 200
    assert simulated.headers["x-sample-size"] == "40"
    assert len(simulated.text.strip().splitlines()) == 41

    plot = client.post(
        "/api/plot",
        files=[("sample", ("sim.csv", simulated.content, "text/csv"))],
        data={"top": "3", "median": "true"},
    )
    assert plot.status_code == 200
    assert plot.headers["content-type"].startswith("image/svg+xml")
    assert plot.text.count('id="top-') == 3
    assert 'id="median"' in plot.text


def test_simulate_rejects_small_samples():
    client = TestClient(app)
    response = client.post("/api/simulate", data={"n": "1", "seed": "5"})
    assert response.status_code == 400
