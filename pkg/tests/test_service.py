from __future__ import annotations

import json
import threading
from http.client import HTTPConnection

import pytest

from sunlab.geometry import Condition, generate_schedule, schedule_from_dict
from sunlab.report import analyze_paths
from sunlab.service import make_server
from sunlab.session import serialize, to_dict
from sunlab.simulator import make_profile, preset, simulate_session


@pytest.fixture()
def server(tmp_path):
    srv = make_server(0, data_dir=tmp_path / "data", static_dir=tmp_path / "static")
    thread = threading.Thread(target=srv.serve_forever, daemon=True)
    thread.start()
    yield srv, tmp_path
    srv.shutdown()
    srv.server_close()


def _request(srv, method, path, body=None):
    conn = HTTPConnection("127.0.0.1", srv.server_address[1], timeout=5)
    conn.request(method, path, body=body)
    resp = conn.getresponse()
    data = resp.read()
    conn.close()
    return resp.status, data


def test_health(server):
    srv, _ = server
    status, data = _request(srv, "GET", "/api/v1/health")
    assert status == 200
    assert json.loads(data) == {"status": "ok"}


def test_schedule_endpoint_matches_library(server):
    srv, _ = server
    status, data = _request(srv, "GET", "/api/v1/schedule?condition=sp-simpvl&seed=7")
    assert status == 200
    fetched = schedule_from_dict(json.loads(data))
    assert fetched == generate_schedule(Condition.SP_SIMPVL, 7)


def test_schedule_rejects_bad_condition(server):
    srv, _ = server
    status, data = _request(srv, "GET", "/api/v1/schedule?condition=warp&seed=7")
    assert status == 400
    assert "warp" in json.loads(data)["error"]


def test_settings_payload(server):
    srv, _ = server
    status, data = _request(srv, "GET", "/api/v1/settings")
    assert status == 200
    settings = json.loads(data)
    assert settings["ray_config"]["num_rays"] == 128
    assert settings["clip"]["moving_area_radius_deg"] == 15.0
    assert settings["gain"]["dpi"] == pytest.approx(762.0, abs=0.5)
    assert settings["simpvl_aperture_radius_deg"] == 1.5


def test_session_upload_round_trip(server):
    srv, tmp = server
    agent = preset("sp-simpvl", seed=4)
    log = simulate_session(agent, generate_schedule(Condition.SP_SIMPVL, 6),
                           profile=make_profile(agent, 0))
    body = serialize(log)
    status, data = _request(srv, "POST", "/api/v1/sessions", body=body)
    assert status == 201
    stored_name = json.loads(data)["stored"]
    stored = tmp / "data" / stored_name
    assert stored.read_bytes() == body  # bit-exact persistence

    # the stored session flows straight into analysis
    bundle = analyze_paths([tmp / "data"])
    assert bundle["n_sessions"] == 1
    assert bundle["n_trials"] == 24


def test_invalid_session_rejected_with_path(server):
    srv, tmp = server
    agent = preset("sp-simpvl", seed=4)
    log = simulate_session(agent, generate_schedule(Condition.SP_SIMPVL, 6),
                           profile=make_profile(agent, 0))
    doc = to_dict(log)
    doc["trials"][0]["click_events"][-1]["pos"] = [0.9, 0.0]
    status, data = _request(srv, "POST", "/api/v1/sessions",
                            body=json.dumps(doc).encode())
    assert status == 422
    payload = json.loads(data)
    assert "click off target" in payload["error"]
    assert payload["path"].startswith("$.trials[0]")
    assert not list((tmp / "data").glob("*.session.json"))


def test_static_assets_served(server):
    srv, tmp = server
    static = tmp / "static"
    static.mkdir(parents=True, exist_ok=True)
    (static / "index.html").write_text("<html>sunlab</html>", encoding="utf-8")
    status, data = _request(srv, "GET", "/")
    assert status == 200 and b"sunlab" in data
    status, _ = _request(srv, "GET", "/../secrets")
    assert status == 404


def test_unknown_endpoint(server):
    srv, _ = server
    status, _ = _request(srv, "POST", "/api/v1/nope")
    assert status == 404
