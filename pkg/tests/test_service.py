import json
import warnings

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient

from fincat import fixtures as fx
from fincat.adjoint import profunctor_from_functor
from fincat.core import const_functor
from fincat.jsonio import (
    dump_category,
    dump_functor,
    dump_profunctor,
    dump_set_functor,
)
from fincat.service import app
from fincat.setfun import build_set_functor, presheaf


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


@pytest.fixture(scope="module")
def payloads():
    A = fx.arrow2()
    T = fx.terminal()
    F = presheaf(
        A,
        {"a": ["x"], "b": ["p", "q"]},
        {"id_a": {"x": "x"}, "id_b": {"p": "p", "q": "q"}, "f": {"p": "x", "q": "x"}},
    )
    D = build_set_functor(
        A,
        {"a": ["0"], "b": ["0", "1"]},
        {"id_a": {"0": "0"}, "id_b": {"0": "0", "1": "1"}, "f": {"0": "1"}},
    )
    FT = build_set_functor(T, {"*": ["u"]}, {"id": {"u": "u"}})
    return {
        "arrow2": dump_category(A),
        "term": dump_category(T),
        "idem": dump_category(fx.idem()),
        "F": dump_set_functor(F),
        "D": dump_set_functor(D),
        "FT": dump_set_functor(FT),
        "constb": dump_functor(const_functor(T, A, "b")),
        "P": dump_profunctor(profunctor_from_functor(const_functor(T, A, "a"))),
    }


def test_health(client):
    assert client.get("/health").json() == {"status": "ok"}


def test_cat_validate(client, payloads):
    r = client.post("/cat/validate", json=payloads["arrow2"])
    assert r.status_code == 200 and r.json()["valid"]


def test_cat_validate_invalid_is_422(client):
    bad = {"objects": ["a"], "arrows": [], "identity": {"a": "id_a"}, "compose": []}
    r = client.post("/cat/validate", json=bad)
    assert r.status_code == 422
    assert r.json()["detail"]["error"] == "MissingIdentity"


def test_colim_and_flat(client, payloads):
    r = client.post("/colim/compute", json=payloads["F"])
    assert r.status_code == 200 and "quotient" in r.json()
    r = client.post("/flat/check", json=payloads["F"])
    assert r.status_code == 200 and r.json()["flat"] is False


def test_colim_universal(client, payloads):
    r = client.post("/colim/universal", json=payloads["D"])
    assert r.status_code == 200 and r.json()["universal"]


def test_kan_lan(client, payloads):
    r = client.post("/kan/lan", json={"functor": payloads["constb"], "diagram": payloads["FT"]})
    assert r.status_code == 200
    sets = r.json()["set_functor"]["sets"]
    assert {o: len(v) for o, v in sets.items()} == {"a": 0, "b": 1}


def test_final_theorem(client, payloads):
    r = client.post(
        "/final/theorem", json={"functor": payloads["constb"], "diagram": payloads["D"]}
    )
    assert r.status_code == 200 and r.json()["colimits_agree"]


def test_adjoint_bijection(client, payloads):
    r = client.post(
        "/adjoint/bijection",
        json={"profunctor": payloads["P"], "F": payloads["FT"], "G": payloads["D"]},
    )
    assert r.status_code == 200
    body = r.json()
    assert body["left_size"] == body["right_size"]


def test_site_generate(client, payloads):
    r = client.post(
        "/site/generate",
        json={"category": payloads["arrow2"], "topology": {"covers": {"b": [["f"]]}}},
    )
    assert r.status_code == 200
    assert "topology" in r.json()


def test_karoubi_envelope(client, payloads):
    r = client.post("/karoubi/envelope", json=payloads["idem"])
    assert r.status_code == 200
    assert len(r.json()["category"]["objects"]) == 2


def test_equiv_check(client, payloads):
    r = client.post(
        "/equiv/check", json={"first": payloads["term"], "second": payloads["term"]}
    )
    assert r.status_code == 200 and r.json()["equivalent"]


def test_selftest_endpoint(client):
    r = client.post("/selftest", json={"seed": 2, "trials": 4})
    assert r.status_code == 200
    assert r.json()["tensor_commutation"] == "ok"
