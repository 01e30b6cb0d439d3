import json

import pytest

from fincat import fixtures as fx
from fincat.cli import main
from fincat.core import const_functor
from fincat.jsonio import (
    canonical_json,
    dump_category,
    dump_functor,
    dump_profunctor,
    dump_set_functor,
)
from fincat.adjoint import profunctor_from_functor
from fincat.setfun import build_set_functor, presheaf


@pytest.fixture
def files(tmp_path):
    A = fx.arrow2()
    T = fx.terminal()
    out = {}

    def write(name, payload):
        p = tmp_path / name
        p.write_text(canonical_json(payload))
        out[name] = str(p)

    write("arrow2.json", dump_category(A))
    write("term.json", dump_category(T))
    write("span.json", dump_category(fx.span()))
    write("idem.json", dump_category(fx.idem()))
    F = presheaf(
        A,
        {"a": ["x"], "b": ["p", "q"]},
        {"id_a": {"x": "x"}, "id_b": {"p": "p", "q": "q"}, "f": {"p": "x", "q": "x"}},
    )
    write("F.json", dump_set_functor(F))
    write("constb.json", dump_functor(const_functor(T, A, "b")))
    write("consta.json", dump_functor(const_functor(T, A, "a")))
    D = build_set_functor(
        A,
        {"a": ["0"], "b": ["0", "1"]},
        {"id_a": {"0": "0"}, "id_b": {"0": "0", "1": "1"}, "f": {"0": "1"}},
    )
    write("D.json", dump_set_functor(D))
    P = profunctor_from_functor(const_functor(T, A, "a"))
    write("P.json", dump_profunctor(P))
    FT = build_set_functor(T, {"*": ["u"]}, {"id": {"u": "u"}})
    write("FT.json", dump_set_functor(FT))
    write("coverage.json", {"covers": {"b": [["f"]]}})
    return out


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_cat_validate(files, capsys):
    code, out = run(capsys, "cat", "validate", files["arrow2.json"])
    assert code == 0 and "valid" in out


def test_cat_filtered_negative_exit(files, capsys):
    code, out = run(capsys, "cat", "filtered", files["span.json"])
    assert code == 1


def test_colim_compute_json_deterministic(files, capsys):
    code1, out1 = run(capsys, "colim", "compute", files["F.json"], "--json")
    code2, out2 = run(capsys, "colim", "compute", files["F.json"], "--json")
    assert code1 == code2 == 0
    assert out1 == out2
    json.loads(out1)


def test_flat_check_negative(files, capsys):
    code, out = run(capsys, "flat", "check", files["F.json"])
    assert code == 1


def test_kan_lan_and_ran(files, capsys):
    code, out = run(capsys, "kan", "lan", files["constb.json"], files["FT.json"], "--json")
    assert code == 0
    payload = json.loads(out)["set_functor"]
    assert {o: len(v) for o, v in payload["sets"].items()} == {"a": 0, "b": 1}
    code, out = run(capsys, "kan", "ran", files["constb.json"], files["FT.json"], "--json")
    assert code == 0


def test_final_check(files, capsys):
    code, _ = run(capsys, "final", "check", files["constb.json"])
    assert code == 0
    code, _ = run(capsys, "final", "check", files["consta.json"])
    assert code == 1


def test_final_theorem(files, capsys):
    code, out = run(capsys, "final", "theorem", files["constb.json"], files["D.json"], "--json")
    assert code == 0 and json.loads(out)["colimits_agree"]


def test_adjoint_bijection(files, capsys):
    code, out = run(
        capsys, "adjoint", "bijection", files["P.json"], files["FT.json"], files["D.json"], "--json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["left_size"] == payload["right_size"]


def test_site_generate_and_rigid(files, capsys, tmp_path):
    code, out = run(
        capsys, "site", "generate", files["arrow2.json"], files["coverage.json"], "--json"
    )
    assert code == 0
    topo = json.loads(out)["topology"]
    tpath = tmp_path / "topo.json"
    tpath.write_text(json.dumps(topo))
    code, out = run(capsys, "site", "rigid", files["arrow2.json"], str(tpath), "--json")
    assert code == 0 and json.loads(out)["rigid"]


def test_karoubi_envelope(files, capsys):
    code, out = run(capsys, "karoubi", "envelope", files["idem.json"], "--json")
    assert code == 0
    assert len(json.loads(out)["category"]["objects"]) == 2
    code, _ = run(capsys, "karoubi", "complete", files["idem.json"])
    assert code == 1


def test_equiv_check(files, capsys):
    code, out = run(capsys, "equiv", "check", files["term.json"], files["term.json"], "--json")
    assert code == 0 and json.loads(out)["equivalent"]


def test_selftest(capsys):
    code, out = run(capsys, "--selftest", "--seed", "4")
    assert code == 0


def test_missing_file_is_input_error(capsys):
    code, _ = run(capsys, "cat", "validate", "/nonexistent/file.json")
    assert code == 2


def test_bad_verb_is_usage_error(files, capsys):
    code, _ = run(capsys, "cat", "frobnicate", files["arrow2.json"])
    assert code == 2


def test_stdin_input(files, capsys, monkeypatch):
    import io

    payload = open(files["arrow2.json"]).read()
    monkeypatch.setattr("sys.stdin", io.StringIO(payload))
    code, out = run(capsys, "cat", "validate", "@-")
    assert code == 0


def test_budget_exit_code(files, capsys):
    code, _ = run(
        capsys, "equiv", "check", files["arrow2.json"], files["arrow2.json"], "--budget", "1"
    )
    assert code == 3
