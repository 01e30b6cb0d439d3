import json

import pytest

from fincat import fixtures as fx
from fincat.core import const_functor, opposite
from fincat.errors import FincatError
from fincat.jsonio import (
    canonical_json,
    dump_category,
    dump_functor,
    dump_profunctor,
    dump_quotient,
    dump_set_functor,
    dump_topology,
    load_category,
    load_functor,
    load_profunctor,
    load_set_functor,
    load_topology,
)
from fincat.adjoint import profunctor_from_functor
from fincat.colimits import colimit
from fincat.setfun import presheaf
from fincat.sites import generate_topology


def test_canonical_json_is_sorted_and_newline_terminated():
    s = canonical_json({"b": 1, "a": [2, 1]})
    assert s.endswith("\n")
    assert s.index('"a"') < s.index('"b"')


def test_category_roundtrip_all_fixtures():
    for make in fx.FIXTURES.values():
        C = make()
        C2 = load_category(json.loads(canonical_json(dump_category(C))))
        assert C2.objects == C.objects
        assert C2.table == C.table


def test_functor_roundtrip():
    F = const_functor(fx.terminal(), fx.arrow2(), "b")
    F2 = load_functor(dump_functor(F))
    assert F2.obj_map == F.obj_map and F2.arr_map == F.arr_map


def test_set_functor_roundtrip_both_variances():
    A = fx.arrow2()
    F = presheaf(
        A,
        {"a": ["x"], "b": ["p", "q"]},
        {"id_a": {"x": "x"}, "id_b": {"p": "p", "q": "q"}, "f": {"p": "x", "q": "x"}},
    )
    raw = dump_set_functor(F, variance="presheaf")
    F2 = load_set_functor(raw)
    assert F2.sets == F.sets and F2.maps == F.maps
    assert F2.base.objects == opposite(A).objects

    raw_cov = dump_set_functor(F)
    F3 = load_set_functor(raw_cov)
    assert F3.sets == F.sets


def test_topology_roundtrip():
    C = fx.poset_ab()
    J = generate_topology(C, {"b": [["f"]]})
    J2 = load_topology(C, dump_topology(J))
    assert J2.covers == J.covers


def test_profunctor_roundtrip():
    P = profunctor_from_functor(const_functor(fx.terminal(), fx.arrow2(), "a"))
    P2 = load_profunctor(dump_profunctor(P))
    assert P2.source.objects == P.source.objects
    assert {c: P2.values[c].sets for c in P2.values} == {
        c: P.values[c].sets for c in P.values
    }


def test_dump_quotient_shape():
    A = fx.arrow2()
    F = presheaf(
        A,
        {"a": ["x"], "b": ["p"]},
        {"id_a": {"x": "x"}, "id_b": {"p": "p"}, "f": {"p": "x"}},
    )
    out = dump_quotient(colimit(F))
    assert set(out) == {"classes", "injections"}
    assert len(out["classes"]) == 1


def test_load_rejects_invalid():
    with pytest.raises(FincatError):
        load_category({"objects": ["a"], "arrows": [], "identity": {}, "compose": []})
