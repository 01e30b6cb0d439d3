import pytest

from fincat import fixtures as fx
from fincat.core import (
    build_functor,
    const_functor,
    full_subcategory,
    identity_functor,
    opposite,
)
from fincat.errors import FlatnessRequired, NotAnEmbedding, NotFinal
from fincat.flatkan import (
    check_embedding,
    check_finality_theorem,
    flat_extend,
    flat_extend_quotient,
    is_final,
    is_flat,
    is_flat_via_elements,
    lan,
    ran,
    representable_extension_iso,
)
from fincat.setfun import build_set_functor, presheaf, yoneda


def test_representables_are_flat():
    for make in fx.FIXTURES.values():
        C = make()
        for c in C.objects:
            F = yoneda(C, c)
            assert is_flat(F)[0]
            assert is_flat_via_elements(F)


def test_empty_presheaf_not_flat():
    T = fx.terminal()
    F = presheaf(T, {"*": []}, {"id": {}})
    ok, cert = is_flat(F)
    assert not ok and cert["condition"] == "i"
    assert not is_flat_via_elements(F)


def test_two_points_not_flat():
    T = fx.terminal()
    F = presheaf(T, {"*": ["u", "v"]}, {"id": {"u": "u", "v": "v"}})
    ok, cert = is_flat(F)
    assert not ok and cert["condition"] == "ii"


def test_parallel_pair_counterexample():
    P = fx.parallel_pair()
    # f and g act identically on p, but only id_b could coequalize them
    F = presheaf(
        P,
        {"a": ["x"], "b": ["p"]},
        {
            "id_a": {"x": "x"},
            "id_b": {"p": "p"},
            "f": {"p": "x"},
            "g": {"p": "x"},
        },
    )
    ok, cert = is_flat(F)
    assert not ok and cert["condition"] == "iii"
    assert not is_flat_via_elements(F)


def test_separating_parallel_action_is_flat():
    P = fx.parallel_pair()
    # f and g act differently, so the elements category has no parallel pair
    F = presheaf(
        P,
        {"a": ["x", "y"], "b": ["p"]},
        {
            "id_a": {"x": "x", "y": "y"},
            "id_b": {"p": "p"},
            "f": {"p": "x"},
            "g": {"p": "y"},
        },
    )
    assert is_flat(F)[0]
    assert is_flat_via_elements(F)


def test_lan_along_const_functors():
    A = fx.arrow2()
    T = fx.terminal()
    F = build_set_functor(T, {"*": ["u", "v"]}, {"id": {"u": "u", "v": "v"}})
    La = lan(const_functor(T, A, "a"), F)
    assert {c: len(La.sets[c]) for c in A.objects} == {"a": 2, "b": 2}
    Lb = lan(const_functor(T, A, "b"), F)
    assert {c: len(Lb.sets[c]) for c in A.objects} == {"a": 0, "b": 2}


def test_lan_along_identity_is_identity():
    A = fx.arrow2()
    F = build_set_functor(
        A,
        {"a": ["0"], "b": ["0", "1"]},
        {"id_a": {"0": "0"}, "id_b": {"0": "0", "1": "1"}, "f": {"0": "1"}},
    )
    L = lan(identity_functor(A), F)
    assert {c: len(L.sets[c]) for c in A.objects} == {"a": 1, "b": 2}


def test_ran_along_const_functors():
    # limit over (c ↓ const): nonempty iff Hom(c, image) nonempty
    A = fx.arrow2()
    T = fx.terminal()
    F = build_set_functor(T, {"*": ["u", "v"]}, {"id": {"u": "u", "v": "v"}})
    Ra = ran(const_functor(T, A, "a"), F)
    assert {c: len(Ra.sets[c]) for c in A.objects} == {"a": 2, "b": 1}
    Rb = ran(const_functor(T, A, "b"), F)
    assert {c: len(Rb.sets[c]) for c in A.objects} == {"a": 2, "b": 2}


def test_check_embedding():
    A = fx.arrow2()
    T = fx.terminal()
    check_embedding(identity_functor(A))
    # the point onto a single object is full and injective
    check_embedding(const_functor(T, A, "a"))
    D2 = fx.discrete(2)
    not_full = build_functor(
        D2, A, {"d0": "a", "d1": "b"}, {"id_d0": "id_a", "id_d1": "id_b"}
    )
    with pytest.raises(NotAnEmbedding):
        check_embedding(not_full)
    not_injective = build_functor(
        D2, A, {"d0": "a", "d1": "a"}, {"id_d0": "id_a", "id_d1": "id_a"}
    )
    with pytest.raises(NotAnEmbedding):
        check_embedding(not_injective)


def test_flat_extend_matches_quotient_everywhere():
    A = fx.arrow2()
    sub, incl = full_subcategory(A, ["a"])
    F = build_set_functor(opposite(sub), {"a": ["s"]}, {"id_a": {"s": "s"}})
    ext = flat_extend(incl, F)
    for c in A.objects:
        assert flat_extend_quotient(incl, F, c).partition() == ext.quotients[c].partition()
    # chi is injective pointwise
    for d, comp in ext.chi.items():
        assert len(set(comp.values())) == len(comp)


def test_flat_extend_requires_flat():
    A = fx.arrow2()
    sub, incl = full_subcategory(A, ["a"])
    F = build_set_functor(
        opposite(sub), {"a": ["s", "t"]}, {"id_a": {"s": "s", "t": "t"}}
    )
    with pytest.raises(FlatnessRequired):
        flat_extend_quotient(incl, F, "a")


def test_representables_extend_to_representables():
    A = fx.arrow2()
    j = identity_functor(A)
    for d in A.objects:
        ext = flat_extend(j, yoneda(A, d))
        iso = representable_extension_iso(j, d, ext)
        for c in A.objects:
            assert len(iso[c]) == len(ext.functor.sets[c])


def test_finality_verdicts():
    A = fx.arrow2()
    T = fx.terminal()
    ok, _ = is_final(const_functor(T, A, "b"))
    assert ok
    ok, cert = is_final(const_functor(T, A, "a"))
    assert not ok and cert == {"object": "b", "reason": "empty"}


def test_finality_theorem_and_guard():
    A = fx.arrow2()
    T = fx.terminal()
    i = const_functor(T, A, "b")
    D = build_set_functor(
        A,
        {"a": ["0", "1"], "b": ["0", "1"]},
        {
            "id_a": {"0": "0", "1": "1"},
            "id_b": {"0": "0", "1": "1"},
            "f": {"0": "0", "1": "0"},
        },
    )
    assert check_finality_theorem(i, D)
    with pytest.raises(NotFinal):
        check_finality_theorem(const_functor(T, A, "a"), D)
