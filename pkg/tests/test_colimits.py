import pytest

from fincat import fixtures as fx
from fincat.colimits import (
    colimit,
    colimit_filtered,
    limit,
    quotient_from_pairs,
    quotient_from_relation,
    tensor,
    tensor_commute_check,
    verify_universal_property,
)
from fincat.errors import NotFiltered, RelationNotTransitive
from fincat.setfun import build_set_functor, constant_functor, presheaf, yoneda


def test_quotient_from_pairs_basic():
    carrier = [("a", "x"), ("a", "y"), ("b", "z")]
    Q = quotient_from_pairs(carrier, [(("a", "x"), ("a", "y"))])
    assert Q.num_classes() == 2
    assert Q.class_of("a", "x") == Q.class_of("a", "y")
    assert Q.class_of("b", "z") != Q.class_of("a", "x")


def test_quotient_from_relation_rejects_non_transitive():
    carrier = [("a", "1"), ("a", "2"), ("a", "3")]
    related = {
        (("a", "1"), ("a", "2")),
        (("a", "2"), ("a", "1")),
        (("a", "2"), ("a", "3")),
        (("a", "3"), ("a", "2")),
        (("a", "1"), ("a", "1")),
        (("a", "2"), ("a", "2")),
        (("a", "3"), ("a", "3")),
    }
    with pytest.raises(RelationNotTransitive):
        quotient_from_relation(
            carrier, lambda p, q: (p, q) in related, on_violation=RelationNotTransitive
        )


def test_coequalizer_of_parallel_pair():
    # f, g: a -> b with f = swap, g = id identifies both elements of b
    P = fx.parallel_pair()
    H = build_set_functor(
        P,
        {"a": ["0", "1"], "b": ["0", "1"]},
        {
            "id_a": {"0": "0", "1": "1"},
            "id_b": {"0": "0", "1": "1"},
            "f": {"0": "1", "1": "0"},
            "g": {"0": "0", "1": "1"},
        },
    )
    Q = colimit(H)
    # all four carrier members collapse: a0~b1~... chain through f and g
    assert Q.num_classes() == 1
    assert verify_universal_property(H, Q)


def test_pushout_along_span():
    S = fx.span()
    H = build_set_functor(
        S,
        {"a": ["0", "1"], "b": ["0", "1"], "c": ["0"]},
        {
            "id_a": {"0": "0", "1": "1"},
            "id_b": {"0": "0", "1": "1"},
            "id_c": {"0": "0"},
            "s": {"0": "0"},
            "t": {"0": "0"},
        },
    )
    Q = colimit(H)
    assert Q.num_classes() == 3
    assert verify_universal_property(H, Q)


def test_colimit_of_empty_diagram():
    T = fx.terminal()
    H = build_set_functor(T, {"*": []}, {"id": {}})
    assert colimit(H).num_classes() == 0


def test_filtered_requires_filtered_base():
    S = fx.span()
    H = constant_functor(S, ["u"])
    with pytest.raises(NotFiltered):
        colimit_filtered(H)


def test_filtered_agrees_on_cospan():
    C = fx.cospan()
    H = build_set_functor(
        C,
        {"a": ["0"], "b": ["0"], "c": ["0", "1"]},
        {
            "id_a": {"0": "0"},
            "id_b": {"0": "0"},
            "id_c": {"0": "0", "1": "1"},
            "s": {"0": "0"},
            "t": {"0": "1"},
        },
    )
    assert colimit(H).partition() == colimit_filtered(H).partition()
    assert colimit(H).num_classes() == 2


def test_limit_of_parallel_pair_is_equalizer():
    P = fx.parallel_pair()
    H = build_set_functor(
        P,
        {"a": ["0", "1"], "b": ["0", "1"]},
        {
            "id_a": {"0": "0", "1": "1"},
            "id_b": {"0": "0", "1": "1"},
            "f": {"0": "1", "1": "0"},
            "g": {"0": "0", "1": "1"},
        },
    )
    L = limit(H)
    # families (x_a, x_b) with f(x_a) = g(x_a)... none: swap has no fixed point
    assert len(L.ids) == 0


def test_limit_terminal_is_product_of_one():
    T = fx.terminal()
    H = build_set_functor(T, {"*": ["u", "v"]}, {"id": {"u": "u", "v": "v"}})
    assert len(limit(H).ids) == 2


def test_tensor_with_singleton_is_colimit():
    A = fx.arrow2()
    F = presheaf(
        A,
        {"a": ["x", "y"], "b": ["p"]},
        {"id_a": {"x": "x", "y": "y"}, "id_b": {"p": "p"}, "f": {"p": "x"}},
    )
    P = constant_functor(A, ["*"])
    Q = tensor(F, P)
    assert Q.num_classes() == colimit(F).num_classes()


def test_tensor_commute_on_representables():
    A = fx.arrow2()
    for c in A.objects:
        F = yoneda(A, c)
        P = constant_functor(A, ["*"])
        out = tensor_commute_check(F, P)
        assert out["agrees"]


def test_universal_property_rejects_wrong_quotient():
    A = fx.arrow2()
    # a diagram where both objects collapse to one class
    H = build_set_functor(
        A,
        {"a": ["u"], "b": ["u"]},
        {"id_a": {"u": "u"}, "id_b": {"u": "u"}, "f": {"u": "u"}},
    )
    Q = colimit(H)
    assert verify_universal_property(H, Q)
    # a quotient coarser than the colimit must fail the oracle
    H2 = build_set_functor(
        A,
        {"a": ["u", "v"], "b": ["u", "v"]},
        {
            "id_a": {"u": "u", "v": "v"},
            "id_b": {"u": "u", "v": "v"},
            "f": {"u": "u", "v": "v"},
        },
    )
    Q2 = colimit(H2)
    assert Q2.num_classes() == 2
    collapsed = quotient_from_pairs(
        list(Q2.carrier), [(p, q) for p in Q2.carrier for q in Q2.carrier]
    )
    assert not verify_universal_property(H2, collapsed)
