import pytest

from fincat import fixtures as fx
from fincat.errors import SearchBudgetExceeded
from fincat.karoubi import (
    enumerate_functors,
    equivalent_categories,
    idempotents,
    is_cauchy_complete,
    karoubi_envelope,
)


def test_idempotents_of_idem():
    out = idempotents(fx.idem())
    assert {(o, a) for o, a, _ in out} == {("x", "id"), ("x", "e")}


def test_envelope_of_idem():
    env, embed = karoubi_envelope(fx.idem())
    assert len(env.objects) == 2
    assert len(env.arrows) == 5
    assert is_cauchy_complete(env)
    assert not is_cauchy_complete(fx.idem())
    # embedding lands on the identity-idempotent object
    assert set(embed.obj_map.values()) <= set(env.objects)


def test_envelope_is_identity_on_complete_categories():
    for make in (fx.terminal, fx.arrow2, fx.poset_ab, fx.z2):
        C = make()
        assert is_cauchy_complete(C)
        env, _ = karoubi_envelope(C)
        assert len(env.objects) == len(C.objects)
        assert equivalent_categories(C, env) is not None


def test_envelope_object_count_is_idempotent_count():
    for make in fx.FIXTURES.values():
        C = make()
        env, _ = karoubi_envelope(C)
        assert len(env.objects) == len(idempotents(C))


def test_double_envelope_equivalence():
    for make in (fx.idem, fx.arrow2, fx.z2, fx.parallel_pair):
        C = make()
        env, _ = karoubi_envelope(C)
        env2, _ = karoubi_envelope(env)
        assert equivalent_categories(env, env2) is not None


def test_no_equivalence_when_shapes_differ():
    env, _ = karoubi_envelope(fx.idem())
    assert equivalent_categories(env, fx.discrete(2)) is None
    assert equivalent_categories(fx.terminal(), fx.discrete(2)) is None


def test_enumerate_functors_counts():
    A = fx.arrow2()
    T = fx.terminal()
    # functors TERM -> ARROW2: one per object
    assert len(list(enumerate_functors(T, A, 1000))) == 2
    # functors ARROW2 -> ARROW2: pick images of a, b with Hom nonempty
    fs = list(enumerate_functors(A, A, 1000))
    assert len(fs) == 3  # (a,a) id image, (a,b), (b,b)


def test_budget_exceeded():
    P = fx.parallel_pair()
    with pytest.raises(SearchBudgetExceeded) as e:
        list(enumerate_functors(P, P, 1))
    assert e.value.budget == 1
    assert 0 < e.value.explored <= 1
