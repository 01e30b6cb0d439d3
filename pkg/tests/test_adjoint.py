from fincat import fixtures as fx
from fincat.adjoint import (
    adjunction_bijection,
    counit,
    profunctor_from_functor,
    r,
    tilde,
    unit,
    unit_monic_check,
    verify_triangles,
)
from fincat.colimits import precompose
from fincat.core import const_functor
from fincat.flatkan import lan
from fincat.setfun import build_set_functor

from conftest import find_natural_iso


def setup_const_case():
    A = fx.arrow2()
    T = fx.terminal()
    f = const_functor(T, A, "a")
    P = profunctor_from_functor(f)
    F = build_set_functor(T, {"*": ["u", "v"]}, {"id": {"u": "u", "v": "v"}})
    G = build_set_functor(
        A,
        {"a": ["0"], "b": ["0", "1"]},
        {"id_a": {"0": "0"}, "id_b": {"0": "0", "1": "1"}, "f": {"0": "1"}},
    )
    return A, T, f, P, F, G


def test_profunctor_values_are_homs():
    A, T, f, P, F, G = setup_const_case()
    assert set(P.values["a"].sets["*"]) == {"id_a"}
    assert set(P.values["b"].sets["*"]) == {"f"}


def test_tilde_matches_lan():
    A, T, f, P, F, G = setup_const_case()
    L = lan(f, F)
    TF = tilde(P, F)
    assert find_natural_iso(TF, L) is not None


def test_r_matches_restriction():
    A, T, f, P, F, G = setup_const_case()
    R = r(P, G)
    restricted = precompose(G, f)
    assert find_natural_iso(R, restricted) is not None


def test_bijection_triangles_unit_counit():
    A, T, f, P, F, G = setup_const_case()
    data = adjunction_bijection(P, F, G)
    assert len(data.left) == len(data.right)
    assert dict(data.tau) and dict(data.chi)
    eta = unit(P, F)
    eps = counit(P, G)
    assert eta.components and eps.components
    assert verify_triangles(P, F, G)


def test_unit_monic_agreement():
    A, T, f, P, F, G = setup_const_case()
    for b in T.objects:
        assert isinstance(unit_monic_check(P, F, b), bool)
