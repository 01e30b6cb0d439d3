"""Light property-based checks driving the random generators through
hypothesis-chosen seeds."""

import random

from hypothesis import given, settings, strategies as st

from fincat.colimits import colimit, tensor_commute_check, verify_universal_property
from fincat.core import is_filtered, opposite
from fincat.flatkan import is_flat, is_flat_via_elements
from fincat.karoubi import idempotents, is_cauchy_complete, karoubi_envelope
from fincat.randgen import (
    random_category,
    random_filtered_category,
    random_flat_presheaf,
    random_presheaf,
    random_set_functor,
)

seeds = st.integers(min_value=0, max_value=2**31)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_random_category_opposite_involution(seed):
    C = random_category(random.Random(seed))
    D = opposite(opposite(C))
    assert D.objects == C.objects and D.table == C.table


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_random_colimit_is_universal(seed):
    rng = random.Random(seed)
    C = random_category(rng, max_objects=3, max_arrows=6)
    H = random_set_functor(rng, C, max_elems=2)
    assert verify_universal_property(H, colimit(H))


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_random_flatness_criteria_agree(seed):
    rng = random.Random(seed)
    C = random_category(rng, max_objects=3, max_arrows=6)
    F = random_presheaf(rng, C, max_elems=2)
    assert is_flat(F)[0] == is_flat_via_elements(F)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_random_flat_presheaves_are_flat(seed):
    rng = random.Random(seed)
    C = random_category(rng, max_objects=3, max_arrows=6)
    F = random_flat_presheaf(rng, C)
    assert is_flat(F)[0]


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_random_tensor_commutes(seed):
    rng = random.Random(seed)
    C = random_category(rng, max_objects=3, max_arrows=6)
    F = random_presheaf(rng, C, max_elems=2)
    P = random_set_functor(rng, C, max_elems=2)
    assert tensor_commute_check(F, P)["agrees"]


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_random_filtered_category_is_filtered(seed):
    C = random_filtered_category(random.Random(seed))
    assert is_filtered(C)


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_random_karoubi_envelope_complete(seed):
    C = random_category(random.Random(seed), max_objects=3, max_arrows=6)
    env, _ = karoubi_envelope(C)
    assert is_cauchy_complete(env)
    assert len(env.objects) == len(idempotents(C))
