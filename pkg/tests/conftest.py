"""Shared helpers for the test suite: exhaustive diagram enumeration and
natural-isomorphism search, both used as independent oracles."""

from __future__ import annotations

import itertools
import random

import pytest

from fincat.core import FinCat
from fincat.errors import InvalidSetFunctor
from fincat.setfun import SetFunctor, build_set_functor, nat_transformations


def all_diagrams(C: FinCat, max_size: int = 2, min_size: int = 0):
    """Yield every SetFunctor on C with value sets of size min_size..max_size.

    Enumerates all object-set assignments and all arrow-map assignments,
    keeping only the functorial ones.
    """
    sizes = range(min_size, max_size + 1)
    alphabet = [str(i) for i in range(max_size)]
    objects = list(C.objects)
    non_id = [a for a in C.arrows if not C.is_identity(a.id)]
    for choice in itertools.product(sizes, repeat=len(objects)):
        sets = {o: alphabet[:n] for o, n in zip(objects, choice)}
        if any(sets[a.dom] and not sets[a.cod] for a in non_id):
            continue
        per_arrow = []
        for a in non_id:
            dom, cod = sets[a.dom], sets[a.cod]
            fns = [dict(zip(dom, img)) for img in itertools.product(cod, repeat=len(dom))]
            per_arrow.append(fns or [{}])
        for combo in itertools.product(*per_arrow):
            maps = {C.identity[o]: {x: x for x in sets[o]} for o in objects}
            maps.update({a.id: m for a, m in zip(non_id, combo)})
            try:
                yield build_set_functor(C, sets, maps)
            except InvalidSetFunctor:
                continue


def find_natural_iso(F: SetFunctor, G: SetFunctor, budget: int = 200_000):
    """Return a natural transformation F -> G that is a pointwise bijection,
    or None when no such transformation exists."""
    if any(len(F.sets[c]) != len(G.sets[c]) for c in F.base.objects):
        return None
    for alpha in nat_transformations(F, G, budget):
        if all(
            len(set(alpha.components[c].values())) == len(F.sets[c])
            for c in F.base.objects
        ):
            return alpha
    return None


@pytest.fixture
def rng():
    return random.Random(20260823)
