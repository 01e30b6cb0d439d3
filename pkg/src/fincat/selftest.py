"""Built-in randomized self-test suites.

Each suite exercises an identity the library promises unconditionally: the
three constructions of the tensor product agree, the adjunction bijection is
mutually inverse with both triangle identities, and the two flatness criteria
coincide. Failures indicate implementation bugs, never bad inputs.
"""

from __future__ import annotations

import random

from .adjoint import adjunction_bijection, verify_triangles
from .colimits import tensor_commute_check
from .errors import SelfTestFailure
from .flatkan import is_flat, is_flat_via_elements
from .randgen import (
    random_category,
    random_presheaf,
    random_profunctor,
    random_set_functor,
)


def run_selftest(seed: int = 0, trials: int = 20) -> dict:
    """Run all three suites; raises SelfTestFailure on the first failure."""
    rng = random.Random(seed)
    report = {"seed": seed, "trials": trials}

    for t in range(trials):
        C = random_category(rng, max_objects=3, max_arrows=6)
        F = random_presheaf(rng, C, max_elems=2)
        P = random_set_functor(rng, C, max_elems=2)
        out = tensor_commute_check(F, P)
        if not out["agrees"]:
            raise SelfTestFailure(f"tensor commutation failed on trial {t}")
    report["tensor_commutation"] = "ok"

    for t in range(trials):
        C = random_category(rng, max_objects=3, max_arrows=6)
        F = random_presheaf(rng, C, max_elems=2)
        if is_flat(F)[0] != is_flat_via_elements(F):
            raise SelfTestFailure(f"flatness criteria disagree on trial {t}")
    report["flat_agreement"] = "ok"

    adj_trials = max(1, trials // 4)
    for t in range(adj_trials):
        C = random_category(rng, max_objects=2, max_arrows=4)
        D = random_category(rng, max_objects=2, max_arrows=4)
        P = random_profunctor(rng, C, D, max_elems=1)
        F = random_set_functor(rng, D, max_elems=1)
        G = random_set_functor(rng, C, max_elems=1)
        data = adjunction_bijection(P, F, G)
        if len(data.left) != len(data.right):
            raise SelfTestFailure(f"adjunction hom-sets differ on trial {t}")
        if not verify_triangles(P, F, G):
            raise SelfTestFailure(f"triangle identity failed on trial {t}")
    report["adjunction"] = "ok"
    return report
