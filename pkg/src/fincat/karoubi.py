"""Idempotent (Karoubi) completion and brute-force equivalence checking.

The envelope of C has one object per idempotent of C; the embedding at the
identity idempotents is full and faithful, and every idempotent of the
envelope splits, which makes the envelope the Cauchy completion at this
finite scale.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

from .core import FinCat, FinFunctor, build_category, build_functor, pair_id
from .errors import SearchBudgetExceeded, SelfTestFailure

DEFAULT_BUDGET = 10_000_000


def idempotents(C: FinCat) -> list[tuple[str, str, bool]]:
    """All (object, e, is_identity) with e: c→c and e∘e = e."""
    out = []
    for c in C.objects:
        for e in C.hom(c, c):
            if C.compose(e, e) == e:
                out.append((c, e, C.is_identity(e)))
    return out


def karoubi_envelope(C: FinCat) -> tuple[FinCat, FinFunctor]:
    """Split every idempotent: objects (c, e), arrows f with e'∘f = f = f∘e."""
    idems = [(c, e) for c, e, _ in idempotents(C)]
    objects = [pair_id(c, e) for c, e in idems]
    arrows: list[tuple[str, str, str]] = []
    parts: dict[str, tuple[str, str, str]] = {}
    for c, e in idems:
        for d, e2 in idems:
            for f in C.hom(c, d):
                if C.compose(e2, f) == f and C.compose(f, e) == f:
                    aid = pair_id(f, e, e2)
                    arrows.append((aid, pair_id(c, e), pair_id(d, e2)))
                    parts[aid] = (f, e, e2)
    identity = {pair_id(c, e): pair_id(e, e, e) for c, e in idems}
    compose = {}
    for gid, (g, e2a, e3) in parts.items():
        for fid, (f, e, e2b) in parts.items():
            if e2a == e2b and parts[fid][2] == parts[gid][1]:
                compose[(gid, fid)] = pair_id(C.compose(g, f), e, e3)
    env = build_category(objects, arrows, identity, compose, infer_units=False)
    embed = build_functor(
        C,
        env,
        {c: pair_id(c, C.identity[c]) for c in C.objects},
        {a.id: pair_id(a.id, C.identity[a.dom], C.identity[a.cod]) for a in C.arrows},
    )
    return env, embed


def is_cauchy_complete(C: FinCat) -> bool:
    """Every idempotent must split: e = s∘r with r∘s an identity."""
    for c, e, is_id in idempotents(C):
        if is_id:
            continue
        if not any(
            C.compose(s, r) == e and C.is_identity(C.compose(r, s))
            for d in C.objects
            for r in C.hom(c, d)
            for s in C.hom(d, c)
        ):
            return False
    return True


# -- equivalence search --------------------------------------------------------


def isos(C: FinCat, x: str, y: str) -> list[str]:
    return [
        f
        for f in C.hom(x, y)
        if any(
            C.is_identity(C.compose(g, f)) and C.is_identity(C.compose(f, g))
            for g in C.hom(y, x)
        )
    ]


def _inverse(C: FinCat, f: str) -> str:
    for g in C.hom(C.cod(f), C.dom(f)):
        if C.is_identity(C.compose(g, f)) and C.is_identity(C.compose(f, g)):
            return g
    raise SelfTestFailure(f"arrow {f!r} has no inverse")


@dataclass(frozen=True)
class EquivalenceResult:
    forward: FinFunctor
    backward: FinFunctor
    #: object of C -> iso c → backward(forward(c))
    unit: Mapping[str, str]
    #: object of D -> iso forward(backward(d)) → d
    counit: Mapping[str, str]


def enumerate_functors(C: FinCat, D: FinCat, budget: int):
    """Yield every functor C→D, counting complete candidates against the budget."""
    non_id = [a for a in C.arrows if not C.is_identity(a.id)]
    obj_choices = list(itertools.product(D.objects, repeat=len(C.objects)))
    total = 0
    per_obj_counts = []
    for objs in obj_choices:
        om = dict(zip(C.objects, objs))
        n = 1
        for a in non_id:
            n *= max(1, len(D.hom(om[a.dom], om[a.cod])))
        per_obj_counts.append(n)
        total += n
    explored = 0
    for objs, count in zip(obj_choices, per_obj_counts):
        om = dict(zip(C.objects, objs))
        homs = [D.hom(om[a.dom], om[a.cod]) for a in non_id]
        if any(not h for h in homs):
            explored += count
            continue
        for images in itertools.product(*homs):
            explored += 1
            if explored > budget:
                raise SearchBudgetExceeded(total, budget, explored / max(1, total))
            am = {C.identity[c]: D.identity[om[c]] for c in C.objects}
            am.update({a.id: img for a, img in zip(non_id, images)})
            if all(
                am[C.compose(g, f)] == D.compose(am[g], am[f])
                for g, f in C.composable_pairs()
            ):
                yield FinFunctor(C, D, om, am)


def equivalent_categories(
    C: FinCat, D: FinCat, budget: int = DEFAULT_BUDGET
) -> EquivalenceResult | None:
    """Search for an equivalence C ≃ D by exhausting functors C→D.

    A functor that is full, faithful and essentially surjective is upgraded to
    a full equivalence: a quasi-inverse and unit/counit isomorphisms are
    constructed and verified. Exhausting the space yields a definitive
    negative.
    """
    for F in enumerate_functors(C, D, budget):
        if not _fully_faithful(C, D, F):
            continue
        witness = {}
        for d in D.objects:
            found = None
            for c in C.objects:
                js = isos(D, F.obj_map[c], d)
                if js:
                    found = (c, sorted(js)[0])
                    break
            if found is None:
                break
            witness[d] = found
        if len(witness) != len(D.objects):
            continue
        return _upgrade(C, D, F, witness)
    return None


def _fully_faithful(C: FinCat, D: FinCat, F: FinFunctor) -> bool:
    for c in C.objects:
        for c2 in C.objects:
            images = [F.arr_map[f] for f in C.hom(c, c2)]
            if len(set(images)) != len(images):
                return False
            if set(images) != set(D.hom(F.obj_map[c], F.obj_map[c2])):
                return False
    return True


def _preimage(C: FinCat, F: FinFunctor, c: str, c2: str, g: str) -> str:
    for f in C.hom(c, c2):
        if F.arr_map[f] == g:
            return f
    raise SelfTestFailure(f"arrow {g!r} has no preimage under a full functor")


def _upgrade(
    C: FinCat, D: FinCat, F: FinFunctor, witness: Mapping[str, tuple[str, str]]
) -> EquivalenceResult:
    gm = {d: witness[d][0] for d in D.objects}
    phi = {d: witness[d][1] for d in D.objects}  # iso F(G d) → d
    am: dict[str, str] = {}
    for h in D.arrows:
        composite = D.compose(_inverse(D, phi[h.cod]), D.compose(h.id, phi[h.dom]))
        am[h.id] = _preimage(C, F, gm[h.dom], gm[h.cod], composite)
    G = build_functor(D, C, gm, am)

    unit = {}
    for c in C.objects:
        unit[c] = _preimage(
            C, F, c, gm[F.obj_map[c]], _inverse(D, phi[F.obj_map[c]])
        )
    # naturality of the unit and counit
    for a in C.arrows:
        lhs = C.compose(unit[a.cod], a.id)
        rhs = C.compose(G.arr_map[F.arr_map[a.id]], unit[a.dom])
        if lhs != rhs:
            raise SelfTestFailure("equivalence unit is not natural")
    for h in D.arrows:
        lhs = D.compose(h.id, phi[h.dom])
        rhs = D.compose(phi[h.cod], F.arr_map[G.arr_map[h.id]])
        if lhs != rhs:
            raise SelfTestFailure("equivalence counit is not natural")
    return EquivalenceResult(F, G, unit, phi)
