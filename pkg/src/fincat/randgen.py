"""Seeded random generators for categories, diagrams, presheaves and
profunctors.

Every generator produces values that are valid by construction and then
re-validated by the constructors they pass through:

* categories are composition-closed sets of functions between small finite
  sets, so associativity comes for free;
* set functors are congruence quotients of finite coproducts of
  (co)representables, which reaches every finite functor up to isomorphism;
* flat presheaves are retracts of representables cut out by an idempotent;
* profunctors are finite coproducts of representables weighted by set
  functors on the source.
"""

from __future__ import annotations

import random

from .adjoint import ProfunctorP, build_profunctor
from .core import (
    FinCat,
    FinFunctor,
    build_category,
    full_subcategory,
    is_filtered,
    opposite,
    pair_id,
)
from .karoubi import idempotents
from .setfun import SetFunctor, build_set_functor


def random_category(
    rng: random.Random, max_objects: int = 4, max_arrows: int = 8
) -> FinCat:
    """A random finite category of functions between small sets."""
    while True:
        n = rng.randint(1, max_objects)
        sizes = [rng.randint(1, 3) for _ in range(n)]
        # arrows are (dom index, cod index, image tuple); identities first
        arrows = {(i, i, tuple(range(sizes[i]))) for i in range(n)}
        seeds = rng.randint(0, max_arrows)
        for _ in range(seeds):
            i, j = rng.randrange(n), rng.randrange(n)
            f = (i, j, tuple(rng.randrange(sizes[j]) for _ in range(sizes[i])))
            closed = _close(arrows | {f})
            if len(closed) <= max_arrows:
                arrows = closed
        if len(arrows) <= max_arrows:
            return _functions_to_category(sizes, arrows)


def _close(arrows: set[tuple[int, int, tuple[int, ...]]]) -> set:
    arrows = set(arrows)
    changed = True
    while changed:
        changed = False
        for g in list(arrows):
            for f in list(arrows):
                if f[1] != g[0]:
                    continue
                comp = (f[0], g[1], tuple(g[2][x] for x in f[2]))
                if comp not in arrows:
                    arrows.add(comp)
                    changed = True
    return arrows


def _functions_to_category(sizes: list[int], arrows: set) -> FinCat:
    def aid(f) -> str:
        return f"f[o{f[0]}>o{f[1]}:" + "".join(str(v) for v in f[2]) + "]"

    objects = [f"o{i}" for i in range(len(sizes))]
    arrow_list = sorted(arrows)
    identity = {
        f"o{i}": aid((i, i, tuple(range(sizes[i])))) for i in range(len(sizes))
    }
    table = {}
    ids = {f: aid(f) for f in arrow_list}
    for g in arrow_list:
        for f in arrow_list:
            if f[1] == g[0]:
                comp = (f[0], g[1], tuple(g[2][x] for x in f[2]))
                table[(ids[g], ids[f])] = ids[comp]
    return build_category(
        objects,
        [(ids[f], f"o{f[0]}", f"o{f[1]}") for f in arrow_list],
        identity,
        table,
        infer_units=False,
    )


def adjoin_terminal(C: FinCat) -> FinCat:
    """Freely add a terminal object; the result is always filtered."""
    top = "top"
    objects = list(C.objects) + [top]
    arrows = [tuple(a) for a in C.arrows]
    arrows += [(f"t.{c}", c, top) for c in C.objects]
    arrows.append((f"t.{top}", top, top))
    identity = dict(C.identity)
    identity[top] = f"t.{top}"
    table: dict[tuple[str, str], str] = dict(C.table)
    for a in C.arrows:
        table[(f"t.{a.cod}", a.id)] = f"t.{a.dom}"
    for c in C.objects:
        table[(f"t.{top}", f"t.{c}")] = f"t.{c}"
    table[(f"t.{top}", f"t.{top}")] = f"t.{top}"
    return build_category(objects, arrows, identity, table, infer_units=False)


def random_filtered_category(rng: random.Random) -> FinCat:
    """A random filtered category: rejection sampling with a terminal-object
    fallback."""
    for _ in range(6):
        C = random_category(rng, max_objects=2, max_arrows=5)
        if is_filtered(C):
            return C
    return adjoin_terminal(random_category(rng, max_objects=3, max_arrows=5))


def random_set_functor(
    rng: random.Random, C: FinCat, max_elems: int = 3
) -> SetFunctor:
    """A random covariant functor on C: a congruence quotient of a coproduct
    of co-representables Hom(d_i, -)."""
    k = rng.randint(0, 3)
    picks = [rng.choice(C.objects) for _ in range(k)] if C.objects else []
    sets = {
        c: [pair_id(str(i), h) for i, d in enumerate(picks) for h in C.hom(d, c)]
        for c in C.objects
    }
    decode = {
        c: {
            pair_id(str(i), h): (i, h)
            for i, d in enumerate(picks)
            for h in C.hom(d, c)
        }
        for c in C.objects
    }

    def act(a: str, elem_key: tuple[int, str]) -> tuple[int, str]:
        i, h = elem_key
        return (i, C.compose(a, h))

    # congruence closure of random identifications, then extra merges until
    # every value set fits the size bound
    parent = {c: {e: e for e in sets[c]} for c in C.objects}

    def find(c, x):
        while parent[c][x] != x:
            parent[c][x] = parent[c][parent[c][x]]
            x = parent[c][x]
        return x

    def union(c, x, y):
        rx, ry = find(c, x), find(c, y)
        if rx == ry:
            return False
        if ry < rx:
            rx, ry = ry, rx
        parent[c][ry] = rx
        return True

    def propagate():
        changed = True
        while changed:
            changed = False
            for a in C.arrows:
                for x in sets[a.dom]:
                    for y in sets[a.dom]:
                        if find(a.dom, x) == find(a.dom, y):
                            ix = pair_id(str(act(a.id, decode[a.dom][x])[0]),
                                         act(a.id, decode[a.dom][x])[1])
                            iy = pair_id(str(act(a.id, decode[a.dom][y])[0]),
                                         act(a.id, decode[a.dom][y])[1])
                            if union(a.cod, ix, iy):
                                changed = True

    merges = rng.randint(0, 3)
    for _ in range(merges):
        pool = [c for c in C.objects if len(sets[c]) >= 2]
        if not pool:
            break
        c = rng.choice(pool)
        union(c, rng.choice(sets[c]), rng.choice(sets[c]))
    propagate()
    while True:
        oversized = [
            c for c in C.objects
            if len({find(c, e) for e in sets[c]}) > max_elems
        ]
        if not oversized:
            break
        c = rng.choice(oversized)
        reps = sorted({find(c, e) for e in sets[c]})
        union(c, reps[0], reps[1])
        propagate()

    out_sets = {c: sorted({find(c, e) for e in sets[c]}) for c in C.objects}
    maps = {}
    for a in C.arrows:
        m = {}
        for e in out_sets[a.dom]:
            i, h = decode[a.dom][e]
            m[e] = find(a.cod, pair_id(str(i), C.compose(a.id, h)))
        maps[a.id] = m
    return build_set_functor(C, out_sets, maps)


def random_presheaf(rng: random.Random, C: FinCat, max_elems: int = 3) -> SetFunctor:
    return random_set_functor(rng, opposite(C), max_elems)


def random_flat_presheaf(rng: random.Random, C: FinCat) -> SetFunctor:
    """A retract of a representable: F(a) = {e∘f : f ∈ Hom(a, c)} for an
    idempotent e on c. Retracts of representables are flat."""
    c, e, _ = rng.choice(idempotents(C))
    sets = {a: sorted({C.compose(e, f) for f in C.hom(a, c)}) for a in C.objects}
    maps = {
        g.id: {h: C.compose(h, g.id) for h in sets[g.cod]} for g in C.arrows
    }
    return build_set_functor(opposite(C), sets, maps)


def random_full_embedding(
    rng: random.Random, C: FinCat
) -> tuple[FinCat, FinFunctor]:
    """A full subcategory on a random nonempty object subset, with inclusion."""
    k = rng.randint(1, len(C.objects))
    objs = rng.sample(list(C.objects), k)
    return full_subcategory(C, objs)


def random_profunctor(
    rng: random.Random, C: FinCat, D: FinCat, max_elems: int = 2
) -> ProfunctorP:
    """A random functor from C into presheaves on D: a coproduct of
    representables on D weighted by set functors on C."""
    k = rng.randint(0, 2)
    summands = [
        (rng.choice(D.objects), random_set_functor(rng, C, max_elems))
        for _ in range(k)
    ]

    values: dict[str, SetFunctor] = {}
    for c in C.objects:
        sets = {
            d2: [
                pair_id(str(i), h, a)
                for i, (d, A) in enumerate(summands)
                for h in D.hom(d2, d)
                for a in A.sets[c]
            ]
            for d2 in D.objects
        }
        maps = {}
        for g in D.arrows:
            # presheaf on D: the action of g: x→y sends elements over y to x
            m = {}
            for i, (d, A) in enumerate(summands):
                for h in D.hom(g.cod, d):
                    for a in A.sets[c]:
                        m[pair_id(str(i), h, a)] = pair_id(
                            str(i), D.compose(h, g.id), a
                        )
            maps[g.id] = m
        values[c] = build_set_functor(opposite(D), sets, maps)

    actions = {}
    for f in C.arrows:
        actions[f.id] = {
            d2: {
                pair_id(str(i), h, a): pair_id(str(i), h, A.maps[f.id][a])
                for i, (d, A) in enumerate(summands)
                for h in D.hom(d2, d)
                for a in A.sets[f.dom]
            }
            for d2 in D.objects
        }
    return build_profunctor(C, D, values, actions)
