"""Finite-set-valued functors, natural transformations and element categories.

A presheaf on C is represented as a SetFunctor whose base is opposite(C);
its maps stay keyed by the arrow ids of C, which the opposite shares.

Variance convention: both element-category constructions project to C itself.
The four (co/contra) x (fibration/opfibration) variants are all reachable by
combining :func:`elements_presheaf` / :func:`elements_covariant` with
``core.opposite``:

    covariant P, opfibration-style arrows ........ elements_covariant(P)
    presheaf  F, fibration-style arrows .......... elements_presheaf(F)
    the opposite of either ....................... core.opposite(result)

One canonical convention for the projection target kills an entire class of
sign errors downstream.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from .core import (
    FinCat,
    FinFunctor,
    build_category,
    build_functor,
    opposite,
    pair_id,
)
from .errors import (
    InvalidNatTransformation,
    InvalidSetFunctor,
    SearchBudgetExceeded,
    SelfTestFailure,
    UnknownObject,
)

DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class SetFunctor:
    """A covariant functor base → FinSet with explicit value tables."""

    base: FinCat
    sets: Mapping[str, tuple[str, ...]]
    maps: Mapping[str, Mapping[str, str]]

    def at(self, c: str) -> tuple[str, ...]:
        return self.sets[c]

    def on(self, f: str) -> Mapping[str, str]:
        return self.maps[f]


def build_set_functor(
    base: FinCat,
    sets: Mapping[str, Iterable[str]],
    maps: Mapping[str, Mapping[str, str]],
) -> SetFunctor:
    """Assemble and validate a set-valued functor (empty values allowed)."""
    tsets = {c: tuple(sets.get(c, ())) for c in base.objects}
    for c, elems in tsets.items():
        if len(set(elems)) != len(elems):
            raise InvalidSetFunctor(f"duplicate elements at object {c!r}")
    tmaps: dict[str, dict[str, str]] = {}
    for a in base.arrows:
        m = dict(maps.get(a.id, {}))
        src, tgt = tsets[a.dom], set(tsets[a.cod])
        if set(m) != set(src):
            raise InvalidSetFunctor(f"map of {a.id!r} is not total on {a.dom!r}")
        for x, y in m.items():
            if y not in tgt:
                raise InvalidSetFunctor(f"map of {a.id!r} sends {x!r} outside {a.cod!r}")
        tmaps[a.id] = m
    for c in base.objects:
        i = base.id_of(c)
        if any(tmaps[i][x] != x for x in tsets[c]):
            raise InvalidSetFunctor(f"identity of {c!r} does not act as identity")
    for g, f in base.composable_pairs():
        gf = base.compose(g, f)
        for x in tsets[base.dom(f)]:
            if tmaps[gf][x] != tmaps[g][tmaps[f][x]]:
                raise InvalidSetFunctor(
                    f"functoriality fails: maps({gf!r})({x!r}) != maps({g!r})∘maps({f!r})"
                )
    return SetFunctor(base, tsets, tmaps)


def presheaf(C: FinCat, sets: Mapping[str, Iterable[str]], maps: Mapping[str, Mapping[str, str]]) -> SetFunctor:
    """A presheaf on C: a SetFunctor based on opposite(C)."""
    return build_set_functor(opposite(C), sets, maps)


def is_presheaf_on(F: SetFunctor, C: FinCat) -> bool:
    return F.base == opposite(C)


def constant_functor(base: FinCat, elems: Iterable[str]) -> SetFunctor:
    elems = tuple(elems)
    return build_set_functor(
        base,
        {c: elems for c in base.objects},
        {a.id: {x: x for x in elems} for a in base.arrows},
    )


@dataclass(frozen=True)
class NatTransformation:
    source: SetFunctor
    target: SetFunctor
    components: Mapping[str, Mapping[str, str]]

    def at(self, c: str) -> Mapping[str, str]:
        return self.components[c]

    def serialize(self) -> str:
        """Canonical string form, usable as a set element id."""
        bits = []
        for c in sorted(self.components):
            for x in sorted(self.components[c]):
                bits.append(f"{c}:{x}->{self.components[c][x]}")
        return "{" + ";".join(bits) + "}"


def build_nat(F: SetFunctor, G: SetFunctor, components: Mapping[str, Mapping[str, str]]) -> NatTransformation:
    if F.base != G.base:
        raise InvalidNatTransformation("source and target have different bases")
    C = F.base
    comp = {c: dict(components.get(c, {})) for c in C.objects}
    for c in C.objects:
        if set(comp[c]) != set(F.sets[c]):
            raise InvalidNatTransformation(f"component at {c!r} is not total")
        tgt = set(G.sets[c])
        for x, y in comp[c].items():
            if y not in tgt:
                raise InvalidNatTransformation(f"component at {c!r} maps {x!r} outside G({c!r})")
    for a in C.arrows:
        for x in F.sets[a.dom]:
            if G.maps[a.id][comp[a.dom][x]] != comp[a.cod][F.maps[a.id][x]]:
                raise InvalidNatTransformation(f"naturality fails at arrow {a.id!r}, element {x!r}")
    return NatTransformation(F, G, comp)


def compose_nats(beta: NatTransformation, alpha: NatTransformation) -> NatTransformation:
    """beta after alpha."""
    return build_nat(
        alpha.source,
        beta.target,
        {
            c: {x: beta.components[c][alpha.components[c][x]] for x in alpha.components[c]}
            for c in alpha.components
        },
    )


def identity_nat(F: SetFunctor) -> NatTransformation:
    return NatTransformation(F, F, {c: {x: x for x in F.sets[c]} for c in F.base.objects})


# -- element categories -------------------------------------------------------


@dataclass(frozen=True)
class ElementsCategory:
    category: FinCat
    projection: FinFunctor
    #: element-category object id -> (base object, element)
    components: Mapping[str, tuple[str, str]]
    #: (base object, element) -> object id
    object_of: Mapping[tuple[str, str], str]


def _elements(base_cat: FinCat, F: SetFunctor, contravariant: bool) -> ElementsCategory:
    components: dict[str, tuple[str, str]] = {}
    object_of: dict[tuple[str, str], str] = {}
    objects: list[str] = []
    for c in base_cat.objects:
        for x in F.sets[c]:
            oid = pair_id(c, x)
            objects.append(oid)
            components[oid] = (c, x)
            object_of[(c, x)] = oid

    arrows: list[tuple[str, str, str]] = []
    base_of: dict[str, str] = {}
    for f in base_cat.arrows:
        c, d = f.dom, f.cod
        for src_x in F.sets[c]:
            for tgt_x in F.sets[d]:
                ok = (
                    F.maps[f.id][tgt_x] == src_x
                    if contravariant
                    else F.maps[f.id][src_x] == tgt_x
                )
                if ok:
                    s = object_of[(c, src_x)]
                    t = object_of[(d, tgt_x)]
                    aid = pair_id(f.id, s, t)
                    arrows.append((aid, s, t))
                    base_of[aid] = f.id

    identity = {
        oid: pair_id(base_cat.id_of(c), oid, oid) for oid, (c, _x) in components.items()
    }
    by_src: dict[str, list[tuple[str, str, str]]] = {}
    for aid, s, t in arrows:
        by_src.setdefault(s, []).append((aid, s, t))
    compose: dict[tuple[str, str], str] = {}
    for fid, fs, ft in arrows:
        for gid, _gs, gt in by_src.get(ft, []):
            compose[(gid, fid)] = pair_id(base_cat.compose(base_of[gid], base_of[fid]), fs, gt)

    cat = build_category(objects, arrows, identity, compose, infer_units=False)
    proj = build_functor(
        cat, base_cat,
        {oid: components[oid][0] for oid in objects},
        {aid: base_of[aid] for aid, _s, _t in arrows},
    )
    return ElementsCategory(cat, proj, components, object_of)


def elements_presheaf(F: SetFunctor) -> ElementsCategory:
    """Category of elements of a presheaf F on C, projecting to C.

    Objects are pairs (c, x ∈ F(c)); an arrow (c,x) → (d,y) is an arrow
    f: c→d of C with F(f)(y) = x.
    """
    C = opposite(F.base)
    return _elements(C, F, contravariant=True)


def elements_covariant(P: SetFunctor) -> ElementsCategory:
    """Category of elements of a covariant P on C, projecting to C.

    Objects are pairs (c, x ∈ P(c)); an arrow (c,x) → (d,y) is an arrow
    f: c→d of C with P(f)(x) = y.
    """
    return _elements(P.base, P, contravariant=False)


@dataclass(frozen=True)
class OpfibrationResult:
    category: FinCat
    projection: FinFunctor
    #: isomorphism over the base onto elements_covariant(G).category
    iso_to_elements: FinFunctor
    elements: ElementsCategory


def discrete_opfibration(G: SetFunctor) -> OpfibrationResult:
    """The discrete opfibration p: 𝔽 → C built from tagged coproducts.

    Object part: one object per pair (c, x ∈ G(c)). Arrow part: one arrow per
    pair (f ∈ arrows(C), x ∈ G(dom f)), with domain (dom f, x) and codomain
    (cod f, G(f)(x)). The result is isomorphic over C to the category of
    elements of G; the isomorphism is constructed and validated here.
    """
    C = G.base
    objects: list[str] = []
    comp_obj: dict[str, tuple[str, str]] = {}
    for c in C.objects:
        for x in G.sets[c]:
            oid = pair_id(c, x)
            objects.append(oid)
            comp_obj[oid] = (c, x)

    arrows: list[tuple[str, str, str]] = []
    comp_arr: dict[str, tuple[str, str]] = {}
    for f in C.arrows:
        for x in G.sets[f.dom]:
            aid = pair_id(f.id, x)
            arrows.append((aid, pair_id(f.dom, x), pair_id(f.cod, G.maps[f.id][x])))
            comp_arr[aid] = (f.id, x)

    identity = {pair_id(c, x): pair_id(C.id_of(c), x) for (c, x) in comp_obj.values()}
    compose: dict[tuple[str, str], str] = {}
    for f in C.arrows:
        for g_id in C.arrows_from(f.cod):
            for x in G.sets[f.dom]:
                y = G.maps[f.id][x]
                compose[(pair_id(g_id, y), pair_id(f.id, x))] = pair_id(C.compose(g_id, f.id), x)

    cat = build_category(objects, arrows, identity, compose, infer_units=False)
    proj = build_functor(
        cat, C,
        {oid: comp_obj[oid][0] for oid in objects},
        {aid: comp_arr[aid][0] for aid in comp_arr},
    )

    elems = elements_covariant(G)
    iso = build_functor(
        cat, elems.category,
        {oid: oid for oid in objects},
        {
            aid: pair_id(
                comp_arr[aid][0],
                pair_id(C.dom(comp_arr[aid][0]), comp_arr[aid][1]),
                pair_id(C.cod(comp_arr[aid][0]), G.maps[comp_arr[aid][0]][comp_arr[aid][1]]),
            )
            for aid in comp_arr
        },
    )
    # the constructed comparison must be bijective and live over C
    if sorted(iso.obj_map.values()) != sorted(elems.category.objects):
        raise SelfTestFailure("opfibration comparison is not bijective on objects")
    if sorted(iso.arr_map.values()) != sorted(elems.category.arrow_ids()):
        raise SelfTestFailure("opfibration comparison is not bijective on arrows")
    for oid in objects:
        if elems.projection.obj_map[iso.obj_map[oid]] != proj.obj_map[oid]:
            raise SelfTestFailure("opfibration comparison does not commute with projections")
    return OpfibrationResult(cat, proj, iso, elems)


# -- Yoneda -------------------------------------------------------------------


def yoneda(C: FinCat, c: str) -> SetFunctor:
    """The representable presheaf Hom(-, c) on C."""
    if not C.has_object(c):
        raise UnknownObject(f"object {c!r} not in category")
    sets = {d: C.hom(d, c) for d in C.objects}
    maps = {a.id: {h: C.compose(h, a.id) for h in sets[a.cod]} for a in C.arrows}
    return presheaf(C, sets, maps)


def yoneda_covariant(C: FinCat, d: str) -> SetFunctor:
    """The co-representable covariant functor Hom(d, -) on C."""
    if not C.has_object(d):
        raise UnknownObject(f"object {d!r} not in category")
    sets = {c: C.hom(d, c) for c in C.objects}
    maps = {a.id: {h: C.compose(a.id, h) for h in sets[a.dom]} for a in C.arrows}
    return build_set_functor(C, sets, maps)


# -- brute-force hom-sets -----------------------------------------------------


def nat_transformations(
    F: SetFunctor, G: SetFunctor, budget: int = DEFAULT_BUDGET
) -> list[NatTransformation]:
    """All natural transformations F → G, by exhaustive component search.

    The raw component space is ∏_c |G(c)|^|F(c)|; a SearchBudgetExceeded is
    raised when it exceeds the budget. The returned list is sorted by the
    canonical serialization, so it is deterministic.
    """
    if F.base != G.base:
        raise InvalidNatTransformation("bases differ")
    C = F.base
    total = 1
    for c in C.objects:
        total *= max(1, len(G.sets[c])) ** len(F.sets[c])
        if len(F.sets[c]) > 0 and len(G.sets[c]) == 0:
            return []  # no function into the empty set
        if total > budget:
            raise SearchBudgetExceeded(total, budget)

    objs = sorted(C.objects)
    order = {c: i for i, c in enumerate(objs)}
    # arrows whose naturality square can be checked once both endpoints are set
    arrows_ready: dict[int, list] = {i: [] for i in range(len(objs))}
    for a in C.arrows:
        arrows_ready[max(order[a.dom], order[a.cod])].append(a)

    found: list[NatTransformation] = []
    comp: dict[str, dict[str, str]] = {}

    def assign(i: int) -> None:
        if i == len(objs):
            found.append(NatTransformation(F, G, {c: dict(m) for c, m in comp.items()}))
            return
        c = objs[i]
        xs = F.sets[c]
        for values in itertools.product(G.sets[c] or ("",), repeat=len(xs)):
            if not G.sets[c] and xs:
                return
            comp[c] = dict(zip(xs, values))
            ok = True
            for a in arrows_ready[i]:
                for x in F.sets[a.dom]:
                    if G.maps[a.id][comp[a.dom][x]] != comp[a.cod][F.maps[a.id][x]]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                assign(i + 1)
        comp.pop(c, None)

    assign(0)
    found.sort(key=lambda t: t.serialize())
    return found
