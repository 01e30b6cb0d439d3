"""Finite categories and functors given by explicit tables.

A category is a list of objects, a list of arrows with domain/codomain, an
identity assignment and a total composition table. Composition is stored in
diagram order: ``compose(g, f)`` means "g after f", defined exactly when
``cod(f) = dom(g)``. All values are immutable after construction.

Every category-producing operation in the package funnels its output through
:func:`build_category`, so the unit, associativity and dom/cod laws are
re-checked on everything we ever hand back to a caller.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

from .errors import (
    DomCodMismatch,
    IncompleteComposition,
    InvalidCategory,
    InvalidFunctor,
    MissingIdentity,
    NonAssociative,
    TooLarge,
    UnknownObject,
)

#: hard cap on arrows for exhaustive validation (associativity is cubic)
MAX_ARROWS = 5000


class Arrow(NamedTuple):
    id: str
    dom: str
    cod: str


@dataclass(frozen=True)
class FinCat:
    """A validated finite category. Construct via :func:`build_category`."""

    objects: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    identity: Mapping[str, str]
    table: Mapping[tuple[str, str], str]
    _dom: Mapping[str, str] = field(repr=False, default_factory=dict)
    _cod: Mapping[str, str] = field(repr=False, default_factory=dict)

    # -- lookups ----------------------------------------------------------

    def dom(self, a: str) -> str:
        return self._dom[a]

    def cod(self, a: str) -> str:
        return self._cod[a]

    def id_of(self, c: str) -> str:
        if c not in self.identity:
            raise UnknownObject(f"object {c!r} not in category")
        return self.identity[c]

    def is_identity(self, a: str) -> bool:
        return self.identity.get(self._dom[a]) == a

    def compose(self, g: str, f: str) -> str:
        """g after f; requires cod(f) = dom(g)."""
        key = (g, f)
        if key not in self.table:
            raise DomCodMismatch(f"arrows {g!r} after {f!r} are not composable")
        return self.table[key]

    def arrow_ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self.arrows)

    def has_object(self, c: str) -> bool:
        return c in self.identity

    def has_arrow(self, a: str) -> bool:
        return a in self._dom

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        return tuple(x.id for x in self.arrows if x.dom == a and x.cod == b)

    def arrows_from(self, c: str) -> tuple[str, ...]:
        return tuple(x.id for x in self.arrows if x.dom == c)

    def arrows_into(self, c: str) -> tuple[str, ...]:
        return tuple(x.id for x in self.arrows if x.cod == c)

    def composable_pairs(self) -> Iterable[tuple[str, str]]:
        """All (g, f) with cod(f) = dom(g)."""
        by_dom: dict[str, list[str]] = {c: [] for c in self.objects}
        for a in self.arrows:
            by_dom[a.dom].append(a.id)
        for f in self.arrows:
            for g in by_dom[f.cod]:
                yield (g, f.id)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinCat):
            return NotImplemented
        return (
            self.objects == other.objects
            and self.arrows == other.arrows
            and dict(self.identity) == dict(other.identity)
            and dict(self.table) == dict(other.table)
        )

    def __hash__(self) -> int:
        return hash((self.objects, self.arrows))


def build_category(
    objects: Iterable[str],
    arrows: Iterable[tuple[str, str, str]],
    identity: Mapping[str, str],
    compose: Mapping[tuple[str, str], str],
    infer_units: bool = True,
) -> FinCat:
    """Assemble and exhaustively validate a finite category.

    ``compose`` maps (g, f) -> g∘f and may omit unit compositions when
    ``infer_units`` is set; they are filled in from the identity assignment.
    """
    objs = tuple(objects)
    arrs = tuple(Arrow(*a) for a in arrows)
    if len(set(objs)) != len(objs):
        raise InvalidCategory("duplicate object identifiers")
    ids = [a.id for a in arrs]
    if len(set(ids)) != len(ids):
        raise InvalidCategory("duplicate arrow identifiers")
    if len(arrs) > MAX_ARROWS:
        raise TooLarge(f"{len(arrs)} arrows exceeds validation cap {MAX_ARROWS}")

    dom = {a.id: a.dom for a in arrs}
    cod = {a.id: a.cod for a in arrs}
    obj_set = set(objs)
    for a in arrs:
        if a.dom not in obj_set or a.cod not in obj_set:
            raise InvalidCategory(f"arrow {a.id!r} references unknown object")

    for c in objs:
        if c not in identity:
            raise MissingIdentity(f"object {c!r} has no identity arrow")
        i = identity[c]
        if i not in dom:
            raise MissingIdentity(f"identity {i!r} of {c!r} is not an arrow")
        if dom[i] != c or cod[i] != c:
            raise DomCodMismatch(f"identity {i!r} of {c!r} is not an endo-arrow of {c!r}")

    table = dict(compose)
    if infer_units:
        for a in arrs:
            table.setdefault((identity[a.cod], a.id), a.id)
            table.setdefault((a.id, identity[a.dom]), a.id)

    # totality on composable pairs, and nothing else
    for g, f in table:
        if g not in dom or f not in dom:
            raise InvalidCategory(f"composition entry ({g!r}, {f!r}) references unknown arrow")
        if dom[g] != cod[f]:
            raise DomCodMismatch(f"entry ({g!r}, {f!r}) composes non-composable arrows")

    cat = FinCat(objs, arrs, dict(identity), table, dom, cod)

    for g, f in cat.composable_pairs():
        if (g, f) not in table:
            raise IncompleteComposition(g, f)
        gf = table[(g, f)]
        if gf not in dom:
            raise InvalidCategory(f"compose({g!r},{f!r}) = {gf!r} is not an arrow")
        if dom[gf] != dom[f] or cod[gf] != cod[g]:
            raise DomCodMismatch(
                f"compose({g!r},{f!r}) = {gf!r} has wrong domain or codomain"
            )

    for f in ids:
        if table[(identity[cod[f]], f)] != f or table[(f, identity[dom[f]])] != f:
            raise InvalidCategory(f"unit law fails at arrow {f!r}")

    # associativity over all composable triples
    by_dom: dict[str, list[str]] = {c: [] for c in objs}
    for a in arrs:
        by_dom[a.dom].append(a.id)
    for f in ids:
        for g in by_dom[cod[f]]:
            gf = table[(g, f)]
            for h in by_dom[cod[g]]:
                left = table[(h, table[(g, f)])]
                right = table[(table[(h, g)], f)]
                if left != right:
                    raise NonAssociative(h, g, f, left, right)

    return cat


def validate_category(raw: Mapping) -> FinCat:
    """Build a category from its JSON-shaped description (see jsonio)."""
    try:
        objects = list(raw["objects"])
        arrows = [(a["id"], a["dom"], a["cod"]) for a in raw["arrows"]]
        identity = dict(raw["identity"])
        compose = {(e["g"], e["f"]): e["gf"] for e in raw.get("compose", [])}
    except (KeyError, TypeError) as exc:
        raise InvalidCategory(f"malformed category description: {exc}") from exc
    return build_category(objects, arrows, identity, compose)


# -- functors ---------------------------------------------------------------


@dataclass(frozen=True)
class FinFunctor:
    source: FinCat
    target: FinCat
    obj_map: Mapping[str, str]
    arr_map: Mapping[str, str]

    def on_obj(self, c: str) -> str:
        return self.obj_map[c]

    def on_arr(self, f: str) -> str:
        return self.arr_map[f]


def build_functor(
    source: FinCat,
    target: FinCat,
    obj_map: Mapping[str, str],
    arr_map: Mapping[str, str],
) -> FinFunctor:
    """Assemble and validate a functor between finite categories."""
    for c in source.objects:
        if c not in obj_map:
            raise InvalidFunctor(f"object {c!r} has no image")
        if not target.has_object(obj_map[c]):
            raise InvalidFunctor(f"image {obj_map[c]!r} of {c!r} is not a target object")
    for a in source.arrows:
        if a.id not in arr_map:
            raise InvalidFunctor(f"arrow {a.id!r} has no image")
        fa = arr_map[a.id]
        if not target.has_arrow(fa):
            raise InvalidFunctor(f"image {fa!r} of {a.id!r} is not a target arrow")
        if target.dom(fa) != obj_map[a.dom] or target.cod(fa) != obj_map[a.cod]:
            raise InvalidFunctor(f"arrow map breaks dom/cod at {a.id!r}")
    for c in source.objects:
        if arr_map[source.id_of(c)] != target.id_of(obj_map[c]):
            raise InvalidFunctor(f"identity of {c!r} is not sent to an identity")
    for g, f in source.composable_pairs():
        if arr_map[source.compose(g, f)] != target.compose(arr_map[g], arr_map[f]):
            raise InvalidFunctor(f"composition is not preserved on ({g!r}, {f!r})")
    return FinFunctor(source, target, dict(obj_map), dict(arr_map))


def identity_functor(C: FinCat) -> FinFunctor:
    return FinFunctor(C, C, {c: c for c in C.objects}, {a.id: a.id for a in C.arrows})


def const_functor(point: FinCat, C: FinCat, c: str) -> FinFunctor:
    """The functor from a one-object category picking out c."""
    if len(point.objects) != 1 or len(point.arrows) != 1:
        raise InvalidFunctor("const_functor requires a terminal source category")
    if not C.has_object(c):
        raise UnknownObject(f"object {c!r} not in target category")
    o = point.objects[0]
    return FinFunctor(point, C, {o: c}, {point.id_of(o): C.id_of(c)})


def compose_functors(G: FinFunctor, F: FinFunctor) -> FinFunctor:
    """G after F."""
    if F.target is not G.source and F.target != G.source:
        raise InvalidFunctor("functors are not composable")
    return build_functor(
        F.source,
        G.target,
        {c: G.obj_map[F.obj_map[c]] for c in F.source.objects},
        {a.id: G.arr_map[F.arr_map[a.id]] for a in F.source.arrows},
    )


# -- structural constructions ------------------------------------------------


def opposite(C: FinCat) -> FinCat:
    """Same objects and arrow ids; dom/cod swapped; compose(g,f) = f∘g in C."""
    return build_category(
        C.objects,
        [(a.id, a.cod, a.dom) for a in C.arrows],
        C.identity,
        {(g, f): C.table[(f, g)] for (f, g) in C.table},
        infer_units=False,
    )


def opposite_functor(F: FinFunctor) -> FinFunctor:
    """The same functor viewed between the opposite categories."""
    return FinFunctor(opposite(F.source), opposite(F.target), dict(F.obj_map), dict(F.arr_map))


def pair_id(*parts: str) -> str:
    """Canonical rendering of structured identifiers as strings."""
    return "(" + ",".join(parts) + ")"


@dataclass(frozen=True)
class CommaCategory:
    category: FinCat
    left: FinFunctor   # projection to the source of F
    right: FinFunctor  # projection to the source of G
    #: object id -> (a, b, h)
    components: Mapping[str, tuple[str, str, str]]


def comma_category(F: FinFunctor, G: FinFunctor) -> CommaCategory:
    """The comma category (F ↓ G) for functors F: A→C, G: B→C.

    Objects are triples (a, b, h: F a → G b); an arrow
    (a,b,h) → (a',b',h') is a pair (u: a→a', v: b→b') with
    G(v)∘h = h'∘F(u) in C.
    """
    A, B, C = F.source, G.source, F.target
    if G.target != C:
        raise InvalidFunctor("comma category requires functors with a shared target")

    components: dict[str, tuple[str, str, str]] = {}
    objects: list[str] = []
    for a in A.objects:
        for b in B.objects:
            for h in C.hom(F.obj_map[a], G.obj_map[b]):
                oid = pair_id(a, b, h)
                objects.append(oid)
                components[oid] = (a, b, h)

    arrows: list[tuple[str, str, str]] = []
    # arrow id -> (u, v)
    parts: dict[str, tuple[str, str]] = {}
    for src in objects:
        a, b, h = components[src]
        for u in A.arrows_from(a):
            for v in B.arrows_from(b):
                lhs = C.compose(G.arr_map[v], h)
                for tgt in objects:
                    a2, b2, h2 = components[tgt]
                    if a2 != A.cod(u) or b2 != B.cod(v):
                        continue
                    if C.compose(h2, F.arr_map[u]) == lhs:
                        aid = pair_id(u, v) + ":" + src + "->" + tgt
                        arrows.append((aid, src, tgt))
                        parts[aid] = (u, v)

    identity = {}
    for oid, (a, b, _h) in components.items():
        identity[oid] = pair_id(A.id_of(a), B.id_of(b)) + ":" + oid + "->" + oid

    by_src: dict[str, list[tuple[str, str, str]]] = {}
    for aid, s, t in arrows:
        by_src.setdefault(s, []).append((aid, s, t))
    compose: dict[tuple[str, str], str] = {}
    for fid, fs, ft in arrows:
        for gid, _gs, gt in by_src.get(ft, []):
            u1, v1 = parts[fid]
            u2, v2 = parts[gid]
            cid = pair_id(A.compose(u2, u1), B.compose(v2, v1)) + ":" + fs + "->" + gt
            compose[(gid, fid)] = cid

    cat = build_category(objects, arrows, identity, compose, infer_units=False)
    left = build_functor(
        cat, A,
        {o: components[o][0] for o in objects},
        {aid: parts[aid][0] for aid, _s, _t in arrows},
    )
    right = build_functor(
        cat, B,
        {o: components[o][1] for o in objects},
        {aid: parts[aid][1] for aid, _s, _t in arrows},
    )
    return CommaCategory(cat, left, right, components)


def is_connected(C: FinCat) -> bool:
    """Nonempty, and connected as an undirected graph with an edge per arrow."""
    if not C.objects:
        return False
    adj: dict[str, set[str]] = {c: set() for c in C.objects}
    for a in C.arrows:
        adj[a.dom].add(a.cod)
        adj[a.cod].add(a.dom)
    seen = {C.objects[0]}
    stack = [C.objects[0]]
    while stack:
        for n in adj[stack.pop()]:
            if n not in seen:
                seen.add(n)
                stack.append(n)
    return len(seen) == len(C.objects)


def is_filtered(C: FinCat) -> bool:
    """Nonempty; every object pair has a cocone; every parallel pair is coequalized.

    This is the Set specialization where an epimorphic family over a point
    reduces to plain existence, so a single witness always suffices.
    """
    if not C.objects:
        return False
    for a, b in itertools.product(C.objects, repeat=2):
        if not any(C.hom(a, c) and C.hom(b, c) for c in C.objects):
            return False
    for f in C.arrows:
        for g in C.arrows:
            if g.dom != f.dom or g.cod != f.cod or g.id <= f.id:
                continue
            if not any(
                C.compose(w, f.id) == C.compose(w, g.id)
                for w in C.arrows_from(f.cod)
            ):
                return False
    return True


def full_subcategory(C: FinCat, objs: Iterable[str]) -> tuple[FinCat, FinFunctor]:
    """The full subcategory on the given objects with its inclusion."""
    keep = [c for c in C.objects if c in set(objs)]
    arrows = [a for a in C.arrows if a.dom in keep and a.cod in keep]
    arrow_ids = {a.id for a in arrows}
    table = {
        (g, f): gf
        for (g, f), gf in C.table.items()
        if g in arrow_ids and f in arrow_ids
    }
    sub = build_category(
        keep, [tuple(a) for a in arrows],
        {c: C.identity[c] for c in keep}, table, infer_units=False,
    )
    incl = build_functor(sub, C, {c: c for c in keep}, {a.id: a.id for a in arrows})
    return sub, incl


def disjoint_union(C: FinCat, D: FinCat, tags: tuple[str, str] = ("L", "R")) -> FinCat:
    """Coproduct of two categories with tagged identifiers."""
    tl, tr = tags

    def l(x: str) -> str:
        return f"{tl}.{x}"

    def r(x: str) -> str:
        return f"{tr}.{x}"

    objects = [l(c) for c in C.objects] + [r(c) for c in D.objects]
    arrows = [(l(a.id), l(a.dom), l(a.cod)) for a in C.arrows]
    arrows += [(r(a.id), r(a.dom), r(a.cod)) for a in D.arrows]
    identity = {l(c): l(C.identity[c]) for c in C.objects}
    identity.update({r(c): r(D.identity[c]) for c in D.objects})
    table = {(l(g), l(f)): l(gf) for (g, f), gf in C.table.items()}
    table.update({(r(g), r(f)): r(gf) for (g, f), gf in D.table.items()})
    return build_category(objects, arrows, identity, table, infer_units=False)
