"""Flatness criteria, pointwise Kan extensions, flat-functor extension along
full embeddings, and final functors.

The two flatness criteria are implemented through genuinely different code
paths (direct condition checks versus filteredness of the category of
elements); their agreement is a standing regression test.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .colimits import (
    LimitResult,
    QuotientSet,
    colimit,
    family_id,
    limit,
    precompose,
    quotient_from_relation,
)
from .core import (
    CommaCategory,
    FinFunctor,
    comma_category,
    const_functor,
    is_connected,
    is_filtered,
    opposite,
    opposite_functor,
    pair_id,
)
from .errors import (
    FlatnessRequired,
    NotAnEmbedding,
    NotFinal,
    RelationNotTransitive,
    SelfTestFailure,
)
from .fixtures import terminal
from .setfun import SetFunctor, build_set_functor, elements_presheaf


def is_flat(F: SetFunctor) -> tuple[bool, dict]:
    """Filtering conditions for a presheaf, checked directly.

    (i) some value set is nonempty; (ii) every two elements admit a cospan of
    elements; (iii) every parallel pair equalized on an element is coequalized
    through an element. Returns the first violated condition with witnesses.
    """
    C = opposite(F.base)
    elems = [(c, x) for c in C.objects for x in F.sets[c]]
    if not elems:
        return False, {"condition": "i", "detail": "all value sets are empty"}

    for c, x in elems:
        for d, y in elems:
            if not any(
                F.maps[u][z] == x and F.maps[v][z] == y
                for b in C.objects
                for z in F.sets[b]
                for u in C.hom(c, b)
                for v in C.hom(d, b)
            ):
                return False, {"condition": "ii", "first": [c, x], "second": [d, y]}

    for c in C.objects:
        for x in F.sets[c]:
            for d in C.objects:
                for u in C.hom(d, c):
                    for v in C.hom(d, c):
                        if v <= u or F.maps[u][x] != F.maps[v][x]:
                            continue
                        if not any(
                            C.compose(w, u) == C.compose(w, v) and F.maps[w][y] == x
                            for b in C.objects
                            for w in C.hom(c, b)
                            for y in F.sets[b]
                        ):
                            return False, {
                                "condition": "iii",
                                "parallel": [u, v],
                                "element": [c, x],
                            }
    return True, {}


def is_flat_via_elements(F: SetFunctor) -> bool:
    """Flatness as filteredness of the category of elements."""
    return is_filtered(elements_presheaf(F).category)


# -- left Kan extension --------------------------------------------------------


@dataclass(frozen=True)
class LanResult:
    functor: SetFunctor
    #: per object of the target: the colimit quotient over the comma shape
    quotients: Mapping[str, QuotientSet]
    commas: Mapping[str, CommaCategory]


def lan_detailed(f: FinFunctor, F: SetFunctor) -> LanResult:
    """Left Kan extension of F: D→Set along f: D→C, computed pointwise.

    Lan F(c) is the colimit of F restricted along the projection of the comma
    (f↓c); the action of g: c→c' sends the class of ((d, h), x) to the class
    of ((d, g∘h), x).
    """
    if F.base != f.source:
        raise SelfTestFailure("diagram base does not match the functor source")
    C = f.target
    point = terminal()
    commas: dict[str, CommaCategory] = {}
    quotients: dict[str, QuotientSet] = {}
    for c in C.objects:
        comma = comma_category(f, const_functor(point, C, c))
        commas[c] = comma
        quotients[c] = colimit(precompose(F, comma.left))

    sets = {c: tuple(quotients[c].class_id(i) for i in range(quotients[c].num_classes()))
            for c in C.objects}
    maps: dict[str, dict[str, str]] = {}
    for a in C.arrows:
        Qs, Qt = quotients[a.dom], quotients[a.cod]
        m: dict[str, str] = {}
        for i, cls in enumerate(Qs.classes):
            targets = set()
            for oid, x in cls:
                d, _pt, h = commas[a.dom].components[oid]
                oid2 = pair_id(d, _pt, C.compose(a.id, h))
                targets.add(Qt.class_of(oid2, x))
            if len(targets) != 1:
                raise SelfTestFailure(
                    f"Kan extension action of {a.id!r} is not constant on a class"
                )
            m[Qs.class_id(i)] = Qt.class_id(targets.pop())
        maps[a.id] = m
    return LanResult(build_set_functor(C, sets, maps), quotients, commas)


def lan(f: FinFunctor, F: SetFunctor) -> SetFunctor:
    return lan_detailed(f, F).functor


# -- right Kan extension -------------------------------------------------------


@dataclass(frozen=True)
class RanResult:
    functor: SetFunctor
    limits: Mapping[str, LimitResult]
    commas: Mapping[str, CommaCategory]


def ran_detailed(f: FinFunctor, F: SetFunctor) -> RanResult:
    """Right Kan extension of F along f, computed as pointwise limits.

    Ran F(c) is the set of compatible families over the comma (c↓f); the
    action of g: c→c' restricts a family along h ↦ h∘g.
    """
    if F.base != f.source:
        raise SelfTestFailure("diagram base does not match the functor source")
    C = f.target
    point = terminal()
    commas: dict[str, CommaCategory] = {}
    limits: dict[str, LimitResult] = {}
    for c in C.objects:
        comma = comma_category(const_functor(point, C, c), f)
        commas[c] = comma
        limits[c] = limit(precompose(F, comma.right))

    sets = {c: limits[c].ids for c in C.objects}
    maps: dict[str, dict[str, str]] = {}
    for a in C.arrows:
        Ls, Lt = limits[a.dom], limits[a.cod]
        m: dict[str, str] = {}
        for fid, fam in zip(Ls.ids, Ls.families):
            new = {}
            for oid2, (_pt, d, h) in commas[a.cod].components.items():
                new[oid2] = fam[pair_id(_pt, d, C.compose(h, a.id))]
            nid = family_id(new)
            if nid not in Lt.ids:
                raise SelfTestFailure(
                    f"restricted family along {a.id!r} is not compatible"
                )
            m[fid] = nid
        maps[a.id] = m
    return RanResult(build_set_functor(C, sets, maps), limits, commas)


def ran(f: FinFunctor, F: SetFunctor) -> SetFunctor:
    return ran_detailed(f, F).functor


# -- extension of presheaves along full embeddings -----------------------------


def check_embedding(j: FinFunctor) -> None:
    """Require j to be injective on objects and arrows and full onto its image."""
    vals = list(j.obj_map.values())
    if len(set(vals)) != len(vals):
        raise NotAnEmbedding("functor is not injective on objects")
    avals = list(j.arr_map.values())
    if len(set(avals)) != len(avals):
        raise NotAnEmbedding("functor is not injective on arrows")
    D, C = j.source, j.target
    for d in D.objects:
        for d2 in D.objects:
            image = {j.arr_map[h] for h in D.hom(d, d2)}
            if image != set(C.hom(j.obj_map[d], j.obj_map[d2])):
                raise NotAnEmbedding(
                    f"functor is not full between {d!r} and {d2!r}"
                )


@dataclass(frozen=True)
class FlatExtendResult:
    #: the extended presheaf on the target category
    functor: SetFunctor
    #: d ∈ source, x ∈ F(d) -> class id in the extension at j(d)
    chi: Mapping[str, Mapping[str, str]]
    quotients: Mapping[str, QuotientSet]
    commas: Mapping[str, CommaCategory]


def flat_extend(j: FinFunctor, F: SetFunctor) -> FlatExtendResult:
    """Extend a presheaf F on D along a full embedding j: D→C.

    The value at c is the colimit of F over the index category whose objects
    are pairs (d, h: c→j d); this is the left Kan extension computed after
    dualizing. The comparison χ_d = κ_{(d, id)} into the extension at j(d) is
    returned for every d; it is injective whenever F is flat.
    """
    check_embedding(j)
    L = lan_detailed(opposite_functor(j), F)
    C = j.target
    chi: dict[str, dict[str, str]] = {}
    for d in j.source.objects:
        c = j.obj_map[d]
        oid = pair_id(d, "*", C.identity[c])
        Q = L.quotients[c]
        chi[d] = {x: Q.class_id(Q.class_of(oid, x)) for x in F.sets[d]}
    return FlatExtendResult(L.functor, chi, L.quotients, L.commas)


def flat_extend_quotient(j: FinFunctor, F: SetFunctor, c: str) -> QuotientSet:
    """The extension value at c as a quotient by the single-span relation.

    ((a, z), x) ~ ((a', z'), x') iff there are f: a→b, g: a'→b in D with
    j(f)∘z = j(g)∘z' and some y ∈ F(b) with F(f)(y) = x and F(g)(y) = x'.
    Flatness guarantees this relation is already an equivalence; no closure is
    taken, and a transitivity failure is reported as an error because it means
    the flatness certificate was wrong.
    """
    check_embedding(j)
    flat, cert = is_flat(F)
    if not flat:
        raise FlatnessRequired(f"presheaf is not flat: condition {cert['condition']}")
    D, C = j.source, j.target
    comma = comma_category(
        opposite_functor(j), const_functor(terminal(), opposite(C), c)
    )
    carrier = [
        (oid, x)
        for oid, (a, _pt, _z) in comma.components.items()
        for x in F.sets[a]
    ]

    def related(p: tuple[str, str], q: tuple[str, str]) -> bool:
        (oid, x), (oid2, x2) = p, q
        a, _, z = comma.components[oid]
        a2, _, z2 = comma.components[oid2]
        for b in D.objects:
            for f in D.hom(a, b):
                for g in D.hom(a2, b):
                    if C.compose(j.arr_map[f], z) != C.compose(j.arr_map[g], z2):
                        continue
                    if any(F.maps[f][y] == x and F.maps[g][y] == x2 for y in F.sets[b]):
                        return True
        return False

    return quotient_from_relation(carrier, related, RelationNotTransitive)


def representable_extension_iso(
    j: FinFunctor, d: str, ext: FlatExtendResult
) -> Mapping[str, Mapping[str, str]]:
    """Natural bijection from the extension of Hom(-, d) to Hom(-, j(d)).

    The class of ((a, z: c→j a), h: a→d) is sent to j(h)∘z. Well-definedness,
    bijectivity at every object and naturality are all verified; a failure is
    an implementation bug.
    """
    C = j.target
    target = j.obj_map[d]
    iso: dict[str, dict[str, str]] = {}
    for c in C.objects:
        Q = ext.quotients[c]
        comma = ext.commas[c]
        m: dict[str, str] = {}
        for i, cls in enumerate(Q.classes):
            values = {
                C.compose(j.arr_map[h], comma.components[oid][2]) for oid, h in cls
            }
            if len(values) != 1:
                raise SelfTestFailure("representable comparison is not well defined")
            m[Q.class_id(i)] = values.pop()
        if sorted(m.values()) != sorted(C.hom(c, target)):
            raise SelfTestFailure(f"representable comparison is not bijective at {c!r}")
        iso[c] = m
    for a in C.arrows:
        # presheaf actions: extension along a versus precomposition by a
        for e, v in iso[a.cod].items():
            if iso[a.dom][ext.functor.maps[a.id][e]] != C.compose(v, a.id):
                raise SelfTestFailure("representable comparison is not natural")
    return iso


# -- final functors ------------------------------------------------------------


def is_final(i: FinFunctor) -> tuple[bool, dict]:
    """A functor is final when every comma (a↓i) is nonempty and connected.

    Over sets, the zig-zag form of finality reduces to exactly this classical
    criterion: existence gives nonemptiness, and compatibility of any two
    witnesses along a zig-zag gives connectedness.
    """
    A = i.target
    point = terminal()
    for a in A.objects:
        comma = comma_category(const_functor(point, A, a), i).category
        if not comma.objects:
            return False, {"object": a, "reason": "empty"}
        if not is_connected(comma):
            return False, {"object": a, "reason": "disconnected"}
    return True, {}


def check_finality_theorem(i: FinFunctor, D: SetFunctor) -> bool:
    """Restricting a diagram along a final functor preserves its colimit.

    Computes both colimits and verifies the canonical comparison
    class-of-(b, x) ↦ class-of-(i(b), x) is a bijection of partitions.
    """
    final, _ = is_final(i)
    if not final:
        raise NotFinal("the functor is not final")
    Q1 = colimit(D)
    Q2 = colimit(precompose(D, i))
    assignment: dict[int, int] = {}
    for k, cls in enumerate(Q2.classes):
        images = {Q1.class_of(i.obj_map[b], x) for b, x in cls}
        if len(images) != 1:
            return False
        assignment[k] = images.pop()
    values = list(assignment.values())
    return len(set(values)) == len(values) and set(values) == set(
        range(Q1.num_classes())
    )
