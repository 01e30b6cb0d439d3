"""Colimits and limits of finite-set diagrams, tensor products, and the
filtered fast path.

A colimit is computed as the coequalizer of the two evaluation maps out of
the tagged coproduct ⨿_{u: i→j} H(i) ⇉ ⨿_i H(i): the equivalence relation on
the coproduct is generated by the pairs ((i, x), (j, H(u)(x))). Union-find
with path compression is the normative closure algorithm; class
representatives are lexicographic minima so outputs are deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .core import FinCat, FinFunctor, is_filtered, opposite, pair_id
from .errors import (
    CommutationFailure,
    InvalidSetFunctor,
    NotFiltered,
    SelfTestFailure,
)
from .setfun import SetFunctor, build_set_functor

Tagged = tuple[str, str]


@dataclass(frozen=True)
class QuotientSet:
    """A finite set presented as a quotient of a tagged disjoint union."""

    carrier: tuple[Tagged, ...]
    classes: tuple[tuple[Tagged, ...], ...]
    reps: tuple[Tagged, ...]
    #: tag -> element -> class index
    injections: Mapping[str, Mapping[str, int]]

    def class_of(self, tag: str, elem: str) -> int:
        return self.injections[tag][elem]

    def class_id(self, index: int) -> str:
        return pair_id(*self.reps[index])

    def num_classes(self) -> int:
        return len(self.classes)

    def partition(self) -> frozenset[frozenset[Tagged]]:
        return frozenset(frozenset(cls) for cls in self.classes)


def _find(parent: dict[Tagged, Tagged], x: Tagged) -> Tagged:
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:  # path compression
        parent[x], x = root, parent[x]
    return root


def _union(parent: dict[Tagged, Tagged], a: Tagged, b: Tagged) -> None:
    ra, rb = _find(parent, a), _find(parent, b)
    if ra == rb:
        return
    if rb < ra:
        ra, rb = rb, ra
    parent[rb] = ra  # smaller root wins, so the root is the lexicographic min


def _assemble(carrier: list[Tagged], groups: Iterable[Iterable[Tagged]]) -> QuotientSet:
    classes = sorted((tuple(sorted(g)) for g in groups), key=lambda c: c[0])
    reps = tuple(c[0] for c in classes)
    injections: dict[str, dict[str, int]] = {}
    for idx, cls in enumerate(classes):
        for tag, elem in cls:
            injections.setdefault(tag, {})[elem] = idx
    covered = sum(len(c) for c in classes)
    if covered != len(carrier) or len(set(carrier)) != len(carrier):
        raise SelfTestFailure("quotient classes do not partition the carrier")
    return QuotientSet(tuple(carrier), tuple(classes), reps, injections)


def quotient_from_pairs(
    carrier: Iterable[Tagged], pairs: Iterable[tuple[Tagged, Tagged]]
) -> QuotientSet:
    """Equivalence closure of the generating pairs, via union-find."""
    carrier = list(carrier)
    parent = {x: x for x in carrier}
    for a, b in pairs:
        _union(parent, a, b)
    groups: dict[Tagged, list[Tagged]] = {}
    for x in carrier:
        groups.setdefault(_find(parent, x), []).append(x)
    return _assemble(carrier, groups.values())


def _diagram_pairs(H: SetFunctor) -> list[tuple[Tagged, Tagged]]:
    return [
        ((a.dom, x), (a.cod, H.maps[a.id][x]))
        for a in H.base.arrows
        for x in H.sets[a.dom]
    ]


def colimit(H: SetFunctor) -> QuotientSet:
    """Colimit of a finite-set diagram as an explicit coequalizer quotient."""
    carrier = [(i, x) for i in H.base.objects for x in H.sets[i]]
    return quotient_from_pairs(carrier, _diagram_pairs(H))


def quotient_from_relation(
    carrier: Iterable[Tagged],
    related: Callable[[Tagged, Tagged], bool],
    on_violation: Callable[[str], Exception],
) -> QuotientSet:
    """Quotient by a relation claimed to be an equivalence already.

    No closure of any kind is taken: reflexivity, symmetry and transitivity
    are verified exhaustively, and a violation raises the supplied error.
    """
    carrier = list(carrier)
    n = len(carrier)
    rel = [[related(carrier[a], carrier[b]) for b in range(n)] for a in range(n)]
    for a in range(n):
        if not rel[a][a]:
            raise on_violation(f"relation is not reflexive at {carrier[a]}")
        for b in range(n):
            if rel[a][b] != rel[b][a]:
                raise on_violation(f"relation is not symmetric on {carrier[a]}, {carrier[b]}")
            for c in range(n):
                if rel[a][b] and rel[b][c] and not rel[a][c]:
                    raise on_violation(
                        "relation is not transitive: "
                        f"{carrier[a]} ~ {carrier[b]} ~ {carrier[c]}"
                    )
    seen: set[int] = set()
    groups: list[list[Tagged]] = []
    for a in range(n):
        if a in seen:
            continue
        members = [b for b in range(n) if rel[a][b]]
        seen.update(members)
        groups.append([carrier[b] for b in members])
    return _assemble(carrier, groups)


def colimit_filtered(H: SetFunctor) -> QuotientSet:
    """Colimit over a filtered base by the pairwise single-cocone test.

    (i, x) ~ (j, y) iff there are u: i→k, v: j→k with H(u)(x) = H(v)(y).
    No transitive closure is taken; that the pairwise relation is already an
    equivalence relation over a filtered base is re-verified on every call.
    """
    C = H.base
    if not is_filtered(C):
        raise NotFiltered("the base category of the diagram is not filtered")
    carrier = [(i, x) for i in C.objects for x in H.sets[i]]

    def related(p: Tagged, q: Tagged) -> bool:
        (i, x), (j, y) = p, q
        for k in C.objects:
            for u in C.hom(i, k):
                hux = H.maps[u][x]
                for v in C.hom(j, k):
                    if hux == H.maps[v][y]:
                        return True
        return False

    return quotient_from_relation(carrier, related, SelfTestFailure)


@dataclass(frozen=True)
class LimitResult:
    """The limit of a finite-set diagram: all compatible families."""

    base: FinCat
    families: tuple[Mapping[str, str], ...]
    ids: tuple[str, ...]

    def family(self, fid: str) -> Mapping[str, str]:
        return self.families[self.ids.index(fid)]

    def project(self, fid: str, obj: str) -> str:
        return self.family(fid)[obj]


def family_id(fam: Mapping[str, str]) -> str:
    return "{" + ";".join(f"{c}:{fam[c]}" for c in sorted(fam)) + "}"


def limit(H: SetFunctor) -> LimitResult:
    """All families (x_i) in ∏ H(i) with H(u)(x_i) = x_j for every u: i→j."""
    C = H.base
    objs = sorted(C.objects)
    families: list[dict[str, str]] = []
    for choice in itertools.product(*(H.sets[c] for c in objs)):
        fam = dict(zip(objs, choice))
        if all(H.maps[a.id][fam[a.dom]] == fam[a.cod] for a in C.arrows):
            families.append(fam)
    families.sort(key=family_id)
    return LimitResult(C, tuple(families), tuple(family_id(f) for f in families))


# -- restriction along a functor ----------------------------------------------


def precompose(H: SetFunctor, proj: FinFunctor) -> SetFunctor:
    """H ∘ proj for covariant H on the target of proj."""
    if H.base != proj.target:
        raise InvalidSetFunctor("functor target does not match the diagram base")
    E = proj.source
    return build_set_functor(
        E,
        {e: H.sets[proj.obj_map[e]] for e in E.objects},
        {a.id: H.maps[proj.arr_map[a.id]] for a in E.arrows},
    )


def precompose_presheaf(F: SetFunctor, proj: FinFunctor) -> SetFunctor:
    """F ∘ proj for a presheaf F on the target of proj; a presheaf on the source."""
    if F.base != opposite(proj.target):
        raise InvalidSetFunctor("functor target does not match the presheaf base")
    E = proj.source
    return build_set_functor(
        opposite(E),
        {e: F.sets[proj.obj_map[e]] for e in E.objects},
        {a.id: F.maps[proj.arr_map[a.id]] for a in E.arrows},
    )


# -- tensor product ------------------------------------------------------------


def tensor(F: SetFunctor, P: SetFunctor) -> QuotientSet:
    """Tensor product F ⊗ P of a presheaf with a covariant functor on C.

    Quotient of ⨿_c F(c)×P(c) by the relation generated by
    (F(f)(x'), y) at c  ~  (x', P(f)(y)) at c'  for every f: c→c'.
    Carrier tags are objects c, carrier elements are rendered pairs (x,y).
    """
    C = P.base
    if F.base != opposite(C):
        raise InvalidSetFunctor("tensor needs a presheaf and a covariant functor on one category")
    carrier = [
        (c, pair_id(x, y)) for c in C.objects for x in F.sets[c] for y in P.sets[c]
    ]
    pairs = [
        ((a.dom, pair_id(F.maps[a.id][x2], y)), (a.cod, pair_id(x2, P.maps[a.id][y])))
        for a in C.arrows
        for x2 in F.sets[a.cod]
        for y in P.sets[a.dom]
    ]
    return quotient_from_pairs(carrier, pairs)


def tensor_commute_check(F: SetFunctor, P: SetFunctor) -> dict:
    """Verify the three constructions of F ⊗ P induce one partition.

    Computes the tensor quotient, the colimit of F restricted along the
    projection from the elements of P, and the colimit of P restricted along
    the projection from the elements of F; all three are partitions of the
    common carrier {(c, (x, y))}. A disagreement is an implementation bug and
    raises CommutationFailure; this operation exists as a permanent self-test.
    """
    from .setfun import elements_covariant, elements_presheaf

    T = tensor(F, P)

    EP = elements_covariant(P)
    QP = colimit(precompose_presheaf(F, EP.projection))
    part_p = frozenset(
        frozenset((EP.components[oid][0], pair_id(x, EP.components[oid][1])) for oid, x in cls)
        for cls in QP.classes
    )

    EF = elements_presheaf(F)
    QF = colimit(precompose(P, EF.projection))
    part_f = frozenset(
        frozenset((EF.components[oid][0], pair_id(EF.components[oid][1], y)) for oid, y in cls)
        for cls in QF.classes
    )

    part_t = T.partition()
    carrier = frozenset(T.carrier)
    for name, part in (("elements-of-P route", part_p), ("elements-of-F route", part_f)):
        if frozenset(x for cls in part for x in cls) != carrier:
            raise CommutationFailure(f"{name} produced a different carrier")
        if part != part_t:
            raise CommutationFailure(f"{name} partition disagrees with the tensor quotient")

    # identification of the class indexings via shared members
    by_member_p = {m: i for i, cls in enumerate(sorted(part_p, key=min)) for m in cls}
    by_member_f = {m: i for i, cls in enumerate(sorted(part_f, key=min)) for m in cls}
    identification = {
        T.class_id(i): [by_member_p[cls[0]], by_member_f[cls[0]]]
        for i, cls in enumerate(T.classes)
    }
    return {"agrees": True, "classes": T.num_classes(), "identification": identification}


# -- universality oracle -------------------------------------------------------


def verify_universal_property(H: SetFunctor, Q: QuotientSet) -> bool:
    """Check that Q is the universal cocone under H by brute force.

    First the cocone law itself, then exhaustive enumeration of two-valued
    cocones: every function on the carrier constant across the generating
    pairs must factor (uniquely, by surjectivity) through the classes of Q.
    Two-valued targets suffice to separate any two distinct partitions.
    """
    carrier = [(i, x) for i in H.base.objects for x in H.sets[i]]
    if sorted(carrier) != sorted(Q.carrier):
        return False
    index = {m: k for k, m in enumerate(carrier)}
    constraints = sorted(
        {(index[a], index[b]) for a, b in _diagram_pairs(H) if index[a] != index[b]}
    )
    for a, b in constraints:
        if Q.class_of(*carrier[a]) != Q.class_of(*carrier[b]):
            return False  # q is not a cocone
    n = len(carrier)
    if n > 14:
        raise SelfTestFailure("universality oracle is capped at 14 carrier elements")
    cls_of = [Q.class_of(*m) for m in carrier]
    for mask in range(1 << n):
        if any((mask >> a ^ mask >> b) & 1 for a, b in constraints):
            continue  # not a cocone
        by_class: dict[int, int] = {}
        for k in range(n):
            bit = (mask >> k) & 1
            if by_class.setdefault(cls_of[k], bit) != bit:
                return False  # cocone does not factor through Q
    return True
