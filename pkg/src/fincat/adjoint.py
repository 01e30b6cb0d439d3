"""The hom-tensor adjunction induced by a functor P from a category C into
presheaves on a category D.

tilde(P, -) sends F: D→Set to the functor c ↦ colim of F over the elements of
the presheaf P(c); r(P, -) sends G: C→Set to d ↦ Nat(tilde(P, Hom(d,-)), G).
The bijection, unit, counit and triangle identities are all materialized on
explicit finite hom-sets, so every adjunction claim here is decidable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .colimits import QuotientSet, colimit, precompose
from .core import FinCat, FinFunctor, opposite, pair_id
from .errors import InvalidSetFunctor, SelfTestFailure
from .setfun import (
    DEFAULT_BUDGET,
    ElementsCategory,
    NatTransformation,
    SetFunctor,
    build_nat,
    build_set_functor,
    compose_nats,
    elements_presheaf,
    nat_transformations,
    yoneda_covariant,
)


@dataclass(frozen=True)
class ProfunctorP:
    """A functor from C into presheaves on D, given objectwise."""

    source: FinCat
    target: FinCat
    #: object of C -> presheaf on D
    values: Mapping[str, SetFunctor]
    #: arrow of C -> natural transformation between the presheaves at its ends
    actions: Mapping[str, NatTransformation]


def build_profunctor(
    C: FinCat,
    D: FinCat,
    values: Mapping[str, SetFunctor],
    actions: Mapping[str, Mapping[str, Mapping[str, str]]],
) -> ProfunctorP:
    """Assemble and validate the functoriality of an objectwise presheaf family."""
    D_op = opposite(D)
    for c in C.objects:
        if c not in values or values[c].base != D_op:
            raise InvalidSetFunctor(f"value at {c!r} is not a presheaf on the target")
    nats: dict[str, NatTransformation] = {}
    for a in C.arrows:
        nats[a.id] = build_nat(values[a.dom], values[a.cod], actions[a.id])
    for c in C.objects:
        i = C.id_of(c)
        for d in D.objects:
            if any(nats[i].components[d][x] != x for x in values[c].sets[d]):
                raise InvalidSetFunctor(f"action of identity {i!r} is not the identity")
    for g, f in C.composable_pairs():
        gf = C.compose(g, f)
        for d in D.objects:
            for x in values[C.dom(f)].sets[d]:
                if nats[gf].components[d][x] != nats[g].components[d][nats[f].components[d][x]]:
                    raise InvalidSetFunctor(
                        f"actions are not functorial on ({g!r}, {f!r}) at {d!r}"
                    )
    return ProfunctorP(C, D, dict(values), nats)


def profunctor_from_functor(f: FinFunctor) -> ProfunctorP:
    """The profunctor c ↦ Hom(f(-), c) induced by f: D→C.

    With this choice, tilde is the left Kan extension along f and r is
    restriction along f.
    """
    D, C = f.source, f.target
    values: dict[str, SetFunctor] = {}
    for c in C.objects:
        sets = {d: C.hom(f.obj_map[d], c) for d in D.objects}
        maps = {
            k.id: {h: C.compose(h, f.arr_map[k.id]) for h in sets[k.cod]}
            for k in D.arrows
        }
        values[c] = build_set_functor(opposite(D), sets, maps)
    actions = {
        a.id: {
            d: {h: C.compose(a.id, h) for h in values[a.dom].sets[d]}
            for d in D.objects
        }
        for a in C.arrows
    }
    return build_profunctor(C, D, values, actions)


# -- the left side: tilde ------------------------------------------------------


@dataclass(frozen=True)
class TildeResult:
    functor: SetFunctor
    quotients: Mapping[str, QuotientSet]
    elements: Mapping[str, ElementsCategory]


def tilde_detailed(P: ProfunctorP, F: SetFunctor) -> TildeResult:
    """F̃(c) = colim of F over the elements of P(c); F̃(f)∘κ_{(d,z)} = κ_{(d,P(f)(z))}."""
    if F.base != P.target:
        raise InvalidSetFunctor("diagram base does not match the profunctor target")
    C = P.source
    elements: dict[str, ElementsCategory] = {}
    quotients: dict[str, QuotientSet] = {}
    for c in C.objects:
        E = elements_presheaf(P.values[c])
        elements[c] = E
        quotients[c] = colimit(precompose(F, E.projection))

    sets = {c: tuple(quotients[c].class_id(i) for i in range(quotients[c].num_classes()))
            for c in C.objects}
    maps: dict[str, dict[str, str]] = {}
    for a in C.arrows:
        Qs, Qt = quotients[a.dom], quotients[a.cod]
        act = P.actions[a.id]
        m: dict[str, str] = {}
        for i, cls in enumerate(Qs.classes):
            targets = set()
            for oid, x in cls:
                d, z = elements[a.dom].components[oid]
                targets.add(Qt.class_of(pair_id(d, act.components[d][z]), x))
            if len(targets) != 1:
                raise SelfTestFailure(f"tilde action of {a.id!r} is not constant on a class")
            m[Qs.class_id(i)] = Qt.class_id(targets.pop())
        maps[a.id] = m
    return TildeResult(build_set_functor(C, sets, maps), quotients, elements)


def tilde(P: ProfunctorP, F: SetFunctor) -> SetFunctor:
    return tilde_detailed(P, F).functor


def tilde_nat(
    P: ProfunctorP,
    theta: NatTransformation,
    source: TildeResult | None = None,
    target: TildeResult | None = None,
) -> NatTransformation:
    """tilde applied to a transformation: the class of ((d,z), x) maps to the
    class of ((d,z), θ_d(x))."""
    src = source or tilde_detailed(P, theta.source)
    tgt = target or tilde_detailed(P, theta.target)
    comps: dict[str, dict[str, str]] = {}
    for c in P.source.objects:
        Qs, Qt = src.quotients[c], tgt.quotients[c]
        m: dict[str, str] = {}
        for i, cls in enumerate(Qs.classes):
            images = set()
            for oid, x in cls:
                d, _z = src.elements[c].components[oid]
                images.add(Qt.class_of(oid, theta.components[d][x]))
            if len(images) != 1:
                raise SelfTestFailure("tilde of a transformation is not well defined")
            m[Qs.class_id(i)] = Qt.class_id(images.pop())
        comps[c] = m
    return build_nat(src.functor, tgt.functor, comps)


def yoneda_elem_nat(F: SetFunctor, d: str, x: str) -> NatTransformation:
    """The transformation Hom(d,-) → F picking out x ∈ F(d)."""
    Yd = yoneda_covariant(F.base, d)
    comps = {c: {h: F.maps[h][x] for h in Yd.sets[c]} for c in F.base.objects}
    return build_nat(Yd, F, comps)


# -- the right side: r ---------------------------------------------------------


@dataclass(frozen=True)
class RResult:
    functor: SetFunctor
    #: d -> serialized transformation id -> the transformation tilde(Hom(d,-)) → G
    decode: Mapping[str, Mapping[str, NatTransformation]]
    #: d -> tilde of the co-representable at d
    tilde_y: Mapping[str, TildeResult]


def r_detailed(P: ProfunctorP, G: SetFunctor, budget: int = DEFAULT_BUDGET) -> RResult:
    """G_r(d) = Nat(tilde(Hom(d,-)), G), with g: d→d' acting by precomposition
    with tilde of (- ∘ g)."""
    if G.base != P.source:
        raise InvalidSetFunctor("diagram base does not match the profunctor source")
    C, D = P.source, P.target
    tilde_y: dict[str, TildeResult] = {}
    decode: dict[str, dict[str, NatTransformation]] = {}
    for d in D.objects:
        tilde_y[d] = tilde_detailed(P, yoneda_covariant(D, d))
        decode[d] = {
            t.serialize(): t for t in nat_transformations(tilde_y[d].functor, G, budget)
        }
    sets = {d: tuple(sorted(decode[d])) for d in D.objects}
    maps: dict[str, dict[str, str]] = {}
    for g in D.arrows:
        d, d2 = g.dom, g.cod
        # Hom(d',-) → Hom(d,-), h ↦ h∘g, then apply tilde
        yg = build_nat(
            yoneda_covariant(D, d2),
            yoneda_covariant(D, d),
            {
                c: {h: D.compose(h, g.id) for h in D.hom(d2, c)}
                for c in D.objects
            },
        )
        tyg = tilde_nat(P, yg, tilde_y[d2], tilde_y[d])
        m: dict[str, str] = {}
        for sid in sets[d]:
            out = compose_nats(decode[d][sid], tyg).serialize()
            if out not in decode[d2]:
                raise SelfTestFailure(f"r action of {g.id!r} leaves the enumerated hom-set")
            m[sid] = out
        maps[g.id] = m
    return RResult(build_set_functor(D, sets, maps), decode, tilde_y)


def r(P: ProfunctorP, G: SetFunctor, budget: int = DEFAULT_BUDGET) -> SetFunctor:
    return r_detailed(P, G, budget).functor


# -- the adjunction ------------------------------------------------------------


@dataclass(frozen=True)
class AdjunctionData:
    tilde: TildeResult
    r: RResult
    #: all transformations tilde(F) → G
    left: tuple[NatTransformation, ...]
    #: all transformations F → r(G)
    right: tuple[NatTransformation, ...]
    #: serialized left -> serialized right, and back
    tau: Mapping[str, str]
    chi: Mapping[str, str]


def _tau_one(
    P: ProfunctorP, F: SetFunctor, TF: TildeResult, R: RResult, alpha: NatTransformation
) -> NatTransformation:
    comps: dict[str, dict[str, str]] = {}
    for d in P.target.objects:
        m: dict[str, str] = {}
        for x in F.sets[d]:
            ax = tilde_nat(P, yoneda_elem_nat(F, d, x), R.tilde_y[d], TF)
            m[x] = compose_nats(alpha, ax).serialize()
        comps[d] = m
    return build_nat(F, R.functor, comps)


def _chi_one(
    P: ProfunctorP, TF: TildeResult, R: RResult, G: SetFunctor, beta: NatTransformation
) -> NatTransformation:
    comps: dict[str, dict[str, str]] = {}
    for c in P.source.objects:
        Q = TF.quotients[c]
        m: dict[str, str] = {}
        for i, cls in enumerate(Q.classes):
            values = set()
            for oid, x in cls:
                d, z = TF.elements[c].components[oid]
                theta = R.decode[d][beta.components[d][x]]
                Qy = R.tilde_y[d].quotients[c]
                eid = Qy.class_id(Qy.class_of(pair_id(d, z), P.target.identity[d]))
                values.add(theta.components[c][eid])
            if len(values) != 1:
                raise SelfTestFailure("hom-bijection inverse is not well defined")
            m[Q.class_id(i)] = values.pop()
        comps[c] = m
    return build_nat(TF.functor, G, comps)


def adjunction_bijection(
    P: ProfunctorP, F: SetFunctor, G: SetFunctor, budget: int = DEFAULT_BUDGET
) -> AdjunctionData:
    """Materialize the bijection Nat(F̃, G) ≅ Nat(F, G_r) and verify it is one."""
    TF = tilde_detailed(P, F)
    R = r_detailed(P, G, budget)
    left = tuple(nat_transformations(TF.functor, G, budget))
    right = tuple(nat_transformations(F, R.functor, budget))
    tau: dict[str, str] = {}
    chi: dict[str, str] = {}
    rights = {b.serialize() for b in right}
    lefts = {a.serialize() for a in left}
    for alpha in left:
        out = _tau_one(P, F, TF, R, alpha).serialize()
        if out not in rights:
            raise SelfTestFailure("forward image is not in the enumerated hom-set")
        tau[alpha.serialize()] = out
    for beta in right:
        out = _chi_one(P, TF, R, G, beta).serialize()
        if out not in lefts:
            raise SelfTestFailure("backward image is not in the enumerated hom-set")
        chi[beta.serialize()] = out
    for a, b in tau.items():
        if chi[b] != a:
            raise SelfTestFailure("hom-bijection maps are not mutually inverse")
    for b, a in chi.items():
        if tau[a] != b:
            raise SelfTestFailure("hom-bijection maps are not mutually inverse")
    return AdjunctionData(TF, R, left, right, tau, chi)


def unit(P: ProfunctorP, F: SetFunctor, budget: int = DEFAULT_BUDGET) -> NatTransformation:
    """η: F → r(tilde(F)), x ∈ F(d) ↦ tilde of the transformation picking x."""
    TF = tilde_detailed(P, F)
    R = r_detailed(P, TF.functor, budget)
    comps: dict[str, dict[str, str]] = {}
    for d in P.target.objects:
        m: dict[str, str] = {}
        for x in F.sets[d]:
            sid = tilde_nat(P, yoneda_elem_nat(F, d, x), R.tilde_y[d], TF).serialize()
            if sid not in R.decode[d]:
                raise SelfTestFailure("unit component leaves the enumerated hom-set")
            m[x] = sid
        comps[d] = m
    return build_nat(F, R.functor, comps)


def counit(P: ProfunctorP, G: SetFunctor, budget: int = DEFAULT_BUDGET) -> NatTransformation:
    """ε: tilde(r(G)) → G, evaluating a transformation at the unit element of
    its own co-representable."""
    R = r_detailed(P, G, budget)
    T = tilde_detailed(P, R.functor)
    comps: dict[str, dict[str, str]] = {}
    for c in P.source.objects:
        Q = T.quotients[c]
        m: dict[str, str] = {}
        for i, cls in enumerate(Q.classes):
            values = set()
            for oid, sid in cls:
                d, z = T.elements[c].components[oid]
                theta = R.decode[d][sid]
                Qy = R.tilde_y[d].quotients[c]
                eid = Qy.class_id(Qy.class_of(pair_id(d, z), P.target.identity[d]))
                values.add(theta.components[c][eid])
            if len(values) != 1:
                raise SelfTestFailure("counit is not well defined on a class")
            m[Q.class_id(i)] = values.pop()
        comps[c] = m
    return build_nat(T.functor, G, comps)


def verify_triangles(
    P: ProfunctorP, F: SetFunctor, G: SetFunctor, budget: int = DEFAULT_BUDGET
) -> bool:
    """Both triangle identities, checked component by component."""
    # ε_{F̃} ∘ tilde(η_F) = id
    TF = tilde_detailed(P, F)
    eta = unit(P, F, budget)
    TR = tilde_detailed(P, eta.target)
    teta = tilde_nat(P, eta, TF, TR)
    eps_tf = counit(P, TF.functor, budget)
    first = compose_nats(eps_tf, teta)
    for c in P.source.objects:
        for e in TF.functor.sets[c]:
            if first.components[c][e] != e:
                return False

    # r(ε_G) ∘ η_{G_r} = id
    RG = r_detailed(P, G, budget)
    eps = counit(P, G, budget)
    eta_r = unit(P, RG.functor, budget)
    R2 = r_detailed(P, eps.source, budget)
    for d in P.target.objects:
        for sid in RG.functor.sets[d]:
            mid = eta_r.components[d][sid]
            out = compose_nats(eps, R2.decode[d][mid]).serialize()
            if out != sid:
                return False
    return True


def unit_monic_check(
    P: ProfunctorP, F: SetFunctor, b: str, budget: int = DEFAULT_BUDGET
) -> bool:
    """Injectivity of the unit at b, cross-checked against the criterion that
    tilde is injective on transformations out of the co-representable at b."""
    eta = unit(P, F, budget)
    values = list(eta.components[b].values())
    direct = len(set(values)) == len(values)

    TF = tilde_detailed(P, F)
    Tyb = tilde_detailed(P, yoneda_covariant(P.target, b))
    images = [
        tilde_nat(P, t, Tyb, TF).serialize()
        for t in nat_transformations(yoneda_covariant(P.target, b), F, budget)
    ]
    via_tilde = len(set(images)) == len(images)
    if direct != via_tilde:
        raise SelfTestFailure(
            "injectivity of the unit disagrees with injectivity of tilde on "
            "transformations out of the co-representable"
        )
    return direct
