"""HTTP service exposing the library operations.

Every endpoint takes the same JSON shapes the CLI reads from files, validated
through pydantic models, and returns the same deterministic report objects.
Domain errors map to 422, exhausted search budgets to 429.
"""

from __future__ import annotations

from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import jsonio
from .adjoint import (
    adjunction_bijection,
    counit,
    r,
    tilde,
    unit,
    unit_monic_check,
)
from .colimits import (
    colimit,
    colimit_filtered,
    limit,
    tensor,
    tensor_commute_check,
    verify_universal_property,
)
from .core import comma_category, is_connected, is_filtered, opposite
from .errors import FincatError, SearchBudgetExceeded
from .flatkan import (
    check_finality_theorem,
    flat_extend,
    flat_extend_quotient,
    is_final,
    is_flat,
    is_flat_via_elements,
    lan,
    ran,
)
from .karoubi import (
    equivalent_categories,
    idempotents,
    is_cauchy_complete,
    karoubi_envelope,
)
from .selftest import run_selftest
from .setfun import (
    discrete_opfibration,
    elements_covariant,
    elements_presheaf,
    nat_transformations,
    yoneda,
    yoneda_covariant,
)
from .sites import (
    dense_restriction_equivalence,
    generate_topology,
    irreducibles,
    is_rigid,
    is_sheaf,
    is_topology,
)

DEFAULT_BUDGET = 10_000_000

app = FastAPI(title="fincat", version="0.1.0")


class ArrowModel(BaseModel):
    id: str
    dom: str
    cod: str


class ComposeEntry(BaseModel):
    g: str
    f: str
    gf: str


class CategoryModel(BaseModel):
    objects: list[str]
    arrows: list[ArrowModel]
    identity: dict[str, str]
    compose: list[ComposeEntry] = Field(default_factory=list)

    def build(self):
        return jsonio.load_category(self.model_dump())


class FunctorModel(BaseModel):
    source: CategoryModel
    target: CategoryModel
    obj_map: dict[str, str]
    arr_map: dict[str, str]

    def build(self):
        return jsonio.load_functor(self.model_dump())


class SetFunctorModel(BaseModel):
    base: CategoryModel
    variance: Literal["covariant", "presheaf"] = "covariant"
    sets: dict[str, list[str]]
    maps: dict[str, dict[str, str]]

    def build(self):
        return jsonio.load_set_functor(self.model_dump())


class TopologyModel(BaseModel):
    covers: dict[str, list[list[str]]] = Field(default_factory=dict)


class PresheafValue(BaseModel):
    sets: dict[str, list[str]]
    maps: dict[str, dict[str, str]]


class ProfunctorModel(BaseModel):
    source: CategoryModel
    target: CategoryModel
    values: dict[str, PresheafValue]
    actions: dict[str, dict[str, dict[str, str]]]

    def build(self):
        return jsonio.load_profunctor(self.model_dump())


class FunctorPair(BaseModel):
    left: FunctorModel
    right: FunctorModel


class SetFunctorPair(BaseModel):
    first: SetFunctorModel
    second: SetFunctorModel
    budget: int = DEFAULT_BUDGET


class YonedaRequest(BaseModel):
    category: CategoryModel
    obj: str
    covariant: bool = False


class ExtendRequest(BaseModel):
    embedding: FunctorModel
    presheaf: SetFunctorModel
    obj: Optional[str] = None


class KanRequest(BaseModel):
    functor: FunctorModel
    diagram: SetFunctorModel


class FinalityRequest(BaseModel):
    functor: FunctorModel
    diagram: Optional[SetFunctorModel] = None


class AdjointRequest(BaseModel):
    profunctor: ProfunctorModel
    F: Optional[SetFunctorModel] = None
    G: Optional[SetFunctorModel] = None
    obj: Optional[str] = None
    budget: int = DEFAULT_BUDGET


class SiteRequest(BaseModel):
    category: CategoryModel
    topology: TopologyModel
    presheaf: Optional[SetFunctorModel] = None
    on_irreducibles: Optional[SetFunctorModel] = None


class CategoryPair(BaseModel):
    first: CategoryModel
    second: CategoryModel
    budget: int = DEFAULT_BUDGET


class SelfTestRequest(BaseModel):
    seed: int = 0
    trials: int = 20


def _guard(fn):
    try:
        return fn()
    except SearchBudgetExceeded as exc:
        raise HTTPException(status_code=429, detail=exc.payload())
    except FincatError as exc:
        raise HTTPException(status_code=422, detail=exc.payload())


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/selftest")
def selftest(req: SelfTestRequest):
    return _guard(lambda: run_selftest(seed=req.seed, trials=req.trials))


# -- categories ----------------------------------------------------------------


@app.post("/cat/validate")
def cat_validate(req: CategoryModel):
    C = _guard(req.build)
    return {"valid": True, "objects": len(C.objects), "arrows": len(C.arrows)}


@app.post("/cat/opposite")
def cat_opposite(req: CategoryModel):
    return {"category": jsonio.dump_category(_guard(lambda: opposite(req.build())))}


@app.post("/cat/connected")
def cat_connected(req: CategoryModel):
    return {"connected": _guard(lambda: is_connected(req.build()))}


@app.post("/cat/filtered")
def cat_filtered(req: CategoryModel):
    return {"filtered": _guard(lambda: is_filtered(req.build()))}


@app.post("/cat/comma")
def cat_comma(req: FunctorPair):
    def go():
        comma = comma_category(req.left.build(), req.right.build())
        return {
            "category": jsonio.dump_category(comma.category),
            "left": dict(comma.left.obj_map),
            "right": dict(comma.right.obj_map),
        }

    return _guard(go)


# -- set functors --------------------------------------------------------------


@app.post("/setfun/validate")
def setfun_validate(req: SetFunctorModel):
    _guard(req.build)
    return {"valid": True}


@app.post("/setfun/elements")
def setfun_elements(req: SetFunctorModel):
    def go():
        F = req.build()
        E = elements_presheaf(F) if req.variance == "presheaf" else elements_covariant(F)
        return {
            "category": jsonio.dump_category(E.category),
            "projection": dict(E.projection.obj_map),
        }

    return _guard(go)


@app.post("/setfun/opfib")
def setfun_opfib(req: SetFunctorModel):
    def go():
        out = discrete_opfibration(req.build())
        return {
            "category": jsonio.dump_category(out.category),
            "projection": dict(out.projection.obj_map),
            "isomorphic_to_elements": True,
        }

    return _guard(go)


@app.post("/setfun/yoneda")
def setfun_yoneda(req: YonedaRequest):
    def go():
        C = req.category.build()
        if req.covariant:
            return {
                "set_functor": jsonio.dump_set_functor(
                    yoneda_covariant(C, req.obj), "covariant"
                )
            }
        return {"set_functor": jsonio.dump_set_functor(yoneda(C, req.obj), "presheaf")}

    return _guard(go)


@app.post("/setfun/nats")
def setfun_nats(req: SetFunctorPair):
    def go():
        nats = nat_transformations(req.first.build(), req.second.build(), req.budget)
        return {"count": len(nats), "transformations": [t.serialize() for t in nats]}

    return _guard(go)


# -- colimits and limits -------------------------------------------------------


@app.post("/colim/compute")
def colim_compute(req: SetFunctorModel):
    return {"quotient": jsonio.dump_quotient(_guard(lambda: colimit(req.build())))}


@app.post("/colim/filtered")
def colim_filtered(req: SetFunctorModel):
    return {
        "quotient": jsonio.dump_quotient(_guard(lambda: colimit_filtered(req.build())))
    }


@app.post("/colim/universal")
def colim_universal(req: SetFunctorModel):
    def go():
        H = req.build()
        return {"universal": verify_universal_property(H, colimit(H))}

    return _guard(go)


@app.post("/limit/compute")
def limit_compute(req: SetFunctorModel):
    def go():
        L = limit(req.build())
        return {"count": len(L.families), "families": list(L.ids)}

    return _guard(go)


@app.post("/tensor/compute")
def tensor_compute(req: SetFunctorPair):
    return {
        "quotient": jsonio.dump_quotient(
            _guard(lambda: tensor(req.first.build(), req.second.build()))
        )
    }


@app.post("/tensor/commute")
def tensor_commute(req: SetFunctorPair):
    return _guard(lambda: tensor_commute_check(req.first.build(), req.second.build()))


# -- flatness and Kan extensions -----------------------------------------------


@app.post("/flat/check")
def flat_check(req: SetFunctorModel):
    flat, cert = _guard(lambda: is_flat(req.build()))
    return {"flat": flat, "certificate": cert}


@app.post("/flat/elements")
def flat_elements(req: SetFunctorModel):
    return {"flat": _guard(lambda: is_flat_via_elements(req.build()))}


@app.post("/flat/extend")
def flat_extend_endpoint(req: ExtendRequest):
    def go():
        out = flat_extend(req.embedding.build(), req.presheaf.build())
        return {
            "set_functor": jsonio.dump_set_functor(out.functor, "presheaf"),
            "chi": {d: dict(sorted(m.items())) for d, m in out.chi.items()},
        }

    return _guard(go)


@app.post("/flat/quotient")
def flat_quotient(req: ExtendRequest):
    def go():
        if req.obj is None:
            raise HTTPException(status_code=422, detail="obj is required")
        Q = flat_extend_quotient(req.embedding.build(), req.presheaf.build(), req.obj)
        return {"quotient": jsonio.dump_quotient(Q)}

    return _guard(go)


@app.post("/kan/lan")
def kan_lan(req: KanRequest):
    return {
        "set_functor": jsonio.dump_set_functor(
            _guard(lambda: lan(req.functor.build(), req.diagram.build())), "covariant"
        )
    }


@app.post("/kan/ran")
def kan_ran(req: KanRequest):
    return {
        "set_functor": jsonio.dump_set_functor(
            _guard(lambda: ran(req.functor.build(), req.diagram.build())), "covariant"
        )
    }


@app.post("/final/check")
def final_check(req: FinalityRequest):
    final, cert = _guard(lambda: is_final(req.functor.build()))
    return {"final": final, "certificate": cert}


@app.post("/final/theorem")
def final_theorem(req: FinalityRequest):
    def go():
        if req.diagram is None:
            raise HTTPException(status_code=422, detail="diagram is required")
        return {
            "colimits_agree": check_finality_theorem(
                req.functor.build(), req.diagram.build()
            )
        }

    return _guard(go)


# -- the adjunction ------------------------------------------------------------


@app.post("/adjoint/tilde")
def adjoint_tilde(req: AdjointRequest):
    def go():
        return {
            "set_functor": jsonio.dump_set_functor(
                tilde(req.profunctor.build(), req.F.build()), "covariant"
            )
        }

    return _guard(go)


@app.post("/adjoint/r")
def adjoint_r(req: AdjointRequest):
    def go():
        return {
            "set_functor": jsonio.dump_set_functor(
                r(req.profunctor.build(), req.G.build(), req.budget), "covariant"
            )
        }

    return _guard(go)


@app.post("/adjoint/bijection")
def adjoint_bijection(req: AdjointRequest):
    def go():
        data = adjunction_bijection(
            req.profunctor.build(), req.F.build(), req.G.build(), req.budget
        )
        return {
            "left_size": len(data.left),
            "right_size": len(data.right),
            "tau": dict(sorted(data.tau.items())),
        }

    return _guard(go)


@app.post("/adjoint/unit")
def adjoint_unit(req: AdjointRequest):
    def go():
        eta = unit(req.profunctor.build(), req.F.build(), req.budget)
        return {
            "components": {c: dict(sorted(m.items())) for c, m in eta.components.items()}
        }

    return _guard(go)


@app.post("/adjoint/counit")
def adjoint_counit(req: AdjointRequest):
    def go():
        eps = counit(req.profunctor.build(), req.G.build(), req.budget)
        return {
            "components": {c: dict(sorted(m.items())) for c, m in eps.components.items()}
        }

    return _guard(go)


@app.post("/adjoint/monic")
def adjoint_monic(req: AdjointRequest):
    def go():
        if req.obj is None:
            raise HTTPException(status_code=422, detail="obj is required")
        return {
            "monic": unit_monic_check(
                req.profunctor.build(), req.F.build(), req.obj, req.budget
            )
        }

    return _guard(go)


# -- sites ---------------------------------------------------------------------


@app.post("/site/check")
def site_check(req: SiteRequest):
    def go():
        C = req.category.build()
        J = jsonio.load_topology(C, req.topology.model_dump())
        ok, report = is_topology(J)
        return {"topology": ok, "violation": report}

    return _guard(go)


@app.post("/site/generate")
def site_generate(req: SiteRequest):
    def go():
        C = req.category.build()
        J = generate_topology(C, req.topology.covers)
        return {"topology": jsonio.dump_topology(J)}

    return _guard(go)


@app.post("/site/irreducibles")
def site_irreducibles(req: SiteRequest):
    def go():
        C = req.category.build()
        J = jsonio.load_topology(C, req.topology.model_dump())
        return {"irreducibles": irreducibles(C, J)}

    return _guard(go)


@app.post("/site/rigid")
def site_rigid(req: SiteRequest):
    def go():
        C = req.category.build()
        J = jsonio.load_topology(C, req.topology.model_dump())
        ok, witness = is_rigid(C, J)
        return {"rigid": ok, **witness}

    return _guard(go)


@app.post("/site/sheaf")
def site_sheaf(req: SiteRequest):
    def go():
        C = req.category.build()
        J = jsonio.load_topology(C, req.topology.model_dump())
        ok, witness = is_sheaf(C, req.presheaf.build(), J)
        return {"sheaf": ok, "violation": witness}

    return _guard(go)


@app.post("/site/comparison")
def site_comparison(req: SiteRequest):
    def go():
        C = req.category.build()
        J = jsonio.load_topology(C, req.topology.model_dump())
        G = req.on_irreducibles.build() if req.on_irreducibles else None
        return dense_restriction_equivalence(C, J, req.presheaf.build(), G)

    return _guard(go)


# -- karoubi and equivalence ---------------------------------------------------


@app.post("/karoubi/idempotents")
def karoubi_idempotents(req: CategoryModel):
    def go():
        return {
            "idempotents": [
                {"object": c, "arrow": e, "identity": flag}
                for c, e, flag in idempotents(req.build())
            ]
        }

    return _guard(go)


@app.post("/karoubi/envelope")
def karoubi_env(req: CategoryModel):
    def go():
        env, embed = karoubi_envelope(req.build())
        return {
            "category": jsonio.dump_category(env),
            "embedding": dict(embed.obj_map),
        }

    return _guard(go)


@app.post("/karoubi/complete")
def karoubi_complete(req: CategoryModel):
    return {"cauchy_complete": _guard(lambda: is_cauchy_complete(req.build()))}


@app.post("/equiv/check")
def equiv_check(req: CategoryPair):
    def go():
        result = equivalent_categories(req.first.build(), req.second.build(), req.budget)
        if result is None:
            return {"equivalent": False}
        return {
            "equivalent": True,
            "forward_objects": dict(result.forward.obj_map),
            "backward_objects": dict(result.backward.obj_map),
            "unit": dict(result.unit),
            "counit": dict(result.counit),
        }

    return _guard(go)
