"""Loading and dumping of every value kind used by the CLI and the service.

All dumps are deterministic: keys are sorted, class members are in
lexicographic order, and the same value always serializes to the same bytes.
"""

from __future__ import annotations

import json
from typing import Mapping

from .adjoint import ProfunctorP, build_profunctor
from .colimits import QuotientSet
from .core import FinCat, FinFunctor, build_functor, opposite, validate_category
from .errors import InvalidCategory, InvalidSetFunctor
from .setfun import SetFunctor, build_set_functor
from .sites import Sieve, Topology, sieve_generate


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# -- categories and functors ---------------------------------------------------


def load_category(raw: Mapping) -> FinCat:
    return validate_category(raw)


def dump_category(C: FinCat) -> dict:
    return {
        "objects": list(C.objects),
        "arrows": [{"id": a.id, "dom": a.dom, "cod": a.cod} for a in C.arrows],
        "identity": dict(C.identity),
        "compose": sorted(
            ({"g": g, "f": f, "gf": gf} for (g, f), gf in C.table.items()),
            key=lambda e: (e["g"], e["f"]),
        ),
    }


def load_functor(raw: Mapping) -> FinFunctor:
    try:
        source = load_category(raw["source"])
        target = load_category(raw["target"])
        obj_map = dict(raw["obj_map"])
        arr_map = dict(raw["arr_map"])
    except (KeyError, TypeError) as exc:
        raise InvalidCategory(f"malformed functor description: {exc}") from exc
    return build_functor(source, target, obj_map, arr_map)


def dump_functor(F: FinFunctor) -> dict:
    return {
        "source": dump_category(F.source),
        "target": dump_category(F.target),
        "obj_map": dict(F.obj_map),
        "arr_map": dict(F.arr_map),
    }


# -- set functors --------------------------------------------------------------


def load_set_functor(raw: Mapping) -> SetFunctor:
    try:
        base = load_category(raw["base"])
        variance = raw.get("variance", "covariant")
        sets = {c: list(v) for c, v in raw["sets"].items()}
        maps = {a: dict(m) for a, m in raw["maps"].items()}
    except (KeyError, TypeError) as exc:
        raise InvalidSetFunctor(f"malformed set-functor description: {exc}") from exc
    if variance not in ("covariant", "presheaf"):
        raise InvalidSetFunctor(f"unknown variance {variance!r}")
    if variance == "presheaf":
        base = opposite(base)
    return build_set_functor(base, sets, maps)


def dump_set_functor(F: SetFunctor, variance: str = "covariant") -> dict:
    base = opposite(F.base) if variance == "presheaf" else F.base
    return {
        "base": dump_category(base),
        "variance": variance,
        "sets": {c: sorted(F.sets[c]) for c in F.base.objects},
        "maps": {a.id: dict(sorted(F.maps[a.id].items())) for a in F.base.arrows},
    }


# -- topologies ----------------------------------------------------------------


def load_topology(C: FinCat, raw: Mapping) -> Topology:
    """Sieves are given by generators and closed on load."""
    covers: dict[str, frozenset[Sieve]] = {}
    given = raw.get("covers", {})
    for c in C.objects:
        sieves = {sieve_generate(C, c, gens) for gens in given.get(c, [])}
        covers[c] = frozenset(sieves)
    return Topology(C, covers)


def dump_topology(J: Topology) -> dict:
    return {
        "covers": {
            c: sorted(sorted(S.arrows) for S in J.covers[c]) for c in J.base.objects
        }
    }


# -- profunctors ---------------------------------------------------------------


def load_profunctor(raw: Mapping) -> ProfunctorP:
    try:
        C = load_category(raw["source"])
        D = load_category(raw["target"])
        values = {
            c: build_set_functor(
                opposite(D),
                {d: list(v) for d, v in val["sets"].items()},
                {a: dict(m) for a, m in val["maps"].items()},
            )
            for c, val in raw["values"].items()
        }
        actions = raw["actions"]
    except (KeyError, TypeError) as exc:
        raise InvalidSetFunctor(f"malformed profunctor description: {exc}") from exc
    return build_profunctor(C, D, values, actions)


def dump_profunctor(P: ProfunctorP) -> dict:
    return {
        "source": dump_category(P.source),
        "target": dump_category(P.target),
        "values": {
            c: {
                "sets": {d: sorted(V.sets[d]) for d in P.target.objects},
                "maps": {a.id: dict(sorted(V.maps[a.id].items())) for a in V.base.arrows},
            }
            for c, V in P.values.items()
        },
        "actions": {
            f: {d: dict(sorted(t.components[d].items())) for d in P.target.objects}
            for f, t in P.actions.items()
        },
    }


# -- quotient sets -------------------------------------------------------------


def dump_quotient(Q: QuotientSet) -> dict:
    return {
        "classes": [[list(m) for m in cls] for cls in Q.classes],
        "injections": {
            tag: dict(sorted(m.items())) for tag, m in sorted(Q.injections.items())
        },
    }
