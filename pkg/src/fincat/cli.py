"""Command-line front end.

Grammar: ``fincat <noun> <verb> [files...] [--json] [--budget N]`` with nouns
{cat, fun, setfun, colim, limit, tensor, flat, kan, final, adjoint, site,
karoubi, equiv}, plus ``fincat --selftest [--seed N]``. File arguments accept
``@-`` for stdin. Exit codes: 0 success, 1 negative verdict, 2 input or
validation error, 3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

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


def _read(path: str):
    if path == "@-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _render(report: dict, indent: int = 0) -> str:
    lines = []
    for key in sorted(report):
        value = report[key]
        pad = "  " * indent
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_render(value, indent + 1))
        else:
            lines.append(f"{pad}{key}: {json.dumps(value, sort_keys=True)}")
    return "\n".join(lines)


def _variant_elements(raw, F):
    if raw.get("variance", "covariant") == "presheaf":
        return elements_presheaf(F)
    return elements_covariant(F)


# Each handler returns (exit code, report dict).


def _cmd_cat(args) -> tuple[int, dict]:
    if args.verb == "validate":
        C = jsonio.load_category(_read(args.files[0]))
        return 0, {"valid": True, "objects": len(C.objects), "arrows": len(C.arrows)}
    if args.verb == "opposite":
        C = jsonio.load_category(_read(args.files[0]))
        return 0, {"category": jsonio.dump_category(opposite(C))}
    if args.verb == "comma":
        F = jsonio.load_functor(_read(args.files[0]))
        G = jsonio.load_functor(_read(args.files[1]))
        comma = comma_category(F, G)
        return 0, {
            "category": jsonio.dump_category(comma.category),
            "left": dict(comma.left.obj_map),
            "right": dict(comma.right.obj_map),
        }
    if args.verb == "connected":
        C = jsonio.load_category(_read(args.files[0]))
        ok = is_connected(C)
        return (0 if ok else 1), {"connected": ok}
    C = jsonio.load_category(_read(args.files[0]))
    ok = is_filtered(C)
    return (0 if ok else 1), {"filtered": ok}


def _cmd_fun(args) -> tuple[int, dict]:
    F = jsonio.load_functor(_read(args.files[0]))
    return 0, {
        "valid": True,
        "objects": len(F.source.objects),
        "arrows": len(F.source.arrows),
    }


def _cmd_setfun(args) -> tuple[int, dict]:
    if args.verb == "validate":
        jsonio.load_set_functor(_read(args.files[0]))
        return 0, {"valid": True}
    if args.verb == "elements":
        raw = _read(args.files[0])
        E = _variant_elements(raw, jsonio.load_set_functor(raw))
        return 0, {
            "category": jsonio.dump_category(E.category),
            "projection": dict(E.projection.obj_map),
        }
    if args.verb == "opfib":
        F = jsonio.load_set_functor(_read(args.files[0]))
        out = discrete_opfibration(F)
        return 0, {
            "category": jsonio.dump_category(out.category),
            "projection": dict(out.projection.obj_map),
            "isomorphic_to_elements": True,
        }
    if args.verb == "yoneda":
        C = jsonio.load_category(_read(args.files[0]))
        if args.covariant:
            return 0, {
                "set_functor": jsonio.dump_set_functor(
                    yoneda_covariant(C, args.obj), "covariant"
                )
            }
        return 0, {"set_functor": jsonio.dump_set_functor(yoneda(C, args.obj), "presheaf")}
    F = jsonio.load_set_functor(_read(args.files[0]))
    G = jsonio.load_set_functor(_read(args.files[1]))
    nats = nat_transformations(F, G, args.budget)
    return 0, {"count": len(nats), "transformations": [t.serialize() for t in nats]}


def _cmd_colim(args) -> tuple[int, dict]:
    H = jsonio.load_set_functor(_read(args.files[0]))
    if args.verb == "filtered":
        return 0, {"quotient": jsonio.dump_quotient(colimit_filtered(H))}
    if args.verb == "universal":
        ok = verify_universal_property(H, colimit(H))
        return (0 if ok else 1), {"universal": ok}
    return 0, {"quotient": jsonio.dump_quotient(colimit(H))}


def _cmd_limit(args) -> tuple[int, dict]:
    H = jsonio.load_set_functor(_read(args.files[0]))
    L = limit(H)
    return 0, {"count": len(L.families), "families": list(L.ids)}


def _cmd_tensor(args) -> tuple[int, dict]:
    F = jsonio.load_set_functor(_read(args.files[0]))
    P = jsonio.load_set_functor(_read(args.files[1]))
    if args.verb == "commute":
        return 0, tensor_commute_check(F, P)
    return 0, {"quotient": jsonio.dump_quotient(tensor(F, P))}


def _cmd_flat(args) -> tuple[int, dict]:
    if args.verb == "check":
        F = jsonio.load_set_functor(_read(args.files[0]))
        flat, cert = is_flat(F)
        return (0 if flat else 1), {"flat": flat, "certificate": cert}
    if args.verb == "elements":
        F = jsonio.load_set_functor(_read(args.files[0]))
        flat = is_flat_via_elements(F)
        return (0 if flat else 1), {"flat": flat}
    j = jsonio.load_functor(_read(args.files[0]))
    F = jsonio.load_set_functor(_read(args.files[1]))
    if args.verb == "extend":
        out = flat_extend(j, F)
        return 0, {
            "set_functor": jsonio.dump_set_functor(out.functor, "presheaf"),
            "chi": {d: dict(sorted(m.items())) for d, m in out.chi.items()},
        }
    Q = flat_extend_quotient(j, F, args.obj)
    return 0, {"quotient": jsonio.dump_quotient(Q)}


def _cmd_kan(args) -> tuple[int, dict]:
    f = jsonio.load_functor(_read(args.files[0]))
    F = jsonio.load_set_functor(_read(args.files[1]))
    out = lan(f, F) if args.verb == "lan" else ran(f, F)
    return 0, {"set_functor": jsonio.dump_set_functor(out, "covariant")}


def _cmd_final(args) -> tuple[int, dict]:
    i = jsonio.load_functor(_read(args.files[0]))
    if args.verb == "check":
        final, cert = is_final(i)
        return (0 if final else 1), {"final": final, "certificate": cert}
    D = jsonio.load_set_functor(_read(args.files[1]))
    ok = check_finality_theorem(i, D)
    return (0 if ok else 1), {"colimits_agree": ok}


def _cmd_adjoint(args) -> tuple[int, dict]:
    P = jsonio.load_profunctor(_read(args.files[0]))
    if args.verb == "tilde":
        F = jsonio.load_set_functor(_read(args.files[1]))
        return 0, {"set_functor": jsonio.dump_set_functor(tilde(P, F), "covariant")}
    if args.verb == "r":
        G = jsonio.load_set_functor(_read(args.files[1]))
        return 0, {
            "set_functor": jsonio.dump_set_functor(r(P, G, args.budget), "covariant")
        }
    if args.verb == "bijection":
        F = jsonio.load_set_functor(_read(args.files[1]))
        G = jsonio.load_set_functor(_read(args.files[2]))
        data = adjunction_bijection(P, F, G, args.budget)
        return 0, {
            "left_size": len(data.left),
            "right_size": len(data.right),
            "tau": dict(sorted(data.tau.items())),
        }
    if args.verb == "unit":
        F = jsonio.load_set_functor(_read(args.files[1]))
        eta = unit(P, F, args.budget)
        return 0, {"components": {c: dict(sorted(m.items())) for c, m in eta.components.items()}}
    if args.verb == "counit":
        G = jsonio.load_set_functor(_read(args.files[1]))
        eps = counit(P, G, args.budget)
        return 0, {"components": {c: dict(sorted(m.items())) for c, m in eps.components.items()}}
    F = jsonio.load_set_functor(_read(args.files[1]))
    ok = unit_monic_check(P, F, args.obj, args.budget)
    return (0 if ok else 1), {"monic": ok}


def _cmd_site(args) -> tuple[int, dict]:
    C = jsonio.load_category(_read(args.files[0]))
    if args.verb == "generate":
        coverage = _read(args.files[1]).get("covers", {})
        J = generate_topology(C, coverage)
        return 0, {"topology": jsonio.dump_topology(J)}
    J = jsonio.load_topology(C, _read(args.files[1]))
    if args.verb == "check":
        ok, report = is_topology(J)
        return (0 if ok else 1), {"topology": ok, "violation": report}
    if args.verb == "irreducibles":
        return 0, {"irreducibles": irreducibles(C, J)}
    if args.verb == "rigid":
        ok, witness = is_rigid(C, J)
        return (0 if ok else 1), {"rigid": ok, **witness}
    if args.verb == "sheaf":
        F = jsonio.load_set_functor(_read(args.files[2]))
        ok, witness = is_sheaf(C, F, J)
        return (0 if ok else 1), {"sheaf": ok, "violation": witness}
    F = jsonio.load_set_functor(_read(args.files[2]))
    G = jsonio.load_set_functor(_read(args.files[3])) if len(args.files) > 3 else None
    return 0, dense_restriction_equivalence(C, J, F, G)


def _cmd_karoubi(args) -> tuple[int, dict]:
    C = jsonio.load_category(_read(args.files[0]))
    if args.verb == "idempotents":
        return 0, {
            "idempotents": [
                {"object": c, "arrow": e, "identity": flag}
                for c, e, flag in idempotents(C)
            ]
        }
    if args.verb == "envelope":
        env, embed = karoubi_envelope(C)
        return 0, {
            "category": jsonio.dump_category(env),
            "embedding": dict(embed.obj_map),
        }
    ok = is_cauchy_complete(C)
    return (0 if ok else 1), {"cauchy_complete": ok}


def _cmd_equiv(args) -> tuple[int, dict]:
    C = jsonio.load_category(_read(args.files[0]))
    D = jsonio.load_category(_read(args.files[1]))
    result = equivalent_categories(C, D, args.budget)
    if result is None:
        return 1, {"equivalent": False}
    return 0, {
        "equivalent": True,
        "forward_objects": dict(result.forward.obj_map),
        "backward_objects": dict(result.backward.obj_map),
        "unit": dict(result.unit),
        "counit": dict(result.counit),
    }


_HANDLERS = {
    "cat": (_cmd_cat, ["validate", "opposite", "comma", "connected", "filtered"]),
    "fun": (_cmd_fun, ["validate"]),
    "setfun": (_cmd_setfun, ["validate", "elements", "opfib", "yoneda", "nats"]),
    "colim": (_cmd_colim, ["compute", "filtered", "universal"]),
    "limit": (_cmd_limit, ["compute"]),
    "tensor": (_cmd_tensor, ["compute", "commute"]),
    "flat": (_cmd_flat, ["check", "elements", "extend", "quotient"]),
    "kan": (_cmd_kan, ["lan", "ran"]),
    "final": (_cmd_final, ["check", "theorem"]),
    "adjoint": (_cmd_adjoint, ["tilde", "r", "bijection", "unit", "counit", "monic"]),
    "site": (_cmd_site, ["check", "generate", "irreducibles", "rigid", "sheaf", "comparison"]),
    "karoubi": (_cmd_karoubi, ["idempotents", "envelope", "complete"]),
    "equiv": (_cmd_equiv, ["check"]),
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fincat")
    parser.add_argument("--selftest", action="store_true")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--json", action="store_true")
    parser.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    parser.add_argument("noun", nargs="?", choices=sorted(_HANDLERS))
    parser.add_argument("verb", nargs="?")
    parser.add_argument("files", nargs="*")
    parser.add_argument("--obj", help="object argument for yoneda/quotient/monic")
    parser.add_argument("--covariant", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.selftest:
            report = run_selftest(seed=args.seed)
            code = 0
        else:
            if args.noun is None or args.verb is None:
                print("a noun and a verb are required", file=sys.stderr)
                return 2
            handler, verbs = _HANDLERS[args.noun]
            if args.verb not in verbs:
                print(
                    f"unknown verb {args.verb!r} for {args.noun!r}; "
                    f"expected one of {verbs}",
                    file=sys.stderr,
                )
                return 2
            code, report = handler(args)
    except SearchBudgetExceeded as exc:
        print(jsonio.canonical_json(exc.payload()), end="")
        return 3
    except FincatError as exc:
        print(jsonio.canonical_json(exc.payload()), end="")
        return 2
    except (OSError, json.JSONDecodeError, IndexError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(jsonio.canonical_json(report), end="")
    else:
        print(_render(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
