"""Sieves, Grothendieck topologies, topology generation, rigidity and sheaves
on finite categories.

Sieves are stored as explicit arrow sets; the sieve lattice of a desk-scale
category is small enough that no generator-based lazy representation is
needed. Topology generation saturates a coverage under stability and then
transitivity, in that fixed order, until a fixpoint is reached, so traces are
reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from .colimits import family_id, precompose_presheaf
from .core import FinCat, full_subcategory, opposite, opposite_functor
from .errors import (
    CodMismatch,
    NotASheaf,
    NotATopology,
    NotRigid,
    SelfTestFailure,
    TooLarge,
)
from .flatkan import ran_detailed
from .setfun import SetFunctor


@dataclass(frozen=True)
class Sieve:
    """A precomposition-closed set of arrows with a common codomain."""

    codomain: str
    arrows: frozenset[str]

    def contains(self, a: str) -> bool:
        return a in self.arrows


@dataclass(frozen=True)
class Topology:
    base: FinCat
    #: object -> covering sieves
    covers: Mapping[str, frozenset[Sieve]]

    def covers_of(self, c: str) -> frozenset[Sieve]:
        return self.covers[c]


def maximal_sieve(C: FinCat, c: str) -> Sieve:
    return Sieve(c, frozenset(C.arrows_into(c)))


def sieve_generate(C: FinCat, c: str, generators: Iterable[str]) -> Sieve:
    """Smallest precomposition-closed set of arrows into c containing the
    generators. One pass suffices: precomposites of precomposites are already
    precomposites by associativity."""
    gens = list(generators)
    for g in gens:
        if C.cod(g) != c:
            raise CodMismatch(f"generator {g!r} does not end at {c!r}")
    arrows = set(gens)
    for f in gens:
        for g in C.arrows_into(C.dom(f)):
            arrows.add(C.compose(f, g))
    return Sieve(c, frozenset(arrows))


def pullback_sieve(C: FinCat, S: Sieve, f: str) -> Sieve:
    """{g into dom(f) : f∘g ∈ S}."""
    if C.cod(f) != S.codomain:
        raise CodMismatch(f"arrow {f!r} does not end at the sieve codomain")
    d = C.dom(f)
    return Sieve(d, frozenset(g for g in C.arrows_into(d) if C.compose(f, g) in S.arrows))


def is_sieve(C: FinCat, S: Sieve) -> bool:
    if any(C.cod(a) != S.codomain for a in S.arrows):
        return False
    return all(
        C.compose(f, g) in S.arrows
        for f in S.arrows
        for g in C.arrows_into(C.dom(f))
    )


def all_sieves(C: FinCat, c: str) -> list[Sieve]:
    """Every sieve on c, by filtering subsets of the arrows into c."""
    into = sorted(C.arrows_into(c))
    if len(into) > 16:
        raise TooLarge(f"{len(into)} arrows into {c!r}; sieve enumeration is capped at 16")
    out = []
    for k in range(len(into) + 1):
        for subset in itertools.combinations(into, k):
            S = Sieve(c, frozenset(subset))
            if is_sieve(C, S):
                out.append(S)
    return out


def is_topology(J: Topology) -> tuple[bool, dict]:
    """Exhaustive check of maximality, stability and transitivity.

    Returns the first violated axiom with witnesses.
    """
    C = J.base
    if set(J.covers) != set(C.objects):
        return False, {"axiom": "shape", "detail": "covers must be keyed by all objects"}
    for c in C.objects:
        for S in J.covers[c]:
            if S.codomain != c or not is_sieve(C, S):
                return False, {"axiom": "shape", "object": c, "sieve": sorted(S.arrows)}
        if maximal_sieve(C, c) not in J.covers[c]:
            return False, {"axiom": "maximality", "object": c}
    for c in C.objects:
        for S in J.covers[c]:
            for f in C.arrows_into(c):
                if pullback_sieve(C, S, f) not in J.covers[C.dom(f)]:
                    return False, {
                        "axiom": "stability",
                        "object": c,
                        "sieve": sorted(S.arrows),
                        "arrow": f,
                    }
    for c in C.objects:
        for S in J.covers[c]:
            for R in all_sieves(C, c):
                if R in J.covers[c]:
                    continue
                if all(
                    pullback_sieve(C, R, f) in J.covers[C.dom(f)] for f in S.arrows
                ):
                    return False, {
                        "axiom": "transitivity",
                        "object": c,
                        "sieve": sorted(S.arrows),
                        "candidate": sorted(R.arrows),
                    }
    return True, {}


def trivial_topology(C: FinCat) -> Topology:
    return Topology(C, {c: frozenset({maximal_sieve(C, c)}) for c in C.objects})


def generate_topology(C: FinCat, coverage: Mapping[str, Iterable[Iterable[str]]]) -> Topology:
    """Smallest topology whose covers contain every sieve generated from the
    coverage. Least fixpoint over the finite sieve lattice."""
    covers: dict[str, set[Sieve]] = {c: {maximal_sieve(C, c)} for c in C.objects}
    for c, sieve_gens in coverage.items():
        for gens in sieve_gens:
            covers[c].add(sieve_generate(C, c, gens))

    sieves = {c: all_sieves(C, c) for c in C.objects}
    changed = True
    while changed:
        changed = False
        for c in C.objects:
            for S in list(covers[c]):
                for f in C.arrows_into(c):
                    pb = pullback_sieve(C, S, f)
                    if pb not in covers[C.dom(f)]:
                        covers[C.dom(f)].add(pb)
                        changed = True
        for c in C.objects:
            for S in list(covers[c]):
                for R in sieves[c]:
                    if R in covers[c]:
                        continue
                    if all(
                        pullback_sieve(C, R, f) in covers[C.dom(f)] for f in S.arrows
                    ):
                        covers[c].add(R)
                        changed = True
    J = Topology(C, {c: frozenset(covers[c]) for c in C.objects})
    ok, report = is_topology(J)
    if not ok:
        raise SelfTestFailure(f"generated topology fails its own axioms: {report}")
    return J


def _require_topology(J: Topology) -> None:
    ok, report = is_topology(J)
    if not ok:
        raise NotATopology(str(report))


def irreducibles(C: FinCat, J: Topology) -> list[str]:
    """Objects whose only covering sieve is the maximal one."""
    _require_topology(J)
    return [c for c in C.objects if J.covers[c] == frozenset({maximal_sieve(C, c)})]


def is_rigid(C: FinCat, J: Topology) -> tuple[bool, dict]:
    """For every object, the arrows from irreducible objects must generate a
    covering sieve. Returns the per-object generated sieves as witnesses."""
    _require_topology(J)
    irr = set(irreducibles(C, J))
    witnesses: dict[str, list[str]] = {}
    verdict = True
    for c in C.objects:
        gens = [a for a in C.arrows_into(c) if C.dom(a) in irr]
        S = sieve_generate(C, c, gens)
        witnesses[c] = sorted(S.arrows)
        if S not in J.covers[c]:
            verdict = False
    return verdict, {"irreducibles": sorted(irr), "generated": witnesses}


# -- sheaves -------------------------------------------------------------------


def matching_families(C: FinCat, F: SetFunctor, S: Sieve) -> list[dict[str, str]]:
    """Assignments f ∈ S ↦ x_f ∈ F(dom f) with F(g)(x_f) = x_{f∘g}."""
    arrows = sorted(S.arrows)
    out: list[dict[str, str]] = []
    for choice in itertools.product(*(F.sets[C.dom(f)] for f in arrows)):
        fam = dict(zip(arrows, choice))
        if all(
            F.maps[g][fam[f]] == fam[C.compose(f, g)]
            for f in arrows
            for g in C.arrows_into(C.dom(f))
        ):
            out.append(fam)
    return out


def is_sheaf(C: FinCat, F: SetFunctor, J: Topology) -> tuple[bool, dict]:
    """For every covering sieve, restriction onto matching families must be a
    bijection. Returns the first failing (object, sieve)."""
    _require_topology(J)
    if F.base != opposite(C):
        raise NotASheaf("the presheaf is not based on the site category")
    for c in C.objects:
        for S in J.covers[c]:
            fams = matching_families(C, F, S)
            restricted = [
                tuple(sorted((f, F.maps[f][x]) for f in S.arrows)) for x in F.sets[c]
            ]
            fam_keys = [tuple(sorted(f.items())) for f in fams]
            if sorted(restricted) != sorted(fam_keys) or len(set(restricted)) != len(restricted):
                return False, {"object": c, "sieve": sorted(S.arrows)}
    return True, {}


def dense_restriction_equivalence(
    C: FinCat, J: Topology, F: SetFunctor, G: SetFunctor | None = None
) -> dict:
    """Check the comparison-lemma reduction of a rigid site to its irreducibles.

    Restricts the sheaf F to the full subcategory of irreducibles, right Kan
    extends back, and verifies the canonical comparison x ↦ (h ↦ F(h)(x)) is a
    pointwise bijection. When a presheaf G on the irreducibles is supplied,
    additionally verifies its right Kan extension is a J-sheaf.
    """
    rigid, _ = is_rigid(C, J)
    if not rigid:
        raise NotRigid("the topology is not rigid")
    sheaf, witness = is_sheaf(C, F, J)
    if not sheaf:
        raise NotASheaf(str(witness))

    irr = irreducibles(C, J)
    sub, incl = full_subcategory(C, irr)
    F_restricted = precompose_presheaf(F, incl)
    R = ran_detailed(opposite_functor(incl), F_restricted)

    comparison: dict[str, dict[str, str]] = {}
    for c in C.objects:
        comma = R.commas[c]
        m: dict[str, str] = {}
        for x in F.sets[c]:
            fam = {
                oid: F.maps[h][x] for oid, (_pt, _d, h) in comma.components.items()
            }
            fid = family_id(fam)
            if fid not in R.limits[c].ids:
                raise SelfTestFailure("canonical comparison lands outside the limit")
            m[x] = fid
        if len(set(m.values())) != len(m) or set(m.values()) != set(R.limits[c].ids):
            raise SelfTestFailure(
                f"canonical comparison is not a bijection at {c!r}"
            )
        comparison[c] = m

    report = {
        "irreducibles": sorted(irr),
        "comparison_bijective": True,
        "values": {c: len(F.sets[c]) for c in C.objects},
    }
    if G is not None:
        if G.base != opposite(sub):
            raise NotASheaf("the supplied presheaf is not based on the irreducibles")
        RG = ran_detailed(opposite_functor(incl), G).functor
        ok, wit = is_sheaf(C, RG, J)
        if not ok:
            raise SelfTestFailure(f"right Kan extension is not a sheaf: {wit}")
        report["extension_is_sheaf"] = True
    return report
