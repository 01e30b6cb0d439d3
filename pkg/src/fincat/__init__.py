"""fincat: finite categories, set-valued functors, colimits, flatness, Kan
extensions, Grothendieck topologies and Karoubi completion, with every
construction backed by brute-force verification at desk scale."""

from .core import (
    FinCat,
    FinFunctor,
    build_category,
    build_functor,
    comma_category,
    is_connected,
    is_filtered,
    opposite,
    validate_category,
)
from .setfun import (
    NatTransformation,
    SetFunctor,
    build_nat,
    build_set_functor,
    discrete_opfibration,
    elements_covariant,
    elements_presheaf,
    nat_transformations,
    yoneda,
    yoneda_covariant,
)
from .colimits import (
    QuotientSet,
    colimit,
    colimit_filtered,
    limit,
    tensor,
    tensor_commute_check,
)
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
from .adjoint import (
    ProfunctorP,
    adjunction_bijection,
    counit,
    profunctor_from_functor,
    r,
    tilde,
    unit,
    unit_monic_check,
)
from .sites import (
    Sieve,
    Topology,
    dense_restriction_equivalence,
    generate_topology,
    irreducibles,
    is_rigid,
    is_sheaf,
    is_topology,
    pullback_sieve,
    sieve_generate,
)
from .karoubi import (
    equivalent_categories,
    idempotents,
    is_cauchy_complete,
    karoubi_envelope,
)

__version__ = "0.1.0"
