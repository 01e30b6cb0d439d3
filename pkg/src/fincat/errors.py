"""Exception types shared by all fincat modules.

Every error carries enough witness data to reproduce the violation by hand;
the CLI and the HTTP service map these onto exit codes / status payloads.
"""

from __future__ import annotations


class FincatError(Exception):
    """Base class for all errors raised by fincat."""

    def payload(self) -> dict:
        return {"error": type(self).__name__, "detail": str(self)}


# --- category validation -------------------------------------------------

class MissingIdentity(FincatError):
    pass


class NonAssociative(FincatError):
    def __init__(self, h: str, g: str, f: str, left: str, right: str):
        self.triple = (h, g, f)
        super().__init__(
            f"associativity fails on ({h}, {g}, {f}): "
            f"compose({h}, compose({g},{f})) = {left} but "
            f"compose(compose({h},{g}), {f}) = {right}"
        )


class IncompleteComposition(FincatError):
    def __init__(self, g: str, f: str):
        self.pair = (g, f)
        super().__init__(f"no composition entry for composable pair ({g}, {f})")


class DomCodMismatch(FincatError):
    pass


class InvalidCategory(FincatError):
    """Structural problems not covered by the finer-grained classes."""


class TooLarge(FincatError):
    """The 5000-arrow validation cap was exceeded."""


class InvalidFunctor(FincatError):
    pass


class InvalidSetFunctor(FincatError):
    pass


class InvalidNatTransformation(FincatError):
    pass


class UnknownObject(FincatError):
    pass


# --- operation preconditions --------------------------------------------

class NotFiltered(FincatError):
    pass


class NotAnEmbedding(FincatError):
    pass


class FlatnessRequired(FincatError):
    pass


class NotFinal(FincatError):
    pass


class CodMismatch(FincatError):
    pass


class NotATopology(FincatError):
    pass


class NotRigid(FincatError):
    pass


class NotASheaf(FincatError):
    pass


# --- budgets and self-tests ---------------------------------------------

class SearchBudgetExceeded(FincatError):
    def __init__(self, needed: int | float, budget: int, explored: float = 0.0):
        self.needed = needed
        self.budget = budget
        self.explored = explored
        super().__init__(
            f"search space of {needed} candidates exceeds budget {budget}"
            + (f" (explored fraction {explored:.3g})" if explored else "")
        )


class CommutationFailure(FincatError):
    """The tensor/colimit commutation self-test failed: an implementation bug."""


class RelationNotTransitive(FincatError):
    """The single-span relation of a certified-flat functor failed transitivity."""


class SelfTestFailure(FincatError):
    """Two routes that must agree (by a theorem) disagreed: an implementation bug."""
