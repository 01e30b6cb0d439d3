"""Small worked categories used throughout the tests and the self-test suites."""

from __future__ import annotations

from .core import FinCat, build_category


def terminal() -> FinCat:
    """TERM: one object, identity only."""
    return build_category(["*"], [("id", "*", "*")], {"*": "id"}, {})


def arrow2() -> FinCat:
    """ARROW2: objects a, b; one non-identity arrow f: a→b."""
    return build_category(
        ["a", "b"],
        [("id_a", "a", "a"), ("id_b", "b", "b"), ("f", "a", "b")],
        {"a": "id_a", "b": "id_b"},
        {},
    )


def parallel_pair() -> FinCat:
    """PAIR: two parallel non-identity arrows f, g: a→b."""
    return build_category(
        ["a", "b"],
        [("id_a", "a", "a"), ("id_b", "b", "b"), ("f", "a", "b"), ("g", "a", "b")],
        {"a": "id_a", "b": "id_b"},
        {},
    )


def span() -> FinCat:
    """SPAN: s: c→a, t: c→b."""
    return build_category(
        ["a", "b", "c"],
        [
            ("id_a", "a", "a"), ("id_b", "b", "b"), ("id_c", "c", "c"),
            ("s", "c", "a"), ("t", "c", "b"),
        ],
        {"a": "id_a", "b": "id_b", "c": "id_c"},
        {},
    )


def cospan() -> FinCat:
    """COSPAN: s: a→c, t: b→c."""
    return build_category(
        ["a", "b", "c"],
        [
            ("id_a", "a", "a"), ("id_b", "b", "b"), ("id_c", "c", "c"),
            ("s", "a", "c"), ("t", "b", "c"),
        ],
        {"a": "id_a", "b": "id_b", "c": "id_c"},
        {},
    )


def idem() -> FinCat:
    """IDEM: one object x with a non-identity idempotent e∘e = e."""
    return build_category(
        ["x"],
        [("id", "x", "x"), ("e", "x", "x")],
        {"x": "id"},
        {("e", "e"): "e"},
    )


def z2() -> FinCat:
    """The group Z/2 as a one-object category (e∘e = id)."""
    return build_category(
        ["x"],
        [("id", "x", "x"), ("e", "x", "x")],
        {"x": "id"},
        {("e", "e"): "id"},
    )


def poset_ab() -> FinCat:
    """POSET_AB: the category ARROW2 viewed as a poset site."""
    return arrow2()


def discrete(n: int) -> FinCat:
    """The discrete category on n objects d0..d{n-1}."""
    objs = [f"d{i}" for i in range(n)]
    return build_category(
        objs,
        [(f"id_d{i}", f"d{i}", f"d{i}") for i in range(n)],
        {f"d{i}": f"id_d{i}" for i in range(n)},
        {},
    )


def empty() -> FinCat:
    return build_category([], [], {}, {})


#: name -> builder, used by the CLI self-test and parametrized tests
FIXTURES = {
    "TERM": terminal,
    "ARROW2": arrow2,
    "PAIR": parallel_pair,
    "SPAN": span,
    "COSPAN": cospan,
    "IDEM": idem,
    "Z2": z2,
    "POSET_AB": poset_ab,
}
