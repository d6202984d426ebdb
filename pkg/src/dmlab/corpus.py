"""The built-in golden algebras, addressable by key."""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

from .algebra import FiniteAlgebra
from .constructions import (
    ap_family,
    ap_plus,
    boolean_two,
    boolean_two_plus,
    c4,
    d4,
    oplus,
    reflection,
    relative_stone_chain,
    rigorous_extension,
    sugihara,
)

_BUILDERS: dict[str, Callable[[], FiniteAlgebra]] = {
    "2": boolean_two,
    "2+": boolean_two_plus,
    "C4": c4,
    "D4": d4,
    **{f"S{n}": (lambda n=n: sugihara(n)) for n in range(2, 8)},
    "S3o2": lambda: oplus(2),
    "S3o3": lambda: oplus(3),
    "A2": lambda: ap_family(2),
    "A3": lambda: ap_family(3),
    "A5": lambda: ap_family(5),
    "A2+": lambda: ap_plus(2),
    "A3+": lambda: ap_plus(3),
    "A4+": lambda: ap_plus(4),
    "R2+": lambda: reflection(boolean_two_plus(), name="R2+"),
    "S3[C4]": lambda: rigorous_extension(sugihara(3), c4(), name="S3[C4]"),
    "RS3": relative_stone_chain,
}

KEYS = tuple(_BUILDERS)


@lru_cache(maxsize=None)
def get(key: str) -> FiniteAlgebra:
    try:
        builder = _BUILDERS[key]
    except KeyError:
        raise KeyError(f"unknown corpus key {key!r}; known: {', '.join(KEYS)}") from None
    A = builder()
    return A if A.name == key else A.with_name(key)


def all_algebras() -> list[FiniteAlgebra]:
    return [get(k) for k in KEYS]
