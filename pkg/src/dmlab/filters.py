"""Deductive filters, their Leibniz congruences, quotients and prime filters."""

from __future__ import annotations

from collections import deque
from typing import Iterable

from .algebra import FiniteAlgebra, Homomorphism, canonical_partition, validate
from .errors import InternalInvariantViolation, MalformedInput

Filter = frozenset


def up_set(A: FiniteAlgebra, a: int) -> frozenset[int]:
    return frozenset(x for x in A.elements if A.le[a][x])


def generated_filter(A: FiniteAlgebra, gens: Iterable[int]) -> frozenset[int]:
    """Least deductive filter containing ``gens``."""
    found = set(up_set(A, A.e))
    for g in gens:
        found |= up_set(A, g)
    changed = True
    while changed:
        changed = False
        cur = list(found)
        for x in cur:
            for y in cur:
                for v in (A.meet[x][y], A.fusion[x][y]):
                    if v not in found:
                        found |= up_set(A, v)
                        changed = True
    return frozenset(found)


def is_deductive_filter(A: FiniteAlgebra, G: Iterable[int]) -> bool:
    G = set(G)
    if A.e not in G:
        return False
    for x in G:
        if any(A.le[x][y] and y not in G for y in A.elements):
            return False
        for y in G:
            if A.meet[x][y] not in G or A.fusion[x][y] not in G:
                return False
    return True


def _filter_key(G: frozenset[int]) -> tuple:
    return (len(G), sorted(G))


def deductive_filters(A: FiniteAlgebra) -> list[frozenset[int]]:
    """All deductive filters, reached from [e) by single-element extensions.

    Sorted by size, then by their sorted member lists; the first is [e).
    """
    start = generated_filter(A, ())
    seen = {start}
    queue = deque([start])
    while queue:
        G = queue.popleft()
        for a in A.elements:
            if a in G:
                continue
            H = generated_filter(A, set(G) | {a})
            if H not in seen:
                seen.add(H)
                queue.append(H)
    return sorted(seen, key=_filter_key)


def leibniz(A: FiniteAlgebra, G: Iterable[int]) -> tuple[int, ...]:
    """Congruence {(a, b) : a->b, b->a in G} as a canonical class-index array."""
    G = frozenset(G)
    n = A.size
    rel = [[A.residual[a][b] in G and A.residual[b][a] in G for b in range(n)] for a in range(n)]
    leaders = [min(b for b in range(n) if rel[a][b]) for a in range(n)]
    classes = canonical_partition(leaders)
    for a in range(n):
        for b in range(n):
            if rel[a][b] != (classes[a] == classes[b]):
                raise InternalInvariantViolation("Leibniz relation is not an equivalence")
    if not is_congruence(A, classes):
        raise InternalInvariantViolation("Leibniz relation is not compatible with the operations")
    return classes


def is_congruence(A: FiniteAlgebra, classes: tuple[int, ...]) -> bool:
    n = A.size
    tables = [A.fusion, A.residual, A.meet, A.join]
    for a in range(n):
        for b in range(a + 1, n):
            if classes[a] != classes[b]:
                continue
            if A.neg is not None and classes[A.neg[a]] != classes[A.neg[b]]:
                return False
            for c in range(n):
                for t in tables:
                    if classes[t[a][c]] != classes[t[b][c]] or classes[t[c][a]] != classes[t[c][b]]:
                        return False
    return True


def filter_of_congruence(A: FiniteAlgebra, classes: tuple[int, ...]) -> frozenset[int]:
    """Inverse of the Leibniz map: {a : (a /\\ e, e) in theta}."""
    return frozenset(a for a in A.elements if classes[A.meet[a][A.e]] == classes[A.e])


def quotient(A: FiniteAlgebra, G: Iterable[int], name: str | None = None) -> tuple[FiniteAlgebra, Homomorphism]:
    """A/G together with the canonical surjection.

    Quotient elements are numbered by the least member of their class.
    """
    G = frozenset(G)
    if not is_deductive_filter(A, G):
        raise MalformedInput("not a deductive filter")
    classes = leibniz(A, G)
    k = max(classes) + 1
    reps = [classes.index(c) for c in range(k)]
    le = [[A.residual[a][b] in G for b in reps] for a in reps]
    fus = [[classes[A.fusion[a][b]] for b in reps] for a in reps]
    neg = None if A.neg is None else [classes[A.neg[a]] for a in reps]
    labels = None
    if A.labels is not None:
        labels = [A.label(reps[c]) if sum(1 for x in classes if x == c) == 1 else f"[{A.label(reps[c])}]"
                  for c in range(k)]
    Q = validate(k, le, fus, classes[A.e], neg, name=name, labels=labels)
    return Q, Homomorphism(A, Q, classes)


def congruence_lattice(A: FiniteAlgebra) -> list[tuple[int, ...]]:
    return [leibniz(A, G) for G in deductive_filters(A)]


def prime_filters(A: FiniteAlgebra) -> list[frozenset[int]]:
    """Proper deductive filters whose complement is closed under joins."""
    out = []
    for G in deductive_filters(A):
        rest = [x for x in A.elements if x not in G]
        if not rest:
            continue
        if all(A.join[x][y] not in G for x in rest for y in rest):
            out.append(G)
    return out


def depth(A: FiniteAlgebra) -> int:
    """Length, in edges, of the longest chain of prime deductive filters (0 if none)."""
    primes = prime_filters(A)
    longest = {}
    for G in sorted(primes, key=len, reverse=True):
        longest[G] = max((longest[H] + 1 for H in primes if G < H), default=0)
    return max(longest.values(), default=0)


def congruence_classes(classes: tuple[int, ...]) -> list[list[int]]:
    out: list[list[int]] = [[] for _ in range(max(classes) + 1)]
    for a, c in enumerate(classes):
        out[c].append(a)
    return out
