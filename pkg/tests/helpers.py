"""Independent oracles and small algebra builders used across the tests.

Nothing here calls the search code under test: partitions, maps and laws are
enumerated directly from the operation tables.
"""

from __future__ import annotations

import itertools

from dmlab.algebra import FiniteAlgebra, from_operation


def ops(A: FiniteAlgebra):
    tabs = [A.fusion, A.residual, A.meet, A.join]
    return tabs


def set_partitions(n: int):
    """All partitions of range(n) as canonical class arrays (restricted growth strings)."""
    def grow(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for c in range(top + 2):
            yield from grow(prefix + [c], max(top, c))
    if n == 0:
        yield ()
        return
    yield from grow([0], 0)


def brute_congruences(A: FiniteAlgebra) -> set[tuple[int, ...]]:
    out = set()
    for p in set_partitions(A.size):
        ok = True
        for tab in ops(A):
            for x, y in itertools.product(A.elements, repeat=2):
                if p[x] != p[y]:
                    continue
                for z in A.elements:
                    if p[tab[x][z]] != p[tab[y][z]] or p[tab[z][x]] != p[tab[z][y]]:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok and A.neg is not None:
            ok = all(p[A.neg[x]] == p[A.neg[y]] for x, y in itertools.product(A.elements, repeat=2) if p[x] == p[y])
        if ok:
            out.add(p)
    return out


def brute_homs(A: FiniteAlgebra, B: FiniteAlgebra) -> set[tuple[int, ...]]:
    out = set()
    for h in itertools.product(range(B.size), repeat=A.size):
        if h[A.e] != B.e:
            continue
        good = all(
            h[tabA[x][y]] == tabB[h[x]][h[y]]
            for tabA, tabB in zip(ops(A), ops(B))
            for x in A.elements
            for y in A.elements
        )
        if good and A.neg is not None and B.neg is not None:
            good = all(h[A.neg[x]] == B.neg[h[x]] for x in A.elements)
        if good:
            out.add(h)
    return out


def brute_subuniverse(A: FiniteAlgebra, gens) -> frozenset[int]:
    U = set(gens) | {A.e}
    while True:
        new = set(U)
        for x in U:
            for y in U:
                for tab in ops(A):
                    new.add(tab[x][y])
            if A.neg is not None:
                new.add(A.neg[x])
        if new == U:
            return frozenset(U)
        U = new


def brute_iso(A: FiniteAlgebra, B: FiniteAlgebra) -> bool:
    if A.size != B.size or A.involutive != B.involutive:
        return False
    for p in itertools.permutations(range(B.size)):
        if p[A.e] != B.e:
            continue
        if all(A.le[x][y] == B.le[p[x]][p[y]] and p[A.fusion[x][y]] == B.fusion[p[x]][p[y]]
               for x in A.elements for y in A.elements):
            if A.neg is None or all(p[A.neg[x]] == B.neg[p[x]] for x in A.elements):
                return True
    return False


# -- small independent builders ------------------------------------------------------


def goedel_chain(n: int) -> FiniteAlgebra:
    """Relative Stone chain 0 < 1 < ... < n-1 with fusion min and e at the top."""
    return from_operation(range(n), lambda a, b: a <= b, min, n - 1, name=f"G{n}")


def lukasiewicz_chain(n: int) -> FiniteAlgebra:
    """MV chain 0..n-1: truncated addition fusion, e at the top, negation n-1-x."""
    top = n - 1
    return from_operation(
        range(n), lambda a, b: a <= b, lambda a, b: max(0, a + b - top), top,
        neg=lambda a: top - a, name=f"L{n}",
    )


def product(A: FiniteAlgebra, B: FiniteAlgebra) -> FiniteAlgebra:
    pairs = [(a, b) for a in A.elements for b in B.elements]
    neg = None
    if A.involutive and B.involutive:
        neg = lambda p: (A.neg[p[0]], B.neg[p[1]])  # noqa: E731
    return from_operation(
        pairs,
        lambda p, q: A.leq(p[0], q[0]) and B.leq(p[1], q[1]),
        lambda p, q: (A.mul(p[0], q[0]), B.mul(p[1], q[1])),
        (A.e, B.e),
        neg=neg,
        name=f"{A.name}x{B.name}",
    )


def sugihara_table(n: int) -> FiniteAlgebra:
    """S_n straight from the greater-absolute-value rule, built without the library constructor."""
    m = n // 2
    carrier = [k for k in range(-m, m + 1) if n % 2 or k != 0]

    def mul(a, b):
        if abs(a) != abs(b):
            return a if abs(a) > abs(b) else b
        return min(a, b)

    return from_operation(carrier, lambda a, b: a <= b, mul, 0 if n % 2 else 1, neg=lambda a: -a, name=f"S{n}")


# -- derived laws ---------------------------------------------------------------------------


def law_failures(A: FiniteAlgebra) -> list[str]:
    """Exhaustively check the standard consequences of residuation; return the names of failing laws."""
    E = A.elements
    le, mul, res, meet, join, e = A.leq, A.mul, A.res, A.meet, A.join, A.e
    bad = []

    def law(name, ok):
        if not ok:
            bad.append(name)

    law("adjunction", all(le(mul(x, y), z) == le(y, res(x, z)) for x in E for y in E for z in E))
    law("modus ponens", all(le(mul(x, res(x, y)), y) for x in E for y in E))
    law("triple residual", all(res(res(res(x, y), y), y) == res(x, y) for x in E for y in E))
    law("currying", all(res(mul(x, y), z) == res(y, res(x, z)) for x in E for y in E for z in E))
    law("isotonicity", all(
        le(mul(x, z), mul(y, z)) and le(res(z, x), res(z, y)) and le(res(y, z), res(x, z))
        for x in E for y in E if le(x, y) for z in E))
    law("e-order", all(le(x, y) == le(e, res(x, y)) for x in E for y in E))
    law("e-equality", all((x == y) == le(e, meet[res(x, y)][res(y, x)]) for x in E for y in E))
    law("e-residual", all(res(e, x) == x for x in E))
    law("distribution over joins", all(mul(x, join[y][z]) == join[mul(x, y)][mul(x, z)] for x in E for y in E for z in E))
    law("double star", all(le(x, A.star(A.star(x))) and A.star(A.star(A.star(x))) == A.star(x) for x in E))
    law("e below |x|", all(le(e, res(x, x)) for x in E))
    if all(le(x, mul(x, x)) for x in E):
        law("meet below fusion", all(le(meet[x][y], mul(x, y)) for x in E for y in E))
        law("negative fusion is meet", all(mul(x, y) == meet[x][y] for x in E for y in E if le(x, e) and le(y, e)))
    if A.involutive:
        n, f = A.neg, A.f
        law("de morgan", all(n[meet[x][y]] == join[n[x]][n[y]] and n[join[x][y]] == meet[n[x]][n[y]] for x in E for y in E))
        law("negation as residual", all(n[x] == res(x, f) for x in E))
        if all(le(x, mul(x, x)) for x in E):
            law("f cubed", mul(f, mul(f, f)) == mul(f, f))
    return bad


def idempotent_chain_failures(A: FiniteAlgebra) -> list[str]:
    """Absolute-value laws of totally ordered idempotent algebras."""
    E, le, e = A.elements, A.leq, A.e
    absv = lambda x: A.res(x, x)  # noqa: E731
    bad = []
    if not all(le(x, absv(x)) for x in E):
        bad.append("x <= |x|")
    if not all((x == absv(x)) == le(e, x) for x in E):
        bad.append("x = |x| iff e <= x")
    if not all((A.star(x) == absv(x)) == le(x, e) for x in E):
        bad.append("x* = |x| iff x <= e")
    if not all((x == A.star(x)) == (x == e) for x in E):
        bad.append("x = x* iff x = e")
    return bad


# -- lexicographic product by the case display ------------------------------------------


def otimes_oracle(S: FiniteAlgebra, sizes: dict[int, int]):
    """Elements (c, i), ascending, plus fusion and residual dicts from the case display alone."""
    chain = sorted(S.elements, key=lambda c: sum(S.le[d][c] for d in S.elements))
    elems = [(c, i) for c in chain for i in reversed(range(sizes.get(c, 1)))]
    rank = {x: k for k, x in enumerate(elems)}
    lo = lambda x, y: x if rank[x] <= rank[y] else y  # noqa: E731
    hi = lambda x, y: y if rank[x] <= rank[y] else x  # noqa: E731
    fus, res = {}, {}
    for x in elems:
        for y in elems:
            a, b = x[0], y[0]
            if a == b:
                fus[x, y] = lo(x, y) if S.leq(a, S.e) else hi(x, y)
            else:
                fus[x, y] = x if S.mul(a, b) == a else y
            top = (S.res(a, S.e), 0)
            res[x, y] = hi(top, y) if rank[x] <= rank[y] else lo(top, y)
    return elems, fus, res
