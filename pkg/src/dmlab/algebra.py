"""Finite commutative residuated lattices, optionally involutive.

An algebra lives on the carrier ``0..n-1``.  Only the order, the fusion table,
the neutral element and (for involutive algebras) the negation are ever taken
as input; meets, joins and the residual are derived by :func:`validate`, which
is the only supported way to build a :class:`FiniteAlgebra`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .errors import (
    BadInvolution,
    MalformedInput,
    NotAHomomorphism,
    NotALattice,
    NotAMonoid,
    NotResiduated,
)

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    size: int
    le: tuple[tuple[bool, ...], ...]
    fusion: Table
    e: int
    neg: tuple[int, ...] | None
    residual: Table
    meet: Table
    join: Table
    name: str | None = None
    labels: tuple[str, ...] | None = field(default=None, repr=False)

    # -- basic access -----------------------------------------------------

    @property
    def elements(self) -> range:
        return range(self.size)

    @property
    def involutive(self) -> bool:
        return self.neg is not None

    def leq(self, a: int, b: int) -> bool:
        return self.le[a][b]

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.le[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.fusion[a][b]

    def res(self, a: int, b: int) -> int:
        return self.residual[a][b]

    def star(self, a: int) -> int:
        return self.residual[a][self.e]

    def power(self, a: int, n: int) -> int:
        out = self.e
        for _ in range(n):
            out = self.fusion[out][a]
        return out

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels is not None else str(a)

    def index(self, token: str) -> int:
        """Resolve an element token: a label first, then a plain index."""
        if self.labels is not None and token in self.labels:
            return self.labels.index(token)
        try:
            i = int(token)
        except ValueError:
            raise KeyError(f"unknown element {token!r}") from None
        if not 0 <= i < self.size:
            raise KeyError(f"element index {i} out of range")
        return i

    # -- distinguished elements ---------------------------------------------

    @property
    def f(self) -> int:
        if self.neg is None:
            raise ValueError("f is only defined in involutive algebras")
        return self.neg[self.e]

    @property
    def bottom(self) -> int:
        return next(a for a in self.elements if all(self.le[a]))

    @property
    def top(self) -> int:
        return next(a for a in self.elements if all(self.le[b][a] for b in self.elements))

    # -- derived views ------------------------------------------------------

    def is_chain(self) -> bool:
        return all(self.le[a][b] or self.le[b][a] for a in self.elements for b in self.elements)

    def sorted_chain(self) -> list[int]:
        """Elements listed bottom-up by the size of their down-sets."""
        return sorted(self.elements, key=lambda a: sum(self.le[b][a] for b in self.elements))

    def interval(self, lo: int, hi: int) -> list[int]:
        return [x for x in self.elements if self.le[lo][x] and self.le[x][hi]]

    def rl_reduct(self) -> FiniteAlgebra:
        if self.neg is None:
            return self
        return FiniteAlgebra(
            self.size, self.le, self.fusion, self.e, None,
            self.residual, self.meet, self.join,
            name=f"{self.name}+" if self.name else None, labels=self.labels,
        )

    def with_name(self, name: str | None, labels: Sequence[str] | None = None) -> FiniteAlgebra:
        lab = tuple(labels) if labels is not None else self.labels
        return FiniteAlgebra(
            self.size, self.le, self.fusion, self.e, self.neg,
            self.residual, self.meet, self.join, name=name, labels=lab,
        )

    # -- serialization ------------------------------------------------------

    def to_document(self, include_labels: bool = False) -> dict:
        doc = {
            "name": self.name,
            "size": self.size,
            "le": [[int(v) for v in row] for row in self.le],
            "fusion": [list(row) for row in self.fusion],
            "e": self.e,
            "neg": list(self.neg) if self.neg is not None else None,
        }
        if include_labels and self.labels is not None:
            doc["labels"] = list(self.labels)
        return doc

    def to_json(self, include_labels: bool = False) -> str:
        return json.dumps(self.to_document(include_labels), separators=(",", ":"))

    def same_tables(self, other: FiniteAlgebra) -> bool:
        return (self.size, self.le, self.fusion, self.e, self.neg) == (
            other.size, other.le, other.fusion, other.e, other.neg)

    def __repr__(self) -> str:
        kind = "IRL" if self.involutive else "RL"
        return f"FiniteAlgebra({self.name or '?'}, {kind}, size={self.size})"


# ---------------------------------------------------------------------------
# validation


def _check_shape(size, le, fusion, e, neg) -> None:
    if not isinstance(size, int) or isinstance(size, bool) or size < 1:
        raise MalformedInput(f"size must be a positive integer, got {size!r}")

    def square(name, tab):
        if len(tab) != size or any(len(row) != size for row in tab):
            raise MalformedInput(f"{name} must be {size}x{size}")

    square("le", le)
    square("fusion", fusion)
    for row in le:
        for v in row:
            if v not in (0, 1, True, False):
                raise MalformedInput(f"le entries must be 0/1, got {v!r}")
    for row in fusion:
        for v in row:
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < size:
                raise MalformedInput(f"fusion entry {v!r} out of range")
    if not isinstance(e, int) or isinstance(e, bool) or not 0 <= e < size:
        raise MalformedInput(f"neutral element {e!r} out of range")
    if neg is not None:
        if len(neg) != size:
            raise MalformedInput(f"neg must have length {size}")
        for v in neg:
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < size:
                raise MalformedInput(f"neg entry {v!r} out of range")


def _greatest(le, candidates: list[int]) -> int | None:
    for m in candidates:
        if all(le[c][m] for c in candidates):
            return m
    return None


def _least(le, candidates: list[int]) -> int | None:
    for m in candidates:
        if all(le[m][c] for c in candidates):
            return m
    return None


def validate(
    size: int,
    le: Sequence[Sequence[int | bool]],
    fusion: Sequence[Sequence[int]],
    e: int,
    neg: Sequence[int] | None = None,
    *,
    name: str | None = None,
    labels: Sequence[str] | None = None,
) -> FiniteAlgebra:
    """Check every axiom exhaustively and return the algebra with derived tables."""
    _check_shape(size, le, fusion, e, neg)
    n = size
    R = range(n)
    le_t = tuple(tuple(bool(v) for v in row) for row in le)
    fus = tuple(tuple(int(v) for v in row) for row in fusion)

    # partial order
    for a in R:
        if not le_t[a][a]:
            raise NotALattice(f"order is not reflexive at {a}")
    for a, b in product(R, R):
        if a != b and le_t[a][b] and le_t[b][a]:
            raise NotALattice(f"order is not antisymmetric at ({a}, {b})")
    for a, b, c in product(R, R, R):
        if le_t[a][b] and le_t[b][c] and not le_t[a][c]:
            raise NotALattice(f"order is not transitive at ({a}, {b}, {c})")

    meet = [[0] * n for _ in R]
    join = [[0] * n for _ in R]
    for a in R:
        for b in range(a, n):
            m = _greatest(le_t, [x for x in R if le_t[x][a] and le_t[x][b]])
            j = _least(le_t, [x for x in R if le_t[a][x] and le_t[b][x]])
            if m is None:
                raise NotALattice(f"elements {a} and {b} have no meet")
            if j is None:
                raise NotALattice(f"elements {a} and {b} have no join")
            meet[a][b] = meet[b][a] = m
            join[a][b] = join[b][a] = j

    # commutative monoid
    for a in R:
        if fus[e][a] != a:
            raise NotAMonoid(f"{e} is not neutral for {a}", (e, a))
    for a, b in product(R, R):
        if fus[a][b] != fus[b][a]:
            raise NotAMonoid(f"fusion not commutative at ({a}, {b})", (a, b))
    for a, b, c in product(R, R, R):
        if fus[fus[a][b]][c] != fus[a][fus[b][c]]:
            raise NotAMonoid(f"fusion not associative at ({a}, {b}, {c})", (a, b, c))

    # residual as max{z : x.z <= y}, then the full adjunction
    res = [[0] * n for _ in R]
    for x, y in product(R, R):
        m = _greatest(le_t, [z for z in R if le_t[fus[x][z]][y]])
        if m is None:
            raise NotResiduated(f"{{z : {x}.z <= {y}}} has no maximum", (x, y))
        res[x][y] = m
    for x, y, z in product(R, R, R):
        if le_t[fus[x][y]][z] != le_t[y][res[x][z]]:
            raise NotResiduated(f"residuation fails for x={x}, y={y}, z={z}", (x, z))

    neg_t = None
    if neg is not None:
        neg_t = tuple(int(v) for v in neg)
        for a in R:
            if neg_t[neg_t[a]] != a:
                raise BadInvolution(f"double negation fails at {a}", a)
        for x, y, z in product(R, R, R):
            if le_t[fus[x][y]][z] != le_t[fus[neg_t[z]][y]][neg_t[x]]:
                raise BadInvolution(f"contraposition law fails at ({x}, {y}, {z})", x)

    if labels is not None:
        labels = tuple(str(s) for s in labels)
        if len(labels) != n or len(set(labels)) != n:
            raise MalformedInput("labels must be distinct and one per element")

    return FiniteAlgebra(
        n, le_t, fus, e, neg_t,
        tuple(map(tuple, res)), tuple(map(tuple, meet)), tuple(map(tuple, join)),
        name=name, labels=labels,
    )


def from_document(doc: dict) -> FiniteAlgebra:
    """Build an algebra from the JSON document format; ``labels`` is an optional extra key."""
    if not isinstance(doc, dict):
        raise MalformedInput("algebra document must be a JSON object")
    missing = {"size", "le", "fusion", "e"} - set(doc)
    if missing:
        raise MalformedInput(f"algebra document is missing {sorted(missing)}")
    for key in ("le", "fusion"):
        if not isinstance(doc[key], list) or not all(isinstance(r, list) for r in doc[key]):
            raise MalformedInput(f"{key} must be a list of lists")
    neg = doc.get("neg")
    if neg is not None and not isinstance(neg, list):
        raise MalformedInput("neg must be a list or null")
    return validate(doc["size"], doc["le"], doc["fusion"], doc["e"], neg,
                    name=doc.get("name"), labels=doc.get("labels"))


def from_json(text: str) -> FiniteAlgebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"not valid JSON: {exc}") from None
    return from_document(doc)


def from_chain(
    fusion: Sequence[Sequence[int]],
    e: int,
    neg: Sequence[int] | None = None,
    **kw,
) -> FiniteAlgebra:
    """Validate an algebra whose order is 0 < 1 < ... < n-1."""
    n = len(fusion)
    le = [[i <= j for j in range(n)] for i in range(n)]
    return validate(n, le, fusion, e, neg, **kw)


def from_operation(
    elements: Sequence,
    le,
    mul,
    e,
    neg=None,
    *,
    name: str | None = None,
    labels: Sequence[str] | None = None,
) -> FiniteAlgebra:
    """Validate an algebra given by Python callables over arbitrary hashable elements."""
    idx = {x: i for i, x in enumerate(elements)}
    n = len(elements)
    le_t = [[bool(le(a, b)) for b in elements] for a in elements]
    fus = [[idx[mul(a, b)] for b in elements] for a in elements]
    neg_t = None if neg is None else [idx[neg(a)] for a in elements]
    if labels is None:
        labels = [str(x) for x in elements]
    return validate(n, le_t, fus, idx[e], neg_t, name=name, labels=labels)


# ---------------------------------------------------------------------------
# subuniverses


def closure(A: FiniteAlgebra, gens: Iterable[int]) -> frozenset[int]:
    """Least subuniverse containing ``gens`` and ``e``."""
    found = set(gens) | {A.e}
    frontier = list(found)
    ops = [A.fusion, A.residual, A.meet, A.join]
    while frontier:
        new: list[int] = []
        cur = list(found)
        for x in frontier:
            for y in cur:
                for tab in ops:
                    for v in (tab[x][y], tab[y][x]):
                        if v not in found:
                            found.add(v)
                            new.append(v)
            if A.neg is not None and A.neg[x] not in found:
                found.add(A.neg[x])
                new.append(A.neg[x])
        frontier = new
    return frozenset(found)


def is_subuniverse(A: FiniteAlgebra, U: Iterable[int]) -> bool:
    U = set(U)
    return A.e in U and closure(A, U) == U


def negative_cone(A: FiniteAlgebra) -> frozenset[int]:
    return frozenset(a for a in A.elements if A.le[a][A.e])


def restrict(A: FiniteAlgebra, universe: Iterable[int], name: str | None = None) -> FiniteAlgebra:
    """Induced subalgebra on a subuniverse; elements keep their relative index order."""
    U = sorted(set(universe))
    pos = {a: i for i, a in enumerate(U)}
    if A.e not in pos:
        raise MalformedInput("a subuniverse must contain e")
    try:
        fus = [[pos[A.fusion[a][b]] for b in U] for a in U]
        neg = None if A.neg is None else [pos[A.neg[a]] for a in U]
    except KeyError:
        raise MalformedInput("set is not closed under the operations") from None
    le = [[A.le[a][b] for b in U] for a in U]
    labels = [A.label(a) for a in U]
    sub = validate(len(U), le, fus, pos[A.e], neg, name=name, labels=labels)
    for a in U:
        for b in U:
            if sub.residual[pos[a]][pos[b]] != pos.get(A.residual[a][b], -1):
                raise MalformedInput("set is not closed under the residual")
    return sub


# ---------------------------------------------------------------------------
# homomorphisms


def preservation_failure(A: FiniteAlgebra, B: FiniteAlgebra, h: Sequence[int]) -> str | None:
    """First operation that ``h`` fails to preserve, or None for a homomorphism."""
    if len(h) != A.size or any(not 0 <= v < B.size for v in h):
        return "map is not a total function into the target"
    if h[A.e] != B.e:
        return "e"
    both_neg = A.neg is not None and B.neg is not None
    for x in A.elements:
        hx = h[x]
        if both_neg and h[A.neg[x]] != B.neg[hx]:
            return f"neg at {x}"
        fx, rx, mx, jx = A.fusion[x], A.residual[x], A.meet[x], A.join[x]
        bf, br, bm, bj = B.fusion[hx], B.residual[hx], B.meet[hx], B.join[hx]
        for y in A.elements:
            hy = h[y]
            if h[fx[y]] != bf[hy]:
                return f"fusion at ({x}, {y})"
            if h[rx[y]] != br[hy]:
                return f"residual at ({x}, {y})"
            if h[mx[y]] != bm[hy]:
                return f"meet at ({x}, {y})"
            if h[jx[y]] != bj[hy]:
                return f"join at ({x}, {y})"
    return None


def is_homomorphism(A: FiniteAlgebra, B: FiniteAlgebra, h: Sequence[int]) -> bool:
    return preservation_failure(A, B, h) is None


@dataclass(frozen=True, eq=False)
class Homomorphism:
    """A carrier map that has been checked against every operation table."""

    source: FiniteAlgebra
    target: FiniteAlgebra
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))
        why = preservation_failure(self.source, self.target, self.map)
        if why is not None:
            raise NotAHomomorphism(f"map does not preserve {why}")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __eq__(self, other):
        return (isinstance(other, Homomorphism) and self.map == other.map
                and self.source is other.source and self.target is other.target)

    def __hash__(self):
        return hash(self.map)

    @property
    def injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    @property
    def surjective(self) -> bool:
        return set(self.map) == set(self.target.elements)

    def compose(self, first: Homomorphism) -> Homomorphism:
        """``self`` after ``first``."""
        return Homomorphism(first.source, self.target, tuple(self.map[v] for v in first.map))

    def kernel_classes(self) -> tuple[int, ...]:
        return canonical_partition(self.map)


def canonical_partition(keys: Sequence) -> tuple[int, ...]:
    """Class-index array with class ids numbered in order of least member."""
    seen: dict = {}
    return tuple(seen.setdefault(k, len(seen)) for k in keys)


# ---------------------------------------------------------------------------
# isomorphism and canonical form


def _element_invariants(A: FiniteAlgebra) -> list[tuple]:
    R = A.elements
    out = []
    for a in R:
        out.append((
            sum(A.le[b][a] for b in R),
            sum(A.le[a][b] for b in R),
            a == A.e,
            A.fusion[a][a] == a,
            A.neg is not None and A.neg[a] == a,
        ))
    return out


def isomorphism(A: FiniteAlgebra, B: FiniteAlgebra) -> Homomorphism | None:
    """Lexicographically first isomorphism A -> B, or None when there is none."""
    if A.size != B.size or A.involutive != B.involutive:
        return None
    inv_a, inv_b = _element_invariants(A), _element_invariants(B)
    if sorted(inv_a) != sorted(inv_b):
        return None
    n = A.size
    cands = [[b for b in B.elements if inv_b[b] == inv_a[a]] for a in A.elements]
    h = [-1] * n
    used = [False] * n

    def consistent(x: int) -> bool:
        hx = h[x]
        for y in range(x + 1):
            hy = h[y]
            if A.le[x][y] != B.le[hx][hy] or A.le[y][x] != B.le[hy][hx]:
                return False
            for tab_a, tab_b in ((A.fusion, B.fusion), (A.residual, B.residual)):
                for u, v, hu, hv in ((x, y, hx, hy), (y, x, hy, hx)):
                    r = tab_a[u][v]
                    if r <= x and h[r] != tab_b[hu][hv]:
                        return False
        if A.neg is not None:
            r = A.neg[x]
            if r <= x and h[r] != B.neg[hx]:
                return False
        return True

    def search(x: int) -> bool:
        if x == n:
            return True
        for b in cands[x]:
            if used[b]:
                continue
            h[x] = b
            used[b] = True
            if consistent(x) and search(x + 1):
                return True
            used[b] = False
        h[x] = -1
        return False

    if not search(0):
        return None
    return Homomorphism(A, B, tuple(h))


def _serialize(A: FiniteAlgebra, perm: Sequence[int]) -> tuple:
    """Tables of A relabelled so that new index i is old element perm[i]."""
    inv = [0] * A.size
    for i, a in enumerate(perm):
        inv[a] = i
    le = tuple(A.le[a][b] for a in perm for b in perm)
    fus = tuple(inv[A.fusion[a][b]] for a in perm for b in perm)
    neg = None if A.neg is None else tuple(inv[A.neg[a]] for a in perm)
    return (A.size, le, fus, inv[A.e], neg)


def _refine(A: FiniteAlgebra, colour: list[int]) -> list[int]:
    R = A.elements
    while True:
        sigs = []
        for x in R:
            row = sorted(
                (colour[y], A.le[x][y], A.le[y][x], colour[A.fusion[x][y]], colour[A.residual[x][y]])
                for y in R
            )
            extra = colour[A.neg[x]] if A.neg is not None else -1
            sigs.append((colour[x], extra, tuple(row)))
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(set(new)) == len(set(colour)):
            return new
        colour = new


def canonical_form(A: FiniteAlgebra) -> tuple:
    """Isomorphism-invariant serialization of the tables.

    Lexicographically least relabelling among those that respect an
    individualise-and-refine colouring; iso-invariant because the colouring is.
    """
    base = [hash_key for hash_key in _element_invariants(A)]
    ranks = {s: i for i, s in enumerate(sorted(set(base)))}
    colour = _refine(A, [ranks[s] for s in base])
    best: list[tuple | None] = [None]

    def explore(col: list[int]) -> None:
        n_cols = len(set(col))
        if n_cols == A.size:
            perm = sorted(A.elements, key=lambda a: col[a])
            key = _serialize(A, perm)
            if best[0] is None or key < best[0]:
                best[0] = key
            return
        counts: dict[int, int] = {}
        for c in col:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        for x in A.elements:
            if col[x] != target:
                continue
            split = [2 * c + (1 if y == x else 0) for y, c in enumerate(col)]
            explore(_refine(A, split))

    explore(colour)
    return best[0]


def are_isomorphic(A: FiniteAlgebra, B: FiniteAlgebra) -> bool:
    return canonical_form(A) == canonical_form(B)
