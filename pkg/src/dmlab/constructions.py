"""Constructors for the algebras studied in the package.

Every constructor returns a validated algebra: tables are built from the
defining case distinctions and then pushed through :func:`validate`, so the
residuation law is re-checked exhaustively each time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .algebra import FiniteAlgebra, from_operation, validate
from .classify import is_de_morgan_monoid, is_distributive, is_idempotent, is_square_increasing
from .errors import InternalInvariantViolation, NotADunnMonoid, NotDeMorgan, NotOddSugihara, SpecInvalid


# -- Sugihara chains ----------------------------------------------------------


def sugihara_carrier(n: int) -> list[int]:
    """Integers making up S_n: inside Z (0 included) for odd n, inside Z* otherwise."""
    m = n // 2
    if n % 2:
        return list(range(-m, m + 1))
    return [k for k in range(-m, m + 1) if k != 0]


def z_fusion(a: int, b: int) -> int:
    """Fusion of Z and Z*: the argument of greater absolute value, the meet on ties."""
    if abs(a) > abs(b):
        return a
    if abs(b) > abs(a):
        return b
    return min(a, b)


def z_residual(a: int, b: int) -> int:
    return max(-a, b) if a <= b else min(-a, b)


def sugihara(n: int) -> FiniteAlgebra:
    if n < 1:
        raise ValueError("sugihara(n) needs n >= 1")
    carrier = sugihara_carrier(n)
    e = 0 if n % 2 else 1
    return from_operation(carrier, lambda a, b: a <= b, z_fusion, e, lambda a: -a,
                          name=f"S{n}")


# -- the lexicographic product of a Sugihara chain and a family of chains -----


def _is_star_involutive_chain(S: FiniteAlgebra) -> bool:
    return (S.is_chain() and is_idempotent(S)
            and all(S.star(S.star(x)) == x for x in S.elements)
            and (S.neg is None or all(S.neg[x] == S.star(x) for x in S.elements)))


@dataclass(frozen=True)
class ChainFamilySpec:
    """A totally ordered odd Sugihara monoid together with a chain size per element.

    ``sizes[c]`` is the length of the chain X_c whose greatest element is c.
    Plain RLs are accepted as a base when x -> e is an involution on them.
    """

    base: FiniteAlgebra
    sizes: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        S = self.base
        if not _is_star_involutive_chain(S):
            raise SpecInvalid("base must be a totally ordered odd Sugihara monoid")
        sizes = {c: 1 for c in S.elements}
        for c, k in dict(self.sizes).items():
            if c not in sizes:
                raise SpecInvalid(f"{c!r} is not an element of the base")
            if not isinstance(k, int) or isinstance(k, bool) or k < 1:
                raise SpecInvalid(f"chain size for {c} must be a positive integer")
            sizes[c] = k
        object.__setattr__(self, "sizes", sizes)

    def size_list(self) -> tuple[int, ...]:
        """Chain sizes read bottom-up along the base."""
        return tuple(self.sizes[c] for c in self.base.sorted_chain())


def otimes_elements(spec: ChainFamilySpec) -> list[tuple[int, int]]:
    """Pairs (c, i) in ascending lexicographic order; i = 0 is the top of X_c."""
    out = []
    for c in spec.base.sorted_chain():
        out.extend((c, i) for i in reversed(range(spec.sizes[c])))
    return out


def otimes(spec: ChainFamilySpec, name: str | None = None) -> FiniteAlgebra:
    S = spec.base
    elems = otimes_elements(spec)
    pos = {x: k for k, x in enumerate(elems)}
    e = S.e

    def le(x, y):
        return pos[x] <= pos[y]

    def meet(x, y):
        return x if pos[x] <= pos[y] else y

    def join(x, y):
        return y if pos[x] <= pos[y] else x

    def mul(x, y):
        a, b = x[0], y[0]
        if a == b:
            return meet(x, y) if S.le[a][e] else join(x, y)
        return x if S.fusion[a][b] == a else y

    def res(x, y):
        a_star = (S.star(x[0]), 0)
        return join(a_star, y) if le(x, y) else meet(a_star, y)

    labels = [S.label(c) if i == 0 else f"{S.label(c)}.{i}" for c, i in elems]
    A = from_operation(elems, le, mul, (e, 0), None, name=name, labels=labels)
    for x in elems:
        for y in elems:
            if A.residual[pos[x]][pos[y]] != pos[res(x, y)]:
                raise InternalInvariantViolation("derived residual disagrees with the case formula")
    return A


def oplus(k: int) -> FiniteAlgebra:
    """S_3 with the top replaced by a k-element chain; labels c, d, ... below 1."""
    if k < 1:
        raise ValueError("oplus(k) needs k >= 1")
    S3 = sugihara(3)
    A = otimes(ChainFamilySpec(S3.rl_reduct(), {S3.index("1"): k}), name=f"S3+{k}")
    extra = [chr(ord("c") + i) for i in range(k - 1)]
    labels = ["-1", "0"] + list(reversed(extra)) + ["1"]
    return A.with_name(f"S3o{k}", labels)


# -- reflections ----------------------------------------------------------------


def reflection(D: FiniteAlgebra, name: str | None = None) -> FiniteAlgebra:
    """Stack an inverted copy of the Dunn monoid D above it and add new bounds.

    Layout: D keeps indices 0..m-1, a' is m+a, the new bottom is 2m and the new
    top 2m+1.
    """
    if D.neg is not None:
        raise NotADunnMonoid("reflection needs an algebra without involution")
    if not (is_distributive(D) and is_square_increasing(D)):
        raise NotADunnMonoid("reflection needs a distributive square-increasing algebra")
    m = D.size
    zero, one = 2 * m, 2 * m + 1
    n = 2 * m + 2

    def kind(x):
        if x == zero:
            return 0
        if x == one:
            return 3
        return 1 if x < m else 2

    def le(x, y):
        kx, ky = kind(x), kind(y)
        if kx != ky:
            return kx < ky
        if kx == 1:
            return D.le[x][y]
        if kx == 2:
            return D.le[y - m][x - m]
        return True

    def mul(x, y):
        if x == zero or y == zero:
            return zero
        if x == one or y == one:
            return one
        if x < m and y < m:
            return D.fusion[x][y]
        if x >= m and y >= m:
            return one
        a, b = (x, y - m) if x < m else (y, x - m)
        return m + D.residual[a][b]

    def neg(x):
        if x == zero:
            return one
        if x == one:
            return zero
        return x + m if x < m else x - m

    labels = [D.label(a) for a in range(m)] + [D.label(a) + "'" for a in range(m)] + ["zero", "one"]
    return from_operation(list(range(n)), le, mul, D.e, neg,
                          name=name or (f"R({D.name})" if D.name else None), labels=labels)


# -- rigorous extensions ---------------------------------------------------------


def check_odd_sugihara_chain(S: FiniteAlgebra) -> None:
    """Raise unless S is a totally ordered odd Sugihara monoid in which no basic
    operation returns e on arguments other than e."""
    if S.neg is None or not S.is_chain() or not is_idempotent(S) or S.f != S.e:
        raise NotOddSugihara("expected a totally ordered odd Sugihara monoid")
    if not is_distributive(S):
        raise NotOddSugihara("expected a distributive algebra")
    e = S.e
    for x in S.elements:
        if x != e and S.neg[x] == e:
            raise NotOddSugihara(f"negation sends {x} to e")
        for y in S.elements:
            if x != e and y != e:
                for tab in (S.fusion, S.meet, S.join):
                    if tab[x][y] == e:
                        raise NotOddSugihara(f"an operation sends ({x}, {y}) to e")


@dataclass(frozen=True)
class ExtensionLayout:
    """Where the pieces of S[A] sit: index of each S element (except e) and of each A element."""

    s_pos: dict[int, int]
    a_pos: tuple[int, ...]


def rigorous_extension_layout(S: FiniteAlgebra, A: FiniteAlgebra) -> ExtensionLayout:
    below = [s for s in S.sorted_chain() if S.lt(s, S.e)]
    above = [s for s in S.sorted_chain() if S.lt(S.e, s)]
    s_pos = {s: i for i, s in enumerate(below)}
    a_pos = tuple(len(below) + a for a in A.elements)
    for j, s in enumerate(above):
        s_pos[s] = len(below) + A.size + j
    return ExtensionLayout(s_pos, a_pos)


def rigorous_extension(S: FiniteAlgebra, A: FiniteAlgebra, name: str | None = None) -> FiniteAlgebra:
    """Substitute the De Morgan monoid A for the neutral element of S.

    Serialized as: S below e, then A in its own index order, then S above e.
    """
    check_odd_sugihara_chain(S)
    if not is_de_morgan_monoid(A):
        raise NotDeMorgan("expected a De Morgan monoid")
    lay = rigorous_extension_layout(S, A)
    eS = S.e
    n = S.size - 1 + A.size
    back: list[tuple[str, int]] = [("", 0)] * n
    for s, i in lay.s_pos.items():
        back[i] = ("s", s)
    for a, i in enumerate(lay.a_pos):
        back[i] = ("a", a)

    def place(kind, v):
        return lay.a_pos[v] if kind == "a" else lay.s_pos[v]

    def op(s_tab, a_tab):
        def run(i, j):
            (kx, x), (ky, y) = back[i], back[j]
            if kx == ky == "a":
                return lay.a_pos[a_tab[x][y]]
            if kx == ky == "s":
                return lay.s_pos[s_tab[x][y]]
            a, s = (x, y) if kx == "a" else (y, x)
            r = s_tab[eS][s]
            return lay.a_pos[a] if r == eS else lay.s_pos[r]
        return run

    meet = op(S.meet, A.meet)
    fus = op(S.fusion, A.fusion)

    def neg(i):
        kind, v = back[i]
        return place(kind, A.neg[v] if kind == "a" else S.neg[v])

    labels = [A.label(v) if k == "a" else S.label(v) for k, v in back]
    if len(set(labels)) != n:
        labels = [A.label(v) if k == "a" else f"s{S.label(v)}" for k, v in back]
    return from_operation(list(range(n)), lambda i, j: meet(i, j) == i, fus, lay.a_pos[A.e], neg,
                          name=name or (f"{S.name}[{A.name}]" if S.name and A.name else None),
                          labels=labels)


# -- the A_p family --------------------------------------------------------------


def ap_carrier(p: int) -> list[int]:
    return [0] + [2 ** k for k in range(p + 2)]


def ap_family(p: int) -> FiniteAlgebra:
    """{0} and the powers of two up to 2^(p+1), fused by truncated multiplication."""
    if p < 1:
        raise ValueError("ap_family(p) needs p >= 1")
    top = 2 ** (p + 1)

    def neg(x):
        if x == 0:
            return top
        if x == top:
            return 0
        return 2 ** p // x

    return from_operation(ap_carrier(p), lambda a, b: a <= b, lambda a, b: min(a * b, top),
                          1, neg, name=f"A{p}")


def ap_plus(p: int) -> FiniteAlgebra:
    return ap_family(p).rl_reduct().with_name(f"A{p}+")


# -- small named algebras ----------------------------------------------------------


def _chain(fusion, e, neg=None, *, name, labels) -> FiniteAlgebra:
    n = len(fusion)
    le = [[i <= j for j in range(n)] for i in range(n)]
    return validate(n, le, fusion, e, neg, name=name, labels=labels)


def trivial_algebra(involutive: bool = True) -> FiniteAlgebra:
    return validate(1, [[1]], [[0]], 0, [0] if involutive else None,
                    name="trivial" if involutive else "trivial+", labels=["e"])


def boolean_two() -> FiniteAlgebra:
    return _chain([[0, 0], [0, 1]], 1, [1, 0], name="2", labels=["f", "e"])


def boolean_two_plus() -> FiniteAlgebra:
    return _chain([[0, 0], [0, 1]], 1, name="2+", labels=["bot", "e"])


def c4() -> FiniteAlgebra:
    # 0 < e < f < f2, f.f = f2, 0 absorbing, f2 absorbing above 0
    fus = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 3], [0, 3, 3, 3]]
    return _chain(fus, 1, [3, 2, 1, 0], name="C4", labels=["0", "e", "f", "f2"])


def d4() -> FiniteAlgebra:
    # 0 < e, f < f2 with e and f incomparable
    le = [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]]
    fus = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 3], [0, 3, 3, 3]]
    return validate(4, le, fus, 1, [3, 2, 1, 0], name="D4", labels=["0", "e", "f", "f2"])


def relative_stone_chain(n: int = 3) -> FiniteAlgebra:
    """n-element chain with e on top and fusion equal to meet."""
    fus = [[min(i, j) for j in range(n)] for i in range(n)]
    labels = ["bot", "a", "b", "c", "d"][: n - 1] if n <= 6 else [f"a{i}" for i in range(n - 1)]
    return _chain(fus, n - 1, name=f"RS{n}", labels=labels + ["e"])


NAMED = {
    "2": boolean_two,
    "2+": boolean_two_plus,
    "C4": c4,
    "D4": d4,
    "RS3": relative_stone_chain,
    "trivial": trivial_algebra,
}


def named_algebra(key: str) -> FiniteAlgebra:
    try:
        return NAMED[key]()
    except KeyError:
        raise KeyError(f"unknown named algebra {key!r}; known: {sorted(NAMED)}") from None
