"""Subalgebras, homomorphism search, epicness and separating pairs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Sequence

from .algebra import (
    FiniteAlgebra,
    Homomorphism,
    canonical_form,
    closure,
    is_subuniverse,
    preservation_failure,
    restrict,
)
from .classify import classify, is_de_morgan_monoid, is_totally_ordered_idempotent
from .constructions import (
    ChainFamilySpec,
    check_odd_sugihara_chain,
    otimes,
    otimes_elements,
    rigorous_extension,
    rigorous_extension_layout,
)
from .errors import ElementInB, InternalInvariantViolation, NotASubuniverse, NotDeMorgan, WrongClass
from .filters import deductive_filters, is_deductive_filter, quotient
from .structure import decompose_otimes, is_gsm


# -- subalgebras ------------------------------------------------------------------


def subalgebra_generated(A: FiniteAlgebra, X: Iterable[int] = ()) -> tuple[FiniteAlgebra, Homomorphism]:
    U = sorted(closure(A, X))
    sub = restrict(A, U, name=f"Sg({A.name})" if A.name else None)
    return sub, Homomorphism(sub, A, tuple(U))


def all_subuniverses(A: FiniteAlgebra) -> list[frozenset[int]]:
    """Every subuniverse, ordered by size and then by sorted member list."""
    start = closure(A, ())
    seen = {start}
    queue = deque([start])
    while queue:
        U = queue.popleft()
        for a in A.elements:
            if a not in U:
                V = closure(A, set(U) | {a})
                if V not in seen:
                    seen.add(V)
                    queue.append(V)
    return sorted(seen, key=lambda U: (len(U), sorted(U)))


# -- homomorphisms --------------------------------------------------------------------


def embeddings(A: FiniteAlgebra, B: FiniteAlgebra) -> Iterator[tuple[int, ...]]:
    """Injective homomorphisms A -> B in lexicographic order of their maps."""
    n = A.size
    if n > B.size:
        return
    both_neg = A.neg is not None and B.neg is not None
    h = [-1] * n
    used = [False] * B.size

    def consistent(x: int) -> bool:
        hx = h[x]
        if x == A.e and hx != B.e:
            return False
        for y in range(x + 1):
            hy = h[y]
            if A.le[x][y] != B.le[hx][hy] or A.le[y][x] != B.le[hy][hx]:
                return False
            for ta, tb in ((A.fusion, B.fusion), (A.residual, B.residual), (A.meet, B.meet), (A.join, B.join)):
                for u, v, hu, hv in ((x, y, hx, hy), (y, x, hy, hx)):
                    r = ta[u][v]
                    if r <= x and h[r] != tb[hu][hv]:
                        return False
        if both_neg:
            r = A.neg[x]
            if r <= x and h[r] != B.neg[hx]:
                return False
        return True

    def search(x: int) -> Iterator[tuple[int, ...]]:
        if x == n:
            yield tuple(h)
            return
        cands = [B.e] if x == A.e else range(B.size)
        for b in cands:
            if used[b]:
                continue
            h[x] = b
            used[b] = True
            if consistent(x):
                yield from search(x + 1)
            used[b] = False
            h[x] = -1

    for m in search(0):
        if preservation_failure(A, B, m) is None:
            yield m


def all_homomorphisms(A: FiniteAlgebra, B: FiniteAlgebra) -> list[Homomorphism]:
    """Every homomorphism A -> B: kernels run over the deductive filters of A,
    then each quotient is embedded into B.  Sorted by map."""
    maps = set()
    for G in deductive_filters(A):
        Q, q = quotient(A, G)
        for emb in embeddings(Q, B):
            maps.add(tuple(emb[v] for v in q.map))
    return [Homomorphism(A, B, m) for m in sorted(maps)]


def brute_force_homomorphisms(A: FiniteAlgebra, B: FiniteAlgebra) -> list[Homomorphism]:
    """All maps with e fixed, filtered by direct preservation checking."""
    out = []
    others = [x for x in A.elements if x != A.e]
    for vals in product(B.elements, repeat=len(others)):
        m = [B.e] * A.size
        for x, v in zip(others, vals):
            m[x] = v
        if preservation_failure(A, B, m) is None:
            out.append(Homomorphism(A, B, tuple(m)))
    return out


# -- characterization of homomorphisms between chains ------------------------------------


@dataclass(frozen=True)
class HomCharacterization:
    conditions: tuple[bool, bool, bool, bool]
    preserves: bool

    @property
    def holds(self) -> bool:
        return all(self.conditions)

    @property
    def agree(self) -> bool:
        return self.holds == self.preserves


def _order_embeds(rank, B, xs, h) -> bool:
    xs = sorted(xs, key=rank.__getitem__)
    return all(B.lt(h[x], h[y]) for x, y in zip(xs, xs[1:]))


def hom_conditions(h: Sequence[int], A: FiniteAlgebra, B: FiniteAlgebra) -> tuple[bool, bool, bool, bool]:
    """The four conditions characterizing homomorphisms between totally ordered idempotent RLs."""
    eB = B.e
    star_a = [A.star(x) for x in A.elements]
    dstar_a = [star_a[x] for x in star_a]
    star_b = [B.star(y) for y in B.elements]
    dstar_b = [star_b[y] for y in star_b]
    I = {x for x in A.elements if h[x] == eB}
    rank = {x: i for i, x in enumerate(A.sorted_chain())}
    ranks = sorted(rank[x] for x in I)
    c1 = (A.e in I and bool(ranks) and ranks[-1] - ranks[0] + 1 == len(ranks)
          and all(star_a[x] in I for x in I))
    I_star = [x for x in A.elements if x not in I and star_a[x] in I]
    c2 = (all(dstar_b[h[x]] == eB and h[x] != eB for x in I_star)
          and _order_embeds(rank, B, I_star, h))
    Adss = [x for x in A.elements if dstar_a[x] == x and x not in I]
    c3 = (all(dstar_b[h[x]] == h[x] and h[x] != eB for x in Adss)
          and _order_embeds(rank, B, Adss, h)
          and all(h[star_a[x]] == star_b[h[x]] for x in Adss))
    c4 = True
    for a in Adss:
        block = [x for x in A.elements if dstar_a[x] == a]
        if not (all(dstar_b[h[x]] == h[a] for x in block) and _order_embeds(rank, B, block, h)):
            c4 = False
            break
    return (c1, c2, c3, c4)


def check_hom_characterization(h: Sequence[int], A: FiniteAlgebra, B: FiniteAlgebra) -> HomCharacterization:
    """Evaluate the four conditions on the RL reducts and compare with direct preservation."""
    if not (is_totally_ordered_idempotent(A) and is_totally_ordered_idempotent(B)):
        raise WrongClass("both algebras must be totally ordered and idempotent")
    RA, RB = A.rl_reduct(), B.rl_reduct()
    conds = hom_conditions(h, RA, RB)
    return HomCharacterization(conds, preservation_failure(RA, RB, h) is None)


# -- varieties generated by finitely many finite algebras ---------------------------------


def hs_up_to_iso(gens: Sequence[FiniteAlgebra]) -> list[FiniteAlgebra]:
    """Homomorphic images of subalgebras of the generators, one per isomorphism type.

    Sorted by size, then canonical form.
    """
    if not gens:
        raise ValueError("need at least one generating algebra")
    if len({g.involutive for g in gens}) > 1:
        raise ValueError("generators must share a signature")
    found: dict[tuple, FiniteAlgebra] = {}
    for G in gens:
        for U in all_subuniverses(G):
            whole = len(U) == G.size
            sub = restrict(G, U, name=G.name if whole else f"{G.name}|{{{','.join(G.label(u) for u in sorted(U))}}}")
            for F in deductive_filters(sub):
                if len(F) == sub.size and sub.size > 1:
                    Q, _ = quotient(sub, F, name="trivial")
                elif len(F) == len([x for x in sub.elements if sub.le[sub.e][x]]):
                    Q = sub
                else:
                    Q, _ = quotient(sub, F, name=f"{sub.name}/{{{','.join(sub.label(x) for x in sorted(F))}}}")
                key = canonical_form(Q)
                if key not in found:
                    found[key] = Q if Q.size > 1 else Q.with_name("trivial")
    return [found[k] for k in sorted(found, key=lambda k: (k[0], k))]


def si_members(gens: Sequence[FiniteAlgebra]) -> list[FiniteAlgebra]:
    return [C for C in hs_up_to_iso(gens) if classify(C).si]


# -- epicness ------------------------------------------------------------------------------


@dataclass(frozen=True)
class EpicWitness:
    target: FiniteAlgebra
    g: Homomorphism
    h: Homomorphism
    element: int


@dataclass(frozen=True)
class EpicVerdict:
    epic: bool
    witness: EpicWitness | None = None
    targets_checked: int = 0


def is_epic(A: FiniteAlgebra, B: Iterable[int], gens: Sequence[FiniteAlgebra]) -> EpicVerdict:
    """Is the subuniverse B epic in A relative to the variety generated by ``gens``?

    Membership of A in that variety is the caller's responsibility.
    """
    B = frozenset(B)
    if not is_subuniverse(A, B):
        raise NotASubuniverse("B is not a subuniverse of A")
    members = si_members(gens)
    Bs = sorted(B)
    for C in members:
        groups: dict[tuple, Homomorphism] = {}
        for hom in all_homomorphisms(A, C):
            key = tuple(hom.map[b] for b in Bs)
            prev = groups.get(key)
            if prev is None:
                groups[key] = hom
                continue
            a = next(x for x in A.elements if prev.map[x] != hom.map[x])
            return EpicVerdict(False, EpicWitness(C, prev, hom, a), len(members))
    return EpicVerdict(True, None, len(members))


# -- separating pairs -------------------------------------------------------------------------


@dataclass(frozen=True)
class SeparatingPair:
    target: FiniteAlgebra
    g: Homomorphism
    h: Homomorphism
    element: int
    used_element: int
    case: str
    replaced_by_star: bool = False
    notes: dict = field(default_factory=dict)


def _prepare(A: FiniteAlgebra, B: Iterable[int], a: int) -> tuple[FiniteAlgebra, frozenset[int]]:
    R = A.rl_reduct()
    B = frozenset(B)
    if not is_subuniverse(R, B):
        raise NotASubuniverse("B is not a subuniverse of A")
    if a in B:
        raise ElementInB(f"element {a} lies in B")
    if not is_totally_ordered_idempotent(R):
        raise WrongClass("expected a totally ordered idempotent algebra")
    return R, B


def _filter_case(R: FiniteAlgebra, a: int) -> tuple[FiniteAlgebra, Homomorphism, Homomorphism]:
    """a in A**, a < e: quotient by {b : b > a} and collapse [a, a*] together with its I_* to e."""
    F = frozenset(b for b in R.elements if R.lt(a, b))
    if not is_deductive_filter(R, F):
        raise InternalInvariantViolation("{b : b > a} is not a deductive filter")
    C, q = quotient(R, F)
    core = set(R.interval(a, R.star(a)))
    I = core | {x for x in R.elements if x not in core and R.star(x) in core}
    h = tuple(C.e if x in I else q.map[x] for x in R.elements)
    return C, q, Homomorphism(R, C, h)


def _fresh_case(R: FiniteAlgebra, a: int) -> tuple[FiniteAlgebra, Homomorphism, Homomorphism]:
    """a outside A**: add a fresh immediate predecessor of a to its block and move a onto it."""
    dec = decompose_otimes(R)
    c = R.star(R.star(a))
    j = dec.base_universe.index(c)
    sizes = dict(dec.spec.sizes)
    sizes[j] += 1
    spec = ChainFamilySpec(dec.base, sizes)
    elems = otimes_elements(spec)
    block = dec.blocks[c]  # bottom-up
    depth_of_a = len(block) - 1 - block.index(a)

    labels = []
    for (k, i) in elems:
        members = dec.blocks[dec.base_universe[k]]
        if k != j or i <= depth_of_a:
            labels.append(R.label(members[len(members) - 1 - i]))
        elif i == depth_of_a + 1:
            labels.append(_fresh_label(R))
        else:
            labels.append(R.label(members[len(members) - i]))
    C = otimes(spec, name=f"{R.name}+fresh" if R.name else None).with_name(
        f"{R.name}+fresh" if R.name else None, labels)
    pos = {x: i for i, x in enumerate(elems)}

    def place(x: int) -> int:
        k = dec.base_universe.index(R.star(R.star(x)))
        members = dec.blocks[dec.base_universe[k]]
        i = len(members) - 1 - members.index(x)
        if k == j and i > depth_of_a:
            i += 1
        return pos[(k, i)]

    g = tuple(place(x) for x in R.elements)
    fresh = pos[(j, depth_of_a + 1)]
    h = tuple(fresh if x == a else g[x] for x in R.elements)
    return C, Homomorphism(R, C, g), Homomorphism(R, C, h)


def _fresh_label(R: FiniteAlgebra) -> str:
    taken = set(R.labels or [str(x) for x in R.elements])
    for ch in "defghijklmnopqrstuvwxyz":
        if ch not in taken:
            return ch
    return f"new{R.size}"


def _finish(R, B, a, used, case, replaced, C, g, h) -> SeparatingPair:
    if any(g.map[b] != h.map[b] for b in B):
        raise InternalInvariantViolation("separating maps disagree on B")
    if g.map[a] == h.map[a]:
        raise InternalInvariantViolation("separating maps agree at the element")
    return SeparatingPair(C, g, h, a, used, case, replaced)


def separating_pair_idem(A: FiniteAlgebra, B: Iterable[int], a: int) -> SeparatingPair:
    """Two homomorphisms out of a totally ordered idempotent RL that agree on B but not at a."""
    R, B = _prepare(A, B, a)
    if R.star(R.star(a)) == a:
        used, replaced = a, False
        if R.le[R.e][a]:
            used, replaced = R.star(a), True
        C, g, h = _filter_case(R, used)
        return _finish(R, B, a, used, "filter", replaced, C, g, h)
    C, g, h = _fresh_case(R, a)
    return _finish(R, B, a, a, "fresh", False, C, g, h)


def separating_pair_gsm(A: FiniteAlgebra, B: Iterable[int], a: int) -> SeparatingPair:
    """Variant for generalized Sugihara monoid chains: stays inside quotients of A."""
    R, B = _prepare(A, B, a)
    if not is_gsm(R).gsm:
        raise WrongClass("expected a generalized Sugihara monoid")
    if R.le[R.e][a] or R.star(R.star(a)) == a:
        used, replaced = a, False
        if R.le[R.e][a]:
            used, replaced = R.star(a), True
        C, g, h = _filter_case(R, used)
        return _finish(R, B, a, used, "filter", replaced, C, g, h)
    F = frozenset(b for b in R.elements if R.lt(a, b))
    C, q = quotient(R, F)
    h = tuple(C.e if x == a else q.map[x] for x in R.elements)
    return _finish(R, B, a, a, "gsm", False, C, q, Homomorphism(R, C, h))


# -- the A_p family -----------------------------------------------------------------------------


@dataclass(frozen=True)
class ApsReport:
    element: int
    n: int
    power_n: int
    power_n1: int
    residual: int
    hypothesis: bool
    subuniverse: tuple[int, ...]
    proper: bool
    epic: EpicVerdict | None

    @property
    def passes(self) -> bool:
        return self.hypothesis and self.proper and self.epic is not None and self.epic.epic


def aps_check(A: FiniteAlgebra, a: int, n: int, gens: Sequence[FiniteAlgebra] | None = None) -> ApsReport:
    """Check a = a^n -> a^(n+1) and that Sg{a^(n+1)} is proper, then ask whether it is epic."""
    pn, pn1 = A.power(a, n), A.power(a, n + 1)
    r = A.residual[pn][pn1]
    U = tuple(sorted(closure(A, [pn1])))
    proper = len(U) < A.size
    verdict = is_epic(A, U, gens or [A]) if proper else None
    return ApsReport(a, n, pn, pn1, r, r == a, U, proper, verdict)


# -- extending homomorphisms to rigorous extensions --------------------------------------------


@dataclass(frozen=True)
class ExtendedHom:
    source: FiniteAlgebra
    target: FiniteAlgebra
    hom: Homomorphism


def extend_to_rigorous(h: Homomorphism, S: FiniteAlgebra) -> ExtendedHom:
    """S[A] -> S[B]: h on A, the identity on S without its neutral element."""
    check_odd_sugihara_chain(S)
    A, B = h.source, h.target
    if not (is_de_morgan_monoid(A) and is_de_morgan_monoid(B)):
        raise NotDeMorgan("both algebras must be De Morgan monoids")
    SA, SB = rigorous_extension(S, A), rigorous_extension(S, B)
    la, lb = rigorous_extension_layout(S, A), rigorous_extension_layout(S, B)
    m = [0] * SA.size
    for s, i in la.s_pos.items():
        m[i] = lb.s_pos[s]
    for x, i in enumerate(la.a_pos):
        m[i] = lb.a_pos[h.map[x]]
    return ExtendedHom(SA, SB, Homomorphism(SA, SB, tuple(m)))
