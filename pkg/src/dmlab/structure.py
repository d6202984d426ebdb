"""Decompositions of totally ordered algebras and the negative-generation checkers."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from . import terms
from .algebra import FiniteAlgebra, Homomorphism, closure, negative_cone, restrict, validate
from .classify import (
    classify,
    is_de_morgan_monoid,
    is_distributive,
    is_dunn_monoid,
    is_idempotent,
    is_semilinear,
    is_square_increasing,
    is_totally_ordered_idempotent,
)
from .constructions import (
    ChainFamilySpec,
    otimes,
    otimes_elements,
    reflection,
    rigorous_extension,
    rigorous_extension_layout,
)
from .errors import InternalInvariantViolation, IsIdempotent, NotGenerating, WrongClass
from .filters import prime_filters, quotient, up_set


def _require_chain_idempotent(A: FiniteAlgebra) -> None:
    if not is_totally_ordered_idempotent(A):
        raise WrongClass("expected a totally ordered idempotent algebra")


# -- A** and its blocks ---------------------------------------------------------


@dataclass(frozen=True)
class DoubleStar:
    universe: tuple[int, ...]
    algebra: FiniteAlgebra          # the RL subalgebra on A**
    sugihara: FiniteAlgebra         # the same tables with x* taken as negation
    embedding: Homomorphism         # algebra -> RL reduct of A


def double_star_subalgebra(A: FiniteAlgebra) -> DoubleStar:
    """A** = {a** : a in A}, checked to be an odd Sugihara monoid under x* as negation."""
    _require_chain_idempotent(A)
    R = A.rl_reduct()
    U = tuple(sorted({A.star(A.star(a)) for a in A.elements}))
    sub = restrict(R, U, name=f"{A.name}**" if A.name else None)
    neg = [sub.star(x) for x in sub.elements]
    sm = validate(sub.size, sub.le, sub.fusion, sub.e, neg, name=sub.name, labels=sub.labels)
    if not (is_idempotent(sm) and sm.f == sm.e and is_distributive(sm) and is_square_increasing(sm)):
        raise InternalInvariantViolation("A** is not an odd Sugihara monoid under x*")
    return DoubleStar(U, sub, sm, Homomorphism(sub, R, U))


def blocks(A: FiniteAlgebra) -> dict[int, list[int]]:
    """c -> A_c = {a : a** = c}, each listed bottom-up (so the last entry is c)."""
    out: dict[int, list[int]] = {}
    for a in A.sorted_chain():
        out.setdefault(A.star(A.star(a)), []).append(a)
    return out


@dataclass(frozen=True)
class OtimesDecomposition:
    base: FiniteAlgebra
    base_universe: tuple[int, ...]
    blocks: dict[int, list[int]]
    spec: ChainFamilySpec
    reassembled: FiniteAlgebra
    iso: Homomorphism  # reassembled -> RL reduct of the input

    def block_sizes(self) -> tuple[int, ...]:
        """Block sizes read bottom-up along A**."""
        return tuple(len(self.blocks[c]) for c in self.base_universe)


def decompose_otimes(A: FiniteAlgebra) -> OtimesDecomposition:
    ds = double_star_subalgebra(A)
    bl = blocks(A)
    for c, members in bl.items():
        if members[-1] != c:
            raise InternalInvariantViolation(f"block of {c} does not have {c} on top")
    sizes = {j: len(bl[c]) for j, c in enumerate(ds.universe)}
    spec = ChainFamilySpec(ds.algebra, sizes)
    C = otimes(spec, name=f"{A.name}**(x)blocks" if A.name else None)
    mapping = []
    for j, i in otimes_elements(spec):
        members = bl[ds.universe[j]]
        mapping.append(members[len(members) - 1 - i])
    iso = Homomorphism(C, A.rl_reduct(), tuple(mapping))
    if not (iso.injective and iso.surjective):
        raise InternalInvariantViolation("reassembled algebra is not isomorphic to the input")
    return OtimesDecomposition(ds.algebra, ds.universe, bl, spec, C, iso)


# -- generalized Sugihara monoids ---------------------------------------------------


@dataclass(frozen=True)
class GsmVerdict:
    gsm: bool
    equational: bool
    block_test: bool | None
    witness: dict | None = None


def is_gsm(A: FiniteAlgebra) -> GsmVerdict:
    """(x \\/ e)** = x \\/ e, cross-checked on chains against A_c = {c} for c > e."""
    if not (is_semilinear(A) and is_idempotent(A)):
        raise WrongClass("expected a semilinear idempotent algebra")
    eq = terms.check_named(A.rl_reduct(), "gsm")
    block = None
    witness = eq.counterexample
    if A.is_chain():
        bl = blocks(A)
        bad = [c for c, members in bl.items() if A.lt(A.e, c) and len(members) > 1]
        block = not bad
        if bad and witness is None:
            witness = {"block": bad[0]}
        if block != eq.holds:
            raise InternalInvariantViolation("GSM equation and block test disagree")
    return GsmVerdict(eq.holds, eq.holds, block, witness)


# -- De Morgan monoid decomposition ------------------------------------------------


@dataclass(frozen=True)
class DmmDecomposition:
    core_universe: tuple[int, ...]
    core: FiniteAlgebra
    odd_factor: FiniteAlgebra
    quotient_map: Homomorphism
    reassembled: FiniteAlgebra
    iso: Homomorphism  # input -> reassembled
    e_class: tuple[int, ...]
    other_classes_singletons: bool


def decompose_dmm(A: FiniteAlgebra) -> DmmDecomposition:
    if not (A.is_chain() and is_de_morgan_monoid(A)):
        raise WrongClass("expected a totally ordered De Morgan monoid")
    if is_idempotent(A):
        raise IsIdempotent("the algebra is a Sugihara monoid; there is nothing to decompose")
    f2 = A.fusion[A.f][A.f]
    nf2 = A.neg[f2]
    core_u = tuple(A.interval(nf2, f2))
    core = restrict(A, core_u, name=f"[~f2,f2] of {A.name}" if A.name else None)
    G = up_set(A, nf2)
    S, q = quotient(A, G, name=f"{A.name}/[~f2)" if A.name else None)
    classes = q.map
    e_class = tuple(a for a in A.elements if classes[a] == classes[A.e])
    singletons = all(sum(1 for b in classes if b == classes[a]) == 1
                     for a in A.elements if classes[a] != classes[A.e])
    R = rigorous_extension(S, core)
    lay = rigorous_extension_layout(S, core)
    core_pos = {a: i for i, a in enumerate(core_u)}
    mapping = tuple(lay.a_pos[core_pos[a]] if a in core_pos else lay.s_pos[classes[a]]
                    for a in A.elements)
    iso = Homomorphism(A, R, mapping)
    if not (iso.injective and iso.surjective):
        raise InternalInvariantViolation("decomposition map is not bijective")
    return DmmDecomposition(core_u, core, S, q, R, iso, e_class, singletons)


# -- reflections ---------------------------------------------------------------------


@dataclass(frozen=True)
class ReflectionRecognition:
    is_reflection: bool
    reason: str
    universe: tuple[int, ...] = ()
    base: FiniteAlgebra | None = None
    iso: Homomorphism | None = None  # reflection(base) -> input


def reflection_recognize(A: FiniteAlgebra) -> ReflectionRecognition:
    """Decide whether A is (isomorphic to) a reflection, carving out D = {a : a != 0, a^2 != 1}
    where 1 = f^2 and 0 = ~(f^2)."""
    if A.neg is None:
        return ReflectionRecognition(False, "no involution")
    if not is_de_morgan_monoid(A):
        return ReflectionRecognition(False, "not a De Morgan monoid")
    one = A.fusion[A.f][A.f]
    zero = A.neg[one]
    if one == zero:
        return ReflectionRecognition(False, "f^2 = ~(f^2)")
    D = tuple(a for a in A.elements if a != zero and A.fusion[a][a] != one)
    primes = {A.neg[a] for a in D}
    if set(D) & primes or len(D) + len(primes) + 2 != A.size:
        return ReflectionRecognition(False, "carrier does not split as D, ~D and two bounds", D)
    R = A.rl_reduct()
    if closure(R, D) != set(D):
        return ReflectionRecognition(False, "D is not a subuniverse", D)
    base = restrict(R, D, name=f"D({A.name})" if A.name else None)
    if not is_dunn_monoid(base):
        return ReflectionRecognition(False, "D is not a Dunn monoid", D)
    refl = reflection(base)
    m = len(D)
    mapping = list(D) + [A.neg[a] for a in D] + [zero, one]
    try:
        iso = Homomorphism(refl, A, tuple(mapping))
    except Exception:
        return ReflectionRecognition(False, "the reflection laws fail", D, base)
    assert len(mapping) == 2 * m + 2
    return ReflectionRecognition(True, "ok", D, base, iso)


# -- negative generation ------------------------------------------------------------


@dataclass
class NegGenReport:
    kind: str
    conditions: dict[str, bool]
    details: dict = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return len(set(self.conditions.values())) <= 1

    @property
    def verdict(self) -> bool:
        return all(self.conditions.values())


def _fsi_factor_shape(Q: FiniteAlgebra) -> tuple[bool, str]:
    """Is the totally ordered De Morgan monoid Q a Sugihara monoid or S[R(D)] with D a GSM chain?"""
    if is_idempotent(Q):
        return True, "Sugihara monoid"
    dec = decompose_dmm(Q)
    rec = reflection_recognize(dec.core)
    if not rec.is_reflection:
        return False, f"core is not a reflection: {rec.reason}"
    D = rec.base
    if not (D.is_chain() and is_idempotent(D) and is_gsm(D).gsm):
        return False, "core is a reflection of a non-GSM"
    return True, "S[R(D)] with D a GSM chain"


def neg_gen_equivalence_suite(A: FiniteAlgebra) -> NegGenReport:
    """Compute each characterization of negative generation independently."""
    semi = is_semilinear(A)
    if not semi or not (is_dunn_monoid(A) or is_de_morgan_monoid(A)):
        raise WrongClass("expected a semilinear Dunn or De Morgan monoid")
    neg_gen = closure(A, negative_cone(A)) == set(A.elements)
    if A.neg is None:
        gsm = is_idempotent(A) and is_gsm(A).gsm
        sigma = terms.check_named(A, "sigma")
        return NegGenReport("dunn", {
            "negatively_generated": neg_gen,
            "idempotent_gsm": gsm,
            "sigma_equation": sigma.holds,
        }, {"sigma_counterexample": sigma.counterexample})
    eq = terms.check_named(A, "negcone")
    shapes = []
    kernels = []
    for P in prime_filters(A):
        Q, q = quotient(A, P)
        ok, why = _fsi_factor_shape(Q)
        shapes.append({"filter": sorted(P), "ok": ok, "shape": why})
        kernels.append(q.map)
    separating = all(
        any(k[a] != k[b] for k in kernels)
        for a in A.elements for b in A.elements if a < b
    )
    structural = separating and all(s["ok"] for s in shapes)
    return NegGenReport("de-morgan", {
        "negatively_generated": neg_gen,
        "negcone_equation": eq.holds,
        "structural": structural,
    }, {"negcone_counterexample": eq.counterexample, "factors": shapes,
        "kernels_separate": separating})


# -- cardinality bounds ------------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    size: int
    generators: int
    applicable: dict[str, int]
    bound: int | None
    slack: int | None
    holds: bool


def bound_check(A: FiniteAlgebra, gens) -> BoundReport:
    gens = sorted(set(gens))
    if closure(A, gens) != set(A.elements):
        raise NotGenerating("the given elements do not generate the algebra")
    if not A.is_chain():
        raise WrongClass("bounds apply to totally ordered algebras only")
    n = len(gens)
    rep = classify(A)
    app: dict[str, int] = {}
    if rep.sugihara_monoid:
        app["sugihara"] = 2 * n + 1 if rep.odd else 2 * n + 2
    if A.neg is None and rep.idempotent:
        app["idempotent"] = 3 * n + 1
    if rep.de_morgan_monoid:
        rec = reflection_recognize(A)
        if rec.is_reflection and is_totally_ordered_idempotent(rec.base):
            app["reflection"] = 2 + 2 * (3 * n + 1)
        if rep.negatively_generated:
            app["negatively_generated_dmm"] = 6 * n + 4
    bound = min(app.values()) if app else None
    slack = None if bound is None else bound - A.size
    return BoundReport(A.size, n, app, bound, slack, all(A.size <= b for b in app.values()))


def min_generating_set(A: FiniteAlgebra) -> tuple[int, ...]:
    """Lexicographically first generating set of least size."""
    for k in range(A.size + 1):
        for combo in combinations(A.elements, k):
            if len(closure(A, combo)) == A.size:
                return combo
    raise InternalInvariantViolation("the whole carrier failed to generate")


# -- rigorous compactness -----------------------------------------------------------------


@dataclass(frozen=True)
class CompactnessReport:
    bounded: bool
    top_absorbs: bool
    into_bottom: bool
    from_top: bool
    fsi: bool
    de_morgan: bool

    @property
    def agree(self) -> bool:
        return self.top_absorbs == self.into_bottom == self.from_top

    @property
    def fsi_implies_compact(self) -> bool:
        """Bounded FSI De Morgan monoids are rigorously compact."""
        return not (self.fsi and self.de_morgan) or self.top_absorbs


def rigorous_compactness_suite(A: FiniteAlgebra) -> CompactnessReport:
    bot, top = A.bottom, A.top
    c1 = all(A.fusion[top][a] == top for a in A.elements if a != bot)
    c2 = all(A.residual[a][bot] == bot for a in A.elements if a != bot)
    c3 = all(A.residual[top][b] == bot for b in A.elements if b != top)
    rep = classify(A)
    return CompactnessReport(True, c1, c2, c3, rep.fsi, rep.de_morgan_monoid)
