"""Acceptance criteria, one test each.

Every test prints a single PASS/FAIL line with its runtime and budget; the
lines are repeated in the terminal summary.  All comparisons are exact.
"""

from __future__ import annotations

import itertools
import random

from dmlab import corpus
from dmlab.algebra import are_isomorphic, canonical_form, closure, from_json, is_homomorphism
from dmlab.classify import classify, is_dunn_monoid, is_totally_ordered_idempotent
from dmlab.constructions import (
    ChainFamilySpec,
    boolean_two_plus,
    otimes,
    reflection,
    relative_stone_chain,
    rigorous_extension,
    rigorous_extension_layout,
    sugihara,
    trivial_algebra,
)
from dmlab.filters import congruence_classes
from dmlab.morphisms import (
    all_homomorphisms,
    all_subuniverses,
    aps_check,
    extend_to_rigorous,
    hom_conditions,
    hs_up_to_iso,
    is_epic,
    separating_pair_gsm,
    separating_pair_idem,
)
from dmlab.structure import (
    bound_check,
    decompose_dmm,
    decompose_otimes,
    is_gsm,
    min_generating_set,
    neg_gen_equivalence_suite,
)
from dmlab import terms
from helpers import idempotent_chain_failures, law_failures, otimes_oracle

ALL = corpus.KEYS


def chain_idempotent_keys(max_size=99):
    return [k for k in ALL
            if is_totally_ordered_idempotent(corpus.get(k).rl_reduct()) and corpus.get(k).size <= max_size]


def dunn_keys():
    return [k for k in ALL if not corpus.get(k).involutive and is_dunn_monoid(corpus.get(k))]


def labels(A, xs):
    return sorted(A.label(x) for x in xs)


def table_mismatch(A, iso_map, elems, fus, res):
    """First cell where A's tables (read through iso_map) differ from the case display."""
    idx = {x: k for k, x in enumerate(elems)}
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            if A.fusion[iso_map[i]][iso_map[j]] != iso_map[idx[fus[x, y]]]:
                return ("fusion", x, y)
            if A.residual[iso_map[i]][iso_map[j]] != iso_map[idx[res[x, y]]]:
                return ("residual", x, y)
    return None


def test_ac01_axiom_suite(criterion):
    with criterion("AC01", "validate and derived-law suite on every corpus algebra", budget=1.0):
        for key in ALL:
            A = corpus.get(key)
            again = from_json(A.to_json(include_labels=True))
            assert again.same_tables(A), f"{key} does not re-validate to the same tables"
            bad = law_failures(A)
            assert not bad, f"{key} violates {bad}"
            if is_totally_ordered_idempotent(A.rl_reduct()):
                bad = idempotent_chain_failures(A)
                assert not bad, f"{key} violates {bad}"


def test_ac02_otimes_case_display(criterion):
    with criterion("AC02", "otimes tables match the case display cell for cell", budget=5.0):
        checked = 0
        for key in chain_idempotent_keys():
            A = corpus.get(key).rl_reduct()
            d = decompose_otimes(A)
            elems, fus, res = otimes_oracle(d.base, {d.base_universe.index(c): len(m) for c, m in d.blocks.items()})
            miss = table_mismatch(A, d.iso.map, elems, fus, res)
            assert miss is None, f"{key}: {miss}"
            checked += 1
        rng = random.Random(20240517)
        specs = []
        for n in (1, 3, 5, 7):
            S = sugihara(n)
            for sizes in itertools.product(range(1, 4), repeat=n):
                if sum(sizes) <= 12:
                    specs.append((S, dict(zip(S.elements, sizes))))
        rng.shuffle(specs)
        for S, sizes in specs[:120]:
            A = otimes(ChainFamilySpec(S, sizes))
            assert A.size <= 12
            elems, fus, res = otimes_oracle(S, sizes)
            miss = table_mismatch(A, list(A.elements), elems, fus, res)
            assert miss is None, f"S{S.size} {sizes}: {miss}"
            checked += 1
        assert checked >= 100


def test_ac03_otimes_round_trip(criterion):
    with criterion("AC03", "decompose/otimes round trips on generated specs", budget=10.0):
        rng = random.Random(7)
        count = 0
        for _ in range(30):
            S = sugihara(rng.choice([3, 5, 7]))
            sizes = {c: rng.randint(1, 3) for c in S.elements}
            spec = ChainFamilySpec(S, sizes)
            A = otimes(spec)
            d = decompose_otimes(A)
            assert are_isomorphic(d.base, S.rl_reduct()), "base not recovered"
            assert d.block_sizes() == spec.size_list(), "block sizes not recovered"
            assert are_isomorphic(otimes(d.spec), A), "reassembly is not isomorphic"
            count += 1
        assert count >= 20


def test_ac04_hom_characterization(criterion):
    with criterion("AC04", "maps satisfying the order conditions equal allHomomorphisms", budget=60.0):
        keys = chain_idempotent_keys(max_size=7)
        pairs = [(a, b) for a in keys for b in keys
                 if corpus.get(b).size ** corpus.get(a).size <= 5000]
        assert len(pairs) >= 10
        for a, b in pairs:
            A, B = corpus.get(a).rl_reduct(), corpus.get(b).rl_reduct()
            by_conditions = {h for h in itertools.product(range(B.size), repeat=A.size)
                             if all(hom_conditions(h, A, B))}
            homs = {h.map for h in all_homomorphisms(A, B)}
            assert by_conditions == homs, f"{a} -> {b}"


def test_ac05_epic_example(criterion):
    with criterion("AC05", "S3(+)2 epic example and its separating pair", budget=5.0):
        A, A3 = corpus.get("S3o2"), corpus.get("S3o3")
        B = [A.index(t) for t in ("-1", "0", "1")]
        assert is_epic(A, B, [A]).epic, "S3 should be epic relative to V(S3(+)2)"
        v = is_epic(A, B, [A, A3])
        assert not v.epic, "S3 should not be epic once S3(+)3 is added"
        w = v.witness
        assert is_homomorphism(A, w.target, w.g.map) and is_homomorphism(A, w.target, w.h.map)
        assert all(w.g.map[b] == w.h.map[b] for b in B)
        assert w.g.map[w.element] != w.h.map[w.element]
        assert A.label(w.element) == "c"


def test_ac06_separating_pairs(criterion):
    with criterion("AC06", "separating pairs for every proper subalgebra and outside element", budget=60.0):
        cases = 0
        for key in chain_idempotent_keys(max_size=8):
            R = corpus.get(key).rl_reduct()
            gsm = is_gsm(R).gsm
            for U in all_subuniverses(R):
                if len(U) == R.size:
                    continue
                for a in R.elements:
                    if a in U:
                        continue
                    makers = [separating_pair_idem] + ([separating_pair_gsm] if gsm else [])
                    for make in makers:
                        sp = make(R, U, a)
                        assert is_homomorphism(R, sp.target, sp.g.map), f"{key}: g is not a homomorphism"
                        assert is_homomorphism(R, sp.target, sp.h.map), f"{key}: h is not a homomorphism"
                        assert all(sp.g.map[b] == sp.h.map[b] for b in U), f"{key}: maps differ on B"
                        assert sp.g.map[a] != sp.h.map[a], f"{key}: maps agree at {a}"
                        cases += 1
        assert cases > 0


def test_ac07_dunn_equivalences(criterion):
    with criterion("AC07", "negatively generated <=> idempotent GSM <=> sigma on Dunn chains", budget=5.0):
        keys = [k for k in dunn_keys() if corpus.get(k).is_chain()]
        assert keys
        for key in keys:
            A = corpus.get(key)
            neg_gen = len(closure(A, [x for x in A.elements if A.leq(x, A.e)])) == A.size
            idem_gsm = classify(A).idempotent and is_gsm(A).gsm
            sigma = terms.check_named(A, "sigma").holds
            assert neg_gen == idem_gsm == sigma, f"{key}: {neg_gen}, {idem_gsm}, {sigma}"
            rep = neg_gen_equivalence_suite(A)
            assert rep.agree and rep.verdict == neg_gen, f"{key}: suite {rep.conditions}"


def test_ac08_ap_family(criterion):
    with criterion("AC08", "A_p family satisfies the weak-ES failure hypotheses", budget=10.0):
        for key, p in (("A3", 3), ("A5", 5)):
            A = corpus.get(key)
            r = aps_check(A, A.index("2"), p - 1)
            assert r.hypothesis, f"{key}: 2 != 2^{p - 1} -> 2^{p}"
            assert labels(A, r.subuniverse) == sorted(["0", "1", str(2 ** p), str(2 ** (p + 1))])
            assert r.proper and r.epic.epic, f"{key}: subalgebra not epic"
            assert r.passes
        for key, p in (("A2+", 2), ("A4+", 4)):
            A = corpus.get(key)
            r = aps_check(A, A.index("2"), p)
            assert labels(A, r.subuniverse) == sorted(["0", "1", str(2 ** (p + 1))])
            assert r.proper and r.epic.epic, f"{key}: subalgebra not epic"
            assert r.hypothesis, (
                f"{key}: 2^{p} -> 2^{p + 1} evaluates to {A.label(r.residual)}, not 2")
            assert r.passes


def test_ac09_constructions(criterion):
    with criterion("AC09", "reflections and rigorous extensions validate with the stated properties", budget=10.0):
        for key in dunn_keys():
            D = corpus.get(key)
            R = reflection(D)
            assert from_json(R.to_json()).same_tables(R)
            assert classify(R).anti_idempotent, f"R({key}) is not anti-idempotent"
            assert R.size == 2 + 2 * D.size
        assert are_isomorphic(reflection(trivial_algebra(involutive=False)), corpus.get("C4"))
        pairs = [(3, "C4"), (5, "C4"), (3, "D4"), (5, "R2+"), (3, "2"), (7, "S3"), (3, "A3"), (5, "S3[C4]")]
        for s, a in pairs:
            S, A = sugihara(s), corpus.get(a)
            X = rigorous_extension(S, A)
            assert classify(X).de_morgan_monoid, f"S{s}[{a}] is not a De Morgan monoid"
            lay = rigorous_extension_layout(S, A)
            assert closure(X, lay.a_pos) == set(lay.a_pos), f"{a} is not a subalgebra of S{s}[{a}]"
            assert all(X.fusion[lay.a_pos[x]][lay.a_pos[y]] == lay.a_pos[A.fusion[x][y]]
                       for x in A.elements for y in A.elements)
        hom_pairs = [("C4", "C4"), ("A3", "A3"), ("S3[C4]", "S3"), ("D4", "2"), ("R2+", "C4"), ("S5", "S3")]
        extended = 0
        for a, b in hom_pairs:
            for h in all_homomorphisms(corpus.get(a), corpus.get(b)):
                for S in (sugihara(3), sugihara(5)):
                    ext = extend_to_rigorous(h, S)
                    assert is_homomorphism(ext.source, ext.target, ext.hom.map)
                    extended += 1
        assert len(pairs) >= 6 and extended > 0


def test_ac10_dmm_decomposition(criterion):
    with criterion("AC10", "De Morgan monoid decompositions round-trip", budget=5.0):
        algebras = {
            "S3[C4]": corpus.get("S3[C4]"),
            "S5[R(2+)]": rigorous_extension(sugihara(5), reflection(boolean_two_plus())),
            "A3": corpus.get("A3"),
            "C4": corpus.get("C4"),
        }
        for name, A in algebras.items():
            d = decompose_dmm(A)
            assert are_isomorphic(rigorous_extension(d.odd_factor, d.core), A), f"{name}: no round trip"
            assert d.iso.injective and d.iso.surjective
            f2 = A.mul(A.f, A.f)
            assert sorted(d.e_class) == sorted(A.interval(A.neg[f2], f2)), f"{name}: wrong e-class"
            classes = congruence_classes(d.quotient_map.map)
            others = [c for c in classes if A.e not in c]
            assert all(len(c) == 1 for c in others), f"{name}: non-singleton class"


def test_ac11_negcone_equation(criterion):
    with criterion("AC11", "negative cone equation holds and fails where expected", budget=10.0):
        gsm_chains = [corpus.get(k) for k in dunn_keys()
                      if corpus.get(k).is_chain() and classify(corpus.get(k)).idempotent and is_gsm(corpus.get(k)).gsm]
        gsm_chains += [sugihara(n).rl_reduct() for n in (3, 5)] + [relative_stone_chain(4)]
        assert len(gsm_chains) >= 2
        for D in gsm_chains:
            v = terms.check_named(reflection(D), "negcone")
            assert v.holds, f"fails on R({D.name})"
        for n in range(2, 8):
            assert terms.check_named(sugihara(n), "negcone").holds, f"fails on S{n}"
        for s in (3, 5):
            for D in gsm_chains[:3]:
                X = rigorous_extension(sugihara(s), reflection(D))
                assert terms.check_named(X, "negcone").holds, f"fails on S{s}[R({D.name})]"
        A3 = corpus.get("A3")
        v = terms.check_named(A3, "negcone")
        assert not v.holds and A3.label(v.counterexample["x"]) == "2", "A3 counterexample"
        assert not terms.check_named(corpus.get("A5"), "negcone").holds, "A5 should fail"


def test_ac12_bounds(criterion):
    with criterion("AC12", "cardinality bounds", budget=10.0):
        A = corpus.get("S3o2")
        r = bound_check(A, [A.index("c")])
        assert (r.size, r.bound, r.slack) == (4, 3 * 1 + 1, 0)
        S5 = corpus.get("S5")
        r = bound_check(S5, [S5.index("1"), S5.index("2")])
        assert (r.size, r.bound, r.slack) == (5, 2 * 2 + 1, 0)
        assert len(min_generating_set(S5)) == 2
        for key in dunn_keys():
            assert reflection(corpus.get(key)).size == 2 + 2 * corpus.get(key).size
        checked = 0
        for key in ALL:
            A = corpus.get(key)
            rep = classify(A)
            if A.is_chain() and rep.de_morgan_monoid and rep.negatively_generated:
                n = len(min_generating_set(A))
                assert A.size <= 6 * n + 4, f"{key}: {A.size} > 6*{n}+4"
                checked += 1
        assert checked > 0


def test_ac13_simple_zero_generated(criterion):
    with criterion("AC13", "simple 0-generated De Morgan monoids in HS of the corpus are 2, C4, D4", budget=10.0):
        found = {}
        for key in ALL:
            for C in hs_up_to_iso([corpus.get(key)]):
                if not C.involutive or C.size < 2:
                    continue
                rep = classify(C)
                if rep.de_morgan_monoid and rep.simple and len(closure(C, [])) == C.size:
                    found.setdefault(canonical_form(C), C)
        expected = {canonical_form(corpus.get(k)) for k in ("2", "C4", "D4")}
        assert set(found) == expected, f"found {sorted(C.size for C in found.values())}"
