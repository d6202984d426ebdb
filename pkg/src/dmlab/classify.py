"""Single-algebra classification predicates with witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from itertools import product

from .algebra import FiniteAlgebra, closure, negative_cone
from .filters import congruence_lattice

Witness = dict | None


@dataclass(frozen=True)
class ClassificationReport:
    square_increasing: bool
    idempotent: bool
    distributive: bool
    totally_ordered: bool
    semilinear: bool
    bounded: bool
    rigorously_compact: bool
    anti_idempotent: bool
    odd: bool
    integral: bool
    fsi: bool
    si: bool
    simple: bool
    negatively_generated: bool
    gsm: bool
    dunn_monoid: bool
    de_morgan_monoid: bool
    sugihara_monoid: bool
    witnesses: dict = field(default_factory=dict, compare=False)

    def flags(self) -> dict[str, bool]:
        """Flags keyed by their camelCase names, in declaration order."""
        return {_camel(f.name): getattr(self, f.name) for f in fields(self) if f.name != "witnesses"}


def _camel(name: str) -> str:
    head, *rest = name.split("_")
    return head + "".join(w.capitalize() for w in rest)


def _first(A: FiniteAlgebra, arity: int, bad) -> tuple[int, ...] | None:
    for args in product(A.elements, repeat=arity):
        if bad(*args):
            return args
    return None


def _assign(names: str, args: tuple[int, ...] | None) -> Witness:
    if args is None:
        return None
    return dict(zip(names, args))


def is_square_increasing(A: FiniteAlgebra) -> bool:
    return all(A.le[x][A.fusion[x][x]] for x in A.elements)


def is_idempotent(A: FiniteAlgebra) -> bool:
    return all(A.fusion[x][x] == x for x in A.elements)


def is_distributive(A: FiniteAlgebra) -> bool:
    return _distributivity_failure(A) is None


def _distributivity_failure(A: FiniteAlgebra):
    M, J = A.meet, A.join
    return _first(A, 3, lambda x, y, z: M[x][J[y][z]] != J[M[x][y]][M[x][z]])


def is_semilinear(A: FiniteAlgebra) -> bool:
    return is_distributive(A) and _prelinearity_failure(A) is None


def _prelinearity_failure(A: FiniteAlgebra):
    R, J = A.residual, A.join
    return _first(A, 2, lambda x, y: not A.le[A.e][J[R[x][y]][R[y][x]]])


def fsi_by_join_irreducibility(A: FiniteAlgebra) -> tuple[bool, Witness]:
    for a, b in product(A.elements, repeat=2):
        if A.join[a][b] == A.e and a != A.e and b != A.e:
            return False, {"x": a, "y": b}
    return True, None


def _con_si_simple(A: FiniteAlgebra) -> tuple[bool, bool, bool]:
    """(fsi, si, simple) read off the congruence lattice."""
    cons = congruence_lattice(A)
    ident = tuple(range(A.size))
    nonid = [c for c in cons if c != ident]

    def below(c1, c2):  # c1 refines c2
        return all(c2[a] == c2[b] for a in A.elements for b in A.elements if c1[a] == c1[b])

    fsi = True
    for i, c1 in enumerate(nonid):
        for c2 in nonid[i:]:
            if all((c1[a] == c1[b] and c2[a] == c2[b]) == (a == b) for a in A.elements for b in A.elements):
                fsi = False
    atoms = [c for c in nonid if not any(d != c and below(d, c) for d in nonid)]
    si = len(atoms) == 1 and all(below(atoms[0], c) for c in nonid)
    simple = len(cons) == 2
    return fsi, si, simple


def classify(A: FiniteAlgebra) -> ClassificationReport:
    w: dict[str, Witness] = {}
    E = A.e
    els = A.elements

    sq_fail = _first(A, 1, lambda x: not A.le[x][A.fusion[x][x]])
    square_increasing = sq_fail is None
    w["squareIncreasing"] = _assign("x", sq_fail)

    id_fail = _first(A, 1, lambda x: A.fusion[x][x] != x)
    idempotent = id_fail is None
    w["idempotent"] = _assign("x", id_fail)

    d_fail = _distributivity_failure(A)
    distributive = d_fail is None
    w["distributive"] = _assign("xyz", d_fail)

    t_fail = _first(A, 2, lambda x, y: not (A.le[x][y] or A.le[y][x]))
    totally_ordered = t_fail is None
    w["totallyOrdered"] = _assign("xy", t_fail)

    p_fail = None if not distributive else _prelinearity_failure(A)
    semilinear = distributive and p_fail is None
    w["semilinear"] = w["distributive"] if not distributive else _assign("xy", p_fail)

    bottom, top = A.bottom, A.top
    bounded = True
    w["bounded"] = {"bottom": bottom, "top": top}

    rc_fail = _first(A, 1, lambda a: a != bottom and A.fusion[top][a] != top)
    rigorously_compact = rc_fail is None
    w["rigorouslyCompact"] = _assign("x", rc_fail)

    if A.neg is not None:
        f = A.f
        f2 = A.fusion[f][f]
        ai_fail = _first(A, 1, lambda x: not A.le[x][f2])
        anti_idempotent = ai_fail is None
        w["antiIdempotent"] = _assign("x", ai_fail) if ai_fail else {"f2": f2}
        odd = f == E
        w["odd"] = {"f": f}
    else:
        anti_idempotent = odd = False
        w["antiIdempotent"] = w["odd"] = {"reason": "no involution"}

    integral = E == top
    w["integral"] = {"top": top}

    fsi, w["fsi"] = fsi_by_join_irreducibility(A)
    below_e = [a for a in els if a != E and A.le[a][E]]
    if square_increasing:
        greatest = [a for a in below_e if all(A.le[b][a] for b in below_e)]
        si = A.size > 1 and len(greatest) == 1
        w["si"] = {"element": greatest[0]} if greatest else None
        simple = A.size > 1 and len(below_e) == 1
        w["simple"] = {"lower_bounds": below_e}
    else:
        _, si, simple = _con_si_simple(A)
        w["si"] = w["simple"] = {"method": "congruence lattice"}

    gen = closure(A, negative_cone(A))
    negatively_generated = len(gen) == A.size
    w["negativelyGenerated"] = {"generated": sorted(gen)}

    gsm_fail = None
    if semilinear and idempotent:
        gsm_fail = _first(A, 1, lambda x: A.star(A.star(A.join[x][E])) != A.join[x][E])
        gsm = gsm_fail is None
        w["gsm"] = _assign("x", gsm_fail)
    else:
        gsm = False
        w["gsm"] = {"reason": "not semilinear and idempotent"}

    dunn = A.neg is None and distributive and square_increasing
    dmm = A.neg is not None and distributive and square_increasing
    sm = dmm and idempotent
    return ClassificationReport(
        square_increasing, idempotent, distributive, totally_ordered, semilinear, bounded,
        rigorously_compact, anti_idempotent, odd, integral, fsi, si, simple,
        negatively_generated, gsm, dunn, dmm, sm, w,
    )


def congruence_fsi_si_simple(A: FiniteAlgebra) -> tuple[bool, bool, bool]:
    """FSI / SI / simple computed purely from the congruence lattice."""
    return _con_si_simple(A)


def is_totally_ordered_idempotent(A: FiniteAlgebra) -> bool:
    return A.is_chain() and is_idempotent(A)


def is_odd_sugihara_chain(A: FiniteAlgebra) -> bool:
    return (A.neg is not None and A.is_chain() and is_idempotent(A) and A.f == A.e)


def is_de_morgan_monoid(A: FiniteAlgebra) -> bool:
    return A.neg is not None and is_distributive(A) and is_square_increasing(A)


def is_dunn_monoid(A: FiniteAlgebra) -> bool:
    return A.neg is None and is_distributive(A) and is_square_increasing(A)
