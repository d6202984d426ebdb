"""Terms over the [I]RL signature: parser, printer, evaluator and equation checker.

Concrete syntax (ASCII)::

    x, y1, ...     variables          e, f        constants (f is ~e)
    ~t             negation           t^*         t -> e
    t^n            n-fold fusion      |t|         t -> t
    s * t          fusion             s /\\ t      meet
    s \\/ t         join               s -> t      residual
    s <-> t        (s -> t) /\\ (t -> s)

Binding strength, tightest first: ``~``, postfix ``^*``/``^n``, ``*``, ``/\\``,
``\\/``, then ``->``/``<->``.  Fusion, meet and join associate to the left, the
arrows to the right.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Callable, Mapping, Union

from .algebra import FiniteAlgebra
from .errors import NoInvolution, TermSyntaxError, UnboundVariable


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class E:
    pass


@dataclass(frozen=True)
class Fuse:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Resid:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Meet:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Join:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Neg:
    arg: "Term"


Term = Union[Var, E, Fuse, Resid, Meet, Join, Neg]


# -- defined terms ----------------------------------------------------------

F = Neg(E())


def star(t: Term) -> Term:
    return Resid(t, E())


def absval(t: Term) -> Term:
    return Resid(t, t)


def biresid(s: Term, t: Term) -> Term:
    return Meet(Resid(s, t), Resid(t, s))


def power(t: Term, n: int) -> Term:
    if n == 0:
        return E()
    out = t
    for _ in range(n - 1):
        out = Fuse(out, t)
    return out


F2 = Fuse(F, F)


def d_prime(t: Term) -> Term:
    return Meet(Resid(F2, Fuse(t, F)), Fuse(F2, Neg(t)))


def sigma(t: Term) -> Term:
    return Fuse(Meet(t, E()), star(Meet(star(t), E())))


def d(t: Term) -> Term:
    return d_prime(Neg(t))


def sigma_prime(t: Term) -> Term:
    return Neg(sigma(Neg(t)))


def negcone_rhs(x: Term) -> Term:
    s, s2 = sigma(x), sigma_prime(x)
    return Join(
        Join(Meet(d(s), s), Meet(d_prime(s2), s2)),
        Resid(Join(F2, Neg(F2)), s2),
    )


def _named_equations() -> dict[str, tuple[Term, Term]]:
    x, y = Var("x"), Var("y")
    return {
        "sigma": (x, sigma(x)),
        "sigma-sm": (x, Fuse(Meet(x, E()), Neg(Meet(Neg(x), F)))),
        "negcone": (x, negcone_rhs(x)),
        "gsm": (star(star(Join(x, E()))), Join(x, E())),
        # e <= (x->y) \/ (y->x), written as an equation
        "semilinear": (Meet(E(), Join(Resid(x, y), Resid(y, x))), E()),
    }


NAMED_EQUATIONS = _named_equations()


def variables(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, E):
        return set()
    if isinstance(t, Neg):
        return variables(t.arg)
    return variables(t.left) | variables(t.right)


def uses_negation(t: Term) -> bool:
    if isinstance(t, Neg):
        return True
    if isinstance(t, (Var, E)):
        return False
    return uses_negation(t.left) or uses_negation(t.right)


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(<->|->|/\\|\\/|\^\*|\^|\*|~|\||\(|\)|=)|([a-z][a-z0-9]*)|(\d+))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise TermSyntaxError(f"unexpected character {text[pos].strip() or text[pos]!r}",
                                  len(text[pos:]) - len(text[pos:].lstrip()) + pos)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("op", m.group(1), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        else:
            out.append(("num", m.group(3), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, max_exponent: int | None):
        self.toks = _tokenize(text)
        self.i = 0
        self.max_exponent = max_exponent

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, op: str) -> None:
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise TermSyntaxError(f"expected {op!r}, found {val or 'end of input'!r}", pos)

    def at(self, op: str) -> bool:
        kind, val, _ = self.peek()
        return kind == "op" and val == op

    def arrow(self) -> Term:
        left = self.join()
        if self.at("->"):
            self.take()
            return Resid(left, self.arrow())
        if self.at("<->"):
            self.take()
            return biresid(left, self.arrow())
        return left

    def join(self) -> Term:
        t = self.meet()
        while self.at("\\/"):
            self.take()
            t = Join(t, self.meet())
        return t

    def meet(self) -> Term:
        t = self.fusion()
        while self.at("/\\"):
            self.take()
            t = Meet(t, self.fusion())
        return t

    def fusion(self) -> Term:
        t = self.postfix()
        while self.at("*"):
            self.take()
            t = Fuse(t, self.postfix())
        return t

    def postfix(self) -> Term:
        t = self.prefix()
        while self.at("^*") or self.at("^"):
            _, val, pos = self.take()
            if val == "^*":
                t = star(t)
                continue
            kind, num, npos = self.take()
            if kind != "num":
                raise TermSyntaxError("expected exponent after '^'", npos)
            n = int(num)
            if self.max_exponent is not None and n > self.max_exponent:
                raise TermSyntaxError(f"exponent {n} exceeds the limit {self.max_exponent}", npos)
            t = power(t, n)
        return t

    def prefix(self) -> Term:
        if self.at("~"):
            self.take()
            return Neg(self.prefix())
        return self.atom()

    def atom(self) -> Term:
        kind, val, pos = self.take()
        if kind == "name":
            if val == "e":
                return E()
            if val == "f":
                return Neg(E())
            return Var(val)
        if kind == "op" and val == "(":
            t = self.arrow()
            self.expect(")")
            return t
        if kind == "op" and val == "|":
            t = self.arrow()
            self.expect("|")
            return absval(t)
        raise TermSyntaxError(f"unexpected {val or 'end of input'!r}", pos)


def parse(text: str, max_exponent: int | None = None) -> Term:
    p = _Parser(text, max_exponent)
    t = p.arrow()
    kind, val, pos = p.peek()
    if kind != "end":
        raise TermSyntaxError(f"unexpected {val!r}", pos)
    return t


def parse_equation(text: str, max_exponent: int | None = None) -> tuple[Term, Term]:
    """Split ``lhs = rhs`` and parse both sides."""
    if text.count("=") != 1:
        raise TermSyntaxError("an equation needs exactly one '='", text.find("=") if "=" in text else len(text))
    cut = text.index("=")
    lhs = parse(text[:cut], max_exponent)
    try:
        rhs = parse(text[cut + 1:], max_exponent)
    except TermSyntaxError as exc:
        raise TermSyntaxError(str(exc).rsplit(" at position", 1)[0], exc.position + cut + 1) from None
    return lhs, rhs


# -- printing ---------------------------------------------------------------

_LEVEL = {Resid: 1, Join: 2, Meet: 3, Fuse: 4, Neg: 5, Var: 6, E: 6}
_SYMBOL = {Resid: "->", Join: "\\/", Meet: "/\\", Fuse: "*"}


def _level(t: Term) -> int:
    if t == F:
        return 6
    return _LEVEL[type(t)]


def to_text(t: Term) -> str:
    """Render a term so that ``parse(to_text(t)) == t``."""
    if isinstance(t, Var):
        return t.name
    if isinstance(t, E):
        return "e"
    if t == F:
        return "f"
    if isinstance(t, Neg):
        return "~" + _wrap(t.arg, 5)
    lvl = _LEVEL[type(t)]
    if isinstance(t, Resid):
        left, right = _wrap(t.left, lvl + 1), _wrap(t.right, lvl)
    else:
        left, right = _wrap(t.left, lvl), _wrap(t.right, lvl + 1)
    return f"{left} {_SYMBOL[type(t)]} {right}"


def _wrap(t: Term, need: int) -> str:
    s = to_text(t)
    return s if _level(t) >= need else f"({s})"


# -- evaluation ---------------------------------------------------------------

Assignment = Mapping[str, int]


def compile_term(A: FiniteAlgebra, t: Term) -> Callable[[Assignment], int]:
    """Turn ``t`` into a function of an assignment, table lookups only."""
    if uses_negation(t) and A.neg is None:
        raise NoInvolution("term uses negation but the algebra has no involution")
    return _compile(A, t)


def _compile(A: FiniteAlgebra, t: Term) -> Callable[[Assignment], int]:
    if isinstance(t, Var):
        name = t.name

        def var(asg):
            try:
                return asg[name]
            except KeyError:
                raise UnboundVariable(name) from None
        return var
    if isinstance(t, E):
        e = A.e
        return lambda asg: e
    if isinstance(t, Neg):
        g, neg = _compile(A, t.arg), A.neg
        return lambda asg: neg[g(asg)]
    table = {Fuse: A.fusion, Resid: A.residual, Meet: A.meet, Join: A.join}[type(t)]
    lf, rf = _compile(A, t.left), _compile(A, t.right)
    return lambda asg: table[lf(asg)][rf(asg)]


def evaluate(A: FiniteAlgebra, t: Term, asg: Assignment | None = None) -> int:
    return compile_term(A, t)(asg or {})


@dataclass(frozen=True)
class EquationVerdict:
    holds: bool
    variables: tuple[str, ...]
    counterexample: dict[str, int] | None = None
    lhs_value: int | None = None
    rhs_value: int | None = None


def check_equation(A: FiniteAlgebra, lhs: Term, rhs: Term) -> EquationVerdict:
    """Exhaustive check; reports the lexicographically first failing assignment.

    Variables are ordered by name and elements by index, the first variable
    varying slowest.
    """
    names = tuple(sorted(variables(lhs) | variables(rhs)))
    fl, fr = compile_term(A, lhs), compile_term(A, rhs)
    for values in product(A.elements, repeat=len(names)):
        asg = dict(zip(names, values))
        a, b = fl(asg), fr(asg)
        if a != b:
            return EquationVerdict(False, names, asg, a, b)
    return EquationVerdict(True, names)


def check_named(A: FiniteAlgebra, key: str) -> EquationVerdict:
    lhs, rhs = NAMED_EQUATIONS[key]
    return check_equation(A, lhs, rhs)
