"""Exception hierarchy shared by every dmlab module."""

from __future__ import annotations


class DmlabError(Exception):
    """Base class for all library errors."""


class InvalidAlgebra(DmlabError, ValueError):
    """Raised when raw tables do not describe a finite (involutive) residuated lattice."""


class MalformedInput(InvalidAlgebra):
    """Tables have the wrong shape or contain out-of-range indices."""


class NotALattice(InvalidAlgebra):
    pass


class NotAMonoid(InvalidAlgebra):
    def __init__(self, message: str, triple: tuple[int, ...] = ()):
        super().__init__(message)
        self.triple = triple


class NotResiduated(InvalidAlgebra):
    def __init__(self, message: str, pair: tuple[int, int] = (-1, -1)):
        super().__init__(message)
        self.pair = pair


class BadInvolution(InvalidAlgebra):
    def __init__(self, message: str, element: int = -1):
        super().__init__(message)
        self.element = element


class NotAHomomorphism(DmlabError, ValueError):
    pass


class WrongClass(DmlabError, ValueError):
    """An operation was called on an algebra outside the class it is defined for."""


class SpecInvalid(WrongClass):
    pass


class NotADunnMonoid(WrongClass):
    pass


class NotOddSugihara(WrongClass):
    pass


class NotDeMorgan(WrongClass):
    pass


class IsIdempotent(WrongClass):
    pass


class NotASubuniverse(DmlabError, ValueError):
    pass


class NotGenerating(DmlabError, ValueError):
    pass


class ElementInB(DmlabError, ValueError):
    pass


class InternalInvariantViolation(DmlabError, AssertionError):
    """A computed object failed a check that validated inputs guarantee."""


class TermError(DmlabError):
    pass


class TermSyntaxError(TermError, SyntaxError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnboundVariable(TermError, KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"unbound variable {self.name!r}"


class NoInvolution(TermError, ValueError):
    pass
