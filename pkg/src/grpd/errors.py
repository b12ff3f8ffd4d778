"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class GroupoidError(Exception):
    """Base class for all errors raised by grpd."""


class AxiomViolation(GroupoidError):
    """A raw table failed one of the groupoid axioms.

    ``axiom`` is one of ``"TABLE"``, ``"A1"``..``"A4"`` or ``"COMP"``;
    ``witness`` holds the offending element tokens in scan order.
    """

    def __init__(self, axiom: str, witness: tuple[str, ...], detail: str = ""):
        self.axiom = axiom
        self.witness = tuple(witness)
        self.detail = detail
        msg = f"axiom {axiom} fails at ({', '.join(self.witness)})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class UnknownElement(GroupoidError, KeyError):
    def __init__(self, token):
        self.token = token
        super().__init__(f"unknown element {token!r}")

    def __str__(self) -> str:
        return self.args[0]


class NotAnIdentity(GroupoidError):
    pass


class EmptySet(GroupoidError):
    pass


class EmptyIntersection(GroupoidError):
    pass


class NotASubgroupoid(GroupoidError):
    pass


class PreconditionFailed(GroupoidError):
    pass


class NotNormal(PreconditionFailed):
    pass


class QuotientUndefined(NotNormal):
    """A normal subgroupoid with non-isotropic members has no coset groupoid.

    Cosets of such a subgroupoid mix elements with different sources, so
    the rule "(gH)(lH) exists iff gl exists" depends on the representatives.
    """


class NotAFunction(GroupoidError):
    pass


class NotStrong(PreconditionFailed):
    pass


class NotSurjective(PreconditionFailed):
    pass


class NotNormalKernel(PreconditionFailed):
    pass


class NotCoIsotropic(PreconditionFailed):
    pass


class TargetNotAbelian(PreconditionFailed):
    pass


class BoundExceeded(GroupoidError):
    pass


class ParseError(GroupoidError):
    """A GRPD, subset or mapping document is malformed at ``line``:``column``."""

    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"{line}:{column}: {message}")


class DuplicateElement(ParseError):
    pass


class DuplicateProduct(ParseError):
    pass


class UndeclaredToken(ParseError):
    pass
