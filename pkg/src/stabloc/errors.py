"""Exception hierarchy shared by every stabloc module."""

from __future__ import annotations


class StablocError(Exception):
    """Base class for all errors raised by stabloc."""


class DimensionError(StablocError, ValueError):
    """Operands have incompatible shapes or an index is out of range."""


class ResourceError(StablocError):
    """A dense or enumerative computation would exceed its configured cap."""


class ValidationError(StablocError, ValueError):
    """Input is structurally invalid (non-Hermitian, malformed cellulation, ...)."""


class CommutativityError(ValidationError):
    def __init__(self, i: int, j: int, a, b):
        self.pair = (i, j)
        super().__init__(
            f"generators {i + 1} ({a}) and {j + 1} ({b}) anticommute"
        )


class TrivialCodespaceError(ValidationError):
    """-1 lies in the generated group; ``certificate`` lists the generators whose product is -1."""

    def __init__(self, certificate: tuple[int, ...]):
        self.certificate = certificate
        labels = ", ".join(str(i + 1) for i in certificate)
        super().__init__(f"product of generators {{{labels}}} equals -I: codespace is trivial")


class PreconditionError(StablocError):
    """A theorem's hypothesis (or an operation's precondition) does not hold."""


class BudgetExceeded(StablocError):
    """A subset search ran out of budget.

    ``lower`` is the best proven lower bound on the quantity being searched for,
    ``upper`` the best known upper bound (``None`` if none is known).
    """

    def __init__(self, kind: str, lower: int, upper: int | None, examined: int):
        self.kind = kind
        self.lower = lower
        self.upper = upper
        self.examined = examined
        super().__init__(
            f"{kind} search budget exhausted after {examined} subsets; "
            f"{kind} >= {lower}" + (f", {kind} <= {upper}" if upper is not None else "")
        )


class ConsistencyError(StablocError, AssertionError):
    """An identity that must hold by theory failed; indicates an implementation bug."""


class ParseError(StablocError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
