"""Exception hierarchy shared by every module.

Each error carries a machine-readable ``token`` (printed by the CLI as the
last line of any failing run) and an ``exit_code`` grouping:

* 1 -- input or hypothesis validation failed,
* 2 -- a configured cap was exceeded,
* 3 -- an internal invariant that should be unbreakable broke.
"""

from __future__ import annotations


class CayleymapsError(Exception):
    """Base class; subclasses pin ``token`` and ``exit_code``."""

    token = "Error"
    exit_code = 1

    def __init__(self, message: str = ""):
        super().__init__(message)
        self.message = message

    def __str__(self) -> str:  # pragma: no cover - trivial
        return self.message or self.token


class NotAGroup(CayleymapsError):
    """Multiplication table fails a group axiom; carries the witness."""

    token = "NotAGroup"

    def __init__(self, message: str, witness: tuple | None = None):
        super().__init__(message)
        self.witness = witness


class BadParameter(CayleymapsError):
    token = "BadParameter"


class CapExceeded(CayleymapsError):
    token = "CapExceeded"
    exit_code = 2


class CaySetInvalid(CayleymapsError):
    """Connection-set validation failure.

    ``violations`` holds every failed check as ``(token, detail)`` so a set
    can be reported as, say, both too small and non-generating in one error.
    """

    token = "CaySetInvalid"

    def __init__(self, violations: list[tuple[str, str]]):
        self.violations = tuple(violations)
        self.token = violations[0][0]
        msg = "; ".join(f"{tok}: {detail}" for tok, detail in violations)
        super().__init__(msg)


# Violation tokens used inside CaySetInvalid (and nowhere else).
NOT_INVERSE_CLOSED = "NotInverseClosed"
CONTAINS_IDENTITY = "ContainsIdentity"
NOT_GENERATING = "NotGenerating"
TOO_SMALL = "TooSmall"


class NotCayleyLabeled(CayleymapsError):
    token = "NotCayleyLabeled"


class AxiomViolation(CayleymapsError):
    """A permutation is not a valid map; names the axiom and a witness flag."""

    token = "AxiomViolation"

    def __init__(self, axiom: str, witness: int, message: str = ""):
        self.axiom = axiom
        self.witness = witness
        super().__init__(message or f"map axiom ({axiom}) fails at flag {witness}")


class NotSemiRegular(CayleymapsError):
    token = "NotSemiRegular"


class NotInvolutions(CayleymapsError):
    token = "NotInvolutions"


class NonIntegralExponent(CayleymapsError):
    """A census exponent came out non-integral: the closed form's hypotheses
    do not hold on this instance (or the special-case formula in use does not
    apply).  Validation-level: the input is outside the formula's domain."""

    token = "NonIntegralExponent"


class InternalInconsistency(CayleymapsError):
    token = "InternalInconsistency"
    exit_code = 3


class NonIntegralBurnside(CayleymapsError):
    """Burnside sum not divisible by the acting group order: implementation bug."""

    token = "NonIntegralBurnside"
    exit_code = 3


class NonIntegralSum(CayleymapsError):
    """Exact-mode census sum not divisible by the normalizer |G||H|."""

    token = "NonIntegralSum"
    exit_code = 3
