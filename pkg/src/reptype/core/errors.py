"""Exception hierarchy shared by the kernels, the CLI and the HTTP layer.

``InputError`` subclasses mean the caller handed us something malformed or out
of domain (CLI exit code 2, HTTP 400). ``CapExceeded`` means the input is fine
but an enumeration would exceed a configured cap (exit code 3, HTTP 413).
"""

from __future__ import annotations


class ReptypeError(Exception):
    """Base class for every error raised by reptype."""

    exit_code: int = 2
    status_code: int = 500


# ---------------------------------------------------------------------------
# Input errors
# ---------------------------------------------------------------------------

class InputError(ReptypeError):
    """Malformed or out-of-domain input."""

    exit_code = 2
    status_code = 400


class ParseError(InputError):
    """Document is not well-formed JSON."""


class SchemaError(InputError):
    """Document parsed but failed schema validation."""


class DimensionMismatch(InputError):
    """Vector length does not match the relation size."""


class CycleDetected(InputError):
    """Cover list contains a directed cycle."""


class BadSizes(InputError):
    """Wattle chain sizes violate |Z_i| >= 2 or t > 1."""


class NotCoxeter(InputError):
    """Graph labels are not valid Coxeter labels."""


class BadMatrix(InputError):
    """Coxeter matrix is not symmetric or has invalid entries."""


class AxiomViolation(InputError):
    """Biequivalence violates one of its axioms."""

    def __init__(self, axiom: str, message: str) -> None:
        super().__init__(f"axiom {axiom}: {message}")
        self.axiom = axiom


class NotReducible(InputError):
    """Reduction precondition does not hold at the requested point."""


class ClassTooSmall(InputError):
    """Equivalence class has at most two members."""


class NotSemilinear(InputError):
    """Marking is not semilinear where a semilinear one is required."""


class NotComparable(InputError):
    """Pair of points is not comparable."""


class Disconnected(InputError):
    """Graph or quiver is not connected."""


class Unsupported(InputError):
    """Input lies outside the supported class of objects."""


class NonIntegral(InputError):
    """Group order formula produced a non-integer."""


# ---------------------------------------------------------------------------
# Resource limits
# ---------------------------------------------------------------------------

class CapExceeded(ReptypeError):
    """Enumeration would exceed a configured size cap."""

    exit_code = 3
    status_code = 413

    def __init__(self, what: str, size: int, cap: int) -> None:
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class RefinementExhausted(ReptypeError):
    """Interval refinement could not separate a value from a threshold."""

    exit_code = 2
    status_code = 500


class ShapeViolation(ReptypeError):
    """A marked quiver does not have the path shape around its marked vertex.

    Raised and caught inside the quiver classifier, where it becomes a Wild
    verdict; it never reaches the caller.
    """


def check_cap(what: str, size: int, cap: int) -> None:
    """Raise ``CapExceeded`` when ``size`` is above ``cap``."""
    if size > cap:
        raise CapExceeded(what, size, cap)
