"""Exception taxonomy shared across the package.

Every failure mode that callers are expected to catch gets its own class so
the CLI can map them to exit codes without string matching.
"""


class SliceCalcError(Exception):
    """Base class for all library errors."""


class KindMismatch(SliceCalcError):
    """Operands live in different algebras (H vs O)."""


class ModeMismatch(SliceCalcError):
    """Exact and float scalars mixed in one operation."""


class InvalidUnit(SliceCalcError):
    """Element fails the trace-zero / norm-one test for an imaginary unit."""


class InvalidBase(SliceCalcError):
    """Proposed splitting base is not a real vector-space basis."""


class NotInvertible(SliceCalcError):
    """Inverse of a zero element requested."""


class NotOnSlice(SliceCalcError):
    """Point does not lie on the requested complex slice."""


class OutsideDomain(SliceCalcError):
    """Evaluation point is outside the declared domain."""


class BranchUndefined(SliceCalcError):
    """Piecewise stem evaluated on the real axis where no branch applies."""


class ExactUnavailable(SliceCalcError):
    """Exact-mode evaluation impossible (irrational slice radius or node)."""


class StemnessViolation(SliceCalcError):
    """Even/odd intrinsic symmetry check failed."""


class NormalIdenticallyZero(SliceCalcError):
    """Reciprocal requested for a function whose normal function vanishes."""


class UnsupportedNode(SliceCalcError):
    """AST node outside the certifiable fragment (exp, cos, sin)."""


class UnsupportedStem(SliceCalcError):
    """Operation needs a rational-function stem and none could be extracted."""


class ZeroResultant(SliceCalcError):
    """Elimination degenerated to the zero polynomial even after reduction."""


class DegreeCapExceeded(SliceCalcError):
    """Annihilator degree in the function variable exceeded the cap."""


class VerificationFailure(SliceCalcError):
    """Residual check on an emitted certificate did not meet tolerance."""


class EssentialDetected(SliceCalcError):
    """Growth sampling contradicts both removable and pole classification."""


class QIdenticallyZeroAtZero(SliceCalcError):
    """Zero-locus bound degenerate: the z2-stripped annihilator vanishes at 0."""


class NonRationalComponent(SliceCalcError):
    """Reconstruction needs rational components and one refused to fold."""


class ZeroPolynomial(SliceCalcError):
    """Operation undefined for the identically zero polynomial."""


class ParseError(SliceCalcError):
    """DSL syntax error; carries the byte offset of the failure."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset
