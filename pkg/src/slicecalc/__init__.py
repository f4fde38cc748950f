"""Slice-function calculus over quaternions and octonions.

Exact and floating arithmetic in the Cayley-Dickson algebras, stem
functions and slice functions built from them, slice polynomials with
zero-set computation, and Nash-style certification of slice regular
functions through annihilating bivariate polynomials.
"""

from .cayley_dickson import (
    AlgebraElement,
    AlgebraKind,
    ImaginaryUnit,
    Mode,
    SplittingBase,
    associator,
    commutator,
    make_splitting_base,
    random_element,
    random_imaginary_unit,
    real_part_mixed,
)
from .complexified import (
    ComplexPoint,
    ComplexifiedElement,
    phi,
    phi_inv,
    phi_tilde,
    phi_tilde_left,
)
from .elimination import BiPoly, squarefree_z2, t_resultant
from .errors import (
    BranchUndefined,
    DegreeCapExceeded,
    EssentialDetected,
    ExactUnavailable,
    InvalidBase,
    InvalidUnit,
    KindMismatch,
    ModeMismatch,
    NonRationalComponent,
    NormalIdenticallyZero,
    NotInvertible,
    NotOnSlice,
    OutsideDomain,
    ParseError,
    QIdenticallyZeroAtZero,
    SliceCalcError,
    StemnessViolation,
    UnsupportedNode,
    UnsupportedStem,
    VerificationFailure,
    ZeroPolynomial,
    ZeroResultant,
)
from .nash_cert import (
    AnnihilatorPoly,
    BoundCertificate,
    CertStatus,
    NashCertificate,
    RationalSliceFn,
    SemiregularReport,
    SingularityKind,
    annihilator,
    certify_semiregular_nash,
    certify_slice_nash,
    classify_singularity,
    poly_bound_at_infinity,
    reconstruct_rational,
    slice_poly_bound,
    zero_locus_bound,
)
from .slice_fn import (
    SliceFunction,
    ZeroSet,
    const_fn,
    default_base,
    identity_fn,
    is_slice_preserving,
    normal,
    poly_zero_set,
    reciprocal,
    representation_check,
    slice_conjugate,
    slice_derivative,
    slice_eval,
    slice_product,
    splitting_components,
)
from .slice_poly import (
    ComplexPolynomial,
    OrderedPoly2,
    SlicePolynomial,
    cauchy_root_bound,
    complex_roots,
    delta,
    ordered_eval_bullet,
    poly_eval,
    poly_normal,
    poly_slice_mul,
    poly_zeros,
)
from .stem_expr import (
    Add,
    CInv,
    Const,
    DomainSpec,
    Mul,
    PiecewiseSign,
    PolyRatio,
    Radical,
    ScalarFn,
    Trig,
    Z,
    check_holomorphy,
    check_stemness,
    eval_stem,
    poly_stem,
    stem_derivative,
)

__version__ = "0.1.0"
