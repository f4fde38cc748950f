"""Slice functions induced by stems, and the operations on them.

A slice function is determined by its stem: at x = alpha + beta I the value
is f(x) = F1(z) + I F2(z) with z = alpha + iota beta and the unit I acting
from the left.  Everything here works uniformly on H and O; the octonionic
quirks (ordering inside the product, anomaly of right constants) come out of
the stem algebra rather than special cases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .cayley_dickson import (
    AlgebraElement,
    AlgebraKind,
    ImaginaryUnit,
    Mode,
    SplittingBase,
    make_splitting_base,
)
from .complexified import ComplexifiedElement, ComplexPoint, phi, phi_inv, phi_tilde_left
from .elimination import p1_degree, p1_is_zero, p1_scale, p1_trim
from .errors import (
    BranchUndefined,
    ExactUnavailable,
    KindMismatch,
    NormalIdenticallyZero,
    NotInvertible,
    NotOnSlice,
    OutsideDomain,
    StemnessViolation,
    UnsupportedStem,
)
from .stem_expr import (
    Add,
    CInv,
    Const,
    DomainSpec,
    Mul,
    PiecewiseSign,
    PolyRatio,
    ScalarFn,
    StemExpr,
    Z,
    as_poly_ratio,
    check_stemness,
    component_functions,
    eval_scalar,
    eval_stem,
    stem_callable,
    stem_components,
    stem_derivative,
    stem_is_exact,
    stem_kind,
    uses_piecewise,
)

# Tolerances fixed by the contract: representation formula residual,
# slice-preservation sampling, identically-zero normal detection.
REPR_TOL = 1e-10
PRESERVING_TOL = 1e-10


@dataclass
class ZeroSet:
    """Zero set of a slice function: reals, isolated points, whole spheres.

    A sphere entry (alpha, beta) with beta > 0 stands for every alpha + beta J
    with J an imaginary unit.  The exceptional half slice covers the one case
    where the zeros fill an open half slice instead of a discrete set.
    """

    real_zeros: list = field(default_factory=list)
    isolated_zeros: list = field(default_factory=list)
    spherical_zeros: list = field(default_factory=list)
    exceptional_half_slice: ImaginaryUnit | None = None

    def __post_init__(self):
        if any(b <= 0 for _, b in self.spherical_zeros):
            raise ValueError("sphere radii must be positive")

    def count(self) -> int:
        return len(self.real_zeros) + len(self.isolated_zeros) + len(self.spherical_zeros)

    def to_json(self):
        from .cayley_dickson import scalar_to_json

        return {
            "real": [scalar_to_json(r) for r in self.real_zeros],
            "isolated": [x.to_json() for x in self.isolated_zeros],
            "spheres": [
                {"alpha": scalar_to_json(a), "beta": scalar_to_json(b)}
                for a, b in self.spherical_zeros
            ],
            "exceptional_half_slice": (
                None
                if self.exceptional_half_slice is None
                else self.exceptional_half_slice.x.to_json()
            ),
        }


def _sqrt_fraction(value: Fraction):
    """Exact square root of a rational, or None."""
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


@dataclass
class SliceFunction:
    """Stem + domain + algebra, with stemness checked on construction."""

    kind: AlgebraKind
    stem: StemExpr
    domain: DomainSpec = field(default_factory=DomainSpec.full_plane)
    validate: bool = True

    def __post_init__(self):
        k = stem_kind(self.stem)
        if k is not None and k is not self.kind:
            raise KindMismatch("stem constants live in a different algebra")
        if uses_piecewise(self.stem) and not self.domain.halves:
            raise BranchUndefined("piecewise stems need a domain avoiding the real axis")
        if self.validate:
            check_stemness(stem_callable(self.stem, self.kind), self.domain, n=64)

    # -- algebra of slice functions

    def _peer(self, other: "SliceFunction"):
        if self.kind is not other.kind:
            raise KindMismatch("slice functions over different algebras")

    def __add__(self, other: "SliceFunction") -> "SliceFunction":
        self._peer(other)
        return SliceFunction(
            self.kind, Add(self.stem, other.stem),
            self.domain.intersect(other.domain), validate=False,
        )

    def __sub__(self, other: "SliceFunction") -> "SliceFunction":
        self._peer(other)
        minus = Const(ComplexifiedElement.from_real_part(
            AlgebraElement.from_real(self.kind, -1 if stem_is_exact(other.stem) else -1.0)))
        return self + SliceFunction(
            self.kind, Mul(minus, other.stem), other.domain, validate=False)

    def __mul__(self, other: "SliceFunction") -> "SliceFunction":
        """The slice product, computed on stems: I(F * G)."""
        self._peer(other)
        return SliceFunction(
            self.kind, Mul(self.stem, other.stem),
            self.domain.intersect(other.domain), validate=False,
        )

    def conj(self) -> "SliceFunction":
        """Slice conjugate f^c, the stem image of the c-involution."""
        return SliceFunction(self.kind, CInv(self.stem), self.domain, validate=False)

    def normal(self) -> "SliceFunction":
        """N(f) = f . f^c; slice preserving, multiplicative."""
        return SliceFunction(
            self.kind, Mul(self.stem, CInv(self.stem)), self.domain, validate=False)

    def derivative(self) -> "SliceFunction":
        """Slice derivative: the function induced by the stem derivative."""
        return SliceFunction(
            self.kind, stem_derivative(self.stem, self.kind), self.domain, validate=False)

    # -- evaluation

    def decompose(self, x: AlgebraElement, mode=None):
        """Split x into (z, I) with x = phi_I(z); I is None on the real axis."""
        if x.kind is not self.kind:
            raise KindMismatch("point from a different algebra")
        want_exact = (
            x.mode is Mode.EXACT and stem_is_exact(self.stem)
            if mode is None
            else mode is Mode.EXACT
        )
        if want_exact and x.mode is not Mode.EXACT:
            raise ExactUnavailable("exact evaluation at a float point")
        im = x.imag_part()
        beta2 = im.norm()
        if want_exact:
            beta = _sqrt_fraction(beta2)
            if beta is None:
                if mode is Mode.EXACT:
                    raise ExactUnavailable(f"slice radius sqrt({beta2}) is irrational")
                x = x.to_float()
                im, beta = x.imag_part(), math.sqrt(float(beta2))
            elif beta == 0:
                return ComplexPoint(x.coeffs[0], Fraction(0)), None
            else:
                unit = ImaginaryUnit(im.scale(Fraction(1) / beta))
                return ComplexPoint(x.coeffs[0], beta), unit
        else:
            x = x.to_float()
            im = x.imag_part()
            beta = math.sqrt(float(beta2))
        if beta < 1e-15:
            return ComplexPoint(x.coeffs[0], 0.0), None
        unit = ImaginaryUnit(im.scale(1.0 / beta))
        return ComplexPoint(x.coeffs[0], beta), unit

    def __call__(self, x: AlgebraElement, mode=None) -> AlgebraElement:
        return self.eval(x, mode=mode)

    def eval(self, x: AlgebraElement, mode=None) -> AlgebraElement:
        """f(x) = F1(z) + I F2(z) after decomposing x = alpha + beta I."""
        z, unit = self.decompose(x, mode=mode)
        if not self.domain.contains(z):
            raise OutsideDomain(f"{z} outside {self.domain.describe()}")
        emode = Mode.EXACT if z.exact else Mode.FLOAT
        w = eval_stem(self.stem, z, self.kind, emode)
        if unit is None:
            # real point: F2 vanishes there because it is odd
            if emode is Mode.EXACT:
                if not w.y.is_zero():
                    raise StemnessViolation("odd part nonzero at a real point")
            elif not w.y.is_zero(1e-9 * (1.0 + math.sqrt(w.norm2()))):
                raise StemnessViolation("odd part nonzero at a real point")
            return w.x
        return phi_tilde_left(unit, w)

    def eval_on_slice(self, I: ImaginaryUnit, z: ComplexPoint) -> AlgebraElement:
        return self.eval(phi(I, z))

    def recover_stem(self, z: ComplexPoint, I: ImaginaryUnit) -> ComplexifiedElement:
        """Rebuild F(z) from slice values: F1 = (f(x)+f(x^c))/2, F2 = -I(f(x)-f(x^c))/2."""
        x = phi(I, z)
        xc = phi(I, z.conj())
        fx, fxc = self.eval(x), self.eval(xc)
        half = 0.5 if fx.mode is Mode.FLOAT else Fraction(1, 2)
        f1 = (fx + fxc).scale(half)
        Ix = I.x.to_float() if fx.mode is Mode.FLOAT else I.x
        f2 = -(Ix * (fx - fxc)).scale(half)
        return ComplexifiedElement(f1, f2)

    def representation_eval(self, x: AlgebraElement, I: ImaginaryUnit) -> AlgebraElement:
        """Value at x via the representation formula through the slice C_I."""
        z, unit = self.decompose(x)
        if unit is None:
            return self.eval(x)
        mode = Mode.FLOAT if not z.exact or I.mode is Mode.FLOAT else Mode.EXACT
        Ix = I.x.to_float() if mode is Mode.FLOAT else I.x
        J = unit.x.to_float() if mode is Mode.FLOAT else unit.x
        xp = phi(ImaginaryUnit(Ix), ComplexPoint.of(z))
        xm = phi(ImaginaryUnit(Ix), z.conj())
        fp, fm = self.eval(xp, mode=mode), self.eval(xm, mode=mode)
        half = 0.5 if mode is Mode.FLOAT else Fraction(1, 2)
        sym = (fp + fm).scale(half)
        anti = J * (Ix * (fp - fm))
        return sym - anti.scale(half)

    # -- structure

    def is_slice_regular(self, tol: float = None) -> bool:
        """Holomorphy of the stem, cached per function.

        Structural for trees of the known stem constructors (each is
        slice-wise holomorphic on its declared domain); the numeric
        Cauchy-Riemann sweep remains for foreign stem objects.
        """
        if not hasattr(self, "_regular"):
            from .stem_expr import check_holomorphy, stem_is_ast
            from .errors import VerificationFailure

            if stem_is_ast(self.stem):
                self._regular = True
                return self._regular
            try:
                check_holomorphy(
                    stem_callable(self.stem, self.kind), self.domain,
                    **({} if tol is None else {"tol": tol}),
                )
                self._regular = True
            except VerificationFailure:
                self._regular = False
        return self._regular

    def component_exprs(self, base: SplittingBase = None) -> list:
        """The u+1 complex component functions along the base's slice."""
        if base is None:
            base = default_base(self.kind)
        return component_functions(self.stem, base)

    def is_slice_preserving(self, tol: float = PRESERVING_TOL, n_samples: int = 64) -> bool:
        """True when both stem parts are real-scalar valued.

        Symbolic when every leaf constant is real-scalar (sound, and exact);
        otherwise falls back to sampling the non-scalar coordinates.
        """
        if _leaves_real_scalar(self.stem):
            return True
        fn = stem_callable(self.stem, self.kind)
        for z in self.domain.samples(n_samples, seed=3):
            try:
                w = fn(z)
            except (BranchUndefined, NotInvertible):
                continue
            off = sum(c * c for c in w.x.coeffs[1:]) + sum(c * c for c in w.y.coeffs[1:])
            if math.sqrt(off) > tol * (1.0 + math.sqrt(w.norm2())):
                return False
        return True

    def normal_is_zero(self) -> bool:
        """Does N(f) vanish identically? Decided exactly where possible."""
        nf = self.normal()
        if stem_is_exact(self.stem):
            pts = _exact_probe_points(self.domain)
            if pts:
                try:
                    return all(
                        eval_stem(nf.stem, z, self.kind, Mode.EXACT).is_zero() for z in pts
                    )
                except ExactUnavailable:
                    pass  # exact constants, irrational values: sample instead
        fn = stem_callable(nf.stem, self.kind)
        vals = []
        for z in self.domain.samples(32, seed=11):
            try:
                vals.append(math.sqrt(fn(z).norm2()))
            except (BranchUndefined, NotInvertible):
                continue
        return bool(vals) and max(vals) <= 1e-10

    def reciprocal(self) -> "SliceFunction":
        """f^{-.} = N(f)^{-1} f^c away from the zeros of the normal function."""
        if self.normal_is_zero():
            raise NormalIdenticallyZero("normal function vanishes identically")
        nf = self.normal()
        base = default_base(self.kind)
        if not stem_is_exact(self.stem):
            raise ExactUnavailable("reciprocal needs exact stem constants")
        comps = nf.component_exprs(base)
        ratio = as_poly_ratio(comps[0])
        if ratio is None:
            raise UnsupportedStem("normal-function stem is not a rational function")
        for extra in comps[1:]:
            r = as_poly_ratio(extra)
            if r is None or not p1_is_zero(r[0]):
                raise UnsupportedStem("normal-function stem is not scalar-valued")
        num, den = ratio
        if p1_is_zero(num):
            raise NormalIdenticallyZero("normal function vanishes identically")
        inv = ScalarFn(
            PolyRatio(den, num),
            ComplexifiedElement.from_real_part(AlgebraElement.one(self.kind)),
        )
        from .slice_poly import complex_roots  # local import breaks the cycle

        punctures = [r for r, _ in complex_roots(num)]
        dom = self.domain.with_punctures(punctures)
        return SliceFunction(self.kind, Mul(inv, CInv(self.stem)), dom, validate=False)

    # -- zero sets

    def as_slice_polynomial(self):
        """Fold the stem into a slice polynomial, or None."""
        from .slice_poly import SlicePolynomial

        if not stem_is_exact(self.stem):
            return None
        base = default_base(self.kind)
        comps = component_functions(self.stem, base)
        rows = []
        for g in comps:
            ratio = as_poly_ratio(g)
            if ratio is None or p1_degree(ratio[1]) > 0:
                return None
            den = ratio[1]
            rows.append(p1_scale(ratio[0], ComplexPoint.one() / den[0]))
        deg = max((p1_degree(r) for r in rows), default=-1)
        if deg < 0:
            rows, deg = [(ComplexPoint.zero(),)], 0
        coeffs = []
        for s in range(deg + 1):
            acc = AlgebraElement.zero(self.kind)
            for k, row in enumerate(rows):
                c = row[s] if s <= p1_degree(row) else ComplexPoint.zero()
                if c.is_zero():
                    continue
                acc = acc + phi(base.I, c) * base.full_basis[2 * k]
            coeffs.append(acc)
        return SlicePolynomial(self.kind, tuple(coeffs))

    def zero_set(self):
        """Zero set for polynomial stems, plus the exceptional piecewise case."""
        from .slice_poly import poly_zeros

        poly = self.as_slice_polynomial()
        if poly is not None:
            return poly_zeros(poly)
        if self.normal_is_zero():
            half = self._exceptional_half_slice()
            if half is not None:
                return ZeroSet(exceptional_half_slice=half)
            raise NormalIdenticallyZero(
                "normal function vanishes identically and no half slice was found")
        raise UnsupportedStem("zero sets computed for polynomial stems only")

    def _exceptional_half_slice(self):
        """Unit J0 with f == 0 exactly on the upper half slice of J0, if any."""
        fn = stem_callable(self.stem, self.kind)
        candidate = None
        for z in self.domain.samples(16, seed=23):
            if z.imag < 0:
                z = z.conjugate()
            try:
                w = fn(z)
            except (BranchUndefined, NotInvertible):
                continue
            f2 = w.y
            if f2.is_zero(1e-12):
                return None
            j0 = -(w.x * f2.inverse())
            if abs(j0.trace()) > 1e-9 or abs(j0.norm() - 1.0) > 1e-9:
                return None
            if candidate is None:
                candidate = j0
            elif math.sqrt((candidate - j0).abs2()) > 1e-9:
                return None
        if candidate is None:
            return None
        # confirm the vanishing on the half slice itself
        unit = ImaginaryUnit(candidate)
        for beta in (0.5, 1.0, 2.0):
            x = phi(unit, ComplexPoint(0.0, beta))
            if math.sqrt(self.eval(x).abs2()) > 1e-9:
                return None
        return unit


def _leaves_real_scalar(expr: StemExpr) -> bool:
    def real_scalar(w: ComplexifiedElement) -> bool:
        return all(c == 0 for c in w.x.coeffs[1:]) and all(c == 0 for c in w.y.coeffs[1:])

    match expr:
        case Const(value=w) | ScalarFn(coeff=w) | PiecewiseSign(w_plus=w):
            return real_scalar(w)
        case Add(left=a, right=b) | Mul(left=a, right=b):
            return _leaves_real_scalar(a) and _leaves_real_scalar(b)
        case CInv(arg=a):
            return _leaves_real_scalar(a)
        case Z():
            return True
    return False


def _exact_probe_points(domain: DomainSpec) -> list:
    pts = []
    for a, b in ((Fraction(1, 3), Fraction(1, 2)), (Fraction(-2, 5), Fraction(3, 4)),
                 (Fraction(1, 7), Fraction(-1, 3)), (Fraction(0), Fraction(2, 3)),
                 (Fraction(5, 4), Fraction(-5, 6)), (Fraction(-1, 2), Fraction(-1, 5))):
        z = ComplexPoint(a, b)
        if domain.contains(z):
            pts.append(z)
    return pts


_DEFAULT_BASES = {}


def default_base(kind: AlgebraKind) -> SplittingBase:
    """Splitting base at I = i, cached; the canonical choice for components."""
    if kind not in _DEFAULT_BASES:
        _DEFAULT_BASES[kind] = make_splitting_base(
            ImaginaryUnit(AlgebraElement.basis(kind, 1))
        )
    return _DEFAULT_BASES[kind]


def const_fn(kind: AlgebraKind, a: AlgebraElement) -> SliceFunction:
    return SliceFunction(kind, Const(ComplexifiedElement.from_real_part(a)), validate=False)


def identity_fn(kind: AlgebraKind) -> SliceFunction:
    return SliceFunction(kind, Z(), validate=False)


def scalar_callable(e):
    """Close a ScalarExpr over float evaluation."""

    def fn(z: complex):
        return eval_scalar(e, complex(z))

    return fn


# -- functional forms of the operations


def slice_eval(f: SliceFunction, x: AlgebraElement, mode=None) -> AlgebraElement:
    """f(x) = F1(z) + I F2(z) after decomposing x = alpha + beta I."""
    return f.eval(x, mode=mode)


def representation_check(
    f: SliceFunction, I: ImaginaryUnit, J: ImaginaryUnit, x: AlgebraElement
) -> AlgebraElement:
    """Rebuild f(x) from two values on the I-slice, for x = alpha + beta J.

    Computes (f(alpha+beta I) + f(alpha-beta I))/2 minus (J/2)(I (difference));
    the contract is equality with the direct evaluation at x.
    """
    if x.mode is not Mode.FLOAT:
        x = x.to_float()
    Jx = J.x.to_float()
    alpha = x.coeffs[0]
    beta = sum(a * b for a, b in zip(x.coeffs[1:], Jx.coeffs[1:]))
    residue = x - (AlgebraElement.from_real(x.kind, alpha) + Jx.scale(beta))
    if math.sqrt(residue.abs2()) > 1e-9 * (1.0 + math.sqrt(x.abs2())):
        raise NotOnSlice("point does not lie on the slice of J")
    Ix = I.x.to_float()
    unitI = ImaginaryUnit(Ix)
    fp = f.eval(phi(unitI, ComplexPoint(alpha, beta)))
    fm = f.eval(phi(unitI, ComplexPoint(alpha, -beta)))
    sym = (fp + fm).scale(0.5)
    anti = Jx * (Ix * (fp - fm))
    return sym - anti.scale(0.5)


def slice_product(f: SliceFunction, g: SliceFunction) -> SliceFunction:
    """The slice product f . g, the stem image of F G."""
    return f * g


def slice_conjugate(f: SliceFunction) -> SliceFunction:
    return f.conj()


def normal(f: SliceFunction) -> SliceFunction:
    """N(f) = f . f^c."""
    return f.normal()


def reciprocal(f: SliceFunction) -> SliceFunction:
    """f^{-.}, defined away from the zeros of N(f)."""
    return f.reciprocal()


def slice_derivative(f: SliceFunction) -> SliceFunction:
    return f.derivative()


def splitting_components(f: SliceFunction, base: SplittingBase = None) -> list:
    """Component functions as plain complex callables on the base's slice."""
    return [scalar_callable(e) for e in f.component_exprs(base)]


def is_slice_preserving(f: SliceFunction, n_samples: int = 64) -> bool:
    return f.is_slice_preserving(n_samples=n_samples)


def poly_zero_set(f: SliceFunction) -> ZeroSet:
    """Zero set of a slice function with a polynomial-equivalent stem."""
    return f.zero_set()
