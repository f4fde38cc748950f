"""Stem function ASTs and the checks that make them trustworthy.

A stem is a map F = F1 + iota F2 from a conjugation-symmetric plane domain
into A (x) C with F(conj z) = bar(F(z)), i.e. F1 even and F2 odd in the
imaginary part.  The grammar below cannot express everything (deliberately:
each node is certifiable or explicitly rejected later), and stemness of
user-supplied constants is verified numerically, not assumed.

The module also extracts scalar component expressions with respect to a
splitting base: 2(u+1) complex-valued functions whose pairing rebuilds the
stem.  Those components are what the certification layer annihilates.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .cayley_dickson import AlgebraElement, AlgebraKind, Mode, SplittingBase
from .complexified import ComplexifiedElement, ComplexPoint
from .elimination import (
    p1_add,
    p1_conj,
    p1_degree,
    p1_divmod,
    p1_eval,
    p1_gcd,
    p1_is_zero,
    p1_monic,
    p1_mul,
    p1_one,
    p1_scale,
    p1_trim,
)
from .errors import (
    BranchUndefined,
    ExactUnavailable,
    KindMismatch,
    NotInvertible,
    OutsideDomain,
    StemnessViolation,
    VerificationFailure,
)

STEMNESS_TOL = 1e-9
CR_TOL = 1e-6
CR_STEP = 1e-5
SAMPLES_PER_COMPONENT = 256

# additive recurrence constants for the 2D low-discrepancy sampler
_R2_X = 0.7548776662466927
_R2_Y = 0.5698402909980532


# ---------------------------------------------------------------------------
# domains


@dataclass(frozen=True)
class DomainSpec:
    """Conjugation-symmetric plane domain.

    Flags combine: `slit` removes the closed negative real axis, `halves`
    removes the whole real axis (two connected components), `radius` bounds
    the modulus, `punctures` removes finitely many conjugate-closed points.
    """

    slit: bool = False
    halves: bool = False
    radius: Optional[float] = None
    punctures: tuple = ()

    def __post_init__(self):
        pts = []
        for p in self.punctures:
            p = ComplexPoint.of(p)
            if p not in pts:
                pts.append(p)
            if p.conj() not in pts:
                pts.append(p.conj())
        object.__setattr__(self, "punctures", tuple(pts))

    @staticmethod
    def full_plane() -> "DomainSpec":
        return DomainSpec()

    @staticmethod
    def slit_plane() -> "DomainSpec":
        return DomainSpec(slit=True)

    @staticmethod
    def upper_lower() -> "DomainSpec":
        return DomainSpec(halves=True)

    @staticmethod
    def disk(radius: float) -> "DomainSpec":
        return DomainSpec(radius=float(radius))

    @staticmethod
    def plane_minus(points) -> "DomainSpec":
        return DomainSpec(punctures=tuple(points))

    def intersect(self, other: "DomainSpec") -> "DomainSpec":
        radius = self.radius
        if other.radius is not None:
            radius = other.radius if radius is None else min(radius, other.radius)
        return DomainSpec(
            slit=self.slit or other.slit,
            halves=self.halves or other.halves,
            radius=radius,
            punctures=self.punctures + other.punctures,
        )

    def with_punctures(self, points) -> "DomainSpec":
        return self.intersect(DomainSpec(punctures=tuple(points)))

    def component_count(self) -> int:
        return 2 if self.halves else 1

    def contains(self, z, guard: float = 0.0) -> bool:
        z = ComplexPoint.of(z)
        a, b = float(z.alpha), float(z.beta)
        if self.halves and abs(b) <= guard:
            return False
        if self.slit and abs(b) <= guard and a <= guard:
            return False
        if self.radius is not None and math.hypot(a, b) >= self.radius:
            return False
        for p in self.punctures:
            if z.exact and p.exact and z == p:
                return False
            if math.hypot(a - float(p.alpha), b - float(p.beta)) <= guard:
                return False
        return True

    def samples(self, n: int, seed: int = 0, margin: float = 0.15) -> list:
        """Deterministic low-discrepancy complex samples, n per component."""
        out = []
        rmax = (self.radius * 0.9) if self.radius is not None else 3.0
        rmin = min(0.25, rmax / 4)
        for comp in range(self.component_count()):
            got, k = 0, 0
            while got < n and k < 50 * n + 200:
                k += 1
                u = ((k + seed * 977) * _R2_X + 0.5) % 1.0
                v = ((k + seed * 977) * _R2_Y + 0.5) % 1.0
                r = rmin + (rmax - rmin) * u
                if self.halves:
                    theta = margin + (math.pi - 2 * margin) * v
                    if comp == 1:
                        theta = -theta
                elif self.slit:
                    theta = -math.pi + margin + 2 * (math.pi - margin) * v
                else:
                    theta = -math.pi + 2 * math.pi * v
                z = complex(r * math.cos(theta), r * math.sin(theta))
                if not self.contains(z, guard=0.05):
                    continue
                out.append(z)
                got += 1
        return out

    def to_json(self):
        out = {"slit": self.slit, "halves": self.halves}
        if self.radius is not None:
            out["radius"] = self.radius
        if self.punctures:
            out["punctures"] = [p.to_json() for p in self.punctures]
        return out

    @staticmethod
    def from_json(data) -> "DomainSpec":
        return DomainSpec(
            slit=data.get("slit", False),
            halves=data.get("halves", False),
            radius=data.get("radius"),
            punctures=tuple(ComplexPoint.from_json(p) for p in data.get("punctures", [])),
        )

    def describe(self) -> str:
        parts = []
        if self.halves:
            parts.append("plane minus the real axis")
        elif self.slit:
            parts.append("slit plane")
        else:
            parts.append("plane")
        if self.radius is not None:
            parts.append(f"|z| < {self.radius}")
        if self.punctures:
            parts.append(f"minus {len(self.punctures)} points")
        return ", ".join(parts)


# ---------------------------------------------------------------------------
# scalar function kinds shared by ScalarFn stems and component expressions


@dataclass(frozen=True)
class PolyRatio:
    """num(z)/den(z) with Gaussian-rational coefficients."""

    num: tuple
    den: tuple

    def __post_init__(self):
        object.__setattr__(self, "num", p1_trim(tuple(ComplexPoint.of(c) for c in self.num)))
        den = p1_trim(tuple(ComplexPoint.of(c) for c in self.den))
        if p1_is_zero(den):
            raise NotInvertible("zero denominator polynomial")
        object.__setattr__(self, "den", den)

    def eval(self, z):
        num = p1_eval(self.num, z)
        den = p1_eval(self.den, z)
        if isinstance(den, complex):
            if den == 0:
                raise NotInvertible("stem evaluated at a pole")
            return num / den
        if den.is_zero():
            raise NotInvertible("stem evaluated at a pole")
        return num / den

    def is_constant(self) -> bool:
        return p1_degree(self.num) <= 0 and p1_degree(self.den) <= 0


@dataclass(frozen=True)
class Radical:
    """Principal branch of z^(p/q) on the slit plane; q >= 2."""

    p: int
    q: int

    def __post_init__(self):
        if self.q < 2:
            raise ValueError("radical exponent must have q >= 2; use PolyRatio")
        if math.gcd(abs(self.p), self.q) != 1:
            g = math.gcd(abs(self.p), self.q)
            object.__setattr__(self, "p", self.p // g)
            object.__setattr__(self, "q", self.q // g)

    def eval(self, z):
        if isinstance(z, ComplexPoint):
            if z.exact:
                raise ExactUnavailable("radical values are not rational")
            z = z.to_complex()
        if z == 0:
            if self.p < 0:
                raise NotInvertible("negative radical power at zero")
            return 0j
        r, theta = abs(z), cmath.phase(z)
        e = self.p / self.q
        return (r**e) * cmath.exp(1j * theta * e)


@dataclass(frozen=True)
class Trig:
    """exp, cos or sin of z; transcendental, never certifiable."""

    which: str

    def __post_init__(self):
        if self.which not in ("exp", "cos", "sin"):
            raise ValueError(f"unknown scalar function {self.which!r}")

    def eval(self, z):
        if isinstance(z, ComplexPoint):
            if z.exact:
                raise ExactUnavailable("transcendental values are not rational")
            z = z.to_complex()
        return {"exp": cmath.exp, "cos": cmath.cos, "sin": cmath.sin}[self.which](z)


ScalarKind = Union[PolyRatio, Radical, Trig]


# ---------------------------------------------------------------------------
# stem AST


@dataclass(frozen=True)
class Const:
    value: ComplexifiedElement


@dataclass(frozen=True)
class Z:
    pass


@dataclass(frozen=True)
class Add:
    left: "StemExpr"
    right: "StemExpr"


@dataclass(frozen=True)
class Mul:
    left: "StemExpr"
    right: "StemExpr"


@dataclass(frozen=True)
class CInv:
    arg: "StemExpr"


@dataclass(frozen=True)
class ScalarFn:
    """scalar(z) * coeff with the scalar acting as a central multiplier."""

    fn: ScalarKind
    coeff: ComplexifiedElement


@dataclass(frozen=True)
class PiecewiseSign:
    """w_plus on the upper half plane, bar(w_plus) on the lower."""

    w_plus: ComplexifiedElement


StemExpr = Union[Const, Z, Add, Mul, CInv, ScalarFn, PiecewiseSign]


def stem_kind(expr: StemExpr) -> Optional[AlgebraKind]:
    """The algebra the stem's constants live in; None if there are none."""
    match expr:
        case Const(value=w) | ScalarFn(coeff=w) | PiecewiseSign(w_plus=w):
            return w.kind
        case Add(left=a, right=b) | Mul(left=a, right=b):
            ka, kb = stem_kind(a), stem_kind(b)
            if ka is not None and kb is not None and ka is not kb:
                raise KindMismatch("stem mixes algebras")
            return ka or kb
        case CInv(arg=a):
            return stem_kind(a)
        case Z():
            return None
    raise TypeError(f"not a stem node: {expr!r}")


def stem_is_exact(expr: StemExpr) -> bool:
    match expr:
        case Const(value=w) | ScalarFn(coeff=w) | PiecewiseSign(w_plus=w):
            return w.mode is Mode.EXACT
        case Add(left=a, right=b) | Mul(left=a, right=b):
            return stem_is_exact(a) and stem_is_exact(b)
        case CInv(arg=a):
            return stem_is_exact(a)
        case Z():
            return True


def stem_is_ast(expr) -> bool:
    """True when the tree is built entirely from the stem constructors.

    Each constructor yields slice-wise holomorphic parts on its declared
    domain, so holomorphy of such a tree is structural rather than numeric.
    """
    match expr:
        case Const() | Z() | ScalarFn() | PiecewiseSign():
            return True
        case Add(left=a, right=b) | Mul(left=a, right=b):
            return stem_is_ast(a) and stem_is_ast(b)
        case CInv(arg=a):
            return stem_is_ast(a)
        case _:
            return False


def uses_piecewise(expr: StemExpr) -> bool:
    match expr:
        case PiecewiseSign():
            return True
        case Add(left=a, right=b) | Mul(left=a, right=b):
            return uses_piecewise(a) or uses_piecewise(b)
        case CInv(arg=a):
            return uses_piecewise(a)
        case _:
            return False


def uses_radical_or_trig(expr: StemExpr) -> bool:
    match expr:
        case ScalarFn(fn=fn):
            return not isinstance(fn, PolyRatio)
        case Add(left=a, right=b) | Mul(left=a, right=b):
            return uses_radical_or_trig(a) or uses_radical_or_trig(b)
        case CInv(arg=a):
            return uses_radical_or_trig(a)
        case _:
            return False


def eval_stem(expr: StemExpr, z: ComplexPoint, kind: AlgebraKind, mode: Mode) -> ComplexifiedElement:
    """Evaluate the stem at z; EXACT mode refuses irrational nodes."""
    z = ComplexPoint.of(z)
    if mode is Mode.FLOAT:
        z = z.to_float()
    elif not z.exact:
        raise ExactUnavailable("exact evaluation at a float point")

    def coerce(w: ComplexifiedElement) -> ComplexifiedElement:
        if w.kind is not kind:
            raise KindMismatch("stem constant from a different algebra")
        return w.to_float() if mode is Mode.FLOAT else w

    match expr:
        case Const(value=w):
            return coerce(w)
        case Z():
            return ComplexifiedElement.from_scalar(kind, z) if mode is Mode.EXACT else (
                ComplexifiedElement.from_scalar(kind, z.to_float())
            )
        case Add(left=a, right=b):
            return eval_stem(a, z, kind, mode) + eval_stem(b, z, kind, mode)
        case Mul(left=a, right=b):
            return eval_stem(a, z, kind, mode) * eval_stem(b, z, kind, mode)
        case CInv(arg=a):
            return eval_stem(a, z, kind, mode).cinv()
        case ScalarFn(fn=fn, coeff=w):
            s = fn.eval(z)
            s = ComplexPoint.of(s)
            return coerce(w).scale_complex(s if mode is Mode.EXACT else s.to_float())
        case PiecewiseSign(w_plus=w):
            beta = z.beta
            if (z.exact and beta == 0) or (not z.exact and beta == 0.0):
                raise BranchUndefined("piecewise stem on the real axis")
            w = coerce(w)
            return w if beta > 0 else w.bar()
    raise TypeError(f"not a stem node: {expr!r}")


def poly_stem(coeffs, kind: AlgebraKind) -> StemExpr:
    """Stem of the slice polynomial sum_s x^s a_s."""
    expr: StemExpr = Const(ComplexifiedElement.zero(kind, coeffs[0].mode if coeffs else Mode.EXACT))
    first = True
    for s, a in enumerate(coeffs):
        mono = [ComplexPoint.zero()] * s + [ComplexPoint.one()]
        term = ScalarFn(PolyRatio(tuple(mono), (ComplexPoint.one(),)), ComplexifiedElement.from_real_part(a))
        expr = term if first else Add(expr, term)
        first = False
    return expr


# ---------------------------------------------------------------------------
# numeric checks


def _norm_cx(w: ComplexifiedElement) -> float:
    return math.sqrt(w.norm2())


def check_stemness(fn, domain: DomainSpec, n: int = SAMPLES_PER_COMPONENT, seed: int = 0,
                   tol: float = STEMNESS_TOL) -> float:
    """Verify F(conj z) = bar F(z) by sampling; raises StemnessViolation.

    `fn` maps complex -> ComplexifiedElement (float mode).  Returns the worst
    relative residual.
    """
    worst = 0.0
    for z in domain.samples(n, seed=seed):
        try:
            fz = fn(z)
            fzbar = fn(z.conjugate())
        except (BranchUndefined, NotInvertible):
            continue
        scale = 1.0 + _norm_cx(fz)
        resid = _norm_cx(fzbar - fz.bar()) / scale
        worst = max(worst, resid)
        if resid > tol:
            raise StemnessViolation(f"intrinsic symmetry fails at z={z}: residual {resid:.3e}")
    return worst


def check_holomorphy(fn, domain: DomainSpec, n: int = SAMPLES_PER_COMPONENT, seed: int = 0,
                     tol: float = CR_TOL, h: float = CR_STEP) -> float:
    """Cauchy-Riemann residual |d/d(conj z) F| by central differences.

    Returns the worst relative residual; raises VerificationFailure above tol.
    """
    worst = 0.0
    iota = ComplexPoint(0.0, 1.0)
    for z in domain.samples(n, seed=seed):
        try:
            da = (fn(z + h) - fn(z - h)).scale_complex(ComplexPoint(0.5 / h, 0.0))
            db = (fn(z + 1j * h) - fn(z - 1j * h)).scale_complex(ComplexPoint(0.5 / h, 0.0))
            fz = fn(z)
        except (BranchUndefined, NotInvertible):
            continue
        cr = (da + db.scale_complex(iota)).scale_complex(ComplexPoint(0.5, 0.0))
        resid = _norm_cx(cr) / (1.0 + _norm_cx(fz))
        worst = max(worst, resid)
        if resid > tol:
            raise VerificationFailure(f"Cauchy-Riemann residual {resid:.3e} at z={z}")
    return worst


def stem_callable(expr: StemExpr, kind: AlgebraKind):
    """Float evaluator closing over the AST, for the numeric checks."""

    def fn(z: complex) -> ComplexifiedElement:
        return eval_stem(expr, ComplexPoint(z.real, z.imag), kind, Mode.FLOAT)

    return fn


# ---------------------------------------------------------------------------
# symbolic derivative


def stem_derivative(expr: StemExpr, kind: AlgebraKind) -> StemExpr:
    zero = Const(ComplexifiedElement.zero(kind))
    one = Const(ComplexifiedElement.from_real_part(AlgebraElement.one(kind)))
    match expr:
        case Const() | PiecewiseSign():
            return zero
        case Z():
            return one
        case Add(left=a, right=b):
            return Add(stem_derivative(a, kind), stem_derivative(b, kind))
        case Mul(left=a, right=b):
            return Add(
                Mul(stem_derivative(a, kind), b),
                Mul(a, stem_derivative(b, kind)),
            )
        case CInv(arg=a):
            return CInv(stem_derivative(a, kind))
        case ScalarFn(fn=fn, coeff=w):
            match fn:
                case PolyRatio(num=n, den=d):
                    dn = _p1_derivative(n)
                    dd = _p1_derivative(d)
                    num = p1_add(p1_mul(dn, d), p1_scale(p1_mul(n, dd), ComplexPoint.of(Fraction(-1))))
                    den = p1_mul(d, d)
                    num, den = _reduce_ratio(num, den)
                    if p1_is_zero(num):
                        return zero
                    return ScalarFn(PolyRatio(num, den), w)
                case Radical(p=p, q=q):
                    scaled = w.scale_complex(ComplexPoint(Fraction(p, q), Fraction(0)))
                    if p - q == 0:
                        return Const(scaled)
                    if (p - q) % q == 0:
                        k = (p - q) // q
                        if k >= 0:
                            mono = tuple([ComplexPoint.zero()] * k + [ComplexPoint.one()])
                            return ScalarFn(PolyRatio(mono, p1_one()), scaled)
                        mono = tuple([ComplexPoint.zero()] * (-k) + [ComplexPoint.one()])
                        return ScalarFn(PolyRatio(p1_one(), mono), scaled)
                    return ScalarFn(Radical(p - q, q), scaled)
                case Trig(which=which):
                    if which == "exp":
                        return ScalarFn(Trig("exp"), w)
                    if which == "cos":
                        return ScalarFn(Trig("sin"), -w)
                    return ScalarFn(Trig("cos"), w)
    raise TypeError(f"not a stem node: {expr!r}")


def _p1_derivative(p):
    return p1_trim(tuple(p[k] * ComplexPoint(Fraction(k), Fraction(0)) for k in range(1, len(p))))


def _reduce_ratio(num, den):
    if p1_is_zero(num):
        return (), p1_one()
    if p1_degree(den) >= 1:
        g = p1_gcd(num, den)
        if p1_degree(g) >= 1:
            num, _ = p1_divmod(num, g)
            den, _ = p1_divmod(den, g)
    lead = den[-1]
    if lead == ComplexPoint.one():
        return num, den
    num = p1_scale(num, ComplexPoint.one() / lead)
    den = p1_scale(den, ComplexPoint.one() / lead)
    return num, den


# ---------------------------------------------------------------------------
# scalar component expressions


@dataclass(frozen=True)
class SConst:
    c: ComplexPoint


@dataclass(frozen=True)
class SZ:
    pass


@dataclass(frozen=True)
class SAdd:
    left: "ScalarExpr"
    right: "ScalarExpr"


@dataclass(frozen=True)
class SMul:
    left: "ScalarExpr"
    right: "ScalarExpr"


@dataclass(frozen=True)
class SFun:
    """A bare scalar function node (PolyRatio, Radical or Trig)."""

    fn: ScalarKind


@dataclass(frozen=True)
class SPiecewise:
    """c on the upper half plane, conj(c) on the lower."""

    c: ComplexPoint


ScalarExpr = Union[SConst, SZ, SAdd, SMul, SFun, SPiecewise]

_S_ZERO = SConst(ComplexPoint.zero())
_S_ONE = SConst(ComplexPoint.one())


def s_is_zero(e: ScalarExpr) -> bool:
    return isinstance(e, SConst) and e.c.is_zero()


def s_add(a: ScalarExpr, b: ScalarExpr) -> ScalarExpr:
    if s_is_zero(a):
        return b
    if s_is_zero(b):
        return a
    if isinstance(a, SConst) and isinstance(b, SConst):
        return SConst(a.c + b.c)
    return SAdd(a, b)


def s_mul(a: ScalarExpr, b: ScalarExpr) -> ScalarExpr:
    if s_is_zero(a) or s_is_zero(b):
        return _S_ZERO
    if isinstance(a, SConst) and isinstance(b, SConst):
        return SConst(a.c * b.c)
    if isinstance(a, SConst) and a.c == ComplexPoint.one():
        return b
    if isinstance(b, SConst) and b.c == ComplexPoint.one():
        return a
    return SMul(a, b)


def s_scale(c: ComplexPoint, e: ScalarExpr) -> ScalarExpr:
    return s_mul(SConst(c), e)


def eval_scalar(e: ScalarExpr, z):
    """Evaluate at complex (float) or ComplexPoint (exact when possible)."""
    exact = isinstance(z, ComplexPoint) and z.exact
    match e:
        case SConst(c=c):
            return c if exact else c.to_complex()
        case SZ():
            return z if exact else (z if isinstance(z, complex) else z.to_complex())
        case SAdd(left=a, right=b):
            return eval_scalar(a, z) + eval_scalar(b, z)
        case SMul(left=a, right=b):
            return eval_scalar(a, z) * eval_scalar(b, z)
        case SFun(fn=fn):
            return fn.eval(z)
        case SPiecewise(c=c):
            beta = z.beta if isinstance(z, ComplexPoint) else z.imag
            if beta == 0:
                raise BranchUndefined("piecewise component on the real axis")
            val = c if beta > 0 else c.conj()
            return val if exact else val.to_complex()
    raise TypeError(f"not a scalar node: {e!r}")


def scalar_uses_piecewise(e: ScalarExpr) -> bool:
    match e:
        case SPiecewise():
            return True
        case SAdd(left=a, right=b) | SMul(left=a, right=b):
            return scalar_uses_piecewise(a) or scalar_uses_piecewise(b)
        case _:
            return False


def as_poly_ratio(e: ScalarExpr):
    """Fold into a reduced rational function (num, den) or None."""
    match e:
        case SConst(c=c):
            return (p1_trim((c,)), p1_one())
        case SZ():
            return ((ComplexPoint.zero(), ComplexPoint.one()), p1_one())
        case SFun(fn=PolyRatio(num=n, den=d)):
            return _reduce_ratio(n, d)
        case SFun():
            return None
        case SPiecewise():
            return None
        case SAdd(left=a, right=b):
            ra, rb = as_poly_ratio(a), as_poly_ratio(b)
            if ra is None or rb is None:
                return None
            num = p1_add(p1_mul(ra[0], rb[1]), p1_mul(rb[0], ra[1]))
            return _reduce_ratio(num, p1_mul(ra[1], rb[1]))
        case SMul(left=a, right=b):
            ra, rb = as_poly_ratio(a), as_poly_ratio(b)
            if ra is None or rb is None:
                return None
            return _reduce_ratio(p1_mul(ra[0], rb[0]), p1_mul(ra[1], rb[1]))
    raise TypeError(f"not a scalar node: {e!r}")


def stem_components(expr: StemExpr, base: SplittingBase) -> list:
    """Scalar components of the stem with respect to a splitting base.

    Returns 2(u+1) ScalarExpr in full-basis order: entries 2k and 2k+1 are
    the coefficients of I_k and I*I_k.  Requires exact constants.
    """
    if not stem_is_exact(expr):
        raise ExactUnavailable("components need exact stem constants")
    if base.mode is not Mode.EXACT:
        raise ExactUnavailable("components need an exact splitting base")
    m = len(base.full_basis)

    def lam(w: ComplexifiedElement) -> list:
        cx = base.coords(w.x)
        cy = base.coords(w.y)
        return [ComplexPoint(a, b) for a, b in zip(cx, cy)]

    match expr:
        case Const(value=w):
            return [SConst(c) for c in lam(w)]
        case Z():
            return [SZ()] + [_S_ZERO] * (m - 1)
        case Add(left=a, right=b):
            fa = stem_components(a, base)
            fb = stem_components(b, base)
            return [s_add(x, y) for x, y in zip(fa, fb)]
        case Mul(left=a, right=b):
            fa = stem_components(a, base)
            fb = stem_components(b, base)
            gamma = base.structure()["gamma"]
            out = [_S_ZERO] * m
            for p in range(m):
                if s_is_zero(fa[p]):
                    continue
                for q in range(m):
                    if s_is_zero(fb[q]):
                        continue
                    prod = s_mul(fa[p], fb[q])
                    for r in range(m):
                        g = gamma[p][q][r]
                        if g == 0:
                            continue
                        out[r] = s_add(out[r], s_scale(ComplexPoint(g, Fraction(0)), prod))
            return out
        case CInv(arg=a):
            fa = stem_components(a, base)
            conj_mat = base.structure()["conj"]
            out = [_S_ZERO] * m
            for s in range(m):
                if s_is_zero(fa[s]):
                    continue
                for r in range(m):
                    cm = conj_mat[s][r]
                    if cm == 0:
                        continue
                    out[r] = s_add(out[r], s_scale(ComplexPoint(cm, Fraction(0)), fa[s]))
            return out
        case ScalarFn(fn=fn, coeff=w):
            node = SFun(fn)
            return [s_mul(node, SConst(c)) for c in lam(w)]
        case PiecewiseSign(w_plus=w):
            return [
                (_S_ZERO if c.is_zero() else SPiecewise(c)) for c in lam(w)
            ]
    raise TypeError(f"not a stem node: {expr!r}")


def component_functions(expr: StemExpr, base: SplittingBase) -> list:
    """The u+1 complex functions g_k = comp_{2k} + iota comp_{2k+1}.

    Through the slice chart these are exactly the splitting components of
    the induced slice function on C_I.
    """
    comps = stem_components(expr, base)
    iota = SConst(ComplexPoint.iota())
    return [
        s_add(comps[2 * k], s_mul(iota, comps[2 * k + 1]))
        for k in range(len(comps) // 2)
    ]
