"""Annihilating polynomials for complex components and the certificates
built from them: algebraicity of slice functions, zero-locus bounds,
singularity classification, growth bounds, and rational reconstruction.

The certification route is always the same: split the function into complex
components along one slice, find for each component g a nonzero bivariate
polynomial A with A(z, g(z)) = 0, and verify the identity numerically on
seeded samples.  Everything downstream (bounds, poles, reconstruction) reads
facts off the annihilators instead of the function values.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .cayley_dickson import AlgebraElement, Mode, SplittingBase
from .complexified import ComplexPoint, phi
from .elimination import (
    BiPoly,
    bipoly_as_tpoly,
    p1_degree,
    p1_eval,
    p1_is_zero,
    p1_lcm,
    p1_mul,
    p1_scale,
    p1_trim,
    squarefree_z2,
    substitute_product,
    substitute_sum,
    t_gcd_last_remainder,
    t_resultant,
    tpoly_as_bipoly,
)
from .errors import (
    BranchUndefined,
    DegreeCapExceeded,
    EssentialDetected,
    ExactUnavailable,
    NonRationalComponent,
    NotInvertible,
    QIdenticallyZeroAtZero,
    UnsupportedNode,
    VerificationFailure,
    ZeroResultant,
)
from .slice_fn import SliceFunction, default_base, scalar_callable
from .stem_expr import (
    DomainSpec,
    PolyRatio,
    Radical,
    SAdd,
    SConst,
    SFun,
    SMul,
    SPiecewise,
    SZ,
    ScalarExpr,
    Trig,
    as_poly_ratio,
    eval_scalar,
    stem_is_exact,
)

CERT_TOL = 1e-8
DEGREE_CAP = 64


class CertStatus(enum.Enum):
    CERTIFIED = "Certified"
    UNSUPPORTED_NODE = "UnsupportedNode"
    RESIDUAL_FAILURE = "ResidualFailure"


class SingularityKind(enum.Enum):
    REMOVABLE = "Removable"
    POLE = "Pole"


@dataclass(frozen=True)
class AnnihilatorPoly:
    """Nonzero A(z1, z2), squarefree in z2, annihilating one component."""

    poly: BiPoly
    residual: float = 0.0

    def __post_init__(self):
        if self.poly.is_zero():
            raise ZeroResultant("annihilator is the zero polynomial")
        if self.poly.deg_z2() < 1:
            raise ZeroResultant("annihilator does not involve the function variable")

    @property
    def deg_z2(self) -> int:
        return self.poly.deg_z2()

    def total_degree(self) -> int:
        return max(d1 + d2 for d1, d2 in self.poly.terms)

    def alpha(self, j: int) -> tuple:
        """Coefficient of z2^j, a polynomial in z1."""
        return self.poly.z2_coeff(j)

    def eval(self, z1, z2):
        return self.poly.eval(z1, z2)

    def to_json(self):
        return {
            f"({d1},{d2})": _gaussian_str(c)
            for (d1, d2), c in sorted(self.poly.terms.items())
        }


def _gaussian_str(c: ComplexPoint) -> str:
    def frac(v) -> str:
        return str(v) if isinstance(v, Fraction) else repr(float(v))

    a, b = c.alpha, c.beta
    if b == 0:
        return frac(a)
    im = f"{frac(b)}i"
    if a == 0:
        return im
    return f"{frac(a)}+{im}" if (b > 0) else f"{frac(a)}{im}"


@dataclass
class NashCertificate:
    base: SplittingBase
    per_component: list
    max_residual: float
    status: CertStatus
    detail: str = ""

    @property
    def certified(self) -> bool:
        return self.status is CertStatus.CERTIFIED

    def to_json(self):
        return {
            "status": self.status.value,
            "components": [
                None if a is None else {"annihilator": a.to_json(), "residual": a.residual}
                for a in self.per_component
            ],
            "max_residual": self.max_residual if math.isfinite(self.max_residual) else None,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class BoundCertificate:
    """Growth bound |f(z)| <= C (1 + |z|^m) valid for |z| >= R."""

    C: float
    m: int
    R: float

    def __post_init__(self):
        if self.C < 1 or self.m < 0 or self.R < 1:
            raise VerificationFailure("bound certificate outside its invariants")

    def check(self, z: complex, value: float) -> float:
        """Margin C(1+|z|^m) - |f(z)|; nonnegative when the bound holds."""
        return self.C * (1.0 + abs(z) ** self.m) - value

    def to_json(self):
        return {"C": self.C, "m": self.m, "R": self.R}


@dataclass
class RationalSliceFn:
    """f = Q^{-.} P with Q slice preserving; the global rational form."""

    P: "SlicePolynomial"
    Q: "SlicePolynomial"
    residual: float = 0.0

    def eval(self, x: AlgebraElement) -> AlgebraElement:
        from .slice_poly import poly_eval

        qv = poly_eval(self.Q, x)
        return qv.inverse() * poly_eval(self.P, x)

    def to_json(self):
        return {
            "P": self.P.to_json(),
            "Q": self.Q.to_json(),
            "residual": self.residual,
        }


# ---------------------------------------------------------------------------
# annihilators


def _p1_to_bipoly_z1(p) -> BiPoly:
    return BiPoly.from_p1(p, var=1)


def _base_annihilator(e: ScalarExpr) -> BiPoly:
    match e:
        case SConst(c=c):
            return BiPoly.z2() - BiPoly.const(c)
        case SZ():
            return BiPoly.z2() - BiPoly.z1()
        case SFun(fn=PolyRatio(num=num, den=den)):
            return _p1_to_bipoly_z1(den) * BiPoly.z2() - _p1_to_bipoly_z1(num)
        case SFun(fn=Radical(p=p, q=q)):
            if p > 0:
                return BiPoly.z2().pow(q) - BiPoly.z1().pow(p)
            return BiPoly.z1().pow(-p) * BiPoly.z2().pow(q) - BiPoly.const(
                ComplexPoint.one()
            )
        case SFun(fn=Trig(which=name)):
            raise UnsupportedNode(f"transcendental node {name}")
        case SPiecewise(c=c):
            # one quadratic kills both branches and keeps real coefficients
            w = BiPoly.const(c)
            wbar = BiPoly.const(c.conj())
            return (BiPoly.z2() - w) * (BiPoly.z2() - wbar)
    raise UnsupportedNode(f"no annihilator rule for {type(e).__name__}")


def _samples_for(e: ScalarExpr, domain: DomainSpec, n: int, seed: int):
    """Sample points paired with component values; skips poles and the axis.

    Rational expressions are folded once and evaluated by Horner instead of
    walking the tree at every sample.
    """
    ratio = as_poly_ratio(e)
    out = []
    for z in domain.samples(n, seed=seed):
        try:
            if ratio is not None:
                den = complex(p1_eval(ratio[1], complex(z)))
                if den == 0:
                    continue
                out.append((z, complex(p1_eval(ratio[0], complex(z))) / den))
            else:
                out.append((z, complex(eval_scalar(e, z))))
        except (BranchUndefined, NotInvertible, ZeroDivisionError):
            continue
    return out


def _residual_on(a: BiPoly, pairs) -> float:
    deg = max(d1 + d2 for d1, d2 in a.terms) if not a.is_zero() else 0
    worst = 0.0
    for z, w in pairs:
        v = abs(a.eval(complex(z), w))
        worst = max(worst, v / (1.0 + abs(complex(z))) ** deg)
    return worst


def _verified(a: BiPoly, pairs, tol: float = CERT_TOL):
    if a.is_zero() or a.deg_z2() < 1:
        return None
    res = _residual_on(a, pairs)
    return res if res <= tol else None


def _postprocess(a: BiPoly, pairs) -> tuple:
    """Squarefree in z2, contents stripped, unit-normalized, verified.

    The z2-power strip can discard the factor that actually annihilates an
    identically zero component, so every simplification is re-verified and
    the last verified form wins.
    """
    a = squarefree_z2(a)
    a = a.strip_z1_content()
    candidates = []
    stripped = a.strip_z2_power()
    if stripped is not a and not stripped.is_zero():
        candidates.append(stripped.normalize_unit())
    candidates.append(a.normalize_unit())
    for cand in candidates:
        res = _verified(cand, pairs)
        if res is not None:
            return cand, res
    raise VerificationFailure("no normalized annihilator passed the residual check")


def _combine(e: ScalarExpr, left: BiPoly, right: BiPoly, pairs) -> BiPoly:
    """Resultant elimination for the ring operations."""
    ta = bipoly_as_tpoly(left)
    if isinstance(e, SAdd):
        tb = substitute_sum(right)
    else:
        tb = substitute_product(right)
    res = t_resultant(ta, tb)
    if not res.is_zero():
        return res
    # degenerate elimination: the operands share a t-factor; split it off and
    # keep whichever factor still annihilates the left operand numerically
    h = t_gcd_last_remainder(ta, tb)
    if any(c.deg_z2() > 0 for c in h):
        raise ZeroResultant("elimination degenerated to zero after reduction")
    hb = tpoly_as_bipoly(h).strip_z1_content()
    if hb.deg_z2() >= 1:
        if _verified(hb.normalize_unit(), pairs, tol=1e-6) is not None:
            res = t_resultant(bipoly_as_tpoly(hb), tb)
            if not res.is_zero():
                return res
    raise ZeroResultant("elimination degenerated to zero after reduction")


def annihilator(
    e: ScalarExpr, domain: DomainSpec = None, seed: int = 101
) -> AnnihilatorPoly:
    """Annihilating polynomial A(z1, z2) with A(z, e(z)) = 0 on the domain.

    Rational expressions fold directly to den*z2 - num; everything else walks
    the tree, eliminating the intermediate variable with exact resultants and
    re-verifying after each simplification.
    """
    if domain is None:
        domain = DomainSpec.full_plane()
    pairs = _samples_for(e, domain, 64, seed)
    ratio = as_poly_ratio(e)
    if ratio is not None:
        num, den = ratio
        if p1_is_zero(num):
            a = BiPoly.z2()
            return AnnihilatorPoly(a, _residual_on(a, pairs))
        raw = _p1_to_bipoly_z1(den) * BiPoly.z2() - _p1_to_bipoly_z1(num)
        poly, res = _postprocess(raw, pairs)
        return AnnihilatorPoly(poly, res)
    raw = _annihilator_rec(e, domain, seed)
    poly, res = _postprocess(raw, pairs)
    return AnnihilatorPoly(poly, res)


def _annihilator_rec(e: ScalarExpr, domain: DomainSpec, seed: int) -> BiPoly:
    ratio = as_poly_ratio(e)
    if ratio is not None:
        num, den = ratio
        if p1_is_zero(num):
            return BiPoly.z2()
        return _p1_to_bipoly_z1(den) * BiPoly.z2() - _p1_to_bipoly_z1(num)
    match e:
        case SAdd(left=a, right=b) | SMul(left=a, right=b):
            pa = _annihilator_rec(a, domain, seed)
            pb = _annihilator_rec(b, domain, seed)
            pa, _ = _postprocess(pa, _samples_for(a, domain, 64, seed))
            pb, _ = _postprocess(pb, _samples_for(b, domain, 64, seed))
            pairs = _samples_for(e, domain, 64, seed)
            left_pairs = _samples_for(a, domain, 64, seed)
            out = _combine(e, pa, pb, left_pairs)
            if out.deg_z2() > DEGREE_CAP:
                raise DegreeCapExceeded(
                    f"z2-degree {out.deg_z2()} exceeds the cap {DEGREE_CAP}")
            out, _ = _postprocess(out, pairs)
            return out
        case _:
            return _base_annihilator(e)


def certify_slice_nash(
    f: SliceFunction, base: SplittingBase = None, seed: int = 101
) -> NashCertificate:
    """Certificate that every splitting component is algebraic.

    Transcendental stems come back UnsupportedNode rather than raising, so a
    caller can distinguish "not certifiable here" from a broken certificate.
    """
    if base is None:
        base = default_base(f.kind)
    if not f.is_slice_regular():
        raise VerificationFailure("holomorphy check failed; nothing to certify")
    if _stem_has_trig(f.stem):
        return NashCertificate(base, [], math.inf, CertStatus.UNSUPPORTED_NODE,
                               "transcendental node in the stem")
    comps = f.component_exprs(base)
    annis, worst = [], 0.0
    for idx, e in enumerate(comps):
        try:
            a = annihilator(e, f.domain, seed=seed + idx)
        except UnsupportedNode as err:
            return NashCertificate(
                base, annis + [None], math.inf, CertStatus.UNSUPPORTED_NODE,
                f"component {idx}: {err}")
        except (VerificationFailure, ZeroResultant, DegreeCapExceeded) as err:
            return NashCertificate(
                base, annis + [None], math.inf, CertStatus.RESIDUAL_FAILURE,
                f"component {idx}: {err}")
        annis.append(a)
        worst = max(worst, a.residual)
    # fresh sweep with a different seed backs the certificate's residual
    for idx, (e, a) in enumerate(zip(comps, annis)):
        pairs = _samples_for(e, f.domain, 256, seed + 977 + idx)
        worst = max(worst, _residual_on(a.poly, pairs))
    status = CertStatus.CERTIFIED if worst <= CERT_TOL else CertStatus.RESIDUAL_FAILURE
    return NashCertificate(base, annis, worst, status)


def _stem_has_trig(stem) -> bool:
    from .stem_expr import Add, CInv, Const, Mul, PiecewiseSign, ScalarFn, Z

    match stem:
        case ScalarFn(fn=Trig()):
            return True
        case Add(left=a, right=b) | Mul(left=a, right=b):
            return _stem_has_trig(a) or _stem_has_trig(b)
        case CInv(arg=a):
            return _stem_has_trig(a)
        case _:
            return False


# ---------------------------------------------------------------------------
# consequences read off the annihilator


def zero_locus_bound(a: AnnihilatorPoly) -> list:
    """Finite superset of the zeros of the certified component.

    Strips the z2^k content and collects the roots of what remains at z2 = 0;
    a zero of the function forces that polynomial to vanish.
    """
    from .slice_poly import complex_roots

    q = a.poly.strip_z2_power()
    row = p1_trim(q.z2_coeff(0))
    if p1_is_zero(row):
        raise QIdenticallyZeroAtZero("stripped annihilator vanishes at z2 = 0")
    if p1_degree(row) == 0:
        return []
    return [z for z, _ in complex_roots(row)]


def classify_singularity(
    a: AnnihilatorPoly, z0: ComplexPoint, value_fn=None
) -> SingularityKind:
    """Removable or pole at z0, by the leading-coefficient test.

    When the leading z2-coefficient survives at z0 the branches stay bounded
    there.  Otherwise some branch blows up; growth sampling along shrinking
    circles (of the component itself when a callable is supplied, of the
    branch roots of A otherwise) separates a genuine pole of this branch from
    a harmless zero shared with another one.
    """
    lead = a.poly.leading_z2()
    v = p1_eval(lead, z0 if z0.exact else z0.to_complex())
    if z0.exact and isinstance(v, ComplexPoint):
        nonzero = not v.is_zero()
    else:
        scale = sum(abs(c.to_complex()) for c in lead)
        nonzero = abs(complex(v)) > 1e-10 * max(scale, 1.0)
    if nonzero:
        return SingularityKind.REMOVABLE
    z0c = z0.to_complex()
    growth = []
    for r in (1e-2, 1e-4, 1e-6):
        worst = 0.0
        for k in range(8):
            z = z0c + r * complex(math.cos(k * math.pi / 4), math.sin(k * math.pi / 4))
            if value_fn is not None:
                try:
                    worst = max(worst, abs(complex(value_fn(z))))
                except (NotInvertible, ZeroDivisionError, BranchUndefined):
                    worst = math.inf
            else:
                worst = max(worst, _max_branch(a, z))
        growth.append(worst)
    if growth[-1] > 1e2 * max(growth[0], 1.0):
        return SingularityKind.POLE
    if growth[-1] <= 1e6:
        return SingularityKind.REMOVABLE
    raise EssentialDetected(f"growth at {z0c} fits neither class: {growth}")


def _max_branch(a: AnnihilatorPoly, z: complex) -> float:
    import numpy as np

    rows = [complex(p1_eval(row, z)) for row in a.poly.z2_rows()]
    arr = np.array(rows[::-1], dtype=complex)
    nz = np.nonzero(np.abs(arr) > 1e-300)[0]
    if len(nz) == 0:
        return 0.0
    arr = arr[nz[0]:]
    if len(arr) <= 1:
        return 0.0
    return float(max(abs(np.roots(arr)), default=0.0))


def poly_bound_at_infinity(a: AnnihilatorPoly) -> BoundCertificate:
    """Certificate |f(z)| <= C (1 + |z|^m) for |z| >= R, from A alone.

    R forces the leading z2-coefficient to keep at least half its top term;
    beyond R every branch of A obeys the classical root bound, and each ratio
    |alpha_j / alpha_n| is bounded through the coefficient sums.
    """
    lead = a.poly.leading_z2()
    d = p1_degree(lead)
    lc = abs(lead[d].to_complex())
    lower = sum(abs(c.to_complex()) for c in lead[:d])
    R = max(1.0, 2.0 * lower / lc)
    C1 = 0.5 * lc * R**d
    n = a.deg_z2
    C2, m = 0.0, 0
    for j in range(n):
        row = p1_trim(a.poly.z2_coeff(j))
        if p1_is_zero(row):
            continue
        C2 = max(C2, sum(abs(c.to_complex()) for c in row))
        m = max(m, p1_degree(row))
    C = 1.0 + n * C2 / C1
    cert = BoundCertificate(C, m, R)
    _validate_branch_bound(a, cert)
    return cert


def _validate_branch_bound(a: AnnihilatorPoly, cert: BoundCertificate, n: int = 256):
    rng_angles = [(k * 0.7548776662466927) % 1.0 for k in range(1, n + 1)]
    rng_radii = [(k * 0.5698402909980532) % 1.0 for k in range(1, n + 1)]
    for t, s in zip(rng_angles, rng_radii):
        z = (cert.R * (1.0 + 3.0 * s)) * complex(
            math.cos(2 * math.pi * t), math.sin(2 * math.pi * t)
        )
        if cert.check(z, _max_branch(a, z)) < 0:
            raise VerificationFailure(f"branch bound fails at {z}")


def slice_poly_bound(f: SliceFunction, cert: NashCertificate) -> BoundCertificate:
    """Global growth bound for f assembled from the component certificates."""
    if not cert.certified:
        raise VerificationFailure("bound assembly needs a certified function")
    parts = [poly_bound_at_infinity(a) for a in cert.per_component]
    u1 = len(cert.per_component)
    C = u1 * 2.0 * max(p.C for p in parts)
    m = max(p.m for p in parts)
    R = max(p.R for p in parts)
    out = BoundCertificate(C, m, R)
    _validate_function_bound(f, out)
    return out


def _validate_function_bound(f: SliceFunction, cert: BoundCertificate, n: int = 256):
    import random

    rng = random.Random(4242)
    count = 0
    while count < n:
        beta = cert.R * (1.0 + 3.0 * rng.random())
        alpha = cert.R * (2.0 * rng.random() - 1.0)
        radius = math.hypot(alpha, beta)
        if radius < cert.R or not f.domain.contains(complex(alpha, beta), guard=0.05):
            continue
        vec = [rng.gauss(0.0, 1.0) for _ in range(f.kind.imag_dim)]
        norm = math.sqrt(sum(v * v for v in vec))
        coeffs = (alpha,) + tuple(beta * v / norm for v in vec)
        x = AlgebraElement(f.kind, coeffs)
        try:
            val = math.sqrt(f.eval(x).abs2())
        except (BranchUndefined, NotInvertible):
            continue
        if cert.check(complex(alpha, beta), val) < 0:
            raise VerificationFailure(f"function bound fails at |x| = {radius}")
        count += 1


# ---------------------------------------------------------------------------
# rational reconstruction


def reconstruct_rational(
    f: SliceFunction, base: SplittingBase = None, seed: int = 303
) -> RationalSliceFn:
    """Recover f = Q^{-.} P with polynomial P and slice-preserving Q.

    Components fold to reduced fractions p_k/q_k; q is their least common
    multiple.  A non-real q is replaced by q q^sigma so the denominator has
    real coefficients and induces a slice-preserving polynomial; then every
    numerator is lifted back through the base and verified at samples.
    """
    from .elimination import p1_conj, p1_divmod, p1_monic
    from .slice_poly import SlicePolynomial, poly_eval, poly_slice_mul

    if base is None:
        base = default_base(f.kind)
    comps = f.component_exprs(base)
    ratios = []
    for idx, e in enumerate(comps):
        r = as_poly_ratio(e)
        if r is None:
            raise NonRationalComponent(f"component {idx} is not a rational function")
        ratios.append(r)
    q = (ComplexPoint.one(),)
    for _, den in ratios:
        q = p1_lcm(q, den)
    q = p1_monic(q)
    qconj = p1_conj(q)
    if p1_trim(qconj) != p1_trim(q):
        q = p1_mul(q, qconj)
    nums = []
    for num, den in ratios:
        lift, rem = p1_divmod(q, den)
        if not p1_is_zero(rem):
            raise VerificationFailure("common denominator does not clear a component")
        nums.append(p1_mul(num, lift))
    kind = f.kind
    if any(c.beta != 0 for c in q):
        raise VerificationFailure("denominator failed to come out real")
    Q = SlicePolynomial(
        kind,
        tuple(AlgebraElement.from_real(kind, c.alpha) for c in q),
    )
    P = SlicePolynomial.zero(kind)
    for k, num in enumerate(nums):
        if p1_is_zero(num):
            continue
        comp_poly = SlicePolynomial(kind, tuple(phi(base.I, c) for c in num))
        unit_poly = SlicePolynomial(kind, (base.full_basis[2 * k],))
        P = P + poly_slice_mul(comp_poly, unit_poly)
    if Q.coeffs == (AlgebraElement.one(kind),) and stem_is_exact(f.stem):
        # trivial denominator: the identity f = P is checked exactly, so the
        # slice polynomial case carries a genuinely zero residual
        probes = [ComplexPoint(Fraction(k, 7), Fraction(k + 4, 5)) for k in range(-5, 6)]
        probes = [z for z in probes if f.domain.contains(z.to_complex(), guard=0.02)]
        try:
            if probes and all(
                f.eval(phi(base.I, z)) == poly_eval(P, phi(base.I, z)) for z in probes
            ):
                return RationalSliceFn(P, Q, 0.0)
        except ExactUnavailable:
            pass
    worst = 0.0
    for z in f.domain.samples(50, seed=seed):
        x = phi(base.I, ComplexPoint.of(z))
        try:
            expect = f.eval(x.to_float())
            qv = poly_eval(Q.to_float(), x.to_float())
            got = qv.inverse() * poly_eval(P.to_float(), x.to_float())
        except (BranchUndefined, NotInvertible):
            continue
        err = math.sqrt((got - expect).abs2()) / (1.0 + math.sqrt(expect.abs2()))
        worst = max(worst, err)
    if worst > CERT_TOL:
        raise VerificationFailure(f"reconstruction residual {worst} exceeds tolerance")
    return RationalSliceFn(P, Q, worst)


# ---------------------------------------------------------------------------
# semiregular certification


@dataclass
class SemiregularReport:
    certificate: NashCertificate
    kept_poles: list
    removed: list

    def to_json(self):
        def point(z):
            return {"alpha": float(z.alpha), "beta": float(z.beta)}

        return {
            "certificate": self.certificate.to_json(),
            "kept_poles": [point(z) for z in self.kept_poles],
            "removed_singularities": [point(z) for z in self.removed],
        }


def certify_semiregular_nash(
    f: SliceFunction, singular: list, base: SplittingBase = None, seed: int = 101
) -> SemiregularReport:
    """Certify f off its declared singular set and classify each singularity.

    A declared point (alpha, beta) names a real point when beta = 0 and the
    whole sphere through alpha + beta I otherwise.  A singularity is kept as
    a pole when any component poles at the point or its conjugate; removable
    ones are dropped from the singular set.
    """
    if base is None:
        base = default_base(f.kind)
    cert = certify_slice_nash(f, base, seed=seed)
    if not cert.certified:
        raise VerificationFailure(f"cannot certify on the punctured domain: {cert.detail}")
    comps = f.component_exprs(base)
    kept, removed = [], []
    for entry in singular:
        z0 = entry if isinstance(entry, ComplexPoint) else ComplexPoint.of(entry)
        pole = False
        for a, e in zip(cert.per_component, comps):
            fn = scalar_callable(e)
            for probe in (z0, z0.conj()):
                if classify_singularity(a, probe, value_fn=fn) is SingularityKind.POLE:
                    pole = True
                    break
            if pole:
                break
        (kept if pole else removed).append(z0)
    return SemiregularReport(cert, kept, removed)
