"""Slice polynomials over H and O, their normal polynomials, and zero sets.

Slice polynomials P(x) = sum x^s c_s multiply by treating x as a commuting
variable: the coefficients convolve in the ambient algebra, and evaluation
puts every power of x on the left.  The zero set machinery goes through the
normal polynomial N(P) = P P^c, whose coefficients are real, so its complex
roots organize into real points and conjugate pairs; each pair names a sphere
that carries the whole sphere, one point, or nothing.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cayley_dickson import AlgebraElement, AlgebraKind, ImaginaryUnit, Mode
from .complexified import ComplexPoint
from .elimination import (
    p1_add,
    p1_degree,
    p1_deriv,
    p1_divmod,
    p1_eval,
    p1_is_zero,
    p1_mul,
    p1_one,
    p1_scale,
    p1_squarefree_factors,
    p1_trim,
    p1_zero,
)
from .errors import (
    KindMismatch,
    ModeMismatch,
    VerificationFailure,
    ZeroPolynomial,
)
from .slice_fn import SliceFunction, ZeroSet, const_fn

# Conjugate roots of a real polynomial are paired within this relative slack.
PAIRING_TOL = 1e-8
SPHERE_TOL = 1e-8


@dataclass(frozen=True)
class SlicePolynomial:
    """P(x) = sum x^s c_s with coefficients from one algebra, one mode."""

    kind: AlgebraKind
    coeffs: tuple

    def __post_init__(self):
        cs = tuple(self.coeffs)
        while len(cs) > 1 and cs[-1].is_zero():
            cs = cs[:-1]
        modes = {c.mode for c in cs}
        if len(modes) > 1:
            raise ModeMismatch("coefficients mix exact and float")
        if any(c.kind is not self.kind for c in cs):
            raise KindMismatch("coefficient from a different algebra")
        object.__setattr__(self, "coeffs", cs)

    @staticmethod
    def zero(kind: AlgebraKind, mode: Mode = Mode.EXACT) -> "SlicePolynomial":
        return SlicePolynomial(kind, (AlgebraElement.zero(kind, mode),))

    @staticmethod
    def one(kind: AlgebraKind, mode: Mode = Mode.EXACT) -> "SlicePolynomial":
        return SlicePolynomial(kind, (AlgebraElement.one(kind, mode),))

    @staticmethod
    def x(kind: AlgebraKind, mode: Mode = Mode.EXACT) -> "SlicePolynomial":
        return SlicePolynomial(
            kind, (AlgebraElement.zero(kind, mode), AlgebraElement.one(kind, mode))
        )

    @property
    def mode(self) -> Mode:
        return self.coeffs[0].mode

    def degree(self) -> int:
        if len(self.coeffs) == 1 and self.coeffs[0].is_zero():
            return -1
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.degree() < 0

    def __add__(self, other: "SlicePolynomial") -> "SlicePolynomial":
        self._peer(other)
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for s in range(n):
            a = self.coeffs[s] if s < len(self.coeffs) else AlgebraElement.zero(self.kind, self.mode)
            b = other.coeffs[s] if s < len(other.coeffs) else AlgebraElement.zero(self.kind, other.mode)
            out.append(a + b)
        return SlicePolynomial(self.kind, tuple(out))

    def __sub__(self, other: "SlicePolynomial") -> "SlicePolynomial":
        return self + other.scale(-1 if other.mode is Mode.EXACT else -1.0)

    def __mul__(self, other: "SlicePolynomial") -> "SlicePolynomial":
        return poly_slice_mul(self, other)

    def scale(self, s) -> "SlicePolynomial":
        return SlicePolynomial(self.kind, tuple(c.scale(s) for c in self.coeffs))

    def conj(self) -> "SlicePolynomial":
        return SlicePolynomial(self.kind, tuple(c.conj() for c in self.coeffs))

    def to_float(self) -> "SlicePolynomial":
        return SlicePolynomial(self.kind, tuple(c.to_float() for c in self.coeffs))

    def _peer(self, other: "SlicePolynomial"):
        if self.kind is not other.kind:
            raise KindMismatch("polynomials over different algebras")

    def to_json(self):
        return {"kind": self.kind.value, "coeffs": [c.to_json() for c in self.coeffs]}

    @staticmethod
    def from_json(data) -> "SlicePolynomial":
        kind = AlgebraKind(data["kind"])
        return SlicePolynomial(
            kind, tuple(AlgebraElement.from_json(c) for c in data["coeffs"])
        )


def poly_slice_mul(P: SlicePolynomial, Q: SlicePolynomial) -> SlicePolynomial:
    """Slice product: convolution with x treated as a commuting variable."""
    P._peer(Q)
    a, b = P.coeffs, Q.coeffs
    if P.mode is not Q.mode:
        a = tuple(c.to_float() for c in a)
        b = tuple(c.to_float() for c in b)
    out = [AlgebraElement.zero(P.kind, a[0].mode) for _ in range(len(a) + len(b) - 1)]
    for m, am in enumerate(a):
        if am.is_zero():
            continue
        for n, bn in enumerate(b):
            out[m + n] = out[m + n] + am * bn
    return SlicePolynomial(P.kind, tuple(out))


def poly_eval(P: SlicePolynomial, x: AlgebraElement) -> AlgebraElement:
    """P(x) = sum x^s c_s, powers of x multiplied in from the left."""
    if x.kind is not P.kind:
        raise KindMismatch("point from a different algebra")
    coeffs = P.coeffs
    if x.mode is not P.mode:
        x = x.to_float()
        coeffs = tuple(c.to_float() for c in coeffs)
    acc = coeffs[0]
    xp = AlgebraElement.one(P.kind, x.mode)
    for c in coeffs[1:]:
        xp = xp * x
        if not c.is_zero():
            acc = acc + xp * c
    return acc


def delta(y: AlgebraElement) -> SlicePolynomial:
    """The sphere polynomial x^2 - t(y) x + n(y); vanishes exactly on S_y."""
    one = AlgebraElement.one(y.kind, y.mode)
    return SlicePolynomial(
        y.kind, (one.scale(y.norm()), one.scale(-y.trace()), one)
    )


@dataclass(frozen=True)
class ComplexPolynomial:
    """Univariate polynomial with complex scalar coefficients, ascending."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", p1_trim(tuple(self.coeffs)))

    def degree(self) -> int:
        return p1_degree(self.coeffs)

    def is_zero(self) -> bool:
        return p1_is_zero(self.coeffs)

    def is_real(self, tol: float = 0.0) -> bool:
        return all(
            (c.beta == 0 if c.exact else abs(c.beta) <= tol) for c in self.coeffs
        )

    def eval(self, z):
        return p1_eval(self.coeffs, z)

    def __mul__(self, other: "ComplexPolynomial") -> "ComplexPolynomial":
        return ComplexPolynomial(p1_mul(self.coeffs, other.coeffs))

    def __add__(self, other: "ComplexPolynomial") -> "ComplexPolynomial":
        return ComplexPolynomial(p1_add(self.coeffs, other.coeffs))

    def to_json(self):
        return {"coeffs": [c.to_json() for c in self.coeffs]}

    @staticmethod
    def from_json(data) -> "ComplexPolynomial":
        return ComplexPolynomial(tuple(ComplexPoint.from_json(c) for c in data["coeffs"]))


def poly_normal(P: SlicePolynomial) -> ComplexPolynomial:
    """N(P) = P P^c; the coefficients come out real, and that is asserted."""
    npoly = poly_slice_mul(P, P.conj())
    out = []
    for c in npoly.coeffs:
        if c.mode is Mode.EXACT:
            if any(v != 0 for v in c.coeffs[1:]):
                raise VerificationFailure("normal polynomial coefficient not real")
            out.append(ComplexPoint(c.coeffs[0], Fraction(0)))
        else:
            scale = 1.0 + math.sqrt(c.abs2())
            if any(abs(v) > 1e-10 * scale for v in c.coeffs[1:]):
                raise VerificationFailure("normal polynomial coefficient not real")
            out.append(ComplexPoint(c.coeffs[0], 0.0))
    return ComplexPolynomial(tuple(out))


def cauchy_root_bound(P) -> float:
    """R = 1 + sum |a_k / a_n| over k < n; every root lies inside |z| < R."""
    coeffs = P.coeffs if isinstance(P, ComplexPolynomial) else p1_trim(tuple(P))
    if p1_is_zero(coeffs):
        raise ZeroPolynomial("root bound of the zero polynomial")
    lead = abs(coeffs[-1].to_complex())
    return 1.0 + sum(abs(c.to_complex()) for c in coeffs[:-1]) / lead


def _newton_polish(coeffs, z: complex) -> complex:
    d = p1_deriv(coeffs)
    pz = p1_eval(coeffs, z)
    dz = p1_eval(d, z)
    if abs(dz) > 1e-300:
        w = z - pz / dz
        if abs(p1_eval(coeffs, w)) <= abs(pz):
            return w
    return z


def _snap_root(coeffs, z: complex):
    """Try to replace a float root by a nearby exact Gaussian rational."""
    a = Fraction(z.real).limit_denominator(10**6)
    b = Fraction(z.imag).limit_denominator(10**6)
    if abs(complex(a - z.real, b - z.imag)) > 1e-7 * (1.0 + abs(z)):
        return None
    cand = ComplexPoint(a, b)
    if p1_eval(coeffs, cand).is_zero():
        return cand
    return None


def _roots_float(coeffs) -> list:
    """np.roots on the trimmed coefficients, one Newton step each.

    Real input stays real so the eigenvalue solver pairs conjugates (and
    repeats real roots) exactly instead of splitting them at sqrt(eps).
    """
    vals = [c.to_complex() for c in reversed(coeffs)]
    if all(v.imag == 0.0 for v in vals):
        arr = np.array([v.real for v in vals], dtype=float)
    else:
        arr = np.array(vals, dtype=complex)
    raw = np.roots(arr)
    return [_newton_polish(coeffs, complex(z)) for z in raw]


def complex_roots(P, tol: float = 1e-8) -> list:
    """All complex roots with multiplicities, as (ComplexPoint, int) pairs.

    Exact input goes through squarefree factorization for the multiplicities
    and through root snapping for exactness; the leftover factors fall back to
    the float eigenvalue route.  Float input clusters nearby roots instead.
    """
    coeffs = P.coeffs if isinstance(P, ComplexPolynomial) else p1_trim(tuple(P))
    if p1_is_zero(coeffs):
        raise ZeroPolynomial("root finding needs a nonzero polynomial")
    if p1_degree(coeffs) == 0:
        return []
    exact = coeffs[0].exact
    found = []
    if exact:
        # squarefree factors carry the multiplicities; roots inside each
        # factor are simple, so snapping never collides
        for factor, mult in p1_squarefree_factors(coeffs):
            if p1_degree(factor) < 1:
                continue
            for z in _roots_float(factor):
                snapped = _snap_root(factor, z)
                if snapped is not None:
                    found.append((snapped, mult))
                else:
                    found.append((ComplexPoint(z.real, z.imag), mult))
    else:
        roots = sorted(_roots_float(coeffs), key=lambda z: (z.real, z.imag))
        for z in roots:
            for k, (w, m) in enumerate(found):
                if abs(z - w.to_complex()) <= tol * (1.0 + abs(z)):
                    found[k] = (w, m + 1)
                    break
            else:
                found.append((ComplexPoint(z.real, z.imag), 1))
    scale = sum(abs(c.to_complex()) for c in coeffs)
    deg = p1_degree(coeffs)
    for z, _ in found:
        zc = z.to_complex()
        res = abs(p1_eval(coeffs, zc))
        if res > tol * scale * (1.0 + abs(zc)) ** deg:
            raise VerificationFailure(f"root {zc} fails the residual contract: {res}")
    return found


def _stem_pieces_at(P: SlicePolynomial, alpha, beta):
    """F1, F2 of the polynomial stem at z = alpha + iota beta."""
    exact = isinstance(alpha, Fraction) and P.mode is Mode.EXACT
    coeffs = P.coeffs if exact else tuple(c.to_float() for c in P.coeffs)
    if not exact:
        alpha, beta = float(alpha), float(beta)
    one = Fraction(1) if exact else 1.0
    u, v = one, one * 0
    f1 = coeffs[0]
    f2 = AlgebraElement.zero(P.kind, coeffs[0].mode)
    for c in coeffs[1:]:
        u, v = u * alpha - v * beta, u * beta + v * alpha
        if c.is_zero():
            continue
        f1 = f1 + c.scale(u)
        f2 = f2 + c.scale(v)
    return f1, f2


def poly_zeros(P: SlicePolynomial) -> ZeroSet:
    """Zero set of a slice polynomial via the roots of its normal polynomial.

    Each conjugate pair of roots of N(P) names a sphere; the stem pieces at
    the pair decide whether the sphere is all zeros, carries the single point
    alpha + beta J with J = -F1 F2^{-1}, or carries none.
    """
    if P.is_zero():
        raise ZeroPolynomial("zero set of the zero polynomial")
    if P.degree() == 0:
        return ZeroSet()
    npoly = poly_normal(P)
    roots = complex_roots(npoly)
    reals, uppers, lowers = [], [], []
    for z, _ in roots:
        if z.exact:
            bucket = reals if z.beta == 0 else (uppers if z.beta > 0 else lowers)
            bucket.append(z)
        elif abs(z.beta) <= PAIRING_TOL * (1.0 + abs(z.to_complex())):
            reals.append(ComplexPoint(z.alpha, 0.0))
        else:
            (uppers if z.beta > 0 else lowers).append(z)
    # conjugate pairing is structural for a real polynomial
    for z in lowers:
        if not any(
            abs(z.to_complex().conjugate() - w.to_complex())
            <= PAIRING_TOL * (1.0 + abs(w.to_complex()))
            for w in uppers
        ):
            raise VerificationFailure(
                f"unpaired nonreal root {z.to_complex()} of a real polynomial")
    zs = ZeroSet()
    seen = []
    for r in sorted(reals, key=lambda z: float(z.alpha)):
        a = r.alpha
        if any(abs(float(a) - float(q)) <= PAIRING_TOL * (1.0 + abs(float(a)))
               for q in zs.real_zeros):
            continue
        x = AlgebraElement.from_real(P.kind, a)
        val = poly_eval(P, x)
        scale = 1.0 + max(math.sqrt(c.abs2()) for c in P.coeffs)
        scale *= (1.0 + abs(float(a))) ** max(P.degree(), 0)
        if val.is_zero() if val.mode is Mode.EXACT else val.is_zero(SPHERE_TOL * scale):
            zs.real_zeros.append(a)
    for z in sorted(uppers, key=lambda z: (float(z.alpha), float(z.beta))):
        zc = z.to_complex()
        if any(abs(zc - w) <= PAIRING_TOL * (1.0 + abs(zc)) for w in seen):
            continue
        seen.append(zc)
        f1, f2 = _stem_pieces_at(P, z.alpha, z.beta)
        exact = f1.mode is Mode.EXACT
        scale = SPHERE_TOL * (1.0 + math.sqrt(f1.abs2()) + math.sqrt(f2.abs2()))
        f1z = f1.is_zero() if exact else f1.is_zero(scale)
        f2z = f2.is_zero() if exact else f2.is_zero(scale)
        if f1z and f2z:
            zs.spherical_zeros.append((z.alpha, z.beta))
            continue
        if f2z:
            continue
        J = -(f1 * f2.inverse())
        if exact:
            ok = J.trace() == 0 and J.norm() == 1
        else:
            ok = abs(J.trace()) <= SPHERE_TOL and abs(J.norm() - 1.0) <= SPHERE_TOL
        if ok:
            x = AlgebraElement.from_real(P.kind, z.alpha) + J.scale(z.beta)
            zs.isolated_zeros.append(x)
    return zs


@dataclass(frozen=True)
class OrderedPoly2:
    """Finite sums of ordered monomials x1^s (x2^r a)."""

    kind: AlgebraKind
    coeffs: dict

    def __post_init__(self):
        cleaned = {
            (int(s), int(r)): a for (s, r), a in self.coeffs.items() if not a.is_zero()
        }
        if any(a.kind is not self.kind for a in cleaned.values()):
            raise KindMismatch("coefficient from a different algebra")
        object.__setattr__(self, "coeffs", cleaned)

    def __add__(self, other: "OrderedPoly2") -> "OrderedPoly2":
        if self.kind is not other.kind:
            raise KindMismatch("ordered polynomials over different algebras")
        out = dict(self.coeffs)
        for key, a in other.coeffs.items():
            out[key] = out[key] + a if key in out else a
        return OrderedPoly2(self.kind, out)


def ordered_eval_bullet(
    P2: OrderedPoly2, f: SliceFunction, x: AlgebraElement
) -> AlgebraElement:
    """Evaluate sum x^s (f^{.r}(x) a_{s,r}) with slice powers of f.

    The inner powers are slice products, not pointwise ones, so the result is
    the value of a slice function; only the final assembly is pointwise.
    """
    if not P2.coeffs:
        return AlgebraElement.zero(P2.kind, x.mode)
    rmax = max(r for _, r in P2.coeffs)
    smax = max(s for s, _ in P2.coeffs)
    fpow = [const_fn(P2.kind, AlgebraElement.one(P2.kind))]
    for _ in range(rmax):
        fpow.append(fpow[-1] * f)
    fvals = {}
    for _, r in P2.coeffs:
        if r not in fvals:
            fvals[r] = fpow[r].eval(x)
    mode = Mode.FLOAT if any(v.mode is Mode.FLOAT for v in fvals.values()) else x.mode
    if mode is Mode.FLOAT:
        x = x.to_float()
        fvals = {r: v.to_float() for r, v in fvals.items()}
    xpow = [AlgebraElement.one(P2.kind, x.mode)]
    for _ in range(smax):
        xpow.append(xpow[-1] * x)
    acc = AlgebraElement.zero(P2.kind, x.mode)
    for (s, r), a in sorted(P2.coeffs.items()):
        if mode is Mode.FLOAT:
            a = a.to_float()
        acc = acc + xpow[s] * (fvals[r] * a)
    return acc
