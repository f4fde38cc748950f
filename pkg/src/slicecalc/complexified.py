"""Complexified algebra A (x) C and the slice isomorphisms.

A point of the complexification is written w = x + iota y with x, y in A and
iota a central square root of -1 that is NOT an element of A.  Two
involutions act on it: the complex conjugation bar(w) = x - iota y and the
coefficientwise c-involution w^c = x^c + iota y^c.

ComplexPoint is the scalar companion type: a point alpha + iota beta of the
base complex plane, exact (Fraction parts) or float.  It is also used as the
Gaussian-rational coefficient field for the elimination machinery.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

from .cayley_dickson import (
    AlgebraElement,
    AlgebraKind,
    ImaginaryUnit,
    Mode,
    Scalar,
    scalar_from_json,
    scalar_to_json,
)
from .errors import KindMismatch, ModeMismatch, NotInvertible, NotOnSlice

# Membership tolerance for "x lies on the slice C_I" in float mode.
SLICE_TOL = 1e-10


def _both_exact(a, b) -> bool:
    return not isinstance(a, float) and not isinstance(b, float)


@dataclass(frozen=True)
class ComplexPoint:
    """alpha + iota beta in the base plane; exact when both parts are Fraction."""

    alpha: Scalar
    beta: Scalar

    def __post_init__(self):
        if isinstance(self.alpha, float) != isinstance(self.beta, float):
            object.__setattr__(self, "alpha", float(self.alpha))
            object.__setattr__(self, "beta", float(self.beta))
        elif not isinstance(self.alpha, float):
            object.__setattr__(self, "alpha", Fraction(self.alpha))
            object.__setattr__(self, "beta", Fraction(self.beta))

    @property
    def exact(self) -> bool:
        return not isinstance(self.alpha, float)

    @staticmethod
    def zero() -> "ComplexPoint":
        return ComplexPoint(Fraction(0), Fraction(0))

    @staticmethod
    def one() -> "ComplexPoint":
        return ComplexPoint(Fraction(1), Fraction(0))

    @staticmethod
    def iota() -> "ComplexPoint":
        return ComplexPoint(Fraction(0), Fraction(1))

    @staticmethod
    def of(value) -> "ComplexPoint":
        if isinstance(value, ComplexPoint):
            return value
        if isinstance(value, complex):
            return ComplexPoint(value.real, value.imag)
        return ComplexPoint(value, 0.0 if isinstance(value, float) else Fraction(0))

    def _pair(self, other):
        other = ComplexPoint.of(other)
        if self.exact and other.exact:
            return self, other
        return self.to_float(), other.to_float()

    def __add__(self, other):
        a, b = self._pair(other)
        return ComplexPoint(a.alpha + b.alpha, a.beta + b.beta)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._pair(other)
        return ComplexPoint(a.alpha - b.alpha, a.beta - b.beta)

    def __rsub__(self, other):
        return ComplexPoint.of(other) - self

    def __neg__(self):
        return ComplexPoint(-self.alpha, -self.beta)

    def __mul__(self, other):
        a, b = self._pair(other)
        return ComplexPoint(
            a.alpha * b.alpha - a.beta * b.beta,
            a.alpha * b.beta + a.beta * b.alpha,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        a, b = self._pair(other)
        n = b.alpha * b.alpha + b.beta * b.beta
        if (b.exact and n == 0) or (not b.exact and n == 0.0):
            raise NotInvertible("division by zero complex point")
        return a * ComplexPoint(b.alpha / n, -b.beta / n)

    def __rtruediv__(self, other):
        return ComplexPoint.of(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return (ComplexPoint.one() / self) ** (-n)
        out = ComplexPoint.one() if self.exact else ComplexPoint(1.0, 0.0)
        for _ in range(n):
            out = out * self
        return out

    def conj(self) -> "ComplexPoint":
        return ComplexPoint(self.alpha, -self.beta)

    def abs2(self) -> Scalar:
        return self.alpha * self.alpha + self.beta * self.beta

    def __abs__(self) -> float:
        return abs(self.to_complex())

    def is_zero(self, tol: float = 0.0) -> bool:
        if self.exact:
            return self.alpha == 0 and self.beta == 0
        return abs(self.to_complex()) <= tol

    def to_complex(self) -> complex:
        return complex(float(self.alpha), float(self.beta))

    def to_float(self) -> "ComplexPoint":
        return ComplexPoint(float(self.alpha), float(self.beta))

    def to_json(self):
        return {"alpha": scalar_to_json(self.alpha), "beta": scalar_to_json(self.beta)}

    @staticmethod
    def from_json(data) -> "ComplexPoint":
        return ComplexPoint(scalar_from_json(data["alpha"]), scalar_from_json(data["beta"]))

    def __str__(self):
        return f"{self.alpha}+{self.beta}*iota"


@dataclass(frozen=True)
class ComplexifiedElement:
    """w = x + iota y with x, y in the same algebra and mode."""

    x: AlgebraElement
    y: AlgebraElement

    def __post_init__(self):
        if self.x.kind is not self.y.kind:
            raise KindMismatch("x and y parts from different algebras")
        if self.x.mode is not self.y.mode:
            raise ModeMismatch("x and y parts in different modes")

    @property
    def kind(self) -> AlgebraKind:
        return self.x.kind

    @property
    def mode(self) -> Mode:
        return self.x.mode

    @staticmethod
    def zero(kind: AlgebraKind, mode: Mode = Mode.EXACT) -> "ComplexifiedElement":
        z = AlgebraElement.zero(kind, mode)
        return ComplexifiedElement(z, z)

    @staticmethod
    def from_real_part(x: AlgebraElement) -> "ComplexifiedElement":
        return ComplexifiedElement(x, AlgebraElement.zero(x.kind, x.mode))

    @staticmethod
    def from_scalar(kind: AlgebraKind, z: ComplexPoint) -> "ComplexifiedElement":
        return ComplexifiedElement(
            AlgebraElement.from_real(kind, z.alpha),
            AlgebraElement.from_real(kind, z.beta),
        )

    def _check_peer(self, other: "ComplexifiedElement"):
        if self.kind is not other.kind:
            raise KindMismatch("operands from different algebras")
        if self.mode is not other.mode:
            raise ModeMismatch("exact and float operands mixed")

    def __add__(self, other: "ComplexifiedElement") -> "ComplexifiedElement":
        self._check_peer(other)
        return ComplexifiedElement(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "ComplexifiedElement") -> "ComplexifiedElement":
        self._check_peer(other)
        return ComplexifiedElement(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "ComplexifiedElement":
        return ComplexifiedElement(-self.x, -self.y)

    def __mul__(self, other: "ComplexifiedElement") -> "ComplexifiedElement":
        """(x + iota y)(x' + iota y') = xx' - yy' + iota (xy' + yx')."""
        self._check_peer(other)
        return ComplexifiedElement(
            self.x * other.x - self.y * other.y,
            self.x * other.y + self.y * other.x,
        )

    def scale_complex(self, z: ComplexPoint) -> "ComplexifiedElement":
        """Multiply by a central complex scalar alpha + iota beta."""
        return ComplexifiedElement(
            self.x.scale(z.alpha) - self.y.scale(z.beta),
            self.x.scale(z.beta) + self.y.scale(z.alpha),
        )

    def bar(self) -> "ComplexifiedElement":
        """Complex conjugation x - iota y; a ring automorphism."""
        return ComplexifiedElement(self.x, -self.y)

    def cinv(self) -> "ComplexifiedElement":
        """Coefficientwise c-involution x^c + iota y^c; an anti-automorphism."""
        return ComplexifiedElement(self.x.conj(), self.y.conj())

    def is_zero(self, tol: float = 0.0) -> bool:
        return self.x.is_zero(tol) and self.y.is_zero(tol)

    def norm2(self) -> float:
        return self.x.abs2() + self.y.abs2()

    def to_float(self) -> "ComplexifiedElement":
        return ComplexifiedElement(self.x.to_float(), self.y.to_float())

    def to_json(self):
        return {"x": self.x.to_json(), "y": self.y.to_json()}

    @staticmethod
    def from_json(data) -> "ComplexifiedElement":
        return ComplexifiedElement(
            AlgebraElement.from_json(data["x"]), AlgebraElement.from_json(data["y"])
        )

    def __str__(self):
        return f"({self.x}) + iota ({self.y})"


def phi(I: ImaginaryUnit, z: ComplexPoint) -> AlgebraElement:
    """Slice chart: alpha + iota beta |-> alpha + beta I in C_I."""
    x = I.x
    if not z.exact and x.mode is Mode.EXACT:
        x = x.to_float()
    elif z.exact and x.mode is Mode.FLOAT:
        z = z.to_float()
    one = AlgebraElement.one(x.kind, x.mode)
    return one.scale(z.alpha) + x.scale(z.beta)


def phi_inv(I: ImaginaryUnit, p: AlgebraElement, tol: float = SLICE_TOL) -> ComplexPoint:
    """Inverse chart C_I -> C; raises NotOnSlice for points off the slice."""
    if p.kind is not I.kind:
        raise KindMismatch("point and unit from different algebras")
    alpha = p.coeffs[0]
    # orthogonal projection of the imaginary part onto I (norm one)
    beta = sum(a * b for a, b in zip(p.coeffs[1:], I.x.coeffs[1:]))
    residual = p - phi(I, ComplexPoint(alpha, beta))
    if p.mode is Mode.EXACT and I.mode is Mode.EXACT:
        if not residual.is_zero():
            raise NotOnSlice(f"{p} not on the slice of {I.x}")
    elif residual.abs2() > tol * tol * (1.0 + p.abs2()):
        raise NotOnSlice(f"{p} not on the slice of {I.x}")
    return ComplexPoint(alpha, beta)


def phi_tilde(I: ImaginaryUnit, w: ComplexifiedElement) -> AlgebraElement:
    """x + iota y |-> x + yI (the displayed placement, I on the right)."""
    x = w.x
    Ix = I.x
    if x.mode is not Ix.mode:
        x, Ix = x.to_float(), Ix.to_float()
        w = w.to_float()
    return x + w.y * Ix


def phi_tilde_left(I: ImaginaryUnit, w: ComplexifiedElement) -> AlgebraElement:
    """x + iota y |-> x + Iy; this is the placement slice evaluation uses."""
    x = w.x
    Ix = I.x
    if x.mode is not Ix.mode:
        x, Ix = x.to_float(), Ix.to_float()
        w = w.to_float()
    return x + Ix * w.y


def exp_point(z: ComplexPoint) -> complex:
    return cmath.exp(z.to_complex())
