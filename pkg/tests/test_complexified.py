"""Complexified algebra A (x) C: products, involutions, slice charts."""

import random
from fractions import Fraction

import pytest

from slicecalc import (
    AlgebraElement,
    AlgebraKind,
    ComplexPoint,
    ComplexifiedElement,
    ImaginaryUnit,
    Mode,
    NotOnSlice,
    phi,
    phi_inv,
    phi_tilde,
    phi_tilde_left,
    random_element,
    random_imaginary_unit,
)

H, O = AlgebraKind.H, AlgebraKind.O


def rand_cx(kind, rng):
    return ComplexifiedElement(random_element(kind, rng), random_element(kind, rng))


def test_complex_point_arithmetic():
    a = ComplexPoint(Fraction(1, 2), Fraction(-3))
    b = ComplexPoint(Fraction(2), Fraction(1, 3))
    assert a + b == ComplexPoint(Fraction(5, 2), Fraction(-8, 3))
    assert a * b == ComplexPoint(Fraction(2), Fraction(-35, 6))
    assert (a / b) * b == a
    assert a.conj() == ComplexPoint(Fraction(1, 2), Fraction(3))
    assert a ** 3 == a * a * a
    assert ComplexPoint.iota() * ComplexPoint.iota() == -ComplexPoint.one()
    assert ComplexPoint.of(2 + 3j) == ComplexPoint(2.0, 3.0)
    assert ComplexPoint.of(Fraction(7)) == ComplexPoint(Fraction(7), Fraction(0))


def test_complex_point_json_round_trip():
    for p in (ComplexPoint(Fraction(2, 7), Fraction(-1)), ComplexPoint(0.25, -3.5)):
        assert ComplexPoint.from_json(p.to_json()) == p


def test_cx_mul_matches_definition():
    rng = random.Random(41)
    for kind in (H, O):
        for _ in range(40):
            w1, w2 = rand_cx(kind, rng), rand_cx(kind, rng)
            prod = w1 * w2
            assert prod.x == w1.x * w2.x - w1.y * w2.y
            assert prod.y == w1.x * w2.y + w1.y * w2.x


def test_iota_squares_to_minus_one():
    one = ComplexifiedElement.from_real_part(AlgebraElement.one(H))
    iota = ComplexifiedElement(AlgebraElement.zero(H), AlgebraElement.one(H))
    assert iota * iota == -one


def test_complex_scalars_are_central():
    rng = random.Random(17)
    for kind in (H, O):
        for _ in range(30):
            w = rand_cx(kind, rng)
            z = ComplexPoint(Fraction(3, 4), Fraction(-2))
            zc = ComplexifiedElement.from_scalar(kind, z)
            assert zc * w == w * zc == w.scale_complex(z)


def test_bar_is_automorphism_cinv_antiautomorphism():
    rng = random.Random(55)
    for kind in (H, O):
        for _ in range(40):
            w1, w2 = rand_cx(kind, rng), rand_cx(kind, rng)
            assert (w1 * w2).bar() == w1.bar() * w2.bar()
            assert (w1 * w2).cinv() == w2.cinv() * w1.cinv()
            assert w1.bar().bar() == w1
            assert w1.cinv().cinv() == w1


def test_phi_and_inverse():
    rng = random.Random(2)
    for kind in (H, O):
        for _ in range(20):
            I = random_imaginary_unit(kind, rng)
            z = ComplexPoint(Fraction(rng.randint(-4, 4)), Fraction(rng.randint(-4, 4)))
            p = phi(I, z)
            assert phi_inv(I, p) == z
    # a point off the slice is rejected
    I = ImaginaryUnit(AlgebraElement.basis(H, 1))
    off = AlgebraElement(H, (Fraction(1), Fraction(1), Fraction(1), Fraction(0)))
    with pytest.raises(NotOnSlice):
        phi_inv(I, off)


def test_phi_tilde_placements_differ_on_octonions():
    """The two iota substitutions agree on H slices but not in general on O."""
    I = ImaginaryUnit(AlgebraElement.basis(O, 1))
    w = ComplexifiedElement(AlgebraElement.zero(O), AlgebraElement.basis(O, 6))
    left = phi_tilde_left(I, w)    # i * (jl)
    right = phi_tilde(I, w)        # (jl) * i
    assert left == -right
    assert left == -AlgebraElement.basis(O, 7)


def test_phi_tilde_on_real_part_only():
    rng = random.Random(6)
    x = random_element(H, rng)
    w = ComplexifiedElement.from_real_part(x)
    I = random_imaginary_unit(H, rng)
    assert phi_tilde(I, w) == x
    assert phi_tilde_left(I, w) == x


def test_phi_tilde_kills_one_plus_iota_J():
    """1 + iota J maps to 1 + J^2 = 0 under its own slice chart."""
    for kind in (H, O):
        J = ImaginaryUnit(AlgebraElement.basis(kind, 2))
        w = ComplexifiedElement(AlgebraElement.one(kind), J.x)
        assert phi_tilde_left(J, w).is_zero()
        assert phi_tilde(J, w).is_zero()


def test_phi_tilde_multiplicative_on_slice_parts():
    """Both placements respect products once all A-parts live in C_I.

    There the whole computation happens inside a commutative plane, for H
    and O alike; this is the case the representation formula leans on.
    """
    rng = random.Random(31)
    for kind in (H, O):
        for _ in range(30):
            I = random_imaginary_unit(kind, rng)
            a = phi(I, ComplexPoint(Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3))))
            b = phi(I, ComplexPoint(Fraction(rng.randint(-3, 3)), Fraction(rng.randint(1, 3))))
            w1 = ComplexifiedElement(a, b)
            w2 = ComplexifiedElement(b * b - a, a * b)
            for chart in (phi_tilde, phi_tilde_left):
                assert chart(I, w1 * w2) == chart(I, w1) * chart(I, w2)


def test_phi_tilde_left_multiplicative_for_scalar_first_factor():
    """With real-scalar parts on the left operand the chart is a morphism.

    On O this leans on alternativity (I(I g) = (II)g by Artin); it is the
    algebraic germ of 'slice preserving times anything is pointwise'.
    """
    rng = random.Random(32)
    for kind in (H, O):
        for _ in range(30):
            I = random_imaginary_unit(kind, rng)
            w1 = ComplexifiedElement(
                AlgebraElement.from_real(kind, Fraction(rng.randint(-4, 4), 1 + rng.randint(0, 3))),
                AlgebraElement.from_real(kind, Fraction(rng.randint(-4, 4), 1 + rng.randint(0, 3))),
            )
            w2 = rand_cx(kind, rng)
            assert phi_tilde_left(I, w1 * w2) == phi_tilde_left(I, w1) * phi_tilde_left(I, w2)


def test_phi_tilde_not_multiplicative_in_general():
    """The raw pointwise identity fails; that failure is the product anomaly."""
    I = ImaginaryUnit(AlgebraElement.basis(H, 1))
    w = ComplexifiedElement(AlgebraElement.zero(H), AlgebraElement.basis(H, 2))
    # (iota j)(iota j) = iota^2 j^2 = +1, but (i j)(i j) = k^2 = -1
    lhs = phi_tilde_left(I, w * w)
    rhs = phi_tilde_left(I, w) * phi_tilde_left(I, w)
    assert lhs == AlgebraElement.one(H)
    assert rhs == AlgebraElement.from_real(H, Fraction(-1))
    assert lhs != rhs


def test_phi_tilde_conjugation_exchange():
    """conj(phi_left(w)) = phi_right(bar(cinv(w))), and symmetrically."""
    rng = random.Random(33)
    for kind in (H, O):
        for _ in range(30):
            I = random_imaginary_unit(kind, rng)
            w = rand_cx(kind, rng)
            flipped = w.cinv().bar()
            assert phi_tilde_left(I, w).conj() == phi_tilde(I, flipped)
            assert phi_tilde(I, w).conj() == phi_tilde_left(I, flipped)


def test_cx_json_round_trip():
    rng = random.Random(8)
    w = rand_cx(O, rng)
    assert ComplexifiedElement.from_json(w.to_json()) == w
