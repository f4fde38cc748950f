"""Arithmetic laws of the quaternion and octonion ground algebras.

Expected values in the table tests were computed by hand from the doubling
product (a,b)(c,d) = (ac - d conj(b), conj(a) d + c b) on pair slots.
"""

import random
from fractions import Fraction

import pytest

from slicecalc import (
    AlgebraElement,
    AlgebraKind,
    ImaginaryUnit,
    InvalidUnit,
    KindMismatch,
    Mode,
    ModeMismatch,
    NotInvertible,
    associator,
    commutator,
    make_splitting_base,
    random_element,
    random_imaginary_unit,
    real_part_mixed,
)

H, O = AlgebraKind.H, AlgebraKind.O


def basis(kind, k):
    return AlgebraElement.basis(kind, k)


def test_dimensions():
    # base_units is u_A, so each splitting base carries u_A + 1 even slots
    assert H.dim == 4 and H.imag_dim == 3 and H.base_units == 1
    assert O.dim == 8 and O.imag_dim == 7 and O.base_units == 3


def test_quaternion_multiplication_table():
    e = [basis(H, k) for k in range(4)]
    table = {
        (1, 2): (3, 1), (2, 3): (1, 1), (3, 1): (2, 1),
        (2, 1): (3, -1), (3, 2): (1, -1), (1, 3): (2, -1),
    }
    for (a, b), (c, sign) in table.items():
        assert e[a] * e[b] == e[c].scale(Fraction(sign))
    for k in (1, 2, 3):
        assert e[k] * e[k] == AlgebraElement.from_real(H, Fraction(-1))
        assert e[0] * e[k] == e[k] == e[k] * e[0]


def test_octonion_products_from_doubling():
    e = [basis(O, k) for k in range(8)]
    # signs follow the storage convention beta = conj(upper half)
    table = [
        (1, 2, 3, 1),   # i j = ij
        (1, 4, 5, 1),   # i l = il
        (2, 4, 6, 1),   # j l = jl
        (3, 4, 7, 1),   # (ij) l = (ij)l
        (2, 5, 7, 1),   # j (il) = (ij)l
        (1, 6, 7, -1),  # i (jl) = -(ij)l
        (5, 6, 3, -1),  # (il)(jl) = -(ij)
    ]
    for a, b, c, sign in table:
        assert e[a] * e[b] == e[c].scale(Fraction(sign)), (a, b)
    for k in range(1, 8):
        assert e[k] * e[k] == AlgebraElement.from_real(O, Fraction(-1))


def test_octonion_nonassociativity_witness():
    e = [basis(O, k) for k in range(8)]
    assert associator(e[1], e[2], e[4]) == e[7].scale(Fraction(2))
    assert (e[1] * e[2]) * e[4] == e[7]
    assert e[1] * (e[2] * e[4]) == -e[7]


@pytest.mark.parametrize("kind", [H, O])
def test_algebra_laws_seeded(kind):
    """Exact laws on 500 random pairs/triples: the batch behind criterion 1."""
    rng = random.Random(20_24)
    one = AlgebraElement.one(kind)
    for _ in range(500):
        x = random_element(kind, rng)
        y = random_element(kind, rng)
        z = random_element(kind, rng)
        assert (x * y).conj() == y.conj() * x.conj()
        assert (x * y).norm() == x.norm() * y.norm()
        if kind is H:
            assert (x * y) * z == x * (y * z)
        else:
            assert associator(x, x, y).is_zero()
            assert associator(x, y, y).is_zero()
            assert associator(x, y, x).is_zero()
        if not x.is_zero():
            assert x * x.inverse() == one
            assert x.inverse() * x == one


def test_trace_norm_real_imag():
    rng = random.Random(7)
    for kind in (H, O):
        for _ in range(50):
            x = random_element(kind, rng)
            assert x.trace() == 2 * x.coeffs[0]
            assert x.norm() == sum(c * c for c in x.coeffs)
            assert x.real_part() + 0 == x.coeffs[0]
            assert x == AlgebraElement.from_real(kind, x.coeffs[0]) + x.imag_part()
            # x satisfies its real quadratic x^2 - t(x) x + n(x) = 0
            lhs = x * x - x.scale(x.trace()) + AlgebraElement.from_real(kind, x.norm())
            assert lhs.is_zero()


def test_inverse_of_zero():
    with pytest.raises(NotInvertible):
        AlgebraElement.zero(H).inverse()


def test_mode_separation():
    x = AlgebraElement.from_real(H, Fraction(1))
    y = AlgebraElement.from_real(H, 1.0)
    assert x.mode is Mode.EXACT and y.mode is Mode.FLOAT
    with pytest.raises(ModeMismatch):
        x * y
    with pytest.raises(ModeMismatch):
        x + y
    assert x.to_float() * y == y


def test_kind_separation():
    with pytest.raises(KindMismatch):
        AlgebraElement.one(H) * AlgebraElement.one(O)


def test_real_part_mixed_identity():
    rng = random.Random(99)
    for _ in range(100):
        q = random_element(H, rng)
        assert real_part_mixed(q) == AlgebraElement.from_real(H, q.coeffs[0])
        # same thing as the conjugation form (q + q^c)/2
        assert real_part_mixed(q) == (q + q.conj()).scale(Fraction(1, 2))
    with pytest.raises(KindMismatch):
        real_part_mixed(AlgebraElement.one(O))


def test_imaginary_unit_validation():
    i = basis(H, 1)
    ImaginaryUnit(i)
    with pytest.raises(InvalidUnit):
        ImaginaryUnit(i.scale(Fraction(2)))
    with pytest.raises(InvalidUnit):
        ImaginaryUnit(AlgebraElement.one(H))
    rng = random.Random(5)
    for kind in (H, O):
        for _ in range(20):
            J = random_imaginary_unit(kind, rng, mode=Mode.FLOAT)
            assert abs(J.x.norm() - 1.0) < 1e-12
            assert abs(J.x.trace()) < 1e-12


@pytest.mark.parametrize("kind", [H, O])
def test_splitting_base_structure(kind):
    rng = random.Random(13)
    for trial in range(6):
        J = random_imaginary_unit(kind, rng, mode=Mode.FLOAT)
        base = make_splitting_base(J)
        u = kind.dim // 2 - 1
        assert len(base.full_basis) == kind.dim
        assert base.full_basis[0] == AlgebraElement.one(kind, Mode.FLOAT)
        residue = base.full_basis[1] - J.x
        assert residue.abs2() < 1e-20
        # odd slots are I * (even slot), the pairing used by the components
        for k in range(u + 1):
            d = base.full_basis[2 * k + 1] - J.x * base.full_basis[2 * k]
            assert d.abs2() < 1e-18
        x = random_element(kind, rng, mode=Mode.FLOAT, span=3)
        coords = base.coords(x)
        assert len(coords) == kind.dim
        back = base.from_coords(coords)
        assert (back - x).abs2() < 1e-16


def test_splitting_base_exact_canonical():
    base = make_splitting_base(ImaginaryUnit(basis(H, 1)))
    assert base.mode is Mode.EXACT
    x = AlgebraElement(H, (Fraction(3), Fraction(-1), Fraction(2), Fraction(7, 2)))
    assert base.from_coords(base.coords(x)) == x


def test_commutator_center():
    rng = random.Random(3)
    for _ in range(20):
        x = random_element(H, rng)
        r = AlgebraElement.from_real(H, Fraction(5, 3))
        assert commutator(x, r).is_zero()
