"""Slice functions: evaluation through the slice chart, representation
formula, products, conjugation, reciprocals and zero sets.

The octonion fixtures freeze the one surprise of the theory: the slice
product of f with a right constant differs from pointwise multiplication,
with an exactly computable gap.
"""

import math
import random
from fractions import Fraction

import pytest

from slicecalc import (
    AlgebraElement,
    AlgebraKind,
    ComplexifiedElement,
    ComplexPoint,
    DomainSpec,
    ImaginaryUnit,
    Mode,
    SliceFunction,
    ZeroSet,
    const_fn,
    default_base,
    identity_fn,
    phi,
    poly_stem,
    random_element,
    random_imaginary_unit,
    representation_check,
    slice_product,
)
from slicecalc.errors import (
    BranchUndefined,
    ExactUnavailable,
    KindMismatch,
    NormalIdenticallyZero,
    NotOnSlice,
    OutsideDomain,
    StemnessViolation,
    UnsupportedStem,
)
from slicecalc.stem_expr import Add, Const, PiecewiseSign, Radical, ScalarFn, Z

H, O = AlgebraKind.H, AlgebraKind.O


def unit(kind, k, mode=Mode.EXACT):
    return AlgebraElement.basis(kind, k, mode)


def poly_fn(kind, *coeffs):
    """Slice polynomial sum x^s a_s as a SliceFunction."""
    lifted = [
        c if isinstance(c, AlgebraElement) else AlgebraElement.from_real(kind, Fraction(c))
        for c in coeffs
    ]
    return SliceFunction(kind, poly_stem(lifted, kind))


def fettazero():
    """1 + (J j) on each upper half slice: vanishes exactly on the +j one."""
    pw = PiecewiseSign(ComplexifiedElement(
        AlgebraElement.zero(H), unit(H, 2)))
    stem = Add(Const(ComplexifiedElement.from_real_part(AlgebraElement.one(H))), pw)
    return SliceFunction(H, stem, DomainSpec.upper_lower())


ROOT_STEM = ScalarFn(Radical(1, 2), ComplexifiedElement.from_real_part(AlgebraElement.one(H)))


# ---------------------------------------------------------------------------
# decomposition and evaluation


def test_decompose_exact_perfect_square():
    f = identity_fn(H)
    x = AlgebraElement(H, (Fraction(2), Fraction(3), Fraction(0), Fraction(4)))
    z, I = f.decompose(x)
    assert z == ComplexPoint(Fraction(2), Fraction(5))
    assert I.x == AlgebraElement(H, (Fraction(0), Fraction(3, 5), Fraction(0), Fraction(4, 5)))
    rz, rI = f.decompose(AlgebraElement.from_real(H, Fraction(7)))
    assert rI is None and rz == ComplexPoint(Fraction(7), Fraction(0))


def test_decompose_irrational_radius():
    f = identity_fn(H)
    x = AlgebraElement(H, (Fraction(1), Fraction(1), Fraction(1), Fraction(0)))
    with pytest.raises(ExactUnavailable):
        f.decompose(x, mode=Mode.EXACT)
    z, I = f.decompose(x)  # silently falls back to floats
    assert not z.exact and abs(float(z.beta) - math.sqrt(2)) < 1e-12
    assert abs(I.x.norm() - 1.0) < 1e-12


def test_eval_polynomial_slicewise():
    # f(x) = x^2 + 1 at x = 2i gives -3; at x = 1 + j gives 1 + 2j
    f = poly_fn(H, 1, 0, 1)
    assert f(unit(H, 1).scale(Fraction(2))) == AlgebraElement.from_real(H, Fraction(-3))
    x = AlgebraElement(H, (Fraction(1), Fraction(0), Fraction(1), Fraction(0)))
    assert f(x) == AlgebraElement(H, (Fraction(1), Fraction(0), Fraction(2), Fraction(0)))


def test_eval_matches_phi_tilde_on_random_points():
    rng = random.Random(4821)
    for kind in (H, O):
        f = poly_fn(kind, 1, unit(kind, 2), unit(kind, 1))
        for _ in range(25):
            x = random_element(kind, rng, mode=Mode.FLOAT)
            z, I = f.decompose(x)
            direct = f(x)
            expected = f.eval_on_slice(I, z)
            assert math.sqrt((direct - expected).abs2()) < 1e-9


def test_eval_real_points_use_even_part():
    f = poly_fn(H, 3, 0, 1)
    assert f(AlgebraElement.from_real(H, Fraction(2))) == AlgebraElement.from_real(H, Fraction(7))
    # a stem whose odd part survives at real points is rejected at eval time
    broken = SliceFunction(
        H, Const(ComplexifiedElement.from_scalar(H, ComplexPoint(Fraction(0), Fraction(1)))),
        validate=False)
    with pytest.raises(StemnessViolation):
        broken.eval(AlgebraElement.from_real(H, Fraction(1)))


def test_eval_respects_domain():
    f = SliceFunction(H, ROOT_STEM, DomainSpec.slit_plane())
    with pytest.raises(OutsideDomain):
        f.eval(AlgebraElement.from_real(H, Fraction(-2)))
    disked = SliceFunction(H, Z(), DomainSpec.disk(1.0))
    with pytest.raises(OutsideDomain):
        disked.eval(AlgebraElement.from_real(H, Fraction(3)))


def test_eval_exact_mode_is_strict():
    f = identity_fn(H)
    x = AlgebraElement(H, (Fraction(0), Fraction(1), Fraction(1), Fraction(0)))
    with pytest.raises(ExactUnavailable):
        f.eval(x, mode=Mode.EXACT)
    root = SliceFunction(H, ROOT_STEM, DomainSpec.slit_plane())
    with pytest.raises(ExactUnavailable):
        root.eval(AlgebraElement.from_real(H, Fraction(4)), mode=Mode.EXACT)
    got = root.eval(AlgebraElement.from_real(H, Fraction(4)), mode=Mode.FLOAT)
    assert abs(got.coeffs[0] - 2.0) < 1e-12


def test_kind_guards():
    with pytest.raises(KindMismatch):
        identity_fn(H) + identity_fn(O)
    with pytest.raises(KindMismatch):
        SliceFunction(O, poly_stem([AlgebraElement.one(H)], H))
    with pytest.raises(BranchUndefined):
        SliceFunction(H, PiecewiseSign(
            ComplexifiedElement.from_scalar(H, ComplexPoint(Fraction(0), Fraction(1)))))


# ---------------------------------------------------------------------------
# representation formula


def test_representation_formula_reconstructs_values():
    rng = random.Random(907)
    for kind in (H, O):
        f = poly_fn(kind, unit(kind, 1), 2, unit(kind, 2))
        worst = 0.0
        for _ in range(20):
            I = random_imaginary_unit(kind, rng)
            J = random_imaginary_unit(kind, rng)
            alpha, beta = rng.uniform(-2, 2), rng.uniform(0.1, 2)
            x = phi(J, ComplexPoint(alpha, beta))
            rebuilt = representation_check(f, I, J, x)
            worst = max(worst, math.sqrt((rebuilt - f(x)).abs2()))
        assert worst <= 1e-10


def test_representation_check_requires_slice_membership():
    f = poly_fn(H, 0, 1)
    I = ImaginaryUnit(unit(H, 1))
    J = ImaginaryUnit(unit(H, 1))
    off_slice = AlgebraElement(H, (Fraction(1), Fraction(1), Fraction(1), Fraction(0)))
    with pytest.raises(NotOnSlice):
        representation_check(f, I, J, off_slice)


def test_recover_stem_round_trip():
    from slicecalc.stem_expr import eval_stem

    f = poly_fn(H, unit(H, 1), 1, unit(H, 2))
    I = ImaginaryUnit(unit(H, 2))
    for z in (ComplexPoint(Fraction(1, 2), Fraction(3)), ComplexPoint(Fraction(-1), Fraction(1, 4))):
        got = f.recover_stem(z, I)
        want = eval_stem(f.stem, z, H, Mode.EXACT)
        assert got == want


# ---------------------------------------------------------------------------
# slice product


def test_slice_product_pointwise_for_slice_preserving_left_factor():
    rng = random.Random(57)
    for kind in (H, O):
        f = poly_fn(kind, 1, 0, 1)             # real coefficients
        g = poly_fn(kind, unit(kind, 1), unit(kind, 2))
        assert f.is_slice_preserving()
        h = slice_product(f, g)
        for _ in range(15):
            x = random_element(kind, rng, mode=Mode.FLOAT)
            lhs = h(x)
            rhs = f(x) * g(x)
            assert math.sqrt((lhs - rhs).abs2()) < 1e-9


def test_octonion_right_constant_anomaly():
    # f(x) = x i multiplied by the constant l: slice product and pointwise
    # product disagree at x = j, by exactly 2 in Euclidean length
    f = poly_fn(O, 0, unit(O, 1))
    L = const_fn(O, unit(O, 4))
    j = unit(O, 2)
    assert f(j) == -unit(O, 3)                       # j i = -(i j)
    pointwise = f(j) * unit(O, 4)
    assert pointwise == -unit(O, 7)
    sliced = slice_product(f, L)(j)
    assert sliced == unit(O, 7)                      # j (i l)
    gap = sliced - pointwise
    assert gap == unit(O, 7).scale(Fraction(2))
    assert math.sqrt(float(gap.abs2())) == 2.0


def test_quaternion_right_constant_is_pointwise():
    f = poly_fn(H, 0, unit(H, 1))
    L = const_fn(H, unit(H, 2))
    rng = random.Random(3)
    for _ in range(10):
        x = random_element(H, rng, mode=Mode.FLOAT)
        lhs = slice_product(f, L)(x)
        rhs = f(x) * unit(H, 2, Mode.FLOAT)
        assert math.sqrt((lhs - rhs).abs2()) < 1e-10


@pytest.mark.parametrize("kind", [H, O], ids=["H", "O"])
def test_unit_coefficient_squares_to_minus_x_squared(kind):
    # (x i) . (x i) = -x^2 even though i does not commute with the slice unit
    f = poly_fn(kind, 0, unit(kind, 1))
    sq = f * f
    rng = random.Random(11)
    for _ in range(10):
        x = random_element(kind, rng, mode=Mode.FLOAT)
        assert math.sqrt((sq(x) + x * x).abs2()) < 1e-9
    x = unit(kind, 2).scale(Fraction(3))
    assert sq(x) == -(x * x)


# ---------------------------------------------------------------------------
# conjugate, normal, reciprocal


def test_conjugate_and_normal_values():
    f = poly_fn(H, unit(H, 1), 1)                    # x + i
    fc = f.conj()
    x = AlgebraElement(H, (Fraction(1), Fraction(0), Fraction(2), Fraction(0)))
    assert fc(x) == x - unit(H, 1)
    nf = f.normal()
    # N(x + i) = x^2 + 1
    want = x * x + AlgebraElement.one(H)
    assert nf(x) == want
    assert nf.is_slice_preserving()


def test_normal_is_multiplicative_along_products():
    rng = random.Random(29)
    f = poly_fn(H, unit(H, 1), 1)
    g = poly_fn(H, unit(H, 2), 0, 1)
    nfg = (f * g).normal()
    nf, ng = f.normal(), g.normal()
    for _ in range(10):
        x = random_element(H, rng, mode=Mode.FLOAT)
        lhs = nfg(x)
        rhs = nf(x) * ng(x)                          # both slice preserving
        assert math.sqrt((lhs - rhs).abs2()) < 1e-8 * (1 + math.sqrt(rhs.abs2()))


def test_reciprocal_inverts_under_slice_product():
    f = poly_fn(H, unit(H, 1).scale(Fraction(-1)), 1)     # x - i
    inv = f.reciprocal()
    prod = f * inv
    rng = random.Random(83)
    one = AlgebraElement.one(H, Mode.FLOAT)
    for _ in range(12):
        x = random_element(H, rng, mode=Mode.FLOAT)
        z, _ = prod.decompose(x)
        if not prod.domain.contains(z, guard=0.05):
            continue
        got = prod(x)
        assert math.sqrt((got - one).abs2()) < 1e-9
    # the normal's zeros are excised from the domain
    assert not prod.domain.contains(ComplexPoint(0.0, 1.0))


def test_reciprocal_refuses_zero_normal():
    with pytest.raises(NormalIdenticallyZero):
        fettazero().reciprocal()


# ---------------------------------------------------------------------------
# zero sets


def test_zero_set_of_polynomial_stem():
    f = poly_fn(H, 1, 0, 1)                          # x^2 + 1
    zs = f.zero_set()
    assert zs.real_zeros == [] and zs.isolated_zeros == []
    assert len(zs.spherical_zeros) == 1
    a, b = zs.spherical_zeros[0]
    assert a == 0 and b == 1
    assert zs.exceptional_half_slice is None


def test_zero_set_unsupported_for_radical_stems():
    f = SliceFunction(H, ROOT_STEM, DomainSpec.slit_plane())
    with pytest.raises(UnsupportedStem):
        f.zero_set()


def test_fettazero_vanishes_on_one_half_slice():
    f = fettazero()
    two_j = unit(H, 2).scale(Fraction(2))
    assert f(two_j).is_zero()
    assert f(unit(H, 2).scale(Fraction(1, 3))).is_zero()
    # lower half of the same slice, and other slices, stay nonzero
    assert f(-two_j) == AlgebraElement.from_real(H, Fraction(2))
    i2 = unit(H, 1).scale(Fraction(2))
    assert f(i2) == AlgebraElement.one(H) + unit(H, 3)
    assert f.normal_is_zero()
    zs = f.zero_set()
    assert zs.count() == 0
    assert zs.exceptional_half_slice is not None
    assert zs.exceptional_half_slice.x == unit(H, 2)


def test_zero_function_zero_set_is_rejected():
    from slicecalc.errors import ZeroPolynomial

    zero = const_fn(H, AlgebraElement.zero(H))
    assert zero.normal_is_zero()
    with pytest.raises(ZeroPolynomial):
        zero.zero_set()


def test_zero_set_json_shape():
    zs = ZeroSet(real_zeros=[Fraction(1)], spherical_zeros=[(Fraction(0), Fraction(2))])
    data = zs.to_json()
    assert set(data) == {"real", "isolated", "spheres", "exceptional_half_slice"}
    assert data["spheres"][0]["beta"] == "2"
    assert zs.count() == 2
    with pytest.raises(ValueError):
        ZeroSet(spherical_zeros=[(Fraction(0), Fraction(0))])


# ---------------------------------------------------------------------------
# structure probes


def test_as_slice_polynomial_round_trip():
    i, j = unit(H, 1), unit(H, 2)
    f = poly_fn(H, i.scale(Fraction(-1)), 1) * poly_fn(H, j.scale(Fraction(-1)), 1)
    poly = f.as_slice_polynomial()
    assert poly is not None
    # (x - i) . (x - j) = x^2 - x (i + j) + i j
    assert poly.coeffs[2] == AlgebraElement.one(H)
    assert poly.coeffs[1] == -(i + j)
    assert poly.coeffs[0] == i * j
    assert SliceFunction(H, ROOT_STEM, DomainSpec.slit_plane()).as_slice_polynomial() is None


def test_is_slice_preserving_modes():
    assert poly_fn(H, 1, 2, 3).is_slice_preserving()          # symbolic route
    assert not poly_fn(H, 0, unit(H, 1)).is_slice_preserving()
    assert not fettazero().is_slice_preserving()
    assert const_fn(O, AlgebraElement.from_real(O, Fraction(5))).is_slice_preserving()


def test_is_slice_regular_flags():
    assert poly_fn(H, 1, 0, 1).is_slice_regular()
    assert SliceFunction(H, ROOT_STEM, DomainSpec.slit_plane()).is_slice_regular()
    assert fettazero().is_slice_regular()


def test_arithmetic_is_pointwise():
    rng = random.Random(6)
    f = poly_fn(H, 1, unit(H, 1))
    g = poly_fn(H, unit(H, 2), 0, 1)
    for _ in range(10):
        x = random_element(H, rng, mode=Mode.FLOAT)
        assert math.sqrt(((f + g)(x) - (f(x) + g(x))).abs2()) < 1e-10
        assert math.sqrt(((f - g)(x) - (f(x) - g(x))).abs2()) < 1e-10


def test_default_base_is_canonical():
    base = default_base(H)
    assert base.full_basis[0] == AlgebraElement.one(H)
    assert base.full_basis[1] == unit(H, 1)
    assert default_base(H) is base  # cached
