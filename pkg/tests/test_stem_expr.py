"""Stem ASTs: domains, symmetry and holomorphy checks, evaluation,
symbolic derivatives, and scalar component extraction.

Derivative fixtures are cross-checked against central differences; the
component-extraction tests rebuild the stem value from the extracted
scalars and compare with direct evaluation, exactly.
"""

import math
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
    eval_stem,
    make_splitting_base,
    poly_stem,
    stem_derivative,
)
from slicecalc.errors import (
    BranchUndefined,
    ExactUnavailable,
    KindMismatch,
    StemnessViolation,
    VerificationFailure,
)
from slicecalc.stem_expr import (
    Add,
    CInv,
    Const,
    Mul,
    PiecewiseSign,
    PolyRatio,
    Radical,
    ScalarFn,
    SFun,
    SMul,
    SPiecewise,
    Trig,
    SAdd,
    SConst,
    SZ,
    Z,
    as_poly_ratio,
    check_holomorphy,
    check_stemness,
    component_functions,
    eval_scalar,
    stem_callable,
    stem_components,
    stem_is_exact,
    stem_kind,
    uses_piecewise,
    uses_radical_or_trig,
)

H, O = AlgebraKind.H, AlgebraKind.O


def cp(a, b=0):
    return ComplexPoint(Fraction(a), Fraction(b))


def unit(kind, k):
    return AlgebraElement.basis(kind, k)


def real_const(kind, k):
    return Const(ComplexifiedElement.from_real_part(unit(kind, k)))


ONE_H = Const(ComplexifiedElement.from_real_part(AlgebraElement.one(H)))


# ---------------------------------------------------------------------------
# domains


def test_domain_membership():
    full = DomainSpec.full_plane()
    assert full.contains(0j) and full.contains(-5 + 0j)
    slit = DomainSpec.slit_plane()
    assert not slit.contains(-1 + 0j) and not slit.contains(0j)
    assert slit.contains(-1 + 1e-3j) and slit.contains(2 + 0j)
    halves = DomainSpec.upper_lower()
    assert not halves.contains(2 + 0j) and halves.contains(2 + 1j)
    assert halves.component_count() == 2 and slit.component_count() == 1
    disk = DomainSpec.disk(2.0)
    assert disk.contains(1.9 + 0j) and not disk.contains(2 + 0.1j)


def test_domain_punctures_conjugate_closed():
    d = DomainSpec.plane_minus([cp(0, 1)])
    assert len(d.punctures) == 2
    assert not d.contains(cp(0, 1)) and not d.contains(cp(0, -1))
    assert not d.contains(complex(0, 1), guard=0.05)
    assert d.contains(cp(1, 1))


def test_domain_intersect_combines_constraints():
    d = DomainSpec.slit_plane().intersect(DomainSpec.disk(3.0))
    assert d.slit and d.radius == 3.0
    d2 = DomainSpec.disk(1.0).intersect(DomainSpec.disk(2.0))
    assert d2.radius == 1.0
    d3 = d.intersect(DomainSpec.upper_lower())
    assert d3.halves and d3.slit
    assert "slit" in d.describe()


def test_domain_samples_deterministic_and_inside():
    for dom in (
        DomainSpec.full_plane(),
        DomainSpec.slit_plane(),
        DomainSpec.upper_lower(),
        DomainSpec.disk(1.5),
    ):
        pts = dom.samples(16, seed=3)
        assert pts == dom.samples(16, seed=3)
        assert len(pts) == 16 * dom.component_count()
        assert all(dom.contains(z, guard=0.05) for z in pts)
    ups = DomainSpec.upper_lower().samples(8, seed=0)
    assert any(z.imag > 0 for z in ups) and any(z.imag < 0 for z in ups)


def test_domain_json_round_trip():
    d = DomainSpec(slit=True, radius=2.5, punctures=(cp(0, 1),))
    assert DomainSpec.from_json(d.to_json()) == d


# ---------------------------------------------------------------------------
# symmetry and holomorphy checks


def test_stemness_accepts_real_part_constants():
    expr = Add(Mul(Z(), Z()), real_const(H, 2))
    worst = check_stemness(stem_callable(expr, H), DomainSpec.full_plane(), n=64)
    assert worst <= 1e-12


def test_stemness_rejects_odd_constant():
    # a constant with a nonzero iota part is not intrinsically symmetric
    bad = Const(ComplexifiedElement.from_scalar(H, cp(0, 1)))
    with pytest.raises(StemnessViolation):
        check_stemness(stem_callable(bad, H), DomainSpec.full_plane(), n=32)


def test_stemness_accepts_piecewise_on_halves():
    expr = PiecewiseSign(ComplexifiedElement.from_scalar(H, cp(0, 1)))
    worst = check_stemness(stem_callable(expr, H), DomainSpec.upper_lower(), n=64)
    assert worst <= 1e-12


def test_holomorphy_accepts_polynomials_and_radicals():
    expr = Add(Mul(Z(), Z()), real_const(H, 1))
    assert check_holomorphy(stem_callable(expr, H), DomainSpec.full_plane(), n=64) < 1e-6
    rad = ScalarFn(Radical(1, 2), ComplexifiedElement.from_real_part(AlgebraElement.one(H)))
    assert check_holomorphy(stem_callable(rad, H), DomainSpec.slit_plane(), n=64) < 1e-6


def test_holomorphy_rejects_real_part_of_z():
    def fn(z: complex) -> ComplexifiedElement:
        return ComplexifiedElement.from_scalar(H, ComplexPoint(z.real, 0.0))

    with pytest.raises(VerificationFailure):
        check_holomorphy(fn, DomainSpec.full_plane(), n=32)


# ---------------------------------------------------------------------------
# evaluation


def test_eval_poly_stem_exact():
    coeffs = [AlgebraElement.one(H), unit(H, 1), unit(H, 2)]  # 1 + x i + x^2 j
    expr = poly_stem(coeffs, H)
    at_two = eval_stem(expr, cp(2), H, Mode.EXACT)
    assert at_two.x == coeffs[0] + coeffs[1].scale(Fraction(2)) + coeffs[2].scale(Fraction(4))
    assert at_two.y.is_zero()
    at_iota = eval_stem(expr, cp(0, 1), H, Mode.EXACT)
    assert at_iota.x == coeffs[0] - coeffs[2]
    assert at_iota.y == coeffs[1]


def test_eval_stem_exact_keeps_fractions():
    expr = Mul(Z(), Z())
    w = eval_stem(expr, cp(Fraction(1, 2), Fraction(1, 3)), H, Mode.EXACT)
    assert w.mode is Mode.EXACT
    # (1/2 + iota/3)^2 = 1/4 - 1/9 + iota/3
    assert w.x.coeffs[0] == Fraction(5, 36)
    assert w.y.coeffs[0] == Fraction(1, 3)


def test_eval_stem_mode_guards():
    with pytest.raises(ExactUnavailable):
        eval_stem(Z(), ComplexPoint(0.5, 0.0), H, Mode.EXACT)
    rad = ScalarFn(Radical(1, 2), ComplexifiedElement.from_real_part(AlgebraElement.one(H)))
    with pytest.raises(ExactUnavailable):
        eval_stem(rad, cp(4), H, Mode.EXACT)
    got = eval_stem(rad, cp(4), H, Mode.FLOAT)
    assert abs(got.x.coeffs[0] - 2.0) < 1e-12
    with pytest.raises(ExactUnavailable):
        eval_stem(ScalarFn(Trig("cos"), ComplexifiedElement.from_real_part(AlgebraElement.one(H))),
                  cp(1), H, Mode.EXACT)


def test_eval_stem_kind_guard():
    with pytest.raises(KindMismatch):
        eval_stem(ONE_H, cp(1), O, Mode.EXACT)


def test_eval_piecewise_and_conjugation_nodes():
    w = ComplexifiedElement.from_scalar(H, cp(0, 1))
    pw = PiecewiseSign(w)
    assert eval_stem(pw, cp(1, 2), H, Mode.EXACT) == w
    assert eval_stem(pw, cp(1, -2), H, Mode.EXACT) == w.bar()
    with pytest.raises(BranchUndefined):
        eval_stem(pw, cp(1, 0), H, Mode.EXACT)
    # CInv applies algebra conjugation, C-linearly extended
    ci = CInv(real_const(H, 1))
    assert eval_stem(ci, cp(1), H, Mode.EXACT).x == -unit(H, 1)


# ---------------------------------------------------------------------------
# symbolic derivative


def test_derivative_base_rules():
    zero = stem_derivative(real_const(H, 3), H)
    assert eval_stem(zero, cp(2), H, Mode.EXACT).x.is_zero()
    one = stem_derivative(Z(), H)
    assert eval_stem(one, cp(7), H, Mode.EXACT).x == AlgebraElement.one(H)
    assert eval_stem(stem_derivative(PiecewiseSign(
        ComplexifiedElement.from_scalar(H, cp(0, 1))), H), cp(1, 1), H, Mode.EXACT).x.is_zero()


def test_derivative_cubes_and_products():
    cube = Mul(Z(), Mul(Z(), Z()))
    d = stem_derivative(cube, H)
    got = eval_stem(d, cp(2), H, Mode.EXACT)
    assert got.x.coeffs[0] == Fraction(12) and got.y.is_zero()


def test_derivative_radical_and_ratio():
    one_w = ComplexifiedElement.from_real_part(AlgebraElement.one(H))
    droot = stem_derivative(ScalarFn(Radical(1, 2), one_w), H)
    got = eval_stem(droot, ComplexPoint(4.0, 0.0), H, Mode.FLOAT)
    assert abs(got.x.coeffs[0] - 0.25) < 1e-12
    dinv = stem_derivative(ScalarFn(PolyRatio((cp(1),), (cp(0), cp(1))), one_w), H)
    got = eval_stem(dinv, cp(2), H, Mode.EXACT)
    assert got.x.coeffs[0] == Fraction(-1, 4)
    # z^(3/2) steps down to a half-integer power, not a rational function
    d32 = stem_derivative(ScalarFn(Radical(3, 2), one_w), H)
    assert isinstance(d32, ScalarFn) and isinstance(d32.fn, Radical)
    assert (d32.fn.p, d32.fn.q) == (1, 2)


def test_derivative_trig_cycle():
    one_w = ComplexifiedElement.from_real_part(AlgebraElement.one(H))
    dcos = stem_derivative(ScalarFn(Trig("cos"), one_w), H)
    got = eval_stem(dcos, ComplexPoint(0.5, 0.0), H, Mode.FLOAT)
    assert abs(got.x.coeffs[0] + math.sin(0.5)) < 1e-12
    dexp = stem_derivative(ScalarFn(Trig("exp"), one_w), H)
    assert isinstance(dexp.fn, Trig) and dexp.fn.which == "exp"


def test_derivative_matches_central_differences():
    one_w = ComplexifiedElement.from_real_part(AlgebraElement.one(H))
    fixtures = [
        (Add(Mul(Z(), Mul(Z(), Z())), Mul(real_const(H, 1), Z())), 0.7 + 0.4j),
        (Mul(Z(), ScalarFn(Radical(1, 2), one_w)), 1.3 + 0.6j),
        (ScalarFn(Trig("sin"), one_w), -0.2 + 0.9j),
        (CInv(Mul(Z(), real_const(H, 2))), 0.5 - 1.1j),
    ]
    h = 1e-6
    for expr, z in fixtures:
        f = stem_callable(expr, H)
        d = stem_callable(stem_derivative(expr, H), H)
        fd = (f(z + h) - f(z - h)).scale_complex(ComplexPoint(0.5 / h, 0.0))
        resid = math.sqrt((fd - d(z)).norm2())
        assert resid < 1e-5, (expr, resid)


# ---------------------------------------------------------------------------
# scalar components


def canonical_base(kind):
    return make_splitting_base(ImaginaryUnit(unit(kind, 1)))


def reassemble(comps, base, z):
    vals = [eval_scalar(c, z) for c in comps]
    x = base.from_coords([v.alpha for v in vals])
    y = base.from_coords([v.beta for v in vals])
    return ComplexifiedElement(x, y)


COMPONENT_POINTS = [cp(Fraction(3, 2), Fraction(5, 7)), cp(Fraction(-2, 3), Fraction(1, 4)),
                    cp(Fraction(1, 2), Fraction(-2, 5))]


def component_fixtures(kind):
    iu = Const(ComplexifiedElement.from_real_part(unit(kind, 1)))
    ju = Const(ComplexifiedElement.from_real_part(unit(kind, 2)))
    exprs = [
        Add(Mul(Z(), Z()), iu),
        Mul(Add(Z(), iu), ju),
        CInv(Mul(Z(), ju)),
        PiecewiseSign(ComplexifiedElement.from_scalar(kind, cp(0, 1))),
    ]
    if kind is O:
        lu = Const(ComplexifiedElement.from_real_part(unit(kind, 4)))
        exprs.append(Mul(Add(Z(), iu), lu))
        exprs.append(Mul(lu, Mul(Z(), ju)))
    return exprs


@pytest.mark.parametrize("kind", [H, O], ids=["H", "O"])
def test_components_rebuild_the_stem(kind):
    base = canonical_base(kind)
    for expr in component_fixtures(kind):
        comps = stem_components(expr, base)
        assert len(comps) == 2 * (kind.base_units + 1)
        for z in COMPONENT_POINTS:
            want = eval_stem(expr, z, kind, Mode.EXACT)
            assert reassemble(comps, base, z) == want, expr


def test_components_of_z_are_sparse():
    base = canonical_base(H)
    comps = stem_components(Z(), base)
    assert isinstance(comps[0], SZ)
    assert all(eval_scalar(c, cp(5)) == cp(0) for c in comps[1:])


def test_component_functions_pair_the_scalars():
    base = canonical_base(H)
    expr = Mul(Add(Z(), real_const(H, 1)), real_const(H, 2))
    comps = stem_components(expr, base)
    fns = component_functions(expr, base)
    assert len(fns) == H.base_units + 1
    z = 0.3 + 0.8j
    for k, g in enumerate(fns):
        want = eval_scalar(comps[2 * k], z) + 1j * eval_scalar(comps[2 * k + 1], z)
        assert abs(eval_scalar(g, z) - want) < 1e-14


def test_components_require_exact_inputs():
    base = canonical_base(H)
    floaty = Const(ComplexifiedElement.from_real_part(AlgebraElement.one(H, Mode.FLOAT)))
    with pytest.raises(ExactUnavailable):
        stem_components(floaty, base)


# ---------------------------------------------------------------------------
# scalar expression layer


def test_as_poly_ratio_folds_rationals():
    assert as_poly_ratio(SAdd(SZ(), SConst(cp(2)))) == ((cp(2), cp(1)), (cp(1),))
    assert as_poly_ratio(SMul(SZ(), SZ())) == ((cp(0), cp(0), cp(1)), (cp(1),))
    # (z^2 - 1)/(z - 1) reduces to z + 1
    folded = as_poly_ratio(SFun(PolyRatio((cp(-1), cp(0), cp(1)), (cp(-1), cp(1)))))
    assert folded == ((cp(1), cp(1)), (cp(1),))
    assert as_poly_ratio(SFun(Radical(1, 2))) is None
    assert as_poly_ratio(SPiecewise(cp(0, 1))) is None
    assert as_poly_ratio(SAdd(SZ(), SFun(Trig("cos")))) is None


def test_eval_scalar_modes_and_piecewise():
    e = SMul(SZ(), SZ())
    assert eval_scalar(e, cp(Fraction(1, 3))) == cp(Fraction(1, 9))
    assert isinstance(eval_scalar(e, 0.5 + 0j), complex)
    pw = SPiecewise(cp(2, 3))
    assert eval_scalar(pw, cp(0, 1)) == cp(2, 3)
    assert eval_scalar(pw, cp(0, -1)) == cp(2, -3)
    with pytest.raises(BranchUndefined):
        eval_scalar(pw, cp(1, 0))


# ---------------------------------------------------------------------------
# structural predicates


def test_structural_predicates():
    pw = PiecewiseSign(ComplexifiedElement.from_scalar(H, cp(0, 1)))
    assert uses_piecewise(Add(Z(), pw)) and not uses_piecewise(Mul(Z(), Z()))
    rad = ScalarFn(Radical(1, 2), ComplexifiedElement.from_real_part(AlgebraElement.one(H)))
    assert uses_radical_or_trig(Mul(rad, Z()))
    assert not uses_radical_or_trig(poly_stem([AlgebraElement.one(H)], H))
    assert stem_kind(Z()) is None
    assert stem_kind(Add(Z(), ONE_H)) is H
    with pytest.raises(KindMismatch):
        stem_kind(Add(ONE_H, Const(ComplexifiedElement.from_real_part(AlgebraElement.one(O)))))
    assert stem_is_exact(ONE_H)
    assert not stem_is_exact(Const(ComplexifiedElement.from_real_part(AlgebraElement.one(H, Mode.FLOAT))))
