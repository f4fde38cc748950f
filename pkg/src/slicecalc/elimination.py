"""Exact polynomial arithmetic over the Gaussian rationals.

Univariate polynomials are plain tuples of ComplexPoint coefficients, low
degree first, with no trailing zeros.  Bivariate polynomials (BiPoly) map
exponent pairs (d1, d2) to ComplexPoint and are the carrier type for
annihilators: d1 is the degree in the base variable z1, d2 in the function
variable z2.

Elimination runs the classical subresultant polynomial-remainder sequence.
To share one implementation between "resultant in an auxiliary variable t
with bivariate coefficients" and "gcd in z2 with univariate coefficients",
the PRS operates on lists of BiPoly, whose exact_div covers every division
the algorithm performs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .complexified import ComplexPoint
from .errors import ModeMismatch, ZeroPolynomial, ZeroResultant

CP0 = ComplexPoint.zero()
CP1 = ComplexPoint.one()


# ---------------------------------------------------------------------------
# univariate layer


def p1_trim(coeffs) -> tuple:
    c = list(coeffs)
    while c and c[-1].is_zero():
        c.pop()
    return tuple(c)


def p1_zero() -> tuple:
    return ()


def p1_one() -> tuple:
    return (CP1,)


def p1_const(c: ComplexPoint) -> tuple:
    return p1_trim((c,))


def p1_x() -> tuple:
    return (CP0, CP1)


def p1_degree(p) -> int:
    return len(p) - 1


def p1_is_zero(p) -> bool:
    return len(p) == 0


def p1_add(a, b) -> tuple:
    n = max(len(a), len(b))
    out = []
    for k in range(n):
        x = a[k] if k < len(a) else CP0
        y = b[k] if k < len(b) else CP0
        out.append(x + y)
    return p1_trim(out)


def p1_neg(a) -> tuple:
    return tuple(-c for c in a)


def p1_sub(a, b) -> tuple:
    return p1_add(a, p1_neg(b))


def p1_scale(a, s: ComplexPoint) -> tuple:
    if s.is_zero():
        return ()
    return p1_trim(tuple(c * s for c in a))


def p1_mul(a, b) -> tuple:
    if not a or not b:
        return ()
    out = [CP0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return p1_trim(out)


def p1_pow(a, n: int) -> tuple:
    out = p1_one()
    for _ in range(n):
        out = p1_mul(out, a)
    return out


def p1_eval(p, z):
    """Horner evaluation; z may be ComplexPoint or complex."""
    if isinstance(z, complex):
        acc = 0j
        for c in reversed(p):
            acc = acc * z + c.to_complex()
        return acc
    acc = ComplexPoint.zero() if z.exact else ComplexPoint(0.0, 0.0)
    for c in reversed(p):
        acc = acc * z + c
    return acc


def p1_deriv(p) -> tuple:
    return p1_trim(
        tuple(p[k] * ComplexPoint(Fraction(k), Fraction(0)) for k in range(1, len(p)))
    )


def p1_divmod(a, b):
    """Polynomial division over the field Q(i)."""
    b = p1_trim(b)
    if p1_is_zero(b):
        raise ZeroPolynomial("division by the zero polynomial")
    r = list(p1_trim(a))
    q = [CP0] * max(0, len(r) - len(b) + 1)
    lead = b[-1]
    while len(r) >= len(b):
        f = r[-1] / lead
        shift = len(r) - len(b)
        q[shift] = f
        for k in range(len(b)):
            r[shift + k] = r[shift + k] - f * b[k]
        r.pop()  # leading term cancels exactly
        while r and r[-1].is_zero():
            r.pop()
    return p1_trim(q), p1_trim(r)


def p1_mod(a, b):
    return p1_divmod(a, b)[1]


def p1_monic(p) -> tuple:
    if p1_is_zero(p):
        return p
    inv = CP1 / p[-1]
    return p1_scale(p, inv)


def p1_gcd(a, b) -> tuple:
    """Monic gcd over Q(i) by the Euclidean algorithm."""
    a, b = p1_trim(a), p1_trim(b)
    while not p1_is_zero(b):
        a, b = b, p1_mod(a, b)
    return p1_monic(a)


def p1_lcm(a, b) -> tuple:
    if p1_is_zero(a) or p1_is_zero(b):
        return ()
    g = p1_gcd(a, b)
    q, r = p1_divmod(p1_mul(a, b), g)
    assert p1_is_zero(r)
    return p1_monic(q)


def p1_conj(p) -> tuple:
    """Coefficientwise complex conjugation p^sigma."""
    return tuple(c.conj() for c in p)


def p1_is_real(p) -> bool:
    return all(c.beta == 0 for c in p)


def p1_squarefree_part(p) -> tuple:
    if p1_degree(p) < 1:
        return p1_monic(p)
    g = p1_gcd(p, p1_deriv(p))
    q, r = p1_divmod(p, g)
    assert p1_is_zero(r)
    return p1_monic(q)


def p1_squarefree_factors(p):
    """Yun's algorithm: [(factor, multiplicity)] with factors monic squarefree."""
    p = p1_monic(p)
    if p1_degree(p) < 1:
        return []
    out = []
    dp = p1_deriv(p)
    a = p1_gcd(p, dp)
    b, _ = p1_divmod(p, a)
    c, _ = p1_divmod(dp, a)
    d = p1_sub(c, p1_deriv(b))
    k = 1
    while p1_degree(b) >= 1:
        f = p1_gcd(b, d)
        if p1_degree(f) >= 1:
            out.append((p1_monic(f), k))
        b, _ = p1_divmod(b, f)
        c, _ = p1_divmod(d, f)
        d = p1_sub(c, p1_deriv(b))
        k += 1
    return out


def p1_to_json(p):
    return [c.to_json() for c in p]


def p1_from_json(data):
    return p1_trim(tuple(ComplexPoint.from_json(c) for c in data))


# ---------------------------------------------------------------------------
# bivariate layer


@dataclass(frozen=True)
class BiPoly:
    """Exact bivariate polynomial sum of c * z1^d1 * z2^d2."""

    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, c in self.terms.items():
            if not isinstance(c, ComplexPoint):
                c = ComplexPoint.of(c)
            if not c.exact:
                raise ModeMismatch("BiPoly coefficients must be exact")
            if not c.is_zero():
                clean[(int(key[0]), int(key[1]))] = c
        object.__setattr__(self, "terms", clean)

    # -- constructors

    @staticmethod
    def zero() -> "BiPoly":
        return BiPoly({})

    @staticmethod
    def const(c) -> "BiPoly":
        return BiPoly({(0, 0): ComplexPoint.of(c)})

    @staticmethod
    def z1() -> "BiPoly":
        return BiPoly({(1, 0): CP1})

    @staticmethod
    def z2() -> "BiPoly":
        return BiPoly({(0, 1): CP1})

    @staticmethod
    def from_p1(p, var: int = 1) -> "BiPoly":
        """Lift a univariate polynomial into z1 (var=1) or z2 (var=2)."""
        if var == 1:
            return BiPoly({(k, 0): c for k, c in enumerate(p)})
        return BiPoly({(0, k): c for k, c in enumerate(p)})

    @staticmethod
    def from_z2_coeffs(rows) -> "BiPoly":
        """rows[k] is the univariate z1-polynomial multiplying z2^k."""
        terms = {}
        for k, row in enumerate(rows):
            for d, c in enumerate(row):
                if not c.is_zero():
                    terms[(d, k)] = c
        return BiPoly(terms)

    # -- structure

    def is_zero(self) -> bool:
        return not self.terms

    def deg_z1(self) -> int:
        return max((k[0] for k in self.terms), default=-1)

    def deg_z2(self) -> int:
        return max((k[1] for k in self.terms), default=-1)

    def z2_coeff(self, k: int) -> tuple:
        row = [CP0] * (self.deg_z1() + 1)
        for (d1, d2), c in self.terms.items():
            if d2 == k:
                row[d1] = c
        return p1_trim(row)

    def z2_rows(self):
        return [self.z2_coeff(k) for k in range(self.deg_z2() + 1)]

    def leading_z2(self) -> tuple:
        """Leading coefficient as a polynomial in z1."""
        return self.z2_coeff(self.deg_z2())

    # -- arithmetic

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, CP0) + c
        return BiPoly(out)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __neg__(self) -> "BiPoly":
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        out = {}
        for (a1, a2), c in self.terms.items():
            for (b1, b2), d in other.terms.items():
                key = (a1 + b1, a2 + b2)
                out[key] = out.get(key, CP0) + c * d
        return BiPoly(out)

    def scale(self, s) -> "BiPoly":
        s = ComplexPoint.of(s)
        return BiPoly({k: c * s for k, c in self.terms.items()})

    def pow(self, n: int) -> "BiPoly":
        out = BiPoly.const(CP1)
        for _ in range(n):
            out = out * self
        return out

    def exact_div(self, d: "BiPoly") -> "BiPoly":
        """Exact quotient self / d; raises ArithmeticError if not divisible."""
        if d.is_zero():
            raise ZeroPolynomial("division by zero polynomial")
        rem = dict(self.terms)
        out = {}
        dlead = max(d.terms, key=lambda k: (k[1], k[0]))
        dc = d.terms[dlead]
        while rem:
            lead = max(rem, key=lambda k: (k[1], k[0]))
            e1, e2 = lead[0] - dlead[0], lead[1] - dlead[1]
            if e1 < 0 or e2 < 0:
                raise ArithmeticError("inexact bivariate division")
            q = rem[lead] / dc
            out[(e1, e2)] = q
            for (k1, k2), c in d.terms.items():
                key = (k1 + e1, k2 + e2)
                nv = rem.get(key, CP0) - q * c
                if nv.is_zero():
                    rem.pop(key, None)
                else:
                    rem[key] = nv
        return BiPoly(out)

    def derivative_z2(self) -> "BiPoly":
        out = {}
        for (d1, d2), c in self.terms.items():
            if d2 >= 1:
                out[(d1, d2 - 1)] = out.get((d1, d2 - 1), CP0) + c * ComplexPoint(
                    Fraction(d2), Fraction(0)
                )
        return BiPoly(out)

    def conj_coeffs(self) -> "BiPoly":
        """Coefficient conjugation A^sigma."""
        return BiPoly({k: c.conj() for k, c in self.terms.items()})

    def eval(self, z1, z2):
        """Evaluate at complex (or exact ComplexPoint) arguments."""
        if isinstance(z1, complex) or isinstance(z2, complex):
            z1 = z1 if isinstance(z1, complex) else z1.to_complex()
            z2 = z2 if isinstance(z2, complex) else z2.to_complex()
            acc = 0j
            for (d1, d2), c in self.terms.items():
                acc += c.to_complex() * z1**d1 * z2**d2
            return acc
        acc = ComplexPoint.zero()
        for (d1, d2), c in self.terms.items():
            acc = acc + c * z1**d1 * z2**d2
        return acc

    def eval_z2(self, w) -> tuple:
        """Substitute z2 = w (ComplexPoint), returning a z1-polynomial."""
        out = ()
        for k, row in enumerate(self.z2_rows()):
            out = p1_add(out, p1_scale(row, w**k))
        return out

    # -- content and normalization

    def z1_content(self) -> tuple:
        g = ()
        for row in self.z2_rows():
            if not p1_is_zero(row):
                g = p1_gcd(g, row) if not p1_is_zero(g) else p1_monic(row)
            if p1_degree(g) == 0:
                break
        return g

    def strip_z1_content(self) -> "BiPoly":
        g = self.z1_content()
        if p1_degree(g) < 1:
            return self
        rows = []
        for row in self.z2_rows():
            q, r = p1_divmod(row, g)
            assert p1_is_zero(r)
            rows.append(q)
        return BiPoly.from_z2_coeffs(rows)

    def z2_order(self) -> int:
        """Largest k with z2^k dividing the polynomial."""
        if self.is_zero():
            return 0
        return min(k[1] for k in self.terms)

    def strip_z2_power(self) -> "BiPoly":
        k = self.z2_order()
        if k == 0:
            return self
        return BiPoly({(d1, d2 - k): c for (d1, d2), c in self.terms.items()})

    def normalize_unit(self) -> "BiPoly":
        """Divide by the leading coefficient in (z2, z1)-lex order."""
        if self.is_zero():
            return self
        lead = max(self.terms, key=lambda k: (k[1], k[0]))
        inv = CP1 / self.terms[lead]
        return self.scale(inv)

    def to_json(self):
        out = {}
        for (d1, d2), c in sorted(self.terms.items()):
            out[f"{d1},{d2}"] = c.to_json()
        return out

    @staticmethod
    def from_json(data) -> "BiPoly":
        terms = {}
        for key, c in data.items():
            d1, d2 = key.split(",")
            terms[(int(d1), int(d2))] = ComplexPoint.from_json(c)
        return BiPoly(terms)

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for (d1, d2), c in sorted(self.terms.items(), key=lambda t: (t[0][1], t[0][0])):
            mono = "*".join(
                ([f"z1^{d1}"] if d1 else []) + ([f"z2^{d2}"] if d2 else [])
            )
            parts.append(f"({c}){'*' + mono if mono else ''}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# subresultant PRS over lists of BiPoly coefficients


def _t_trim(p):
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def _t_deg(p) -> int:
    return len(p) - 1


def _t_scale(p, s: BiPoly):
    return [c * s for c in p]


def t_resultant(A, B) -> BiPoly:
    """Resultant of two polynomials in t with BiPoly coefficients.

    Subresultant PRS bookkeeping after Cohen, Algorithm 3.3.7, minus the
    content extraction (coefficients here stay small at desk scale).
    """
    A, B = _t_trim(A), _t_trim(B)
    if not A or not B:
        return BiPoly.zero()
    if _t_deg(A) == 0:
        return A[0].pow(_t_deg(B))
    if _t_deg(B) == 0:
        return B[0].pow(_t_deg(A))
    s = 1
    if _t_deg(A) < _t_deg(B):
        if (_t_deg(A) % 2) and (_t_deg(B) % 2):
            s = -s
        A, B = B, A
    g = BiPoly.const(CP1)
    h = BiPoly.const(CP1)
    while True:
        dA, dB = _t_deg(A), _t_deg(B)
        delta = dA - dB
        if (dA % 2) and (dB % 2):
            s = -s
        # classical prem includes the lc(B)^(delta+1) factor
        R = _t_pseudo_prem(A, B)
        A = B
        denom = g * h.pow(delta)
        B = [c.exact_div(denom) for c in R] if R else []
        g = A[-1]
        if delta > 0:
            h = g.pow(delta).exact_div(h.pow(delta - 1))
        if not B:
            return BiPoly.zero()
        if _t_deg(B) == 0:
            dA = _t_deg(A)
            num = B[0].pow(dA)
            if dA > 1:
                res = num.exact_div(h.pow(dA - 1))
            else:
                res = num
            return res.scale(ComplexPoint(Fraction(s), Fraction(0)))


def _t_pseudo_prem(a, b):
    """Exact classical pseudo-remainder lc(b)^(deg a - deg b + 1) a mod b."""
    a = list(a)
    b = list(b)
    da, db = _t_deg(a), _t_deg(b)
    lb = b[-1]
    e = da - db + 1
    while a and _t_deg(a) >= db:
        lead = a[-1]
        shift = _t_deg(a) - db
        a = _t_scale(a, lb)
        for k in range(len(b)):
            a[shift + k] = a[shift + k] - lead * b[k]
        a = _t_trim(a)
        e -= 1
    for _ in range(max(0, e)):
        a = _t_scale(a, lb)
    return _t_trim(a)


def t_gcd_last_remainder(A, B):
    """Last nonzero member of the PRS; a gcd up to z1-content."""
    A, B = _t_trim(A), _t_trim(B)
    if not A:
        return B
    if not B:
        return A
    if _t_deg(A) < _t_deg(B):
        A, B = B, A
    g = BiPoly.const(CP1)
    h = BiPoly.const(CP1)
    while True:
        dA, dB = _t_deg(A), _t_deg(B)
        if dB < 0:
            return A
        delta = dA - dB
        R = _t_pseudo_prem(A, B)
        A = B
        denom = g * h.pow(delta)
        B = [c.exact_div(denom) for c in R] if R else []
        g = A[-1]
        if delta > 0:
            h = g.pow(delta).exact_div(h.pow(delta - 1))
        if not B:
            return A


def bipoly_as_tpoly(a: BiPoly):
    """View A(z1, z2) as a polynomial in z2 whose coefficients are z1-polys."""
    return [BiPoly.from_p1(row, var=1) for row in a.z2_rows()]


def tpoly_as_bipoly(p) -> BiPoly:
    """Inverse of bipoly_as_tpoly for coefficient polys free of z2."""
    out = BiPoly.zero()
    for k, c in enumerate(p):
        assert c.deg_z2() <= 0
        out = out + c * BiPoly.z2().pow(k)
    return out


def squarefree_z2(a: BiPoly) -> BiPoly:
    """Squarefree part of A with respect to z2, made z1-primitive."""
    a = a.strip_z1_content()
    if a.deg_z2() <= 1:
        return a
    d = a.derivative_z2()
    g = t_gcd_last_remainder(bipoly_as_tpoly(a), bipoly_as_tpoly(d))
    gb = tpoly_as_bipoly(g).strip_z1_content()
    if gb.deg_z2() <= 0:
        return a
    try:
        q = a.exact_div(gb)
    except ArithmeticError:
        # gcd only valid up to content; retry against the primitive part
        return a
    return q.strip_z1_content()


def substitute_sum(a: BiPoly):
    """A(z1, z2 - t) as a polynomial in t with BiPoly coefficients."""
    deg = a.deg_z2()
    out = [BiPoly.zero() for _ in range(deg + 1)]
    for (d1, d2), c in a.terms.items():
        base = BiPoly({(d1, 0): c})
        for k in range(d2 + 1):
            sign = Fraction(math.comb(d2, k) * (-1) ** k)
            term = base * BiPoly({(0, d2 - k): ComplexPoint(sign, Fraction(0))})
            out[k] = out[k] + term
    return _t_trim(out)


def substitute_product(a: BiPoly):
    """t^deg * A(z1, z2/t) as a polynomial in t with BiPoly coefficients."""
    deg = a.deg_z2()
    out = [BiPoly.zero() for _ in range(deg + 1)]
    for (d1, d2), c in a.terms.items():
        out[deg - d2] = out[deg - d2] + BiPoly({(d1, d2): c})
    return _t_trim(out)


def scale_function(a: BiPoly, s: ComplexPoint) -> BiPoly:
    """Annihilator of s*f from the annihilator of f (z2 -> z2/s, cleared)."""
    if s.is_zero():
        return BiPoly.z2()
    deg = a.deg_z2()
    out = {}
    for (d1, d2), c in a.terms.items():
        out[(d1, d2)] = out.get((d1, d2), CP0) + c * s ** (deg - d2)
    return BiPoly(out)
