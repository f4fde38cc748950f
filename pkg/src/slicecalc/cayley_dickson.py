"""Quaternions and octonions via the Cayley-Dickson doubling construction.

Elements are coefficient vectors over the canonical real basis, ordered

    H:  1, i, j, ij
    O:  1, i, j, ij, l, il, jl, (ij)l

Coefficients are either all `fractions.Fraction` (exact mode) or all `float`
(float mode); the two modes never mix inside one operation.  The doubling
product on pairs is

    (a + e b)(c + e d) = (ac - d b*) + e (a* d + c b)

where * is conjugation in the half-size algebra.  In canonical coordinates
the second pair slot of x equals the conjugate of the upper coefficient
half, which keeps conjugation equal to "negate every coefficient except the
first" at all levels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence, Union

from .errors import (
    InvalidBase,
    InvalidUnit,
    KindMismatch,
    ModeMismatch,
    NotInvertible,
)

Scalar = Union[Fraction, float]

# Absolute tolerance for the float-mode unit predicates (trace zero, norm one)
# and for the zero test in inversion.
UNIT_TOL = 1e-12


class Mode(Enum):
    EXACT = "exact"
    FLOAT = "float"


class AlgebraKind(Enum):
    H = "H"
    O = "O"

    @property
    def dim(self) -> int:
        return 4 if self is AlgebraKind.H else 8

    @property
    def imag_dim(self) -> int:
        """Number of independent imaginary directions (3 or 7)."""
        return self.dim - 1

    @property
    def base_units(self) -> int:
        """Units beyond 1 and I in a splitting base: 1 for H, 3 for O."""
        return (self.dim - 2) // 2


BASIS_NAMES = {
    AlgebraKind.H: ("1", "i", "j", "ij"),
    AlgebraKind.O: ("1", "i", "j", "ij", "l", "il", "jl", "(ij)l"),
}


def _coerce_coeffs(coeffs: Sequence) -> tuple:
    """Normalize a coefficient sequence into one mode or raise ModeMismatch."""
    has_float = any(isinstance(c, float) for c in coeffs)
    has_frac = any(isinstance(c, Fraction) for c in coeffs)
    if has_float and has_frac:
        raise ModeMismatch("cannot mix Fraction and float coefficients")
    if has_float:
        return tuple(float(c) for c in coeffs)
    return tuple(Fraction(c) for c in coeffs)


def _conj_tuple(c: tuple) -> tuple:
    return (c[0],) + tuple(-v for v in c[1:])


def _add_tuple(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _sub_tuple(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _mul_tuple(x: tuple, y: tuple) -> tuple:
    """Cayley-Dickson product on canonical coefficient tuples."""
    n = len(x)
    if n == 1:
        return (x[0] * y[0],)
    h = n // 2
    # pair form: upper coefficient half stores the conjugate of the pair slot
    a, b = x[:h], _conj_tuple(x[h:])
    c, d = y[:h], _conj_tuple(y[h:])
    first = _sub_tuple(_mul_tuple(a, c), _mul_tuple(d, _conj_tuple(b)))
    second = _add_tuple(_mul_tuple(_conj_tuple(a), d), _mul_tuple(c, b))
    return first + _conj_tuple(second)


@dataclass(frozen=True)
class AlgebraElement:
    """One quaternion or octonion in canonical coordinates."""

    kind: AlgebraKind
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _coerce_coeffs(self.coeffs))
        if len(self.coeffs) != self.kind.dim:
            raise ValueError(
                f"{self.kind.value} needs {self.kind.dim} coefficients, "
                f"got {len(self.coeffs)}"
            )

    @property
    def mode(self) -> Mode:
        return Mode.FLOAT if isinstance(self.coeffs[0], float) else Mode.EXACT

    @staticmethod
    def zero(kind: AlgebraKind, mode: Mode = Mode.EXACT) -> "AlgebraElement":
        z = 0.0 if mode is Mode.FLOAT else Fraction(0)
        return AlgebraElement(kind, (z,) * kind.dim)

    @staticmethod
    def one(kind: AlgebraKind, mode: Mode = Mode.EXACT) -> "AlgebraElement":
        return AlgebraElement.from_real(kind, 1 if mode is Mode.EXACT else 1.0)

    @staticmethod
    def from_real(kind: AlgebraKind, value) -> "AlgebraElement":
        rest = 0.0 if isinstance(value, float) else Fraction(0)
        return AlgebraElement(kind, (value,) + (rest,) * (kind.dim - 1))

    @staticmethod
    def basis(kind: AlgebraKind, index: int, mode: Mode = Mode.EXACT) -> "AlgebraElement":
        one = 1.0 if mode is Mode.FLOAT else Fraction(1)
        zero = 0.0 if mode is Mode.FLOAT else Fraction(0)
        coeffs = [zero] * kind.dim
        coeffs[index] = one
        return AlgebraElement(kind, tuple(coeffs))

    def _check_peer(self, other: "AlgebraElement"):
        if self.kind is not other.kind:
            raise KindMismatch(f"{self.kind.value} vs {other.kind.value}")
        if self.mode is not other.mode:
            raise ModeMismatch("exact and float elements mixed")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check_peer(other)
        return AlgebraElement(self.kind, _add_tuple(self.coeffs, other.coeffs))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check_peer(other)
        return AlgebraElement(self.kind, _sub_tuple(self.coeffs, other.coeffs))

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.kind, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check_peer(other)
            return AlgebraElement(self.kind, _mul_tuple(self.coeffs, other.coeffs))
        return self.scale(other)

    def __rmul__(self, other):
        # scalars commute with everything, so left and right agree
        return self.scale(other)

    def scale(self, s) -> "AlgebraElement":
        if self.mode is Mode.EXACT and isinstance(s, float):
            raise ModeMismatch("float scalar applied to exact element")
        if self.mode is Mode.FLOAT:
            s = float(s)
        return AlgebraElement(self.kind, tuple(c * s for c in self.coeffs))

    def __pow__(self, n: int) -> "AlgebraElement":
        if n < 0:
            return self.inverse() ** (-n)
        out = AlgebraElement.one(self.kind, self.mode)
        for _ in range(n):
            out = out * self
        return out

    def conj(self) -> "AlgebraElement":
        return AlgebraElement(self.kind, _conj_tuple(self.coeffs))

    def trace(self) -> Scalar:
        """t(x) = x + x^c, returned as a scalar."""
        return 2 * self.coeffs[0]

    def norm(self) -> Scalar:
        """n(x) = x x^c = sum of squared coefficients."""
        return sum(c * c for c in self.coeffs)

    def abs2(self) -> float:
        return float(self.norm())

    def real_part(self) -> Scalar:
        return self.coeffs[0]

    def imag_part(self) -> "AlgebraElement":
        zero = 0.0 if self.mode is Mode.FLOAT else Fraction(0)
        return AlgebraElement(self.kind, (zero,) + self.coeffs[1:])

    def is_zero(self, tol: float = UNIT_TOL) -> bool:
        if self.mode is Mode.EXACT:
            return all(c == 0 for c in self.coeffs)
        return all(abs(c) <= tol for c in self.coeffs)

    def inverse(self) -> "AlgebraElement":
        """x^{-1} = n(x)^{-1} x^c."""
        n = self.norm()
        if self.mode is Mode.EXACT:
            if n == 0:
                raise NotInvertible("zero element")
            return self.conj().scale(Fraction(1) / n)
        if n <= UNIT_TOL * UNIT_TOL:
            raise NotInvertible("norm below tolerance")
        return self.conj().scale(1.0 / n)

    def to_float(self) -> "AlgebraElement":
        return AlgebraElement(self.kind, tuple(float(c) for c in self.coeffs))

    def to_json(self):
        return {"kind": self.kind.value, "coeffs": [scalar_to_json(c) for c in self.coeffs]}

    @staticmethod
    def from_json(data) -> "AlgebraElement":
        kind = AlgebraKind(data["kind"])
        return AlgebraElement(kind, tuple(scalar_from_json(c) for c in data["coeffs"]))

    def __str__(self):
        names = BASIS_NAMES[self.kind]
        parts = []
        for c, name in zip(self.coeffs, names):
            if (self.mode is Mode.EXACT and c == 0) or (self.mode is Mode.FLOAT and c == 0.0):
                continue
            term = str(c) if name == "1" else f"{c}*{name}"
            parts.append(term)
        return " + ".join(parts) if parts else "0"


def scalar_to_json(c: Scalar):
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}" if c.denominator != 1 else str(c.numerator)
    return c


def scalar_from_json(v) -> Scalar:
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, int):
        return Fraction(v)
    return float(v)


def associator(x: AlgebraElement, y: AlgebraElement, z: AlgebraElement) -> AlgebraElement:
    """(x, y, z) = (xy)z - x(yz); vanishes identically on H, not on O."""
    return (x * y) * z - x * (y * z)


def commutator(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x * y - y * x


def real_part_mixed(q: AlgebraElement) -> AlgebraElement:
    """Re(q) times 1 on H, from the mixed product (q - iqi - jqj - (ij)q(ij))/4."""
    if q.kind is not AlgebraKind.H:
        raise KindMismatch("mixed real-part identity is stated on H")
    i = AlgebraElement.basis(q.kind, 1, q.mode)
    j = AlgebraElement.basis(q.kind, 2, q.mode)
    k = AlgebraElement.basis(q.kind, 3, q.mode)
    s = q - (i * q) * i - (j * q) * j - (k * q) * k
    quarter = 0.25 if q.mode is Mode.FLOAT else Fraction(1, 4)
    return s.scale(quarter)


@dataclass(frozen=True)
class ImaginaryUnit:
    """Element of the unit sphere S_A = {t(x) = 0, n(x) = 1} = {x : x^2 = -1}."""

    x: AlgebraElement

    def __post_init__(self):
        x = self.x
        if x.mode is Mode.EXACT:
            ok = x.coeffs[0] == 0 and x.norm() == 1
        else:
            ok = abs(x.coeffs[0]) <= UNIT_TOL and abs(x.norm() - 1) <= UNIT_TOL
        if not ok:
            raise InvalidUnit(f"not an imaginary unit: {x}")

    @property
    def kind(self) -> AlgebraKind:
        return self.x.kind

    @property
    def mode(self) -> Mode:
        return self.x.mode


def random_element(kind: AlgebraKind, rng, mode: Mode = Mode.EXACT, span: int = 6) -> AlgebraElement:
    """Random element with small coefficients, deterministic given rng state."""
    if mode is Mode.EXACT:
        coeffs = tuple(
            Fraction(rng.randint(-span, span), rng.randint(1, 4)) for _ in range(kind.dim)
        )
    else:
        coeffs = tuple(rng.uniform(-span, span) for _ in range(kind.dim))
    return AlgebraElement(kind, coeffs)


def random_imaginary_unit(kind: AlgebraKind, rng, mode: Mode = Mode.EXACT) -> ImaginaryUnit:
    """Random point of S_A.

    Exact mode uses the rational sphere parametrization
    x0 = (1 - s)/(1 + s), x_k = 2 t_k/(1 + s) with s = sum t_k^2, which lands
    exactly on the unit sphere for any rational parameter vector t.
    """
    d = kind.imag_dim
    if mode is Mode.EXACT:
        while True:
            t = [Fraction(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(d - 1)]
            s = sum(v * v for v in t)
            denom = 1 + s
            imag = [(1 - s) / denom] + [2 * v / denom for v in t]
            if any(v != 0 for v in imag):
                break
        coeffs = (Fraction(0),) + tuple(imag)
    else:
        while True:
            g = [rng.gauss(0.0, 1.0) for _ in range(d)]
            nrm = math.sqrt(sum(v * v for v in g))
            if nrm > 1e-6:
                break
        coeffs = (0.0,) + tuple(v / nrm for v in g)
    return ImaginaryUnit(AlgebraElement(kind, coeffs))


def _invert_exact(rows):
    """Gauss-Jordan inverse over Fraction; raises InvalidBase when singular."""
    n = len(rows)
    aug = [list(r) + [Fraction(int(i == k)) for k in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise InvalidBase("singular coordinate matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [v - f * p for v, p in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _invert_float(rows):
    import numpy as np

    m = np.array(rows, dtype=float)
    if abs(np.linalg.det(m)) < 1e-10:
        raise InvalidBase("coordinate matrix numerically singular")
    return np.linalg.inv(m).tolist()


@dataclass
class SplittingBase:
    """Real basis {1, I, I_1, I I_1, ..., I_u, I I_u} attached to a unit I.

    `units` holds I_1..I_u; they are orthogonal to span{1, I} by construction
    but not normalized (exact mode cannot take square roots), which is fine:
    only invertibility of the full coordinate matrix is required, and their
    norms stay <= 1 so growth-bound assembly remains valid.
    """

    I: ImaginaryUnit
    units: tuple
    full_basis: tuple = field(init=False)
    _inv: list = field(init=False, repr=False)
    _structure: dict = field(init=False, repr=False, default=None)

    def __post_init__(self):
        kind = self.I.kind
        if len(self.units) != kind.base_units:
            raise InvalidBase(f"{kind.value} needs {kind.base_units} extra units")
        full = [AlgebraElement.one(kind, self.I.mode), self.I.x]
        for u in self.units:
            full.extend([u, self.I.x * u])
        self.full_basis = tuple(full)
        rows = [list(b.coeffs) for b in self.full_basis]
        # column r of the matrix is basis vector r, so invert the transpose
        cols = [list(c) for c in zip(*rows)]
        if self.I.mode is Mode.EXACT:
            self._inv = _invert_exact(cols)
        else:
            self._inv = _invert_float(cols)

    @property
    def kind(self) -> AlgebraKind:
        return self.I.kind

    @property
    def mode(self) -> Mode:
        return self.I.mode

    def coords(self, x: AlgebraElement) -> list:
        """Coordinates of x in full_basis order."""
        if x.kind is not self.kind:
            raise KindMismatch("element from a different algebra")
        if x.mode is not self.mode:
            x = x.to_float() if self.mode is Mode.FLOAT else x
        return [sum(m * c for m, c in zip(row, x.coeffs)) for row in self._inv]

    def from_coords(self, coords) -> AlgebraElement:
        out = AlgebraElement.zero(self.kind, self.mode)
        for c, b in zip(coords, self.full_basis):
            out = out + b.scale(c)
        return out

    def structure(self):
        """Structure constants gamma[p][q] = coords(B_p B_q) and the
        coordinate matrix of conjugation, both cached."""
        if self._structure is None:
            m = len(self.full_basis)
            gamma = [
                [self.coords(self.full_basis[p] * self.full_basis[q]) for q in range(m)]
                for p in range(m)
            ]
            conj_mat = [self.coords(self.full_basis[r].conj()) for r in range(m)]
            self._structure = {"gamma": gamma, "conj": conj_mat}
        return self._structure


def _independent(candidate: AlgebraElement, chosen: list) -> bool:
    """Does candidate extend the real span of `chosen`?"""
    rows = [list(b.coeffs) for b in chosen] + [list(candidate.coeffs)]
    if candidate.mode is Mode.EXACT:
        rank = _rank_exact(rows)
    else:
        import numpy as np

        rank = int(np.linalg.matrix_rank(np.array(rows, dtype=float), tol=1e-9))
    return rank == len(rows)


def _rank_exact(rows):
    mat = [list(map(Fraction, r)) for r in rows]
    rank, ncols = 0, len(mat[0])
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = Fraction(1) / mat[rank][col]
        mat[rank] = [v * inv for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [v - f * p for v, p in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def _project_out(x: AlgebraElement, span: list) -> AlgebraElement:
    """Remove the orthogonal projection of x onto each element of span.

    Uses the Euclidean inner product <a, b> = t(a b^c)/2, which is exact on
    rational coefficients, so the result stays rational.
    """
    out = x
    for b in span:
        nb = b.norm()
        if (b.mode is Mode.EXACT and nb == 0) or (b.mode is Mode.FLOAT and nb < 1e-14):
            continue
        ip = sum(p * q for p, q in zip(out.coeffs, b.coeffs))
        out = out - b.scale(ip / nb if b.mode is Mode.EXACT else float(ip) / nb)
    return out


def make_splitting_base(I: ImaginaryUnit) -> SplittingBase:
    """Extend I to a splitting base by greedy picks over the canonical basis.

    For I = i this reproduces {1, i, j, ij} on H and
    {1, i, j, ij, l, il, jl, i(jl)} on O.  Candidates are orthogonalized
    against the span built so far (so on H the extra unit is perpendicular
    to I); on O the third unit is the product of the first two, with a
    greedy fallback if that ever degenerates.
    """
    kind = I.kind
    need = kind.base_units
    chosen = [AlgebraElement.one(kind, I.mode), I.x]
    units = []
    candidates = [AlgebraElement.basis(kind, idx, I.mode) for idx in range(1, kind.dim)]
    while len(units) < need:
        if len(units) == 2 and kind is AlgebraKind.O:
            prod = units[0] * units[1]
            if _independent(prod, chosen) and _independent(I.x * prod, chosen + [prod]):
                units.append(prod)
                chosen.extend([prod, I.x * prod])
                continue
        for cand in candidates:
            orth = _project_out(cand, chosen)
            if orth.is_zero() or not _independent(orth, chosen):
                continue
            if not _independent(I.x * orth, chosen + [orth]):
                continue
            units.append(orth)
            chosen.extend([orth, I.x * orth])
            break
        else:
            raise InvalidBase("could not extend to a splitting base")
    try:
        return SplittingBase(I, tuple(units))
    except InvalidBase:
        # orthogonalization produced a degenerate pair somewhere; retry with
        # plain greedy independence over the canonical basis
        return _greedy_base(I)


def _greedy_base(I: ImaginaryUnit) -> SplittingBase:
    kind = I.kind
    chosen = [AlgebraElement.one(kind, I.mode), I.x]
    units = []
    for idx in range(1, kind.dim):
        if len(units) == kind.base_units:
            break
        cand = AlgebraElement.basis(kind, idx, I.mode)
        trial = chosen + [cand, I.x * cand]
        rows = [list(b.coeffs) for b in trial]
        if I.mode is Mode.EXACT:
            ok = _rank_exact(rows) == len(trial)
        else:
            import numpy as np

            ok = int(np.linalg.matrix_rank(np.array(rows, dtype=float), tol=1e-9)) == len(trial)
        if ok:
            units.append(cand)
            chosen.extend([cand, I.x * cand])
    if len(units) != kind.base_units:
        raise InvalidBase("greedy base construction failed")
    return SplittingBase(I, tuple(units))
