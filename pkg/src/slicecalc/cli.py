"""Command line front end: expression DSL, evaluation, certificates, plots.

Grammar (whitespace insensitive, `*` is the SLICE product):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)*
    atom   := 'z' | number | '[' unit-word-or-vector ']'
            | 'sqrt(' expr ')' | 'cos(z)' | 'sin(z)'
            | 'sign+(' bracket (',' bracket)? ')' | '(' expr ')'

Unit words multiply left to right, so `[ijl]` means (i j) l; a vector lists
dim rational coordinates, e.g. `[1,0,-1/2,0]`.  `sqrt` accepts only the bare
variable.  `sign+([x],[y])` is the constant x + iota y on the upper half
plane and its stem conjugate below; the second bracket defaults to zero.

Every subcommand prints one JSON document (schema_version 1) or, with
`--output svg` where supported, an SVG figure.  Exit codes: 0 success,
1 mathematical/domain failures, 2 parse errors.  The environment variable
SLICECALC_SEED overrides --seed.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import re
import sys
from fractions import Fraction

from .cayley_dickson import (
    AlgebraElement,
    AlgebraKind,
    ImaginaryUnit,
    Mode,
    random_imaginary_unit,
    scalar_to_json,
)
from .complexified import ComplexifiedElement, ComplexPoint, phi
from .errors import (
    BranchUndefined,
    ExactUnavailable,
    NotInvertible,
    OutsideDomain,
    ParseError,
    SliceCalcError,
)
from .nash_cert import (
    certify_semiregular_nash,
    certify_slice_nash,
    reconstruct_rational,
    slice_poly_bound,
)
from .slice_fn import SliceFunction, default_base, representation_check, scalar_callable
from .stem_expr import (
    Add,
    Const,
    DomainSpec,
    Mul,
    PiecewiseSign,
    PolyRatio,
    Radical,
    ScalarFn,
    StemExpr,
    Trig,
    Z,
    uses_piecewise,
)

SCHEMA_VERSION = 1

_NUMBER = re.compile(r"-?\d+(?:/\d+|\.\d+)?")
_UNIT_LETTERS = {"i": 1, "j": 2, "l": 4}


# ---------------------------------------------------------------------------
# DSL parser


class _Parser:
    def __init__(self, text: str, kind: AlgebraKind, mode: Mode):
        self.text = text
        self.pos = 0
        self.kind = kind
        self.mode = mode

    # -- plumbing

    def _ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _take(self, literal: str) -> bool:
        self._ws()
        if self.text.startswith(literal, self.pos):
            self.pos += len(literal)
            return True
        return False

    def _expect(self, literal: str):
        if not self._take(literal):
            raise ParseError(f"expected {literal!r}", self.pos)

    def _scalar(self, s: str):
        v = Fraction(s)
        return v if self.mode is Mode.EXACT else float(v)

    def _one(self) -> ComplexifiedElement:
        one = AlgebraElement.from_real(self.kind, self._scalar("1"))
        return ComplexifiedElement.from_real_part(one)

    # -- grammar

    def parse(self) -> StemExpr:
        e = self._expr()
        self._ws()
        if self.pos != len(self.text):
            raise ParseError("unexpected trailing input", self.pos)
        return e

    def _expr(self) -> StemExpr:
        e = self._term()
        while True:
            self._ws()
            c = self._peek()
            if c == "+":
                self.pos += 1
                e = Add(e, self._term())
            elif c == "-":
                self.pos += 1
                e = Add(e, Mul(Const(self._minus_one()), self._term()))
            else:
                return e

    def _starts_number(self) -> bool:
        self._ws()
        nxt = self.pos + 1
        return nxt < len(self.text) and self.text[nxt].isdigit()

    def _minus_one(self) -> ComplexifiedElement:
        m = AlgebraElement.from_real(self.kind, self._scalar("-1"))
        return ComplexifiedElement.from_real_part(m)

    def _term(self) -> StemExpr:
        e = self._factor()
        while self._take("*"):
            e = Mul(e, self._factor())
        return e

    def _factor(self) -> StemExpr:
        e = self._atom()
        while self._take("^"):
            self._ws()
            m = re.match(r"\d+", self.text[self.pos:])
            if not m:
                raise ParseError("power wants a nonnegative integer", self.pos)
            n = int(m.group())
            self.pos += m.end()
            if n == 0:
                e = Const(self._one())
            else:
                p = e
                for _ in range(n - 1):
                    p = Mul(p, e)
                e = p
        return e

    def _atom(self) -> StemExpr:
        self._ws()
        start = self.pos
        if self._take("sqrt("):
            inner_at = self.pos
            inner = self._expr()
            self._expect(")")
            if not isinstance(inner, Z):
                raise ParseError("sqrt supports only the bare variable z", inner_at)
            return ScalarFn(Radical(1, 2), self._one())
        if self._take("cos(z)"):
            return ScalarFn(Trig("cos"), self._one())
        if self._take("sin(z)"):
            return ScalarFn(Trig("sin"), self._one())
        if self._take("sign+("):
            x = self._bracket()
            y = self._bracket() if self._take(",") else AlgebraElement.zero(
                self.kind, self.mode)
            self._expect(")")
            return PiecewiseSign(ComplexifiedElement(x, y))
        if self._take("("):
            e = self._expr()
            self._expect(")")
            return e
        c = self._peek()
        if c == "z":
            self.pos += 1
            return Z()
        if c == "[":
            return Const(ComplexifiedElement.from_real_part(self._bracket()))
        if c == "-" and not self._starts_number():
            # unary minus on a non-literal factor
            self.pos += 1
            return Mul(Const(self._minus_one()), self._factor())
        m = _NUMBER.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            return Const(ComplexifiedElement.from_real_part(
                AlgebraElement.from_real(self.kind, self._scalar(m.group()))))
        raise ParseError("expected an atom", start)

    def _bracket(self) -> AlgebraElement:
        self._ws()
        start = self.pos
        self._expect("[")
        self._ws()
        word = re.match(r"[ijl]+", self.text[self.pos:])
        if word:
            out = None
            for off, ch in enumerate(word.group()):
                if ch == "l" and self.kind is AlgebraKind.H:
                    raise ParseError("unit l needs --kind O", self.pos + off)
                b = AlgebraElement.basis(self.kind, _UNIT_LETTERS[ch], self.mode)
                out = b if out is None else out * b
            self.pos += word.end()
            self._expect("]")
            return out
        coords = []
        while True:
            self._ws()
            m = _NUMBER.match(self.text, self.pos)
            if not m:
                raise ParseError("expected a rational coordinate", self.pos)
            coords.append(self._scalar(m.group()))
            self.pos = m.end()
            if self._take("]"):
                break
            self._expect(",")
        if len(coords) != self.kind.dim:
            raise ParseError(
                f"constant needs {self.kind.dim} coordinates for kind "
                f"{self.kind.name}, got {len(coords)}", start)
        return AlgebraElement(self.kind, tuple(coords))


def _needs_slit(stem: StemExpr) -> bool:
    match stem:
        case ScalarFn(fn=fn):
            return isinstance(fn, Radical)
        case Add(left=a, right=b) | Mul(left=a, right=b):
            return _needs_slit(a) or _needs_slit(b)
        case _:
            return False


def _auto_domain(stem: StemExpr) -> DomainSpec:
    return DomainSpec(slit=_needs_slit(stem), halves=uses_piecewise(stem))


def parse_expr(
    text: str,
    kind: AlgebraKind = AlgebraKind.H,
    mode: Mode = Mode.EXACT,
    domain: DomainSpec | None = None,
) -> SliceFunction:
    """Parse DSL text into a validated slice function.

    With no explicit domain the smallest one compatible with the branch
    nodes is chosen (slit plane for radicals, split halves for sign+).
    """
    stem = _Parser(text, kind, mode).parse()
    return SliceFunction(kind, stem, domain if domain is not None else _auto_domain(stem))


# ---------------------------------------------------------------------------
# renderer (inverse of the parser on parser-shaped ASTs)


def render(stem: StemExpr) -> str:
    """DSL text for a parser-shaped stem; parse(render(s)) == s."""
    return _r_expr(stem)


def _is_minus_one(stem: StemExpr) -> bool:
    if not isinstance(stem, Const):
        return False
    w = stem.value
    return (w.y.is_zero() and w.x.coeffs[0] == -1
            and all(c == 0 for c in w.x.coeffs[1:]))


def _r_expr(e: StemExpr) -> str:
    if isinstance(e, Add):
        left = _r_expr(e.left)
        r = e.right
        if isinstance(r, Mul) and _is_minus_one(r.left):
            return f"{left} - {_r_term(r.right)}"
        return f"{left} + {_r_term(r)}"
    return _r_term(e)


def _r_term(e: StemExpr) -> str:
    if isinstance(e, Mul):
        return f"{_r_term(e.left)}*{_r_factor(e.right)}"
    return _r_factor(e)


def _r_factor(e: StemExpr) -> str:
    if isinstance(e, (Add, Mul)):
        return f"({_r_expr(e)})"
    return _r_atom(e)


def _unit_word(x: AlgebraElement) -> str | None:
    words = ["i", "j", "l", "ij", "il", "jl", "ijl"]
    for word in words:
        if "l" in word and x.kind is AlgebraKind.H:
            continue
        out = None
        for ch in word:
            b = AlgebraElement.basis(x.kind, _UNIT_LETTERS[ch], x.mode)
            out = b if out is None else out * b
        if out.coeffs == x.coeffs:
            return word
    return None


def _scalar_str(v) -> str:
    return str(v) if isinstance(v, Fraction) else repr(float(v))


def _r_atom(e: StemExpr) -> str:
    from .errors import UnsupportedNode

    match e:
        case Z():
            return "z"
        case Const(value=w):
            if not w.y.is_zero():
                raise UnsupportedNode("render covers parser-generated stems only")
            x = w.x
            if all(c == 0 for c in x.coeffs[1:]):
                return _scalar_str(x.coeffs[0])
            word = _unit_word(x)
            if word is not None:
                return f"[{word}]"
            return "[" + ",".join(_scalar_str(c) for c in x.coeffs) + "]"
        case ScalarFn(fn=fn, coeff=c):
            plain = c.y.is_zero() and all(v == 0 for v in c.x.coeffs[1:]) \
                and c.x.coeffs[0] == 1
            if isinstance(fn, Radical) and fn.p == 1 and fn.q == 2 and plain:
                return "sqrt(z)"
            if isinstance(fn, Trig) and fn.which in ("cos", "sin") and plain:
                return f"{fn.which}(z)"
            raise UnsupportedNode("render covers parser-generated stems only")
        case PiecewiseSign(w_plus=w):
            xs = "[" + ",".join(_scalar_str(c) for c in w.x.coeffs) + "]"
            if w.y.is_zero():
                return f"sign+({xs})"
            ys = "[" + ",".join(_scalar_str(c) for c in w.y.coeffs) + "]"
            return f"sign+({xs},{ys})"
    raise UnsupportedNode("render covers parser-generated stems only")


# ---------------------------------------------------------------------------
# shared command plumbing


def _emit(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)


def _head(command: str, args) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "expr": args.expr,
        "kind": args.kind,
        "seed": args.seed,
    }


def _random_points(f: SliceFunction, mode, rng, n: int) -> list:
    """Points in f's domain image; exact slices when exact mode is forced."""
    exact = mode is Mode.EXACT
    pts, attempts = [], 0
    while len(pts) < n and attempts < 40 * n + 40:
        attempts += 1
        if exact:
            alpha = Fraction(rng.randrange(-6, 7), rng.randrange(1, 5))
            beta = Fraction(rng.randrange(1, 9), rng.randrange(1, 5))
            z = ComplexPoint(alpha, beta)
            unit = random_imaginary_unit(f.kind, rng, mode=Mode.EXACT)
        else:
            re_, im_ = rng.uniform(-3, 3), rng.uniform(0.05, 3)
            z = ComplexPoint(re_, im_)
            unit = random_imaginary_unit(f.kind, rng, mode=Mode.FLOAT)
        if not f.domain.contains(z, guard=0.02):
            continue
        pts.append(phi(unit, z))
    return pts


def _eval_batch(f: SliceFunction, pts, mode) -> list:
    out = []
    for x in pts:
        try:
            v = f.eval(x, mode=mode)
        except (OutsideDomain, BranchUndefined, NotInvertible, ExactUnavailable):
            continue
        out.append({"x": x.to_json(), "value": v.to_json()})
    return out


def _parse_point(kind: AlgebraKind, mode, text: str) -> AlgebraElement:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != kind.dim:
        raise ParseError(
            f"point needs {kind.dim} comma-separated coordinates", 0)
    try:
        coords = [Fraction(p) for p in parts]
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad coordinate in point {text!r}", 0) from None
    if mode is Mode.FLOAT:
        coords = [float(c) for c in coords]
    return AlgebraElement(kind, tuple(coords))


# ---------------------------------------------------------------------------
# subcommands


def _cmd_eval(f: SliceFunction, args, mode, rng):
    if args.at:
        pts = [_parse_point(f.kind, mode, t) for t in args.at]
        results = []
        for x in pts:
            v = f.eval(x, mode=mode)
            results.append({"x": x.to_json(), "value": v.to_json()})
    else:
        pts = _random_points(f, mode, rng, args.points)
        results = _eval_batch(f, pts, mode)
    payload = _head("eval", args)
    payload["results"] = results
    return 0, payload, None


def _cmd_split(f: SliceFunction, args, mode, rng):
    base = default_base(f.kind)
    fns = [scalar_callable(e) for e in f.component_exprs(base)]
    zs = f.domain.samples(max(args.points, 4), seed=args.seed)
    comps = []
    for k, fn in enumerate(fns):
        samples = []
        for z in zs:
            try:
                w = fn(z)
            except (BranchUndefined, NotInvertible, ExactUnavailable):
                continue
            samples.append({"z": [z.real, z.imag], "value": [w.real, w.imag]})
        comps.append({"index": k, "samples": samples})
    payload = _head("split", args)
    payload["component_count"] = len(fns)
    payload["components"] = comps
    return 0, payload, None


def _cmd_zeros(f: SliceFunction, args, mode, rng):
    zs = f.zero_set()
    payload = _head("zeros", args)
    payload["zero_set"] = zs.to_json()
    payload["count"] = zs.count()
    if args.output == "svg":
        from .plotting import figure_svg, zero_set_figure

        return 0, None, figure_svg(zero_set_figure(zs, title=args.expr))
    return 0, payload, None


def _bound_payload(f: SliceFunction, cert):
    bound = slice_poly_bound(f, cert)
    return bound, bound.to_json()


def _cmd_certify(f: SliceFunction, args, mode, rng):
    payload = _head("certify", args)
    if args.singular:
        pts = [ComplexPoint(*(float(Fraction(p.strip())) for p in t.split(",")))
               for t in args.singular]
        report = certify_semiregular_nash(f, pts, seed=args.seed)
        payload.update(report.to_json())
        return (0 if report.certificate.certified else 1), payload, None
    cert = certify_slice_nash(f, seed=args.seed)
    payload.update(cert.to_json())
    if cert.certified:
        _, payload["bound"] = _bound_payload(f, cert)
    else:
        payload["bound"] = None
    return (0 if cert.certified else 1), payload, None


def _cmd_normal(f: SliceFunction, args, mode, rng):
    nf = f.normal()
    poly = nf.as_slice_polynomial()
    pts = _random_points(nf, None, rng, 8)
    payload = _head("normal", args)
    payload["slice_preserving"] = nf.is_slice_preserving()
    payload["polynomial"] = None if poly is None else poly.to_json()
    payload["samples"] = _eval_batch(nf, pts, None)
    return 0, payload, None


def _cmd_recip(f: SliceFunction, args, mode, rng):
    g = f.reciprocal()
    h = f * g
    worst, used = 0.0, 0
    one = AlgebraElement.from_real(f.kind, 1.0)
    for x in _random_points(g, None, rng, max(args.points, 8)):
        try:
            v = h.eval(x.to_float())
        except (OutsideDomain, BranchUndefined, NotInvertible):
            continue
        worst = max(worst, math.sqrt((v - one).abs2()))
        used += 1
    payload = _head("recip", args)
    payload["punctures"] = [p.to_json() for p in g.domain.punctures]
    payload["identity_residual"] = worst
    payload["points_used"] = used
    return 0, payload, None


def _cmd_derive(f: SliceFunction, args, mode, rng):
    d = f.derivative()
    payload = _head("derive", args)
    poly = d.as_slice_polynomial()
    payload["polynomial"] = None if poly is None else poly.to_json()
    if args.at:
        pts = [_parse_point(f.kind, mode, t) for t in args.at]
        payload["results"] = [
            {"x": x.to_json(), "value": d.eval(x, mode=mode).to_json()} for x in pts
        ]
    else:
        payload["results"] = _eval_batch(d, _random_points(d, mode, rng, args.points), mode)
    return 0, payload, None


def _sample_magnitudes(f: SliceFunction, bound, rng, n: int = 96):
    """(radius, |f|) pairs spread from inside R to well past it."""
    radii, values = [], []
    attempts = 0
    while len(radii) < n and attempts < 40 * n:
        attempts += 1
        r = bound.R * (0.4 + 2.6 * rng.random())
        theta = rng.uniform(0.08, math.pi - 0.08)
        z = ComplexPoint(r * math.cos(theta), r * math.sin(theta))
        if not f.domain.contains(z, guard=0.02):
            continue
        unit = random_imaginary_unit(f.kind, rng, mode=Mode.FLOAT)
        try:
            v = f.eval(phi(unit, z))
        except (OutsideDomain, BranchUndefined, NotInvertible):
            continue
        radii.append(abs(z.to_complex()))
        values.append(math.sqrt(v.abs2()))
    return radii, values


def _cmd_bound(f: SliceFunction, args, mode, rng):
    cert = certify_slice_nash(f, seed=args.seed)
    payload = _head("bound", args)
    payload["status"] = cert.status.value
    if not cert.certified:
        payload["bound"] = None
        return 1, payload, None
    bound, payload["bound"] = _bound_payload(f, cert)
    if args.output == "svg":
        from .plotting import bound_figure, figure_svg

        radii, values = _sample_magnitudes(f, bound, rng)
        return 0, None, figure_svg(bound_figure(radii, values, bound, title=args.expr))
    return 0, payload, None


def _cmd_reconstruct(f: SliceFunction, args, mode, rng):
    r = reconstruct_rational(f, seed=args.seed)
    payload = _head("reconstruct", args)
    payload.update(r.to_json())
    return 0, payload, None


def _cmd_check_identity(f: SliceFunction, args, mode, rng):
    worst, used = 0.0, 0
    for _ in range(max(args.points, 4)):
        zs = f.domain.samples(1, seed=rng.randrange(10**6))
        if not zs:
            continue
        z = zs[0]
        if z.imag < 0:
            z = z.conjugate()
        I = random_imaginary_unit(f.kind, rng, mode=Mode.FLOAT)
        J = random_imaginary_unit(f.kind, rng, mode=Mode.FLOAT)
        x = phi(J, ComplexPoint(z.real, z.imag))
        try:
            direct = f.eval(x)
            rebuilt = representation_check(f, I, J, x)
        except (OutsideDomain, BranchUndefined, NotInvertible):
            continue
        scale = 1.0 + math.sqrt(direct.abs2())
        worst = max(worst, math.sqrt((direct - rebuilt).abs2()) / scale)
        used += 1
    ok = used > 0 and worst <= args.tol
    payload = _head("check-identity", args)
    payload["slice_regular"] = f.is_slice_regular()
    payload["representation_residual"] = worst
    payload["points_used"] = used
    payload["tolerance"] = args.tol
    payload["ok"] = bool(ok and payload["slice_regular"])
    return (0 if payload["ok"] else 1), payload, None


def _cmd_report(f: SliceFunction, args, mode, rng):
    from .plotting import bound_figure, save_figure, zero_set_figure

    os.makedirs(args.out, exist_ok=True)
    outputs = []
    sections = {}

    # delimited evaluation table
    pts = _random_points(f, None, rng, max(args.points, 16))
    csv_path = os.path.join(args.out, "samples.csv")
    dim = f.kind.dim
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([f"x{k}" for k in range(dim)]
                   + [f"f{k}" for k in range(dim)] + ["magnitude"])
        for x in pts:
            try:
                v = f.eval(x.to_float())
            except (OutsideDomain, BranchUndefined, NotInvertible):
                continue
            w.writerow([repr(float(c)) for c in x.to_float().coeffs]
                       + [repr(float(c)) for c in v.coeffs]
                       + [repr(math.sqrt(v.abs2()))])
    outputs.append(csv_path)

    # zero set figure
    try:
        zs = f.zero_set()
        zeros_path = os.path.join(args.out, "zeros.svg")
        save_figure(zero_set_figure(zs, title=args.expr), zeros_path)
        outputs.append(zeros_path)
        sections["zeros"] = zs.to_json()
    except SliceCalcError as exc:
        sections["zeros"] = {"error": type(exc).__name__, "message": str(exc)}

    # certificate and growth envelope
    cert = certify_slice_nash(f, seed=args.seed)
    sections["certificate"] = cert.to_json()
    if cert.certified:
        bound, bound_json = _bound_payload(f, cert)
        sections["bound"] = bound_json
        radii, values = _sample_magnitudes(f, bound, rng)
        bound_path = os.path.join(args.out, "bound.svg")
        save_figure(bound_figure(radii, values, bound, title=args.expr), bound_path)
        outputs.append(bound_path)
    else:
        sections["bound"] = None

    payload = _head("report", args)
    payload["outputs"] = outputs
    payload["sections"] = sections
    return 0, payload, None


_COMMANDS = {
    "eval": _cmd_eval,
    "split": _cmd_split,
    "certify": _cmd_certify,
    "zeros": _cmd_zeros,
    "normal": _cmd_normal,
    "recip": _cmd_recip,
    "derive": _cmd_derive,
    "bound": _cmd_bound,
    "reconstruct": _cmd_reconstruct,
    "check-identity": _cmd_check_identity,
    "report": _cmd_report,
}


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def _domain_from_keyword(word: str) -> DomainSpec:
    if word in ("full", "plane"):
        return DomainSpec.full_plane()
    if word == "slit":
        return DomainSpec.slit_plane()
    if word == "halves":
        return DomainSpec.upper_lower()
    if word.startswith("disk:"):
        return DomainSpec.disk(float(word.split(":", 1)[1]))
    raise ValueError(word)


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="slicecalc",
        description="Slice-function calculus over quaternions and octonions.",
    )
    sub = p.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        sp = sub.add_parser(name, help=f"{name} an expression")
        sp.add_argument("expr", help="DSL expression, e.g. 'sqrt(z)*[j]'")
        sp.add_argument("--kind", choices=("H", "O"), default="H")
        sp.add_argument("--mode", choices=("exact", "float"), default=None,
                        help="evaluation mode; default picks per expression")
        sp.add_argument("--domain", default=None,
                        help="full | slit | halves | disk:<r>")
        sp.add_argument("--seed", type=int, default=101)
        sp.add_argument("--points", type=int, default=20)
        sp.add_argument("--tol", type=float, default=1e-8)
        sp.add_argument("--output", choices=("json", "svg"), default="json")
        if name in ("eval", "derive"):
            sp.add_argument("--at", action="append", default=None,
                            help="point coordinates 'a,b,c,d'; repeatable")
        if name == "certify":
            sp.add_argument("--singular", action="append", default=None,
                            help="declared singular point 'alpha,beta'; repeatable")
        if name == "report":
            sp.add_argument("--out", required=True, help="output directory")
    return p


def _dispatch(args):
    import random

    env_seed = os.environ.get("SLICECALC_SEED")
    if env_seed is not None:
        args.seed = int(env_seed)
    kind = AlgebraKind.H if args.kind == "H" else AlgebraKind.O
    mode = None if args.mode is None else (
        Mode.EXACT if args.mode == "exact" else Mode.FLOAT)
    parse_mode = Mode.FLOAT if mode is Mode.FLOAT else Mode.EXACT
    domain = None
    if args.domain is not None:
        try:
            domain = _domain_from_keyword(args.domain)
        except ValueError:
            raise ParseError(f"unknown domain keyword {args.domain!r}", 0) from None
    if args.output == "svg" and args.command not in ("zeros", "bound"):
        raise ParseError("--output svg is available for zeros and bound", 0)
    f = parse_expr(args.expr, kind=kind, mode=parse_mode, domain=domain)
    rng = random.Random(args.seed)
    return _COMMANDS[args.command](f, args, mode, rng)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        code, payload, text = _dispatch(args)
    except ParseError as exc:
        print(_emit({
            "schema_version": SCHEMA_VERSION,
            "error": {"code": "ParseError", "message": str(exc), "offset": exc.offset},
        }))
        return 2
    except SliceCalcError as exc:
        print(_emit({
            "schema_version": SCHEMA_VERSION,
            "error": {"code": type(exc).__name__, "message": str(exc)},
        }))
        return 1
    if text is not None:
        sys.stdout.write(text)
    else:
        print(_emit(payload))
    return code


if __name__ == "__main__":
    sys.exit(main())
