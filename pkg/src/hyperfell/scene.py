"""Ambient spaces Y in R^n: constraint ASTs, the scene text format, built-ins.

A scene file looks like::

    # the open unit square
    region ex41 dim 2 { 0 < x1 < 1 and 0 < x2 < 1 } order coordinatewise
        window (0, 0) (1, 1)

Grammar::

    scene   := 'region' IDENT 'dim' INT '{' expr '}' 'order' order
               ['window' vec vec] ('point' vec)*
    order   := 'coordinatewise' | 'halfspaces' '[' reals (';' reals)* ']'
    vec     := '(' reals ')'
    expr    := conj ('or' conj)*
    conj    := neg ('and' neg)*
    neg     := 'not' neg | '(' expr ')' | chain
    chain   := poly (CMP poly)+              # 0 < x1 < 1 is a conjunction
    poly    := term (('+' | '-') term)*
    term    := unary ('*' unary)*
    unary   := '-' unary | power
    power   := atom ('^' INT)?
    atom    := NUMBER | VAR | '(' poly ')'

``point`` entries add isolated points to the region (the origin in the
punctured double quadrant, for instance).
"""

from __future__ import annotations

import math
import re
from functools import cached_property
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence, Union

import numpy as np

from hyperfell.constants import TAU_MEM
from hyperfell.order import ConeOrder, _fmt
from hyperfell.window import Window


# ---------------------------------------------------------------------------
# polynomials


Monomial = tuple[int, ...]


@dataclass(frozen=True)
class Poly:
    """Sparse real polynomial in ``x1..xn``; ``terms`` is canonically sorted."""

    dim: int
    terms: tuple[tuple[Monomial, float], ...]

    @classmethod
    def from_dict(cls, dim: int, d: dict[Monomial, float]) -> "Poly":
        items = [(m, float(c)) for m, c in d.items() if c != 0.0]
        items.sort(key=lambda mc: (-sum(mc[0]), tuple(-e for e in mc[0])))
        return cls(dim, tuple(items))

    @classmethod
    def const(cls, dim: int, c: float) -> "Poly":
        return cls.from_dict(dim, {(0,) * dim: c})

    @classmethod
    def var(cls, dim: int, i: int) -> "Poly":
        m = [0] * dim
        m[i] = 1
        return cls.from_dict(dim, {tuple(m): 1.0})

    def as_dict(self) -> dict[Monomial, float]:
        return dict(self.terms)

    def __add__(self, other: "Poly") -> "Poly":
        d = self.as_dict()
        for m, c in other.terms:
            d[m] = d.get(m, 0.0) + c
        return Poly.from_dict(self.dim, d)

    def __neg__(self) -> "Poly":
        return Poly.from_dict(self.dim, {m: -c for m, c in self.terms})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        d: dict[Monomial, float] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = tuple(a + b for a, b in zip(m1, m2))
                d[m] = d.get(m, 0.0) + c1 * c2
        return Poly.from_dict(self.dim, d)

    def __pow__(self, k: int) -> "Poly":
        out = Poly.const(self.dim, 1.0)
        for _ in range(k):
            out = out * self
        return out

    @property
    def degree(self) -> int:
        return max((sum(m) for m, _ in self.terms), default=0)

    @cached_property
    def _linear(self):
        if self.degree > 1:
            return None
        w = np.zeros(self.dim)
        c = 0.0
        for m, coef in self.terms:
            if sum(m) == 0:
                c = coef
            else:
                w[m.index(1)] = coef
        return w, c

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        p = np.atleast_2d(points)
        lin = self._linear
        if lin is not None:
            return p @ lin[0] + lin[1]
        out = np.zeros(len(p))
        for m, c in self.terms:
            t = np.full(len(p), c)
            for i, e in enumerate(m):
                if e:
                    t = t * p[:, i] ** e
            out += t
        return out

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms:
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(f"x{i + 1}")
                elif e > 1:
                    factors.append(f"x{i + 1}^{e}")
            mag = abs(c)
            if factors and mag == 1.0:
                body = "*".join(factors)
            elif factors:
                body = _fmt(mag) + "*" + "*".join(factors)
            else:
                body = _fmt(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


# ---------------------------------------------------------------------------
# constraint AST


@dataclass(frozen=True)
class Cmp:
    """``poly op 0`` with ``op`` one of ``<=``, ``<``, ``=``."""

    poly: Poly
    op: str

    def evaluate(self, points: np.ndarray, tol: float) -> np.ndarray:
        val = self.poly.evaluate(points)
        if self.op == "<=":
            return val <= tol
        if self.op == "<":
            return val < 0
        return np.abs(val) <= tol

    def to_text(self) -> str:
        return f"{self.poly.to_text()} {self.op} 0"


@dataclass(frozen=True)
class And:
    items: tuple["Expr", ...]

    def evaluate(self, points, tol):
        out = np.ones(len(np.atleast_2d(points)), dtype=bool)
        for it in self.items:
            out &= it.evaluate(points, tol)
        return out

    def to_text(self) -> str:
        return " and ".join(_wrap(it, (Or,)) for it in self.items)


@dataclass(frozen=True)
class Or:
    items: tuple["Expr", ...]

    def evaluate(self, points, tol):
        out = np.zeros(len(np.atleast_2d(points)), dtype=bool)
        for it in self.items:
            out |= it.evaluate(points, tol)
        return out

    def to_text(self) -> str:
        return " or ".join(_wrap(it, (And,)) for it in self.items)


@dataclass(frozen=True)
class Not:
    item: "Expr"

    def evaluate(self, points, tol):
        # the complement of a tolerant closed atom is an exact open atom
        return ~self.item.evaluate(points, tol)

    def to_text(self) -> str:
        return "not " + _wrap(self.item, (And, Or))


@dataclass(frozen=True)
class PointAtom:
    """Membership in an explicit finite point list (within ``tol``)."""

    points: tuple[tuple[float, ...], ...]

    def evaluate(self, points, tol):
        p = np.atleast_2d(points)
        out = np.zeros(len(p), dtype=bool)
        for q in self.points:
            out |= np.all(np.abs(p - np.asarray(q)) <= tol, axis=1)
        return out

    def to_text(self) -> str:
        return " ".join("point (" + ", ".join(_fmt(c) for c in q) + ")" for q in self.points)


Expr = Union[Cmp, And, Or, Not, PointAtom]


def _wrap(e: Expr, kinds) -> str:
    t = e.to_text()
    return f"({t})" if isinstance(e, kinds) else t


def _atoms(e: Expr) -> Iterator[Expr]:
    if isinstance(e, (And, Or)):
        for it in e.items:
            yield from _atoms(it)
    elif isinstance(e, Not):
        yield from _atoms(e.item)
    else:
        yield e


# ---------------------------------------------------------------------------
# scenes


Sampler = Callable[[np.ndarray, Window], np.ndarray]


@dataclass(frozen=True)
class Landmark:
    name: str
    point: tuple[float, ...]
    exterior: bool = False


@dataclass(frozen=True)
class Scene:
    """Ambient set ``Y`` with a cone order and a default sampling window.

    Equality compares the parts that the text format carries; landmarks,
    the closedness flag and the optional ideal-edge sampler are metadata.
    """

    name: str
    dim: int
    region: Expr
    order: ConeOrder
    window_box: Window | None = None
    points: tuple[tuple[float, ...], ...] = ()
    closed_in_rn: bool = field(default=False, compare=False)
    landmarks: tuple[Landmark, ...] = field(default=(), compare=False)
    ideal_sampler: Sampler | None = field(default=None, compare=False, repr=False)

    @property
    def window(self) -> Window:
        if self.window_box is not None:
            return self.window_box
        return Window((-2.0,) * self.dim, (2.0,) * self.dim)

    @property
    def membership(self) -> Expr:
        if not self.points:
            return self.region
        return Or((self.region, PointAtom(self.points)))

    def contains(self, points, tol: float = TAU_MEM):
        """Membership of one point (returns bool) or of an (m, n) array."""
        arr = np.asarray(points, dtype=float)
        single = arr.ndim == 1
        p = np.atleast_2d(arr)
        if p.shape[1] != self.dim:
            raise ValueError(f"dimension mismatch: scene has dim {self.dim}, points have {p.shape[1]}")
        out = self.region.evaluate(p, tol)
        if self.points:
            out |= PointAtom(self.points).evaluate(p, tol)
        return bool(out[0]) if single else out

    def landmark(self, name: str) -> np.ndarray:
        for lm in self.landmarks:
            if lm.name == name:
                return np.array(lm.point)
        raise KeyError(name)

    def extra_points(self) -> np.ndarray:
        """Isolated points and landmarks; sampled alongside grid nodes."""
        pts = [q for q in self.points] + [lm.point for lm in self.landmarks if not lm.exterior]
        if not pts:
            return np.empty((0, self.dim))
        return np.array(pts, dtype=float)

    def has_strict_atoms(self) -> bool:
        return any(isinstance(a, Cmp) and a.op == "<" for a in _atoms(self.region))

    def with_window(self, window: Window) -> "Scene":
        return Scene(self.name, self.dim, self.region, self.order, window, self.points,
                     self.closed_in_rn, self.landmarks, self.ideal_sampler)


def print_scene(scene: Scene) -> str:
    lines = [f"region {scene.name} dim {scene.dim} {{ {scene.region.to_text()} }} order {scene.order.to_text()}"]
    if scene.window_box is not None:
        w = scene.window_box
        lo = ", ".join(_fmt(c) for c in w.lower)
        hi = ", ".join(_fmt(c) for c in w.upper)
        lines.append(f"window ({lo}) ({hi})")
    for q in scene.points:
        lines.append("point (" + ", ".join(_fmt(c) for c in q) + ")")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# parser


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int, expected: Sequence[str] = ()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        exp = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{line}:{column}: {message}{exp}")


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op><=|>=|[<>=+\-*^/(){}\[\];,])
    """,
    re.VERBOSE,
)

KEYWORDS = {"region", "dim", "order", "coordinatewise", "halfspaces", "window", "point", "and", "or", "not"}
CMP_OPS = ("<", "<=", "=", ">=", ">")


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        chunk = m.group()
        if kind not in ("ws", "comment"):
            if kind == "ident" and chunk in KEYWORDS:
                kind = "kw"
            tokens.append(Token(kind, chunk, line, pos - line_start + 1))
        for i, ch in enumerate(chunk):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.dim = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, expected: Sequence[str] = ()) -> ParseError:
        t = self.tok
        return ParseError(msg, t.line, t.col, expected)

    def accept(self, text: str) -> bool:
        if self.tok.text == text and self.tok.kind in ("kw", "op"):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        t = self.tok
        if not self.accept(text):
            found = t.text or "end of input"
            raise self.error(f"unexpected {found!r}", [repr(text)])
        return t

    def number(self) -> float:
        sign = 1.0
        while self.tok.text in ("-", "+") and self.tok.kind == "op":
            if self.tok.text == "-":
                sign = -sign
            self.i += 1
        if self.tok.kind != "num":
            raise self.error(f"unexpected {self.tok.text or 'end of input'!r}", ["number"])
        v = float(self.tok.text)
        self.i += 1
        return sign * v

    def reals(self, closer: str) -> list[float]:
        out = [self.number()]
        while self.accept(","):
            out.append(self.number())
        if self.tok.text != closer:
            raise self.error(f"unexpected {self.tok.text or 'end of input'!r}", ["','", repr(closer)])
        return out

    def vec(self) -> tuple[float, ...]:
        self.expect("(")
        vals = self.reals(")")
        self.expect(")")
        if len(vals) != self.dim:
            raise self.error(f"dimension inconsistency: vector of length {len(vals)} in a dim-{self.dim} scene")
        return tuple(vals)

    def scene(self) -> Scene:
        self.expect("region")
        if self.tok.kind not in ("ident",):
            raise self.error("expected a region name", ["identifier"])
        name = self.tok.text
        self.i += 1
        self.expect("dim")
        if self.tok.kind != "num" or not re.fullmatch(r"\d+", self.tok.text):
            raise self.error("expected a positive integer dimension", ["integer"])
        self.dim = int(self.tok.text)
        if self.dim < 1:
            raise self.error("dimension must be positive")
        self.i += 1
        self.expect("{")
        region = self.expr()
        self.expect("}")
        self.expect("order")
        order = self.order()
        window = None
        if self.accept("window"):
            t = self.tok
            lo, hi = self.vec(), self.vec()
            try:
                window = Window(lo, hi)
            except ValueError as exc:
                raise ParseError(str(exc), t.line, t.col) from None
        points = []
        while self.accept("point"):
            points.append(self.vec())
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}", ["'window'", "'point'", "end of input"])
        closed = not any(isinstance(a, Cmp) and a.op == "<" for a in _atoms(region)) and not _has_not(region)
        return Scene(name, self.dim, region, order, window, tuple(points), closed_in_rn=closed)

    def order(self) -> ConeOrder:
        if self.accept("coordinatewise"):
            return ConeOrder.coordinatewise()
        if self.accept("halfspaces"):
            start = self.expect("[")
            rows = []
            while True:
                row = [self.number()]
                while self.accept(","):
                    row.append(self.number())
                rows.append(row)
                if self.accept(";"):
                    continue
                self.expect("]")
                break
            for r in rows:
                if len(r) != self.dim:
                    raise ParseError(
                        f"dimension inconsistency: normal of length {len(r)} in a dim-{self.dim} scene",
                        start.line, start.col,
                    )
            return ConeOrder.halfspaces(rows)
        raise self.error(f"unexpected {self.tok.text or 'end of input'!r}", ["'coordinatewise'", "'halfspaces'"])

    # boolean layer

    def expr(self) -> Expr:
        items = [self.conj()]
        while self.accept("or"):
            items.append(self.conj())
        return _flatten(Or, items)

    def conj(self) -> Expr:
        items = [self.neg()]
        while self.accept("and"):
            items.append(self.neg())
        return _flatten(And, items)

    def neg(self) -> Expr:
        if self.accept("not"):
            return Not(self.neg())
        if self.tok.text == "(" and self.tok.kind == "op":
            save = self.i
            try:
                self.i += 1
                e = self.expr()
                self.expect(")")
                if self.tok.text not in CMP_OPS + ("+", "-", "*", "^"):
                    return e
            except ParseError:
                pass
            self.i = save
        return self.chain()

    def chain(self) -> Expr:
        left = self.poly()
        if self.tok.text not in CMP_OPS:
            raise self.error(f"unexpected {self.tok.text or 'end of input'!r}", [repr(o) for o in CMP_OPS])
        atoms = []
        while self.tok.text in CMP_OPS and self.tok.kind == "op":
            op = self.tok.text
            self.i += 1
            right = self.poly()
            atoms.append(_compare(left, op, right))
            left = right
        return atoms[0] if len(atoms) == 1 else And(tuple(atoms))

    # arithmetic layer

    def poly(self) -> Poly:
        p = self.term()
        while self.tok.text in ("+", "-") and self.tok.kind == "op":
            op = self.tok.text
            self.i += 1
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while True:
            if self.tok.text == "*":
                self.i += 1
                p = p * self.unary()
            elif self.tok.text == "/":
                raise self.error("non-polynomial expression: division is not allowed")
            else:
                return p

    def unary(self) -> Poly:
        if self.tok.text == "-" and self.tok.kind == "op":
            self.i += 1
            return -self.unary()
        if self.tok.text == "+" and self.tok.kind == "op":
            self.i += 1
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.tok.text == "^":
            self.i += 1
            t = self.tok
            if t.kind != "num" or not re.fullmatch(r"\d+", t.text):
                raise self.error("non-polynomial expression: exponent must be a nonnegative integer", ["integer"])
            self.i += 1
            k = int(t.text)
            if k > 16:
                raise ParseError("exponent too large", t.line, t.col)
            return base ** k
        return base

    def atom(self) -> Poly:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return Poly.const(self.dim, float(t.text))
        if t.kind == "ident":
            m = re.fullmatch(r"x(\d+)", t.text)
            if not m or not 1 <= int(m.group(1)) <= self.dim:
                raise self.error(f"unknown variable {t.text}")
            self.i += 1
            return Poly.var(self.dim, int(m.group(1)) - 1)
        if t.text == "(":
            self.i += 1
            p = self.poly()
            self.expect(")")
            return p
        raise self.error(f"unexpected {t.text or 'end of input'!r}", ["number", "variable", "'('"])


def _has_not(e: Expr) -> bool:
    if isinstance(e, Not):
        return True
    if isinstance(e, (And, Or)):
        return any(_has_not(it) for it in e.items)
    return False


def _flatten(kind, items: list[Expr]) -> Expr:
    if len(items) == 1:
        return items[0]
    flat: list[Expr] = []
    for it in items:
        if isinstance(it, kind):
            flat.extend(it.items)
        else:
            flat.append(it)
    return kind(tuple(flat))


def _compare(left: Poly, op: str, right: Poly) -> Cmp:
    if op == "<=":
        return Cmp(left - right, "<=")
    if op == "<":
        return Cmp(left - right, "<")
    if op == "=":
        return Cmp(left - right, "=")
    if op == ">=":
        return Cmp(right - left, "<=")
    return Cmp(right - left, "<")


def parse_scene(text: str) -> Scene:
    """Parse scene text; raises :class:`ParseError` with line and column."""
    return _Parser(text).scene()


def parse_expr(text: str, dim: int) -> Expr:
    p = _Parser(text)
    p.dim = dim
    e = p.expr()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r}", ["end of input"])
    return e


# ---------------------------------------------------------------------------
# built-in scenes

BUILTIN_TEXT = {
    "ex25": """\
# punctured double quadrant: uv > 0 plus the origin
region ex25 dim 2 { x1*x2 > 0 } order coordinatewise
window (-2, -2) (2, 2)
point (0, 0)
""",
    "ex35": """\
# two closed triangles T1 (w = 0) and T2 (u = v) sharing an edge
region ex35 dim 3 {
  (x3 = 0 and -1 <= x2 and x2 <= x1 and x1 <= 0)
  or (x1 - x2 = 0 and -1 <= x1 and x1 <= x3 and x3 <= 0)
} order coordinatewise
window (-1, -1, -1) (0, 0, 0)
""",
    "ex36": """\
# upper hyperbola branch v >= 4/u (u > 0) plus the closed unit disk
region ex36 dim 2 { (x1 > 0 and x1*x2 - 4 >= 0) or x1^2 + x2^2 <= 1 } order coordinatewise
window (-1.5, -1.5) (6, 6)
""",
    "ex41": """\
# open unit square
region ex41 dim 2 { 0 < x1 < 1 and 0 < x2 < 1 } order coordinatewise
window (0, 0) (1, 1)
""",
    "ex42": """\
# solid below the saddle uv + w = 1 in the nonpositive octant
region ex42 dim 3 { x1 <= 0 and x2 <= 0 and x3 <= 0 and x1*x2 + x3 - 1 <= 0 } order coordinatewise
window (-2, -2, -2) (0, 0, 0)
""",
}

BUILTIN_IDS = ("ex25", "ex35", "ex36", "ex41", "ex42", "open_box")


def _ex42_ideal_sampler(x: np.ndarray, window: Window) -> np.ndarray:
    from hyperfell.repro import ex42_ideal_boundary

    return ex42_ideal_boundary(x, window)


def open_box_text(n: int, bounds: Sequence[tuple[float, float]] | None = None) -> str:
    bounds = list(bounds) if bounds is not None else [(0.0, 1.0)] * n
    if len(bounds) != n:
        raise ValueError("need one (lower, upper) pair per axis")
    atoms = " and ".join(f"{_fmt(lo)} < x{i + 1} < {_fmt(hi)}" for i, (lo, hi) in enumerate(bounds))
    lo = ", ".join(_fmt(b[0]) for b in bounds)
    hi = ", ".join(_fmt(b[1]) for b in bounds)
    return f"region open_box{n} dim {n} {{ {atoms} }} order coordinatewise\nwindow ({lo}) ({hi})\n"


def builtin_scene(name: str, n: int | None = None, bounds=None) -> Scene:
    """One of ``ex25 ex35 ex36 ex41 ex42`` or ``open_box`` (also ``open_box:3``)."""
    if name.startswith("open_box"):
        if ":" in name:
            n = int(name.split(":", 1)[1])
        n = n or 2
        s = parse_scene(open_box_text(n, bounds))
        lms = (Landmark("center", tuple(float(v) for v in s.window.center)),)
        return _rebuild(s, closed=False, landmarks=lms)
    if name not in BUILTIN_TEXT:
        raise KeyError(f"unknown builtin scene {name!r}; choose from {', '.join(BUILTIN_IDS)}")
    s = parse_scene(BUILTIN_TEXT[name])
    if name == "ex25":
        return _rebuild(s, closed=False, landmarks=(
            Landmark("theta", (0.0, 0.0)),
            Landmark("a", (1.0, 1.0)),
            Landmark("b", (-1.0, -1.0)),
            Landmark("escape", (1.0, 0.0), exterior=True),
        ))
    if name == "ex35":
        return _rebuild(s, closed=True, landmarks=(
            Landmark("origin", (0.0, 0.0, 0.0)),
            Landmark("T1_corner", (0.0, -1.0, 0.0)),
            Landmark("shared", (-1.0, -1.0, 0.0)),
            Landmark("T2_bottom", (-1.0, -1.0, -1.0)),
        ))
    if name == "ex36":
        return _rebuild(s, closed=True, landmarks=(
            Landmark("x0", (1.0, 0.0)),
            Landmark("arc", (0.5, math.sqrt(0.75))),
            Landmark("hyperbola", (2.0, 2.0)),
        ))
    if name == "ex41":
        return _rebuild(s, closed=False, landmarks=(Landmark("center", (0.5, 0.5)),))
    return _rebuild(s, closed=True, landmarks=(
        Landmark("origin", (0.0, 0.0, 0.0)),
        Landmark("S1", (-1.0, -2.0, -1.0)),
        Landmark("S2", (-1.0, 0.0, -1.0)),
        Landmark("S3", (0.0, -1.0, -1.0)),
        Landmark("S4", (-1.0, -1.0, 0.0)),
    ), sampler=_ex42_ideal_sampler)


def _rebuild(s: Scene, closed: bool, landmarks=(), sampler=None) -> Scene:
    return Scene(s.name, s.dim, s.region, s.order, s.window_box, s.points,
                 closed_in_rn=closed, landmarks=tuple(landmarks), ideal_sampler=sampler)


def load_scene(builtin: str | None = None, path: str | None = None) -> Scene:
    if (builtin is None) == (path is None):
        raise ValueError("give exactly one of a builtin id or a scene file")
    if builtin is not None:
        return builtin_scene(builtin)
    with open(path, encoding="utf-8") as fh:
        return parse_scene(fh.read())
