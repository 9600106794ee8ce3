"""Parser and evaluator for defining expressions h(x, w).

Grammar (EBNF):

    expr     = term { ("+" | "-") term } ;
    term     = unary { "*" unary } ;
    unary    = "-" unary | power ;
    power    = atom [ "^" exponent ] ;
    exponent = NUMBER | "(" NUMBER "/" NUMBER ")" ;
    atom     = NUMBER | IDENT | FUNC "(" expr ")" | "(" expr ")" ;
    IDENT    = ("x" | "w") DIGITS ;          (* x1..xl real, w1..wn complex *)
    FUNC     = "Re" | "Im" | "conj" | "abs2" ;

Every node carries a real/complex type computed at parse time; fractional
powers require a real base, and expressions used as h-components or wedge
predicates must be real at the root.  Evaluation is plain numpy arithmetic
and accepts scalars or arrays (so a whole boundary grid evaluates in one
call).  Derivatives are numeric: central differences with one Richardson
extrapolation level.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    AccuracyError,
    DomainError,
    ExprNameError,
    ExprSyntaxError,
    ExprTypeError,
    InvalidInputError,
)

FUNCTIONS = ("Re", "Im", "conj", "abs2")


@dataclass(frozen=True)
class Num:
    value: float

    @property
    def is_real(self):
        return True


@dataclass(frozen=True)
class Var:
    kind: str  # "x" or "w"
    index: int  # 1-based

    @property
    def is_real(self):
        return self.kind == "x"


@dataclass(frozen=True)
class Neg:
    arg: object

    @property
    def is_real(self):
        return self.arg.is_real


@dataclass(frozen=True)
class BinOp:
    op: str  # "+", "-", "*"
    left: object
    right: object

    @property
    def is_real(self):
        return self.left.is_real and self.right.is_real


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: Fraction

    @property
    def is_integer_power(self):
        return self.exponent.denominator == 1

    @property
    def is_real(self):
        return self.base.is_real


@dataclass(frozen=True)
class Call:
    fn: str
    arg: object

    @property
    def is_real(self):
        if self.fn == "conj":
            return self.arg.is_real
        return True


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<ident>[A-Za-z][A-Za-z0-9]*)"
    r"|(?P<op>[-+*^()/]))"
)


def _tokenize(source):
    tokens = []
    pos = 0
    while pos < len(source):
        if source[pos:].isspace():
            break
        match = _TOKEN_RE.match(source, pos)
        if match is None or match.end() == pos:
            raise ExprSyntaxError(f"unexpected character {source[pos]!r}", pos)
        if match.lastgroup == "num":
            tokens.append(("num", match.group("num"), match.start("num")))
        elif match.lastgroup == "ident":
            tokens.append(("ident", match.group("ident"), match.start("ident")))
        else:
            tokens.append(("op", match.group("op"), match.start("op")))
        pos = match.end()
    tokens.append(("end", "", len(source)))
    return tokens


class _Parser:
    def __init__(self, source):
        self.source = source
        self.tokens = _tokenize(source)
        self.idx = 0

    def peek(self):
        return self.tokens[self.idx]

    def advance(self):
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def expect_op(self, op):
        kind, text, pos = self.peek()
        if kind != "op" or text != op:
            raise ExprSyntaxError(f"expected {op!r}", pos)
        return self.advance()

    def parse(self):
        node = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"trailing input {text!r}", pos)
        return node

    def expr(self):
        node = self.term()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.advance()
                node = BinOp(text, node, self.term())
            else:
                return node

    def term(self):
        node = self.unary()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text == "*":
                self.advance()
                node = BinOp("*", node, self.unary())
            else:
                return node

    def unary(self):
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        kind, text, pos = self.peek()
        if kind == "op" and text == "^":
            self.advance()
            exponent, exp_pos = self.exponent()
            if exponent <= 0:
                raise ExprSyntaxError("exponents must be positive", exp_pos)
            if exponent.denominator != 1 and not node.is_real:
                raise ExprTypeError(
                    "fractional powers apply to real-valued subexpressions only",
                    exp_pos,
                )
            node = Pow(node, exponent)
        return node

    def exponent(self):
        kind, text, pos = self.peek()
        if kind == "num":
            self.advance()
            return Fraction(text), pos
        if kind == "op" and text == "(":
            self.advance()
            nkind, ntext, npos = self.advance()
            if nkind != "num":
                raise ExprSyntaxError("expected a number in exponent", npos)
            self.expect_op("/")
            dkind, dtext, dpos = self.advance()
            if dkind != "num":
                raise ExprSyntaxError("expected a number in exponent", dpos)
            self.expect_op(")")
            try:
                value = Fraction(ntext) / Fraction(dtext)
            except ZeroDivisionError:
                raise ExprSyntaxError("zero denominator in exponent", dpos)
            return value, pos
        raise ExprSyntaxError("expected an exponent", pos)

    def atom(self):
        kind, text, pos = self.advance()
        if kind == "num":
            return Num(float(text))
        if kind == "ident":
            if text in FUNCTIONS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Call(text, arg)
            match = re.fullmatch(r"([xw])([0-9]+)", text)
            if match is None:
                raise ExprNameError(f"unknown identifier {text!r}", pos)
            index = int(match.group(2))
            if index < 1:
                raise ExprNameError(f"variable indices are 1-based: {text!r}", pos)
            return Var(match.group(1), index)
        if kind == "op" and text == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise ExprSyntaxError(f"unexpected token {text!r}", pos)


def parse(source, l=None, n=None, require_real=True):
    """Parse a defining expression; type-checked, real at the root by default."""
    if not source or not source.strip():
        raise ExprSyntaxError("empty expression", 0)
    node = _Parser(source).parse()
    if require_real and not node.is_real:
        raise ExprTypeError(
            "expression is complex-valued at the root; wrap it in Re/Im/abs2"
        )
    if l is not None or n is not None:
        for kind, index in sorted(free_vars(node)):
            bound = l if kind == "x" else n
            if bound is not None and index > bound:
                raise ExprNameError(
                    f"variable {kind}{index} exceeds the declared signature"
                )
    return node


def free_vars(node):
    if isinstance(node, Var):
        return {(node.kind, node.index)}
    if isinstance(node, Num):
        return set()
    if isinstance(node, Neg):
        return free_vars(node.arg)
    if isinstance(node, BinOp):
        return free_vars(node.left) | free_vars(node.right)
    if isinstance(node, Pow):
        return free_vars(node.base)
    if isinstance(node, Call):
        return free_vars(node.arg)
    raise TypeError(f"not an expression node: {node!r}")


def to_source(node):
    """Pretty-print; the output parses back to a structurally equal tree."""
    if isinstance(node, Num):
        text = repr(node.value)
        return text[:-2] if text.endswith(".0") else text
    if isinstance(node, Var):
        return f"{node.kind}{node.index}"
    if isinstance(node, Neg):
        return f"-{_wrap(node.arg, above='unary')}"
    if isinstance(node, BinOp):
        left = _wrap(node.left, above=node.op + "l")
        right = _wrap(node.right, above=node.op + "r")
        return f"{left} {node.op} {right}"
    if isinstance(node, Pow):
        base = _wrap(node.base, above="pow")
        if node.exponent.denominator == 1:
            return f"{base}^{node.exponent.numerator}"
        if node.exponent.denominator in (2, 4, 5, 8, 10):
            return f"{base}^{float(node.exponent)}"
        return f"{base}^({node.exponent.numerator}/{node.exponent.denominator})"
    if isinstance(node, Call):
        return f"{node.fn}({to_source(node.arg)})"
    raise TypeError(f"not an expression node: {node!r}")


def _wrap(node, above):
    text = to_source(node)
    if isinstance(node, (Num, Var, Call)):
        return text
    if isinstance(node, Pow) and above != "pow":
        return text
    if isinstance(node, BinOp) and node.op == "*" and above in ("+l", "+r", "-l"):
        return text
    return f"({text})"


def evaluate(node, x, w):
    """Evaluate at x (real vector or (l, ...) array) and w (complex likewise)."""
    x = np.asarray(x, dtype=float)
    w = np.asarray(w, dtype=complex)
    for kind, index in free_vars(node):
        size = x.shape[0] if kind == "x" else w.shape[0]
        if index > size:
            raise InvalidInputError(
                f"expression uses {kind}{index} but only {size} provided"
            )
    return _eval(node, x, w)


def _eval(node, x, w):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return x[node.index - 1] if node.kind == "x" else w[node.index - 1]
    if isinstance(node, Neg):
        return -_eval(node.arg, x, w)
    if isinstance(node, BinOp):
        a = _eval(node.left, x, w)
        b = _eval(node.right, x, w)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        return a * b
    if isinstance(node, Pow):
        base = _eval(node.base, x, w)
        if node.is_integer_power:
            return base ** node.exponent.numerator
        base = np.real(base) if np.iscomplexobj(base) else base
        if np.any(np.asarray(base) < 0):
            raise DomainError("fractional power of a negative value")
        return base ** float(node.exponent)
    if isinstance(node, Call):
        val = _eval(node.arg, x, w)
        if node.fn == "Re":
            return np.real(val)
        if node.fn == "Im":
            return np.imag(val)
        if node.fn == "conj":
            return np.conj(val)
        return np.real(val * np.conj(val))  # abs2
    raise TypeError(f"not an expression node: {node!r}")


def _real_coords(x, w):
    """Pack (x, w) into the real coordinate vector [x, Re w, Im w]."""
    return np.concatenate([x, np.real(w), np.imag(w)])


def _unpack(t, l, n):
    x = t[:l]
    w = t[l:l + n] + 1j * t[l + n:]
    return x, w


def _eval_real(node, t, l, n):
    x, w = _unpack(t, l, n)
    return float(_eval(node, x, w))


def first_derivatives(node, point, step=1e-5):
    """Gradient in the real coordinates [x, Re w, Im w], Richardson-refined."""
    x = np.asarray(point[0], dtype=float)
    w = np.asarray(point[1], dtype=complex)
    l, n = x.shape[0], w.shape[0]
    t0 = _real_coords(x, w)
    dim = t0.shape[0]

    def grad(h):
        g = np.empty(dim)
        for i in range(dim):
            e = np.zeros(dim)
            e[i] = h
            g[i] = (_eval_real(node, t0 + e, l, n)
                    - _eval_real(node, t0 - e, l, n)) / (2.0 * h)
        return g

    return (4.0 * grad(step / 2.0) - grad(step)) / 3.0


def real_hessian(node, point, step=1e-4, box=0.5):
    """Full real Hessian at (x, w) by central differences + Richardson."""
    x = np.asarray(point[0], dtype=float)
    w = np.asarray(point[1], dtype=complex)
    l, n = x.shape[0], w.shape[0]
    t0 = _real_coords(x, w)
    if np.max(np.abs(t0), initial=0.0) > box:
        raise DomainError(
            f"point outside the finite-difference validity box |coords| <= {box}"
        )
    if step < 1e-8:
        raise AccuracyError("finite-difference step underflow", magnitude=step)
    dim = t0.shape[0]

    def hess(h):
        out = np.empty((dim, dim))
        f0 = _eval_real(node, t0, l, n)
        for i in range(dim):
            ei = np.zeros(dim)
            ei[i] = h
            out[i, i] = (_eval_real(node, t0 + ei, l, n) - 2.0 * f0
                         + _eval_real(node, t0 - ei, l, n)) / h ** 2
        for i in range(dim):
            ei = np.zeros(dim)
            ei[i] = h
            for j in range(i + 1, dim):
                ej = np.zeros(dim)
                ej[j] = h
                val = (_eval_real(node, t0 + ei + ej, l, n)
                       - _eval_real(node, t0 + ei - ej, l, n)
                       - _eval_real(node, t0 - ei + ej, l, n)
                       + _eval_real(node, t0 - ei - ej, l, n)) / (4.0 * h ** 2)
                out[i, j] = out[j, i] = val
        return out

    refined = (4.0 * hess(step / 2.0) - hess(step)) / 3.0
    return refined


def second_derivatives(node, point, mode="wirtinger", step=1e-4, tol=1e-7):
    """Mixed Wirtinger matrix d^2/dw_i dconj(w_j), or the full real Hessian.

    The Wirtinger convention is d/dw = (d/du - i d/dv) / 2, which makes
    sum_ij A_ij w_i conj(w_j) with A the returned matrix reproduce the Levi
    form values of the worked examples.
    """
    x = np.asarray(point[0], dtype=float)
    w = np.asarray(point[1], dtype=complex)
    l, n = x.shape[0], w.shape[0]
    hessian = real_hessian(node, point, step=step)
    asym = float(np.max(np.abs(hessian - hessian.T), initial=0.0))
    scale = max(1.0, float(np.max(np.abs(hessian), initial=0.0)))
    if asym > tol * scale:
        raise AccuracyError(
            f"Hessian asymmetry {asym:.3e} beyond tolerance", magnitude=asym
        )
    if mode == "real":
        return hessian
    if mode != "wirtinger":
        raise InvalidInputError(f"unknown mode {mode!r}")
    uu = hessian[l:l + n, l:l + n]
    vv = hessian[l + n:, l + n:]
    uv = hessian[l:l + n, l + n:]
    vu = hessian[l + n:, l:l + n]
    mixed = 0.25 * (uu + vv + 1j * (uv - vu))
    herm = float(np.max(np.abs(mixed - mixed.conj().T), initial=0.0))
    if herm > tol * scale:
        raise AccuracyError(
            f"Wirtinger matrix deviates from hermitian by {herm:.3e}",
            magnitude=herm,
        )
    return 0.5 * (mixed + mixed.conj().T)


@dataclass
class DefiningMap:
    """The l real components of y = h(x, w), parsed and normalized at 0."""

    components: list
    l: int
    n: int

    @classmethod
    def from_sources(cls, sources, l, n):
        comps = [parse(src, l=l, n=n) for src in sources]
        if len(comps) != l:
            raise InvalidInputError(
                f"need {l} defining components, got {len(comps)}"
            )
        dm = cls(comps, l, n)
        dm.validate_normalization()
        return dm

    def validate_normalization(self, tol=1e-9):
        x0 = np.zeros(self.l)
        w0 = np.zeros(self.n, dtype=complex)
        for idx, comp in enumerate(self.components):
            val = float(evaluate(comp, x0, w0))
            if abs(val) > tol:
                raise InvalidInputError(
                    f"h_{idx + 1}(0) = {val:.3e}, expected 0"
                )
            grad = first_derivatives(comp, (x0, w0))
            if np.max(np.abs(grad)) > tol:
                raise InvalidInputError(
                    f"h_{idx + 1} has nonvanishing first derivatives at 0"
                )

    def __call__(self, x, w):
        """Evaluate all components; broadcasts over trailing axes.

        Constant components broadcast to the grid shape of the inputs so the
        stacked result is always (l, ...).
        """
        x = np.asarray(x, dtype=float)
        w = np.asarray(w, dtype=complex)
        shape = np.broadcast_shapes(x.shape[1:], w.shape[1:])
        vals = [np.broadcast_to(np.asarray(evaluate(c, x, w), dtype=float), shape)
                for c in self.components]
        return np.array(vals)
