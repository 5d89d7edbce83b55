"""Surface syntax for operators, commutative polynomials and kernel specs.

Grammar::

    expr   := ["+"|"-"] term {("+"|"-") term}
    term   := factor {["*"] factor | "/" factor}
    factor := base ["^" (nat | "[" nat {"," nat} "]")]
    base   := "(" expr ")" | "(" rational "," rational ")" | number | var
    var    := name [index]

Operator names are ``x``, ``y``, ``Dx``, ``Dy``; commutative polynomials use
``xi``, ``eta``, ``z``, ``zeta``. Juxtaposition is composition, so the
canonical text ``(1,0) x^[1] y^[0] Dx^[0] Dy^[2]`` parses back unchanged.
``*`` composes in written order; ``Dx`` is a single token.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..opalg.kernel import KernelSpec
from ..opalg.ncpoly import NCPolynomial, normal_order
from ..opalg.numbers import QQi
from ..opalg.poly import Polynomial

OPERATOR_NAMES = ("Dx", "Dy", "x", "y")
SYMBOL_NAMES = ("zeta", "eta", "xi", "z")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col
        self.message = message


@dataclass(frozen=True)
class Token:
    kind: str  # NUM, NAME, OP, END
    text: str
    line: int
    col: int


_NAME_RE = re.compile(r"(Dx|Dy|zeta|eta|xi|x|y|z)(\d*)")


def tokenize(src: str) -> List[Token]:
    tokens: List[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        ch = src[pos]
        col = pos - line_start + 1
        if ch in " \t\r":
            pos += 1
            continue
        if ch == "\n":
            pos += 1
            line += 1
            line_start = pos
            continue
        if ch.isalpha():
            m = _NAME_RE.match(src, pos)
            if not m or (m.end() < len(src) and src[m.end()].isalpha()):
                end = pos
                while end < len(src) and (src[end].isalnum() or src[end] == "_"):
                    end += 1
                raise ParseError(f"unknown identifier {src[pos:end]!r}", line, col)
            tokens.append(Token("NAME", m.group(0), line, col))
            pos = m.end()
            continue
        if ch.isdigit() or (ch == "." and pos + 1 < len(src) and src[pos + 1].isdigit()):
            m = re.compile(r"\d*\.?\d*(?:[eE][+-]?\d+)?").match(src, pos)
            tokens.append(Token("NUM", m.group(0), line, col))
            pos = m.end()
            continue
        if ch in "-+*/^(),[]":
            tokens.append(Token("OP", ch, line, col))
            pos += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    col = pos - line_start + 1
    tokens.append(Token("END", "", line, col))
    return tokens


# AST nodes are plain tuples:
#   ("num", QQi) | ("var", name, index_or_None) | ("add", a, b) | ("sub", a, b)
#   ("mul", a, b) | ("div", a, b) | ("neg", a) | ("pow", a, k) | ("vpow", name, [k...])


@dataclass(frozen=True)
class OperatorExpr:
    """Parsed operator: syntax tree plus the dimension N it needs."""

    root: tuple
    dim_n: int

    def to_ncpoly(self, dim_n: Optional[int] = None) -> NCPolynomial:
        n = dim_n or self.dim_n
        if n < self.dim_n:
            raise ValueError(f"expression needs N >= {self.dim_n}")
        return normal_order(_to_tree(self.root), n)


class _Parser:
    def __init__(self, src: str, names: Sequence[str]):
        if not src.strip():
            raise ParseError("empty expression", 1, 1)
        self.tokens = tokenize(src)
        self.i = 0
        self.names = set(names)
        self.max_index = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, msg: str, tok: Optional[Token] = None):
        t = tok or self.tok
        raise ParseError(msg, t.line, t.col)

    def eat(self, text: str) -> Token:
        t = self.tok
        if t.kind != "OP" or t.text != text:
            self.error(f"expected {text!r}, found {t.text or 'end of input'!r}")
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind == "OP" and self.tok.text == text

    def parse(self):
        node = self.expr()
        if self.tok.kind != "END":
            self.error(f"unexpected {self.tok.text!r}")
        return node

    def expr(self):
        sign = None
        if self.at("+") or self.at("-"):
            sign = self.tok.text
            self.i += 1
        node = self.term()
        if sign == "-":
            node = ("neg", node)
        while self.at("+") or self.at("-"):
            op = self.tok.text
            self.i += 1
            rhs = self.term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def starts_base(self) -> bool:
        t = self.tok
        return t.kind in ("NUM", "NAME") or (t.kind == "OP" and t.text == "(")

    def term(self):
        node = self.factor()
        while True:
            if self.at("*"):
                self.i += 1
                node = ("mul", node, self.factor())
            elif self.at("/"):
                self.i += 1
                node = ("div", node, self.factor())
            elif self.starts_base():
                node = ("mul", node, self.factor())
            else:
                return node

    def nat(self) -> int:
        t = self.tok
        if t.kind != "NUM" or not t.text.isdigit():
            self.error("exponent must be a nonnegative integer")
        self.i += 1
        return int(t.text)

    def factor(self):
        base_tok = self.tok
        node = self.base()
        if self.at("^"):
            self.i += 1
            if self.at("["):
                self.i += 1
                ks = [self.nat()]
                while self.at(","):
                    self.i += 1
                    ks.append(self.nat())
                self.eat("]")
                if node[0] != "var" or node[2] is not None:
                    self.error("a list exponent needs a bare variable name", base_tok)
                self.max_index = max(self.max_index, len(ks))
                node = ("vpow", node[1], ks)
            else:
                node = ("pow", node, self.nat())
        return node

    def rational(self) -> Fraction:
        neg = False
        if self.at("-") or self.at("+"):
            neg = self.tok.text == "-"
            self.i += 1
        t = self.tok
        if t.kind != "NUM":
            self.error("expected a number")
        self.i += 1
        val = Fraction(t.text)
        if self.at("/"):
            self.i += 1
            d = self.tok
            if d.kind != "NUM":
                self.error("expected a denominator")
            self.i += 1
            val = val / Fraction(d.text)
        return -val if neg else val

    def base(self):
        t = self.tok
        if t.kind == "NUM":
            self.i += 1
            return ("num", QQi(Fraction(t.text)))
        if t.kind == "NAME":
            m = _NAME_RE.fullmatch(t.text)
            name, idx = m.group(1), m.group(2)
            if name not in self.names:
                self.error(f"variable {name!r} is not allowed here")
            self.i += 1
            index = int(idx) if idx else None
            if index is not None and index < 1:
                self.error("indices start at 1", t)
            self.max_index = max(self.max_index, index or 1)
            return ("var", name, index)
        if self.at("("):
            # complex literal (re,im) or parenthesized expression
            save = self.i
            self.i += 1
            if self._looks_complex():
                re_ = self.rational()
                self.eat(",")
                im_ = self.rational()
                self.eat(")")
                return ("num", QQi(re_, im_))
            self.i = save + 1
            node = self.expr()
            self.eat(")")
            return node
        self.error(f"unexpected {t.text or 'end of input'!r}")

    def _looks_complex(self) -> bool:
        j = self.i
        toks = self.tokens
        if toks[j].kind == "OP" and toks[j].text in "+-":
            j += 1
        if toks[j].kind != "NUM":
            return False
        j += 1
        if toks[j].kind == "OP" and toks[j].text == "/":
            j += 2
        return toks[j].kind == "OP" and toks[j].text == ","


def _to_tree(node):
    """Convert the parse tree to the ``normal_order`` tree form."""
    op = node[0]
    if op == "num":
        return node[1]
    if op == "var":
        kind = node[1]
        return ("gen", kind, (node[2] or 1) - 1)
    if op == "vpow":
        out = QQi(1)
        for j, k in enumerate(node[2]):
            if k:
                g = ("pow", ("gen", node[1], j), k)
                out = g if out == QQi(1) else ("mul", out, g)
        return out
    if op == "div":
        return ("mul", _to_tree(node[1]), _inverse_constant(node[2]))
    if op in ("add", "sub", "mul"):
        return (op, _to_tree(node[1]), _to_tree(node[2]))
    if op == "neg":
        return ("neg", _to_tree(node[1]))
    if op == "pow":
        return ("pow", _to_tree(node[1]), node[2])
    raise ValueError(f"bad node {op}")


def _constant_value(node) -> QQi:
    op = node[0]
    if op == "num":
        return node[1]
    if op == "neg":
        return -_constant_value(node[1])
    if op in ("add", "sub", "mul", "div"):
        a, b = _constant_value(node[1]), _constant_value(node[2])
        if op == "div" and not b:
            raise ValueError("division by zero")
        return {"add": a + b, "sub": a - b, "mul": a * b}[op] if op != "div" else a / b
    if op == "pow":
        return _constant_value(node[1]) ** node[2]
    raise ValueError("division is only allowed by constants")


def _inverse_constant(node) -> QQi:
    c = _constant_value(node)
    if not c:
        raise ValueError("division by zero")
    return QQi(1) / c


def parse_operator(src: str, n_hint: Optional[int] = None) -> OperatorExpr:
    """Parse operator text; ``n_hint`` caps the allowed coordinate index."""
    p = _Parser(src, OPERATOR_NAMES)
    root = p.parse()
    if n_hint is not None and p.max_index > n_hint:
        raise ParseError(f"index {p.max_index} exceeds N={n_hint}", 1, 1)
    return OperatorExpr(root, max(p.max_index, 1) if n_hint is None else n_hint)


def parse_ncpoly(src: str, dim_n: Optional[int] = None) -> NCPolynomial:
    expr = parse_operator(src, dim_n)
    try:
        return expr.to_ncpoly(dim_n)
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1) from exc


def parse_polynomial(src: str, variables: Sequence[Tuple[str, int]]) -> Polynomial:
    """Parse a commutative polynomial.

    ``variables`` lists ``(name, index)`` pairs in variable order; ``xi`` alone
    stands for ``xi1``.
    """
    slot = {v: i for i, v in enumerate(variables)}
    nv = len(variables)
    p = _Parser(src, SYMBOL_NAMES)
    root = p.parse()

    def ev(node) -> Polynomial:
        op = node[0]
        if op == "num":
            return Polynomial.constant(nv, node[1])
        if op == "var":
            key = (node[1], node[2] or 1)
            if key not in slot:
                raise ParseError(f"variable {node[1]}{node[2] or ''} is not available here", 1, 1)
            return Polynomial.variable(nv, slot[key])
        if op == "vpow":
            out = Polynomial.constant(nv)
            for j, k in enumerate(node[2]):
                key = (node[1], j + 1)
                if k:
                    if key not in slot:
                        raise ParseError(f"variable {node[1]}{j + 1} is not available here", 1, 1)
                    out = out * Polynomial.variable(nv, slot[key]) ** k
            return out
        if op == "add":
            return ev(node[1]) + ev(node[2])
        if op == "sub":
            return ev(node[1]) - ev(node[2])
        if op == "mul":
            return ev(node[1]) * ev(node[2])
        if op == "div":
            return ev(node[1]) * _inverse_constant(node[2])
        if op == "neg":
            return -ev(node[1])
        if op == "pow":
            return ev(node[1]) ** node[2]
        raise ValueError(op)

    return ev(root)


def symbol_variables(dim_n: int, names: Tuple[str, str] = ("xi", "eta")) -> List[Tuple[str, int]]:
    return [(names[0], j + 1) for j in range(dim_n)] + [(names[1], j + 1) for j in range(dim_n)]


def parse_kernel(spec: str, dim_n: Optional[int] = None) -> KernelSpec:
    """Parse ``p1=xi^2+eta^2;p2=...;q=...``.

    ``p_j`` uses ``xi, eta`` (or ``xi_j, eta_j``); ``q`` uses ``xi1..xiN, eta1..etaN``.
    Missing ``p_j`` default to zero.
    """
    entries: Dict[str, str] = {}
    for part in spec.split(";"):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise ParseError(f"kernel entry {part!r} lacks '='", 1, 1)
        name, body = part.split("=", 1)
        name = name.strip()
        if not re.fullmatch(r"p\d+|q", name):
            raise ParseError(f"unknown kernel entry {name!r}", 1, 1)
        if name in entries:
            raise ParseError(f"duplicate kernel entry {name!r}", 1, 1)
        entries[name] = body
    ps = {int(k[1:]): v for k, v in entries.items() if k.startswith("p")}
    if any(j < 1 for j in ps):
        raise ParseError("kernel polynomials are numbered from p1", 1, 1)
    n = max(list(ps) + [dim_n or 1])
    if dim_n is not None and n > dim_n:
        raise ParseError(f"kernel has p{n} but N={dim_n}", 1, 1)
    p_list = []
    for j in range(1, n + 1):
        if j in ps:
            idx = 1 if _bare(ps[j]) else j
            p_list.append(parse_polynomial(ps[j], [("xi", idx), ("eta", idx)]))
        else:
            p_list.append(Polynomial(2))
    q = parse_polynomial(entries["q"], symbol_variables(n)) if "q" in entries else None
    return KernelSpec(n, tuple(p_list), q)


def _bare(src: str) -> bool:
    """True when ``p_j`` is written with unindexed ``xi``/``eta``."""
    return not re.search(r"(xi|eta)\d", src)


def kernel_text(k: KernelSpec) -> str:
    """Serialize a kernel back to the ``p1=...;q=...`` syntax."""
    parts = [f"p{j + 1}={polynomial_text(pj, ['xi', 'eta'])}" for j, pj in enumerate(k.p)]
    if k.q is not None:
        names = [f"xi{j + 1}" for j in range(k.dim_n)] + [f"eta{j + 1}" for j in range(k.dim_n)]
        parts.append(f"q={polynomial_text(k.q, names)}")
    return ";".join(parts)


def polynomial_text(p: Polynomial, names: Sequence[str]) -> str:
    if p.is_zero():
        return "0"
    out = []
    for e, c in p.items():
        mon = "*".join(f"{n}^{k}" for n, k in zip(names, e) if k)
        out.append(f"{c.text()}*{mon}" if mon else c.text())
    return " + ".join(out)
