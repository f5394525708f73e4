"""Text form of Clifford polynomials.

Grammar (whitespace is insignificant)::

    expr   := [sign] term (sign term)*
    term   := factor ('*'? factor)*
    factor := atom ('^' INT)?
    atom   := RATIONAL | VAR | '[' BLADE ']' | '(' expr ')'

``RATIONAL`` is ``a`` or ``a/b``, ``VAR`` is ``x0``, ``x1``, ... or ``r`` and
``BLADE`` is a run of generators such as ``e1e3`` (empty or ``1`` for the
unit).  Factors multiply left to right, so blade order matters.  Example::

    x0^2 - r^2 + 2 x0 r [e1]
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from .algebra import AlgebraContext, Multivector, blade_name, parse_blade_name
from .errors import ParseError
from .poly import CliffordPolynomial, VarKind, var_names

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\s*/\s*\d+)?)
  | (?P<var>x\d+|r)
  | (?P<blade>\[[^\]]*\])
  | (?P<op>[-+*^()])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), pos))
        pos = m.end()
    out.append(Token("end", "", pos))
    return out


def infer_kind(tokens: List[Token], ctx: AlgebraContext) -> VarKind:
    names = {t.text for t in tokens if t.kind == "var"}
    high = any(n != "r" and int(n[1:]) > ctx.p for n in names)
    if "r" in names and high:
        bad = next(n for n in sorted(names) if n != "r" and int(n[1:]) > ctx.p)
        raise ParseError(f"cannot mix r with full variable {bad}")
    if "r" in names:
        return VarKind.SLICE
    if high:
        return VarKind.FULL
    return VarKind.BASE


class _Parser:
    def __init__(self, text: str, ctx: AlgebraContext, kind: Optional[VarKind]):
        self.tokens = tokenize(text)
        self.i = 0
        self.ctx = ctx
        self.kind = kind if kind is not None else infer_kind(self.tokens, ctx)
        self.names = var_names(self.kind, ctx)

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def const(self, value) -> CliffordPolynomial:
        return CliffordPolynomial.constant(self.ctx, self.kind, value)

    def parse(self) -> CliffordPolynomial:
        if self.tok.kind == "end":
            raise ParseError("empty expression", self.tok.pos)
        out = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return out

    def expr(self) -> CliffordPolynomial:
        sign = 1
        if self.tok.text in "+-" and self.tok.kind == "op":
            sign = -1 if self.advance().text == "-" else 1
        out = self.term().scale(sign)
        while self.tok.kind == "op" and self.tok.text in "+-":
            sign = -1 if self.advance().text == "-" else 1
            out = out + self.term().scale(sign)
        return out

    def _starts_factor(self) -> bool:
        t = self.tok
        return t.kind in ("num", "var", "blade") or (t.kind == "op" and t.text == "(")

    def term(self) -> CliffordPolynomial:
        if not self._starts_factor():
            raise ParseError(f"expected a term, found {self.tok.text or 'end of input'!r}",
                             self.tok.pos)
        out = self.factor()
        while True:
            if self.tok.kind == "op" and self.tok.text == "*":
                self.advance()
                if not self._starts_factor():
                    raise ParseError("expected a factor after '*'", self.tok.pos)
            elif not self._starts_factor():
                return out
            out = out * self.factor()

    def factor(self) -> CliffordPolynomial:
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.advance()
            t = self.advance()
            if t.kind != "num" or "/" in t.text:
                raise ParseError("exponent must be a nonnegative integer", t.pos)
            base = base ** int(t.text)
        return base

    def atom(self) -> CliffordPolynomial:
        t = self.advance()
        if t.kind == "num":
            return self.const(Fraction(t.text.replace(" ", "")))
        if t.kind == "var":
            if t.text not in self.names:
                raise ParseError(f"unknown variable {t.text} for {self.kind.value} variables "
                                 f"{', '.join(self.names)}", t.pos)
            return CliffordPolynomial.variable(self.ctx, self.kind, t.text)
        if t.kind == "blade":
            inner = t.text[1:-1].replace(" ", "")
            try:
                sign, mask = parse_blade_name(inner, self.ctx)
            except ValueError as exc:
                raise ParseError(str(exc), t.pos) from None
            return self.const(Multivector.blade(self.ctx, mask, sign))
        if t.kind == "op" and t.text == "(":
            inner = self.expr()
            close = self.advance()
            if close.text != ")":
                raise ParseError("expected ')'", close.pos)
            return inner
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos)


def parse_expression(text: str, ctx: AlgebraContext,
                     kind: Optional[VarKind] = None) -> CliffordPolynomial:
    """Parse ``text`` into a polynomial; the variable set is inferred if not given."""
    return _Parser(text, ctx, kind).parse()


# ---------------------------------------------------------------------------
# printing

def _monomial(names, exps) -> str:
    parts = []
    for name, k in zip(names, exps):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return " ".join(parts)


def _term_key(item):
    exps, mask = item[0], item[1]
    return (-sum(exps), tuple(-k for k in exps), mask)


def format_polynomial(f: CliffordPolynomial) -> str:
    items = [(e, m, c) for e, mv in f.terms.items() for m, c in mv.nonzero()]
    if not items:
        return "0"
    items.sort(key=_term_key)
    out = []
    for n, (exps, mask, c) in enumerate(items):
        c = Fraction(c) if not isinstance(c, float) else c
        neg = c < 0
        mag = -c if neg else c
        mono = _monomial(f.names, exps)
        blade = f"[{blade_name(mask)}]" if mask else ""
        body = " ".join(x for x in (mono, blade) if x)
        if mag != 1 or not body:
            body = f"{mag} {body}".strip()
        if n == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(out)
