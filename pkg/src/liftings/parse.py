"""Text input: polynomials, ideals and Hilbert polynomials.

Grammar (whitespace ignored)::

    list   := [ poly { "," poly } ]
    poly   := [ "+" | "-" ] term { ("+" | "-") term }
    term   := factor { [ "*" ] factor }
    factor := atom [ "^" INT ]
    atom   := NUMBER | NAME | "(" poly ")"

NUMBER is an integer or ``p/q``; NAME is a letter followed by letters/digits.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .core import Poly, PolyRing
from .monomial import HilbertPoly, MonomialIdeal

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_]*\d*)|(\S))")


class ParseError(ValueError):
    def __init__(self, msg, pos=None, text=None):
        self.pos = pos
        where = f" at position {pos}" if pos is not None else ""
        if text is not None and pos is not None:
            where += f": {text[:pos]!r} <-- here"
        super().__init__(msg + where)


def _tokenize(text: str) -> list:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:  # only trailing whitespace left
            break
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("num", Fraction(m.group(1)), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^(),":
                raise ParseError(f"unexpected character {ch!r}", start, text)
            out.append((ch, ch, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


# sparse expressions: {tuple of (name, exp) sorted by name: Fraction}

def _e_add(a, b, sign=1):
    out = dict(a)
    for k, v in b.items():
        nv = out.get(k, 0) + sign * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def _e_mul(a, b):
    out = {}
    for k1, v1 in a.items():
        for k2, v2 in b.items():
            d = dict(k1)
            for n, e in k2:
                d[n] = d.get(n, 0) + e
            k = tuple(sorted(d.items()))
            nv = out.get(k, 0) + v1 * v2
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {found}", tok[2], self.text)
        self.i += 1
        return tok

    def parse_list(self):
        if self.peek()[0] == "end":
            return []
        items = [self.parse_poly()]
        while self.peek()[0] == ",":
            self.take()
            items.append(self.parse_poly())
        self.take("end")
        return items

    def parse_single(self):
        p = self.parse_poly()
        self.take("end")
        return p

    def parse_poly(self):
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        acc = _e_mul({(): Fraction(sign)}, self.parse_term())
        while self.peek()[0] in ("+", "-"):
            s = -1 if self.take()[0] == "-" else 1
            acc = _e_add(acc, self.parse_term(), s)
        return acc

    def parse_term(self):
        acc = self.parse_factor()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                acc = _e_mul(acc, self.parse_factor())
            elif kind in ("num", "name", "("):
                acc = _e_mul(acc, self.parse_factor())
            else:
                return acc

    def parse_factor(self):
        base = self.parse_atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take("num")
            e = tok[1]
            if e.denominator != 1:
                raise ParseError("exponent must be a non-negative integer", tok[2], self.text)
            out = {(): Fraction(1)}
            for _ in range(int(e)):
                out = _e_mul(out, base)
            return out
        return base

    def parse_atom(self):
        tok = self.peek()
        if tok[0] in "+-":  # unary sign, as in "x0 + -x1"
            self.take()
            inner = self.parse_atom()
            return _e_mul({(): Fraction(-1 if tok[0] == "-" else 1)}, inner)
        if tok[0] == "num":
            self.take()
            return {(): tok[1]} if tok[1] else {}
        if tok[0] == "name":
            self.take()
            return {((tok[1], 1),): Fraction(1)}
        if tok[0] == "(":
            self.take()
            p = self.parse_poly()
            self.take(")")
            return p
        found = "end of input" if tok[0] == "end" else repr(tok[1])
        raise ParseError(f"unexpected {found}", tok[2], self.text)


_VAR = re.compile(r"([A-Za-z_]+)(\d+)$")


def _names_used(exprs) -> set:
    return {n for e in exprs for k in e for n, _ in k}


def _to_poly(expr, ring: PolyRing) -> Poly:
    idx = {n: i for i, n in enumerate(ring.names)}
    out = {}
    for k, c in expr.items():
        t = [0] * ring.nvars
        for n, e in k:
            if n not in idx:
                raise ParseError(f"unknown variable {n!r}")
            t[idx[n]] = e
        out[tuple(t)] = c
    return Poly(ring, out)


def infer_ring(names, prefix="x", nvars=None) -> PolyRing:
    top = -1
    for n in names:
        m = _VAR.match(n)
        if not m or m.group(1) != prefix:
            raise ParseError(f"unknown variable {n!r}")
        top = max(top, int(m.group(2)))
    if nvars is None:
        nvars = top + 1
    elif top >= nvars:
        raise ParseError(f"variable {prefix}{top} outside a ring with {nvars} variables")
    return PolyRing(nvars, [f"{prefix}{i}" for i in range(nvars)])


def parse_polys(text: str, ring: PolyRing = None, nvars=None, homogeneous=True):
    """Parse a comma-separated list; returns (ring, polys)."""
    exprs = _Parser(text).parse_list()
    if ring is None:
        ring = infer_ring(_names_used(exprs), nvars=nvars)
    polys = [_to_poly(e, ring) for e in exprs]
    if homogeneous:
        for k, p in enumerate(polys):
            if not p.is_homogeneous():
                raise ParseError(f"generator {k + 1} is not homogeneous: {p}")
    return ring, polys


def parse_ideal(text: str, ring: PolyRing = None, nvars=None) -> list:
    return parse_polys(text, ring, nvars)[1]


def parse_poly(text: str, ring: PolyRing) -> Poly:
    return _to_poly(_Parser(text).parse_single(), ring)


def parse_monomial_ideal(text: str, ring: PolyRing = None, nvars=None) -> MonomialIdeal:
    ring, polys = parse_polys(text, ring, nvars)
    gens = []
    for p in polys:
        if not p.is_monomial():
            raise ParseError(f"not a term: {p}")
        gens.append(p.lt())
    return MonomialIdeal(ring, gens)


def parse_hilbert_poly(text: str, var: str = "t") -> HilbertPoly:
    expr = _Parser(text).parse_single()
    coeffs = {}
    for k, c in expr.items():
        e = 0
        for n, x in k:
            if n != var:
                raise ParseError(f"unknown variable {n!r} in Hilbert polynomial")
            e = x
        coeffs[e] = coeffs.get(e, 0) + c
    hp = HilbertPoly([coeffs.get(i, 0) for i in range(max(coeffs, default=0) + 1)])
    if not hp.is_numerical():
        raise ParseError(f"{hp} is not a numerical polynomial")
    return hp


def parse_param_poly(text: str, alpha):
    """Parse a polynomial in the parameters of ``alpha``."""
    expr = _Parser(text).parse_single()
    out = alpha.zero()
    for k, c in expr.items():
        pairs = []
        for n, e in k:
            if n not in alpha.index:
                raise ParseError(f"unknown parameter {n!r}")
            pairs.append((alpha.index[n], e))
        from .params import PPoly

        out = out + PPoly(alpha, {alpha.pack(pairs): c})
    return out


def parse_term(text: str, ring: PolyRing) -> tuple:
    """A single monic term such as ``x0^2*x3`` (``1`` for the empty term)."""
    p = parse_poly(text, ring)
    if not p.is_monomial() or p.lc() != 1:
        raise ParseError(f"not a monic term: {text!r}")
    return p.lt()
