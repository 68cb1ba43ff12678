"""Polynomials in a parameter alphabet, and x-polynomials with such coefficients.

Parameter monomials are packed into Python ints, 16 bits per parameter, so
multiplying two monomials is one integer addition.  Degrees are tracked as an
upper bound and checked against the field width.
"""

from __future__ import annotations

from fractions import Fraction

from .core import ContextError, Poly, PolyRing, Term, format_coeff, sort_terms, tmul

BITS = 16
MASK = (1 << BITS) - 1


class ParamAlphabet:
    """Ordered parameter names ``c1, c2, ...`` with optional structured keys.

    ``keys[i]`` is ``(head, tail)`` when parameter i is the coefficient of the
    tail term in the marked polynomial with the given head.
    """

    def __init__(self, names, keys=None):
        self.names = tuple(names)
        self.keys = tuple(keys) if keys is not None else (None,) * len(self.names)
        self.index = {n: i for i, n in enumerate(self.names)}
        self._unpack_cache = {}
        self._deg_cache = {}

    @classmethod
    def positional(cls, keys, prefix="c"):
        keys = list(keys)
        return cls([f"{prefix}{i + 1}" for i in range(len(keys))], keys)

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, ParamAlphabet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"ParamAlphabet({len(self)} params)"

    def var(self, i: int) -> PPoly:
        return PPoly(self, {1 << (BITS * i): Fraction(1)}, 1)

    def const(self, c) -> PPoly:
        c = Fraction(c)
        return PPoly(self, {0: c} if c else {}, 0)

    def zero(self) -> PPoly:
        return PPoly(self, {}, 0)

    def unpack(self, m: int) -> tuple:
        """Packed monomial -> tuple of (index, exponent), increasing index."""
        r = self._unpack_cache.get(m)
        if r is None:
            out = []
            i, k = 0, m
            while k:
                e = k & MASK
                if e:
                    out.append((i, e))
                k >>= BITS
                i += 1
            r = tuple(out)
            self._unpack_cache[m] = r
        return r

    def pack(self, pairs) -> int:
        m = 0
        for i, e in pairs:
            m += e << (BITS * i)
        return m

    def format_mono(self, m: int) -> str:
        parts = []
        for i, e in self.unpack(m):
            parts.append(self.names[i] if e == 1 else f"{self.names[i]}^{e}")
        return "*".join(parts) if parts else "1"

    def mono_degree(self, m: int) -> int:
        d = self._deg_cache.get(m)
        if d is None:
            d = self._deg_cache[m] = sum(e for _, e in self.unpack(m))
        return d


class PPoly:
    """Polynomial over Q in a :class:`ParamAlphabet`."""

    __slots__ = ("alpha", "terms", "maxdeg")

    def __init__(self, alpha: ParamAlphabet, terms, maxdeg=None):
        self.alpha = alpha
        self.terms = terms
        if maxdeg is None:
            maxdeg = max((alpha.mono_degree(m) for m in terms), default=0)
        self.maxdeg = maxdeg

    def _check(self, other):
        if self.alpha is not other.alpha and self.alpha != other.alpha:
            raise ContextError("parameter polynomials over different alphabets")

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if not isinstance(other, PPoly):
            other = self.alpha.const(other)
        self._check(other)
        if len(other.terms) > len(self.terms):
            self, other = other, self
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                del out[m]
        return PPoly(self.alpha, out, max(self.maxdeg, other.maxdeg))

    __radd__ = __add__

    def __neg__(self):
        return PPoly(self.alpha, {m: -c for m, c in self.terms.items()}, self.maxdeg)

    def __sub__(self, other):
        if not isinstance(other, PPoly):
            other = self.alpha.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PPoly):
            self._check(other)
            d = self.maxdeg + other.maxdeg
            if d > MASK:
                raise OverflowError("parameter exponent exceeds 16-bit field")
            out = {}
            get = out.get
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = m1 + m2
                    v = get(m, 0) + c1 * c2
                    if v:
                        out[m] = v
                    else:
                        del out[m]
            return PPoly(self.alpha, out, d)
        c = Fraction(other)
        if not c:
            return self.alpha.zero()
        return PPoly(self.alpha, {m: v * c for m, v in self.terms.items()}, self.maxdeg)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, PPoly):
            return self.alpha == other.alpha and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- inspection --
    def is_constant(self) -> bool:
        return all(m == 0 for m in self.terms)

    def constant(self) -> Fraction:
        return self.terms.get(0, Fraction(0))

    def total_degree(self) -> int:
        return max((self.alpha.mono_degree(m) for m in self.terms), default=-1)

    def variables(self) -> set:
        out = set()
        for m in self.terms:
            out.update(i for i, _ in self.alpha.unpack(m))
        return out

    def linear_coeffs(self) -> dict:
        """For a polynomial of degree <= 1: {index: coefficient}; constant excluded."""
        out = {}
        for m, c in self.terms.items():
            if m == 0:
                continue
            pairs = self.alpha.unpack(m)
            if len(pairs) != 1 or pairs[0][1] != 1:
                raise ValueError("not a linear polynomial")
            out[pairs[0][0]] = c
        return out

    def evaluate(self, point) -> Fraction:
        """Value at ``point`` (sequence or mapping index -> rational)."""
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for i, e in self.alpha.unpack(m):
                x = point[i]
                v *= x if e == 1 else x**e
                if not v:
                    break
            total += v
        return total

    def subs(self, mapping: dict) -> PPoly:
        """Substitute parameters by parameter polynomials (index -> PPoly)."""
        if not mapping:
            return self
        unpack = self.alpha.unpack
        out = {}

        def acc(m, c):
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)

        for m, c in self.terms.items():
            hit = [(i, e) for i, e in unpack(m) if i in mapping]
            if not hit:
                acc(m, c)
                continue
            prod = {m - sum(e << (BITS * i) for i, e in hit): c}
            for i, e in hit:
                sub = mapping[i].terms
                for _ in range(e):
                    if len(sub) == 1 and 0 in sub:
                        k = sub[0]
                        prod = {mm: v * k for mm, v in prod.items()}
                        continue
                    new = {}
                    for m1, c1 in prod.items():
                        for m2, c2 in sub.items():
                            mm = m1 + m2
                            v = new.get(mm, 0) + c1 * c2
                            if v:
                                new[mm] = v
                            else:
                                new.pop(mm, None)
                    prod = new
                if not prod:
                    break
            for mm, v in prod.items():
                acc(mm, v)
        return PPoly(self.alpha, out)

    def partial_eval(self, values: dict) -> PPoly:
        """Substitute rational values for some parameters."""
        return self.subs({i: self.alpha.const(v) for i, v in values.items()})

    def to_poly(self, ring: PolyRing, var_map: dict) -> Poly:
        """Dense copy in ``ring`` where parameter i is variable var_map[i]."""
        out = {}
        n = ring.nvars
        for m, c in self.terms.items():
            t = [0] * n
            for i, e in self.alpha.unpack(m):
                t[var_map[i]] = e
            out[tuple(t)] = c
        return Poly(ring, out)

    def __str__(self):
        if not self.terms:
            return "0"
        items = sorted(
            self.terms.items(),
            key=lambda mc: (self.alpha.mono_degree(mc[0]), [(-i, e) for i, e in self.alpha.unpack(mc[0])]),
            reverse=True,
        )
        s = ""
        for k, (m, c) in enumerate(items):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if m == 0:
                body = format_coeff(a)
            elif a == 1:
                body = self.alpha.format_mono(m)
            else:
                body = f"{format_coeff(a)}*{self.alpha.format_mono(m)}"
            if k == 0:
                s = ("-" if sign == "-" else "") + body
            else:
                s += f" {sign} {body}"
        return s

    __repr__ = __str__


class ParamPoly:
    """Polynomial in the x-variables whose coefficients are :class:`PPoly`."""

    __slots__ = ("ring", "alpha", "terms")

    def __init__(self, ring: PolyRing, alpha: ParamAlphabet, terms=None):
        self.ring = ring
        self.alpha = alpha
        self.terms = {t: c for t, c in (terms or {}).items() if c}

    @classmethod
    def from_poly(cls, f: Poly, alpha: ParamAlphabet) -> ParamPoly:
        return cls(f.ring, alpha, {t: alpha.const(c) for t, c in f.terms.items()})

    def _check(self, other):
        if self.ring != other.ring:
            raise ContextError(f"{self.ring!r} vs {other.ring!r}")
        if self.alpha != other.alpha:
            raise ContextError("different parameter alphabets")

    def __bool__(self):
        return bool(self.terms)

    def support(self) -> list:
        return sort_terms(self.terms)

    def items(self) -> list:
        return [(t, self.terms[t]) for t in self.support()]

    def coeff(self, t: Term) -> PPoly:
        return self.terms.get(tuple(t), self.alpha.zero())

    def coefficients(self) -> list:
        """Parameter coefficients, in descending order of their x-terms."""
        return [c for _, c in self.items()]

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for t, c in other.terms.items():
            v = out[t] + c if t in out else c
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        return ParamPoly(self.ring, self.alpha, out)

    def __neg__(self):
        return ParamPoly(self.ring, self.alpha, {t: -c for t, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def mul_term(self, t: Term, c=None) -> ParamPoly:
        out = {}
        for s, v in self.terms.items():
            out[tmul(s, t)] = v if c is None else v * c
        return ParamPoly(self.ring, self.alpha, out)

    def scale(self, c) -> ParamPoly:
        return ParamPoly(self.ring, self.alpha, {t: v * c for t, v in self.terms.items()})

    def specialize(self, point) -> Poly:
        return Poly(self.ring, {t: c.evaluate(point) for t, c in self.terms.items()})

    def subs(self, mapping: dict) -> ParamPoly:
        return ParamPoly(self.ring, self.alpha, {t: c.subs(mapping) for t, c in self.terms.items()})

    def subs_last_zero(self) -> ParamPoly:
        last = self.ring.last
        return ParamPoly(self.ring, self.alpha, {t: c for t, c in self.terms.items() if t[last] == 0})

    def restrict(self, ring: PolyRing = None) -> ParamPoly:
        ring = ring or self.ring.drop_last()
        last = self.ring.last
        return ParamPoly(ring, self.alpha, {t[:-1]: c for t, c in self.terms.items() if t[last] == 0})

    def variables(self) -> set:
        out = set()
        for c in self.terms.values():
            out |= c.variables()
        return out

    def __eq__(self, other):
        return (
            isinstance(other, ParamPoly)
            and self.ring == other.ring
            and self.alpha == other.alpha
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for t, c in self.items():
            ts = self.ring.format_term(t)
            if c == 1:
                parts.append(ts)
            elif c == -1:
                parts.append(f"-{ts}")
            elif c.is_constant():
                parts.append(f"{c}*{ts}" if sum(t) else str(c))
            else:
                parts.append(f"({c})*{ts}" if sum(t) else f"({c})")
        s = parts[0]
        for p in parts[1:]:
            s += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return s

    __repr__ = __str__
