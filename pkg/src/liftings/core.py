"""Terms, degrevlex, and exact polynomials over Q.

Terms are exponent tuples ``(e_0, ..., e_n)`` for the variables
``x_0 > x_1 > ... > x_n``.  Polynomials are sparse ``{term: Fraction}``
dictionaries bound to a :class:`PolyRing`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator

Term = tuple

MAX_EXPONENT = 2**16 - 1


class ContextError(ValueError):
    """Operands live in different ring contexts."""


# ---------- terms ----------

def deg(t: Term) -> int:
    return sum(t)


def tmul(a: Term, b: Term) -> Term:
    c = tuple(x + y for x, y in zip(a, b))
    if c and max(c) > MAX_EXPONENT:
        raise OverflowError("exponent exceeds 16-bit range")
    return c


def tdiv(a: Term, b: Term) -> Term:
    """Return a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def divides(a: Term, b: Term) -> bool:
    """True iff the term a divides the term b."""
    return all(x <= y for x, y in zip(a, b))


def tlcm(a: Term, b: Term) -> Term:
    return tuple(max(x, y) for x, y in zip(a, b))


def coprime(a: Term, b: Term) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def min_var(t: Term) -> int:
    """Index of the smallest variable dividing t (the largest index with e_i > 0).

    Returns -1 for the term 1.
    """
    for i in range(len(t) - 1, -1, -1):
        if t[i]:
            return i
    return -1


def var_term(i: int, nvars: int, e: int = 1) -> Term:
    return tuple(e if j == i else 0 for j in range(nvars))


def degrevlex_key(t: Term):
    """Sort key: larger key means larger term in degrevlex."""
    return (sum(t), tuple(-e for e in reversed(t)))


def degrevlex_cmp(a: Term, b: Term) -> int:
    """Compare two terms: 1 if a > b, -1 if a < b, 0 if equal."""
    if len(a) != len(b):
        raise ContextError("terms from different ring contexts")
    da, db = sum(a), sum(b)
    if da != db:
        return 1 if da > db else -1
    for i in range(len(a) - 1, -1, -1):
        if a[i] != b[i]:
            return 1 if a[i] < b[i] else -1
    return 0


def sort_terms(terms: Iterable[Term], descending: bool = True) -> list:
    return sorted(terms, key=degrevlex_key, reverse=descending)


def terms_of_degree(nvars: int, d: int) -> list:
    """All terms of degree d in nvars variables, descending in degrevlex."""
    out = []

    def rec(i, left, acc):
        if i == nvars - 1:
            out.append(tuple(acc + [left]))
            return
        for e in range(left, -1, -1):
            rec(i + 1, left - e, acc + [e])

    if nvars == 0:
        return [()] if d == 0 else []
    rec(0, d, [])
    return sort_terms(out)


def format_term(t: Term, names) -> str:
    parts = []
    for name, e in zip(names, t):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# ---------- rings ----------

class PolyRing:
    """Ring context Q[x_0, ..., x_n] with a fixed variable order."""

    __slots__ = ("nvars", "names")

    def __init__(self, nvars: int, names=None):
        if names is None:
            names = tuple(f"x{i}" for i in range(nvars))
        names = tuple(names)
        if len(names) != nvars:
            raise ValueError("need one name per variable")
        self.nvars = nvars
        self.names = names

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)})"

    @property
    def last(self) -> int:
        return self.nvars - 1

    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return Poly(self, {(0,) * self.nvars: Fraction(1)})

    def gen(self, i: int) -> Poly:
        return Poly(self, {var_term(i, self.nvars): Fraction(1)})

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.nvars)]

    def term(self, t: Term, c=1) -> Poly:
        if len(t) != self.nvars:
            raise ContextError("term length does not match ring")
        return Poly(self, {tuple(t): Fraction(c)} if c else {})

    def extend(self, name=None) -> PolyRing:
        """The ring with one more (smallest) variable appended."""
        name = name or f"x{self.nvars}"
        return PolyRing(self.nvars + 1, self.names + (name,))

    def drop_last(self) -> PolyRing:
        return PolyRing(self.nvars - 1, self.names[:-1])

    def format_term(self, t: Term) -> str:
        return format_term(t, self.names)


# ---------- polynomials ----------

class Poly:
    """Polynomial with rational coefficients; immutable by convention."""

    __slots__ = ("ring", "terms", "_lt")

    def __init__(self, ring: PolyRing, terms=None):
        self.ring = ring
        self.terms = {t: c for t, c in (terms or {}).items() if c}
        self._lt = None

    @classmethod
    def _raw(cls, ring, terms):
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._lt = None
        return p

    # -- structure --
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def support(self) -> list:
        """Terms with non-zero coefficient, descending in degrevlex."""
        return sort_terms(self.terms)

    def items(self) -> list:
        return [(t, self.terms[t]) for t in self.support()]

    def lt(self) -> Term:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        if self._lt is None:
            self._lt = max(self.terms, key=degrevlex_key)
        return self._lt

    def lc(self) -> Fraction:
        return self.terms[self.lt()]

    def coeff(self, t: Term) -> Fraction:
        return self.terms.get(tuple(t), Fraction(0))

    def degree(self) -> int:
        return max((sum(t) for t in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(t) for t in self.terms}) <= 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    # -- arithmetic --
    def _check(self, other):
        if self.ring != other.ring:
            raise ContextError(f"{self.ring!r} vs {other.ring!r}")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = self.ring.one() * other
        self._check(other)
        out = dict(self.terms)
        for t, c in other.terms.items():
            v = out.get(t, 0) + c
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        return Poly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.ring, {t: -c for t, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = self.ring.one() * other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly):
            self._check(other)
            out = {}
            for t1, c1 in self.terms.items():
                for t2, c2 in other.terms.items():
                    t = tmul(t1, t2)
                    v = out.get(t, 0) + c1 * c2
                    if v:
                        out[t] = v
                    else:
                        out.pop(t, None)
            return Poly._raw(self.ring, out)
        c = Fraction(other)
        if not c:
            return self.ring.zero()
        return Poly._raw(self.ring, {t: v * c for t, v in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def mul_term(self, t: Term, c=1) -> Poly:
        c = Fraction(c)
        return Poly._raw(self.ring, {tmul(s, t): v * c for s, v in self.terms.items()} if c else {})

    def monic(self) -> Poly:
        return self * (1 / self.lc()) if self.terms else self

    def subs_last_zero(self) -> Poly:
        """Set the last variable to zero, staying in the same ring."""
        last = self.ring.last
        return Poly._raw(self.ring, {t: c for t, c in self.terms.items() if t[last] == 0})

    def restrict(self, ring: PolyRing = None) -> Poly:
        """Image under x_n := 0 in the ring without the last variable."""
        ring = ring or self.ring.drop_last()
        last = self.ring.last
        return Poly._raw(ring, {t[:-1]: c for t, c in self.terms.items() if t[last] == 0})

    def extend(self, ring: PolyRing = None) -> Poly:
        """Embed into the ring with one more variable."""
        ring = ring or self.ring.extend()
        pad = (0,) * (ring.nvars - self.ring.nvars)
        return Poly._raw(ring, {t + pad: c for t, c in self.terms.items()})

    def permute(self, ring: PolyRing, perm) -> Poly:
        """Rename variables: x_i goes to x_{perm[i]} of ``ring``."""
        out = {}
        for t, c in self.terms.items():
            new = [0] * ring.nvars
            for i, e in enumerate(t):
                new[perm[i]] = e
            out[tuple(new)] = c
        return Poly._raw(ring, out)

    def divide_by_last_power(self) -> Poly:
        """Divide by the largest power of the last variable dividing self."""
        if not self.terms:
            return self
        last = self.ring.last
        k = min(t[last] for t in self.terms)
        if k == 0:
            return self
        return Poly._raw(self.ring, {t[:last] + (t[last] - k,): c for t, c in self.terms.items()})

    def homogeneous_part(self, d: int) -> Poly:
        return Poly._raw(self.ring, {t: c for t, c in self.terms.items() if sum(t) == d})

    # -- comparison and printing --
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for t, c in self.items():
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if sum(t) == 0:
                body = format_coeff(a)
            elif a == 1:
                body = self.ring.format_term(t)
            else:
                body = f"{format_coeff(a)}*{self.ring.format_term(t)}"
            out.append((sign, body))
        first_sign, first = out[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Poly({self})"


def spoly(f: Poly, g: Poly) -> Poly:
    """S-polynomial (lcm/lt f) f/lc f - (lcm/lt g) g/lc g."""
    if not f or not g:
        raise ValueError("S-polynomial of a zero polynomial")
    f._check(g)
    a, b = f.lt(), g.lt()
    m = tlcm(a, b)
    return f.mul_term(tdiv(m, a), 1 / f.lc()) - g.mul_term(tdiv(m, b), 1 / g.lc())


def require_homogeneous(polys: Iterable[Poly]) -> None:
    for p in polys:
        if not p.is_homogeneous():
            raise ValueError(f"non-homogeneous polynomial: {p}")


def iter_terms_upto(nvars: int, d: int) -> Iterator[Term]:
    for k in range(d + 1):
        yield from terms_of_degree(nvars, k)

