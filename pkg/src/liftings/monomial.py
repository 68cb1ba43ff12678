"""Monomial ideals: Hilbert data, quasi-stability, Pommaret bases, saturation."""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .core import (
    PolyRing,
    Term,
    deg,
    divides,
    min_var,
    sort_terms,
    tdiv,
    terms_of_degree,
    tlcm,
    tmul,
    var_term,
)


class NotQuasiStable(ValueError):
    pass


# ---------- univariate Hilbert polynomials ----------

class HilbertPoly:
    """Polynomial in t with rational coefficients, ``coeffs[i]`` of t^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def binomial(cls, shift: int, r: int) -> HilbertPoly:
        """The polynomial binomial(t + shift, r) in t."""
        p = cls([1])
        for k in range(r):
            p = p * cls([shift - k, 1])
        return p * Fraction(1, factorial(r))

    def __call__(self, t) -> Fraction:
        v = Fraction(0)
        for c in reversed(self.coeffs):
            v = v * t + c
        return v

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other):
        if not isinstance(other, HilbertPoly):
            other = HilbertPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return HilbertPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return HilbertPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, HilbertPoly):
            other = HilbertPoly([other])
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, HilbertPoly):
            return HilbertPoly([c * Fraction(other) for c in self.coeffs])
        out = [Fraction(0)] * max(len(self.coeffs) + len(other.coeffs) - 1, 0)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return HilbertPoly(out)

    __rmul__ = __mul__

    def shift(self, s) -> HilbertPoly:
        """The polynomial t -> p(t + s)."""
        out = HilbertPoly()
        power = HilbertPoly([1])
        for c in self.coeffs:
            out = out + power * c
            power = power * HilbertPoly([s, 1])
        return out

    def delta(self) -> HilbertPoly:
        """First difference p(t) - p(t - 1)."""
        return self - self.shift(-1)

    def is_numerical(self) -> bool:
        """Integer valued at integers (checked on degree + 1 consecutive points)."""
        return all(self(k).denominator == 1 for k in range(len(self.coeffs) + 1))

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, HilbertPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == HilbertPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            a = abs(c)
            cs = str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                body = cs
            elif a == 1:
                body = mono
            else:
                body = f"{cs}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"HilbertPoly({self})"


# ---------- Hilbert series numerators ----------
# K(J) with HS(R/J) = K(J)(t) / (1 - t)^nvars, as integer coefficient lists.

def _padd(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pshift(a, k):
    return [0] * k + list(a)


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _minimalize(terms) -> list:
    ts = sorted(set(terms), key=lambda t: (sum(t), t))
    out = []
    for t in ts:
        if not any(divides(g, t) for g in out):
            out.append(t)
    return out


def _numerator(gens: tuple, nvars: int, memo: dict) -> list:
    key = gens
    if key in memo:
        return memo[key]
    if not gens:
        res = [1]
    elif any(sum(g) == 0 for g in gens):
        res = []
    else:
        # base case: pairwise coprime generators
        support_count = [0] * nvars
        for g in gens:
            for i, e in enumerate(g):
                if e:
                    support_count[i] += 1
        if max(support_count) <= 1:
            res = [1]
            for g in gens:
                res = _pmul(res, [1] + [0] * (sum(g) - 1) + [-1])
        else:
            i = max(range(nvars), key=lambda k: (support_count[k], -k))
            x = var_term(i, nvars)
            plus = tuple(sorted(_minimalize(list(gens) + [x])))
            colon = tuple(sorted(_minimalize([tuple(max(e - (1 if k == i else 0), 0) for k, e in enumerate(g)) for g in gens])))
            res = _padd(_numerator(plus, nvars, memo), _pshift(_numerator(colon, nvars, memo), 1))
    res = _trim(res)
    memo[key] = res
    return res


# ---------- monomial ideals ----------

class MonomialIdeal:
    """Monomial ideal given by its minimal generators B_J."""

    def __init__(self, ring: PolyRing, gens=()):
        if isinstance(ring, int):
            ring = PolyRing(ring)
        self.ring = ring
        gens = [tuple(g) for g in gens]
        for g in gens:
            if len(g) != ring.nvars:
                raise ValueError("generator length does not match ring")
        self.gens = tuple(sort_terms(_minimalize(gens)))
        self._numer = None
        self._pommaret = None
        self._hp = None

    # -- basic --
    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and self.ring == other.ring and set(self.gens) == set(other.gens)

    def __hash__(self):
        return hash((self.ring, frozenset(self.gens)))

    def __str__(self):
        if not self.gens:
            return "(0)"
        return "(" + ", ".join(self.ring.format_term(g) for g in self.gens) + ")"

    def __repr__(self):
        return f"MonomialIdeal{self}"

    def __contains__(self, t: Term) -> bool:
        return any(divides(g, t) for g in self.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(sum(g) == 0 for g in self.gens)

    def is_subset(self, other: MonomialIdeal) -> bool:
        return all(g in other for g in self.gens)

    def max_degree(self) -> int:
        return max((sum(g) for g in self.gens), default=0)

    def sous_escalier(self, t: int) -> list:
        """Degree-t terms outside J, descending in degrevlex."""
        if t < 0:
            return []
        return [s for s in terms_of_degree(self.nvars, t) if s not in self]

    def terms(self, t: int) -> list:
        """Degree-t terms of J, descending."""
        if t < 0:
            return []
        return [s for s in terms_of_degree(self.nvars, t) if s in self]

    # -- quasi-stability and Pommaret bases --
    def quasi_stability_witness(self):
        """A pair (generator, j) violating quasi-stability, or None.

        It suffices to test minimal generators: if x^a = x^b x^e with x^b in
        B_J and min(x^a) divides x^e, then x^a / min(x^a) is already in J;
        otherwise min(x^a) = min(x^b) and the condition for x^b multiplies up.
        """
        for g in self.gens:
            k = min_var(g)
            if k <= 0:
                continue
            u = list(g)
            u[k] -= 1
            for j in range(k):
                # x_j^t u in J for some t  <=>  some generator h has h_i <= u_i for i != j
                if not any(all(h[i] <= u[i] for i in range(self.nvars) if i != j) for h in self.gens):
                    return g, j
        return None

    def is_quasi_stable(self) -> bool:
        return self.quasi_stability_witness() is None

    def pommaret_basis(self) -> tuple:
        """Pommaret basis by involutive completion of the minimal generators."""
        if self._pommaret is None:
            if not self.is_quasi_stable():
                raise NotQuasiStable(f"{self} is not quasi-stable")
            P = set(self.gens)
            frontier = sorted(P, key=lambda t: (sum(t), t))
            while frontier:
                new = []
                for p in frontier:
                    for j in range(max(min_var(p), 0)):
                        q = tmul(p, var_term(j, self.nvars))
                        if not _in_pommaret_span(q, P) and q not in new:
                            new.append(q)
                P.update(new)
                frontier = sorted(new, key=lambda t: (sum(t), t))
            P = [p for p in P if not any(o != p and _in_cone(p, o) for o in P)]
            self._pommaret = tuple(sort_terms(P))
        return self._pommaret

    def pommaret_divisor(self, t: Term) -> Term:
        """The unique Pommaret basis element whose cone contains t."""
        for p in self.pommaret_basis():
            if _in_cone(t, p):
                return p
        raise ValueError(f"{self.ring.format_term(t)} not in ideal")

    # -- Hilbert data --
    def hilbert_numerator(self) -> list:
        if self._numer is None:
            self._numer = _numerator(tuple(sorted(self.gens)), self.nvars, {})
        return self._numer

    def hilbert_function(self, t: int) -> int:
        if t < 0:
            return 0
        n = self.nvars
        total = 0
        for i, k in enumerate(self.hilbert_numerator()):
            if k and t - i >= 0:
                total += k * comb(t - i + n - 1, n - 1)
        return total

    def hilbert_polynomial(self) -> HilbertPoly:
        if self._hp is None:
            n = self.nvars
            p = HilbertPoly()
            for i, k in enumerate(self.hilbert_numerator()):
                if k:
                    p = p + HilbertPoly.binomial(n - 1 - i, n - 1) * k
            self._hp = p
        return self._hp

    def hilbert_regularity(self) -> int:
        """Smallest r >= 0 with h(t) = p(t) for all t >= r."""
        return max(0, len(self.hilbert_numerator()) - 1 - (self.nvars - 1))

    def regularity_bound(self) -> int:
        """Upper bound for the Castelnuovo-Mumford regularity of J."""
        if not self.gens:
            return 0
        if self.is_quasi_stable():
            return max(sum(p) for p in self.pommaret_basis())
        m = self.gens[0]
        for g in self.gens[1:]:
            m = tlcm(m, g)
        return sum(m)

    # -- derived ideals --
    def colon_var_inf(self, i: int) -> MonomialIdeal:
        """J : x_i^infinity."""
        return MonomialIdeal(self.ring, [g[:i] + (0,) + g[i + 1:] for g in self.gens])

    def intersect(self, other: MonomialIdeal) -> MonomialIdeal:
        return MonomialIdeal(self.ring, [tlcm(a, b) for a in self.gens for b in other.gens])

    def saturate(self) -> MonomialIdeal:
        """J^sat as the intersection of the colons J : x_i^infinity."""
        if not self.gens:
            return self
        out = self.colon_var_inf(0)
        for i in range(1, self.nvars):
            out = out.intersect(self.colon_var_inf(i))
        return out

    def is_saturated(self) -> bool:
        return self.saturate() == self

    def satiety(self) -> int:
        """Smallest m with J_t = (J^sat)_t for every t >= m."""
        sat = self.saturate()
        a = self.hilbert_numerator()
        b = sat.hilbert_numerator()
        diff = _trim(_padd(a, [-x for x in b]))
        if not diff:
            return 0
        # diff / (1 - t)^n is the (finite) generating function of h_J - h_sat
        q = list(diff)
        for _ in range(self.nvars):
            q = _divide_one_minus_t(q)
        q = _trim(q)
        return len(q)

    def truncate(self, m: int) -> MonomialIdeal:
        """J_{>=m}."""
        if m <= 0:
            return self
        gens = []
        for g in self.gens:
            d = sum(g)
            if d >= m:
                gens.append(g)
            else:
                gens.extend(tmul(g, s) for s in terms_of_degree(self.nvars, m - d))
        return MonomialIdeal(self.ring, gens)

    def section(self) -> MonomialIdeal:
        """(J, x_n)/(x_n) in the ring without x_n."""
        if self.nvars < 2:
            raise ValueError("section needs at least two variables")
        last = self.nvars - 1
        return MonomialIdeal(self.ring.drop_last(), [g[:-1] for g in self.gens if g[last] == 0])

    def extend(self, ring: PolyRing = None) -> MonomialIdeal:
        """J K[x, x_n]."""
        ring = ring or self.ring.extend()
        pad = (0,) * (ring.nvars - self.nvars)
        return MonomialIdeal(ring, [g + pad for g in self.gens])

    def remove_generator(self, g: Term) -> MonomialIdeal:
        """The ideal J minus the single term g (g a minimal generator)."""
        if g not in self.gens:
            raise ValueError("not a minimal generator")
        rest = [h for h in self.gens if h != g]
        rest.extend(tmul(g, var_term(i, self.nvars)) for i in range(self.nvars))
        return MonomialIdeal(self.ring, rest)

    def polys(self):
        return [self.ring.term(g) for g in self.gens]


def _in_cone(t: Term, p: Term) -> bool:
    """t in the Pommaret cone of p."""
    if not divides(p, t):
        return False
    k = max(min_var(p), 0)
    return all(t[i] == p[i] for i in range(k))


def _in_pommaret_span(t: Term, P) -> bool:
    return any(_in_cone(t, p) for p in P)


def _divide_one_minus_t(a: list) -> list:
    """Exact division of a polynomial by (1 - t)."""
    a = _trim(a)
    if not a:
        return []
    # a = (1 - t) q  =>  q_k = a_k + q_{k-1}
    q = []
    acc = 0
    for k in range(len(a) - 1):
        acc += a[k]
        q.append(acc)
    if acc + a[-1] != 0:
        raise ArithmeticError("not divisible by 1 - t")
    return q


def minimalize(ring: PolyRing, generators) -> MonomialIdeal:
    return MonomialIdeal(ring, generators)


def sous_escalier(J: MonomialIdeal, t: int) -> list:
    return J.sous_escalier(t)


def pommaret_cone_contains(p: Term, t: Term) -> bool:
    return _in_cone(t, p)


__all__ = [
    "HilbertPoly",
    "MonomialIdeal",
    "NotQuasiStable",
    "minimalize",
    "pommaret_cone_contains",
    "sous_escalier",
    "tdiv",
    "deg",
]
