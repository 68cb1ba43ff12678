"""Saturated quasi-stable ideals with a given Hilbert polynomial, and monomial liftings.

A saturated quasi-stable ideal J of K[x_0..x_k] has no minimal generator
divisible by x_k, so J is the extension of its section L = J|_{x_k=0}.
The section has Hilbert polynomial Δp and saturates to some Q in the same
family one variable down; conversely every quasi-stable L ⊆ Q of finite
colength c gives such a J with p_J = p_{Q K[x,x_k]} + c.  So the families
are built recursively by removing c terms from each Q, one minimal generator
at a time.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .core import PolyRing, degrevlex_key
from .monomial import HilbertPoly, MonomialIdeal


class NotAdmissible(ValueError):
    pass


def interpolate(points) -> HilbertPoly:
    """Lagrange interpolation through [(t, value), ...]."""
    out = HilbertPoly()
    for i, (ti, vi) in enumerate(points):
        basis = HilbertPoly([1])
        for j, (tj, _) in enumerate(points):
            if j != i:
                basis = basis * HilbertPoly([-tj, 1]) * Fraction(1, ti - tj)
        out = out + basis * vi
    return out


def admissible_polynomial(p_Y: HilbertPoly, c: int) -> HilbertPoly:
    """The polynomial p with Δp = p_Y and constant term c."""
    d = max(p_Y.degree, 0)
    pts = [(0, Fraction(0))]
    acc = Fraction(0)
    for t in range(1, d + 3):
        acc += p_Y(t)
        pts.append((t, acc))
    return interpolate(pts) + c


def gotzmann_number(p: HilbertPoly) -> int:
    """Number of terms in the Gotzmann representation
    p(t) = C(t+a_1, a_1) + C(t+a_2-1, a_2) + ... + C(t+a_r-(r-1), a_r).
    """
    rest = p
    r = 0
    while rest != HilbertPoly():
        a = rest.degree
        lead = rest.coeffs[-1]
        if lead < 0 or r > 10**5:
            raise NotAdmissible(f"{p} is not the Hilbert polynomial of a subscheme")
        rest = rest - HilbertPoly.binomial(a - r, a)
        r += 1
    return r


def _colength_subideals(Q: MonomialIdeal, c: int) -> list:
    """Monomial ideals L ⊆ Q with dim(Q/L) = c, as generator frozensets."""
    level = {frozenset(Q.gens)}
    for _ in range(c):
        nxt = set()
        for gens in level:
            L = MonomialIdeal(Q.ring, gens)
            for g in L.gens:
                nxt.add(frozenset(L.remove_generator(g).gens))
        level = nxt
    return [MonomialIdeal(Q.ring, g) for g in level]


def _sort(ideals) -> list:
    return sorted(ideals, key=lambda J: [degrevlex_key(g) for g in J.gens], reverse=True)


def monomial_liftings(Jprime: MonomialIdeal, p: HilbertPoly, ring: PolyRing = None) -> list:
    """Saturated quasi-stable J in one more variable with p_J = p and section saturating to J'."""
    ring = ring or Jprime.ring.extend()
    if not Jprime.is_quasi_stable() or not Jprime.is_saturated():
        raise ValueError("J' must be saturated and quasi-stable")
    base = Jprime.extend(ring).hilbert_polynomial()
    diff = p - base
    if not diff.is_constant() or diff.constant() < 0 or diff.constant().denominator != 1:
        if p.delta() != Jprime.hilbert_polynomial():
            raise NotAdmissible(f"Δ({p}) differs from the Hilbert polynomial of J'")
        return []
    c = int(diff.constant())
    out = []
    for L in _colength_subideals(Jprime, c):
        if L.is_quasi_stable():
            out.append(L.extend(ring))
    return _sort(out)


_CACHE = {}


def saturated_quasi_stable(nvars: int, p: HilbertPoly) -> list:
    """All saturated quasi-stable ideals of K[x_0..x_{nvars-1}] with Hilbert polynomial p."""
    key = (nvars, p.coeffs)
    if key in _CACHE:
        return list(_CACHE[key])
    ring = PolyRing(nvars)
    if not p.is_numerical():
        raise NotAdmissible(f"{p} is not numerical")
    if nvars == 1:
        if p == 1:
            res = [MonomialIdeal(ring, [])]
        elif p == 0:
            res = [MonomialIdeal(ring, [(0,)])]
        else:
            res = []
    elif p.degree > nvars - 1:
        res = []
    else:
        res = []
        for Q in saturated_quasi_stable(nvars - 1, p.delta()):
            res.extend(monomial_liftings(Q, p, ring))
    res = _sort(res)
    _CACHE[key] = tuple(res)
    return res


def enumerate_monomial_liftings(Jprime: MonomialIdeal, p: HilbertPoly):
    """(liftings of J', size of the pool of saturated quasi-stable ideals with polynomial p)."""
    if p.delta() != Jprime.hilbert_polynomial():
        raise NotAdmissible(f"Δ({p}) = {p.delta()} but J' has Hilbert polynomial {Jprime.hilbert_polynomial()}")
    pool = saturated_quasi_stable(Jprime.nvars + 1, p)
    lifts = monomial_liftings(Jprime, p)
    ring = Jprime.ring.extend()
    lifts = [MonomialIdeal(ring, J.gens) for J in lifts]
    return lifts, len(pool)


def binomial_count(n: int, k: int) -> int:
    return comb(n, k)
