"""Buchberger's algorithm over Q with degrevlex, and the saturation/lifting tests built on it."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction

from .core import (
    ContextError,
    Poly,
    PolyRing,
    Term,
    coprime,
    degrevlex_key,
    divides,
    require_homogeneous,
    tdiv,
    tlcm,
    tmul,
    var_term,
)
from .linalg import nullspace
from .monomial import HilbertPoly, MonomialIdeal


class PreconditionError(ValueError):
    """An input violates a documented precondition."""


def _heap_key(t: Term):
    # heapq is a min-heap; this key is smallest for the degrevlex-largest term
    return (-sum(t), tuple(reversed(t)))


def reduce_terms(terms: dict, basis, full: bool = True) -> dict:
    """Remainder of the polynomial ``terms`` by ``basis`` (monic polys, distinct heads).

    The largest reducible term is rewritten first, always with the first basis
    element whose leading term divides it.  With ``full=False`` only the
    leading term is reduced (top reduction).
    """
    f = dict(terms)
    heads = [(g.lt(), g) for g in basis]
    heap = [(_heap_key(t), t) for t in f]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, t = heapq.heappop(heap)
        c = f.pop(t, None)
        if not c:
            continue  # stale heap entry
        for h, g in heads:
            if divides(h, t):
                break
        else:
            rem[t] = c
            if not full:
                rem.update(f)
                return rem
            continue
        q = tdiv(t, h)
        for s, v in g.terms.items():
            if s == h:
                continue
            u = tmul(s, q)
            old = f.get(u)
            nv = (old or 0) - c * v
            if nv:
                if old is None:
                    heapq.heappush(heap, (_heap_key(u), u))
                f[u] = nv
            else:
                f.pop(u, None)
    return rem


class GroebnerBasis:
    """Reduced Gröbner basis: monic, interreduced, sorted by leading term descending."""

    def __init__(self, ring: PolyRing, polys):
        self.ring = ring
        self.polys = tuple(polys)
        self._initial = None

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __eq__(self, other):
        return isinstance(other, GroebnerBasis) and self.ring == other.ring and set(self.polys) == set(other.polys)

    def __hash__(self):
        return hash((self.ring, frozenset(self.polys)))

    def __str__(self):
        return "{" + ", ".join(str(g) for g in self.polys) + "}"

    def __repr__(self):
        return f"GroebnerBasis{self}"

    def is_zero(self) -> bool:
        return not self.polys

    def is_unit(self) -> bool:
        return any(sum(g.lt()) == 0 for g in self.polys)

    def leading_terms(self) -> list:
        return [g.lt() for g in self.polys]

    def initial_ideal(self) -> MonomialIdeal:
        if self._initial is None:
            self._initial = MonomialIdeal(self.ring, self.leading_terms())
        return self._initial

    def normal_form(self, f: Poly) -> Poly:
        if f.ring != self.ring:
            raise ContextError(f"{f.ring!r} vs {self.ring!r}")
        return Poly._raw(self.ring, reduce_terms(f.terms, self.polys))

    def contains(self, f: Poly) -> bool:
        return not self.normal_form(f)

    def contains_ideal(self, other: GroebnerBasis) -> bool:
        return all(self.contains(g) for g in other.polys)

    def hilbert_polynomial(self) -> HilbertPoly:
        return self.initial_ideal().hilbert_polynomial()

    def hilbert_function(self, t: int) -> int:
        return self.initial_ideal().hilbert_function(t)

    def restrict(self) -> list:
        """Images of the basis elements under x_n := 0, in the ring without x_n."""
        sub = self.ring.drop_last()
        return [g.restrict(sub) for g in self.polys]


# ---------- Buchberger ----------

def _interreduce(ring, G) -> list:
    G = [g.monic() for g in G if g]
    # keep only elements with minimal leading terms
    G.sort(key=lambda g: degrevlex_key(g.lt()))
    minimal = []
    for g in G:
        if not any(divides(h.lt(), g.lt()) for h in minimal):
            minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = Poly._raw(ring, reduce_terms(g.terms, others))
        out.append(r.monic())
    out.sort(key=lambda g: degrevlex_key(g.lt()), reverse=True)
    return out


def buchberger(gens, ring: PolyRing = None, homogeneous: bool = False) -> GroebnerBasis:
    """Reduced degrevlex Gröbner basis of the ideal generated by ``gens``.

    Normal selection strategy (smallest lcm first) with Buchberger's
    coprime and chain criteria.  ``homogeneous=True`` enforces homogeneous
    input; the parameter-ring computations pass inhomogeneous generators.
    """
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("need a ring for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ContextError(f"{g.ring!r} vs {ring!r}")
    if homogeneous:
        require_homogeneous(gens)
    G = []
    live = []  # live[k]: G[k] is still needed (no later leading term divides its own)
    pairs = []  # heap of (lcm degree, lcm key, i, j)
    done = set()

    def basis():
        return [g for g, ok in zip(G, live) if ok]

    def add(f):
        f = f.monic()
        k = len(G)
        lt = f.lt()
        retired = []
        for i in range(k):
            if live[i] and divides(lt, G[i].lt()):
                live[i] = False
                retired.append(G[i])
        G.append(f)
        live.append(True)
        for i in range(k):
            if live[i]:
                m = tlcm(G[i].lt(), lt)
                heapq.heappush(pairs, (sum(m), degrevlex_key(m)[1], i, k))
        # a retired element is congruent to its remainder modulo the live basis
        for g in retired:
            r = Poly._raw(ring, reduce_terms(g.terms, basis()))
            if r:
                add(r)

    for g in sorted((g for g in gens if g), key=lambda p: degrevlex_key(p.lt())):
        r = Poly._raw(ring, reduce_terms(g.terms, basis()))
        if r:
            add(r)
    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        if not (live[i] and live[j]):
            continue
        done.add((i, j))
        a, b = G[i].lt(), G[j].lt()
        if coprime(a, b):
            continue
        m = tlcm(a, b)
        chain = False
        for k in range(len(G)):
            if k in (i, j) or not live[k]:
                continue
            if divides(G[k].lt(), m):
                p1 = (min(i, k), max(i, k))
                p2 = (min(j, k), max(j, k))
                if p1 in done and p2 in done:
                    chain = True
                    break
        if chain:
            continue
        s = G[i].mul_term(tdiv(m, a)) - G[j].mul_term(tdiv(m, b))
        r = Poly._raw(ring, reduce_terms(s.terms, basis()))
        if r:
            add(r)
    return GroebnerBasis(ring, _interreduce(ring, basis()))


def normal_form(f: Poly, G: GroebnerBasis) -> Poly:
    return G.normal_form(f)


def initial_ideal(G: GroebnerBasis) -> MonomialIdeal:
    return G.initial_ideal()


def ideals_equal(a, b) -> bool:
    """Equality of ideals via their reduced Gröbner bases."""
    ga = a if isinstance(a, GroebnerBasis) else buchberger(a)
    gb = b if isinstance(b, GroebnerBasis) else buchberger(b)
    return ga == gb


# ---------- saturation ----------

def saturate_by_last_var(G: GroebnerBasis) -> GroebnerBasis:
    """I : x_n^infinity, by dividing basis elements by their x_n-part (degrevlex)."""
    return buchberger([g.divide_by_last_power() for g in G.polys], G.ring)


def colon_maximal(G: GroebnerBasis) -> list:
    """Polynomials spanning (I : m) modulo I, one batch per degree.

    Non-zero classes of (I : m)/I live below the regularity of I, which is at
    most the regularity bound of in(I); in each such degree t the candidates
    are combinations of the standard terms N(in(I))_t, and the condition
    x_i f in I is linear in their coefficients.
    """
    ring = G.ring
    if G.is_zero() or G.is_unit():
        return []
    J = G.initial_ideal()
    bound = J.regularity_bound()
    out = []
    for t in range(bound):
        basis = J.sous_escalier(t)
        if not basis:
            continue
        rows = {}
        for k, s in enumerate(basis):
            for i in range(ring.nvars):
                nf = reduce_terms({tmul(s, var_term(i, ring.nvars)): Fraction(1)}, G.polys)
                for u, c in nf.items():
                    rows.setdefault((i, u), {})[k] = c
        for v in nullspace(list(rows.values()), range(len(basis))):
            out.append(Poly(ring, {basis[k]: c for k, c in v.items()}))
    return out


def is_saturated(G: GroebnerBasis) -> bool:
    return not colon_maximal(G)


def saturate(G: GroebnerBasis) -> GroebnerBasis:
    """I^sat = I : m^infinity by iterating I <- I : m until it stabilizes."""
    while True:
        extra = colon_maximal(G)
        if not extra:
            return G
        G = buchberger(list(G.polys) + extra, G.ring)


def is_generic_last_var(G: GroebnerBasis) -> bool:
    """x_n is a non-zero-divisor modulo I^sat."""
    S = saturate(G)
    last = G.ring.last
    return all(t[last] == 0 for t in S.initial_ideal().gens)


def is_xn_lifting(I: GroebnerBasis, H: GroebnerBasis) -> bool:
    """The reduced basis of I restricts under x_n := 0 to the reduced basis of H."""
    if I.ring.drop_last() != H.ring:
        raise ContextError("I must live in one more variable than H")
    images = I.restrict()
    if len(images) != len(H.polys):
        return False
    if any(not g for g in images):
        return False
    return set(images) == set(H.polys)


# ---------- lifting verification ----------

@dataclass
class LiftingReport:
    is_lifting: bool
    saturated: bool
    generic: bool
    section_ok: bool
    xn_lifting: bool
    hp: HilbertPoly
    hp_section: HilbertPoly
    hp_target: HilbertPoly
    delta_ok: bool
    notes: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "is_lifting": self.is_lifting,
            "saturated": self.saturated,
            "x_n_generic": self.generic,
            "section_saturates_to_target": self.section_ok,
            "x_n_lifting": self.xn_lifting,
            "hilbert_polynomial": str(self.hp),
            "section_hilbert_polynomial": str(self.hp_section),
            "target_hilbert_polynomial": str(self.hp_target),
            "delta_check": self.delta_ok,
            "notes": list(self.notes),
        }


def _as_basis(x, ring=None) -> GroebnerBasis:
    if isinstance(x, GroebnerBasis):
        return x
    x = list(x)
    require_homogeneous(x)
    return buchberger(x, ring)


def verify_lifting(I_gens, Iprime_gens, ring=None, ring_prime=None) -> LiftingReport:
    """Decide whether I is a lifting of the saturated ideal I'.

    With degrevlex, x_n is generic for a saturated I exactly when no minimal
    generator of in(I) is divisible by x_n, and then (I : x_n) = I forces I to
    be saturated.  The section S = I|_{x_n=0} saturates to I' iff S is
    contained in I' and both have the same Hilbert polynomial.
    """
    Ip = _as_basis(Iprime_gens, ring_prime)
    I = _as_basis(I_gens, ring)
    if I.ring.drop_last() != Ip.ring:
        raise ContextError("I must live in one more variable than I'")
    if not is_saturated(Ip):
        raise PreconditionError("I' is not saturated")
    last = I.ring.last
    notes = []
    xn_free = all(t[last] == 0 for t in I.initial_ideal().gens)
    if xn_free:
        saturated = generic = True
    else:
        saturated = is_saturated(I)
        generic = is_generic_last_var(I)
        if not saturated:
            notes.append("I is not saturated")
        if not generic:
            notes.append("x_n is a zero-divisor modulo I^sat")
    section = buchberger(I.restrict(), Ip.ring) if not I.is_zero() else GroebnerBasis(Ip.ring, ())
    contained = Ip.contains_ideal(section)
    hp_section = section.hilbert_polynomial()
    section_ok = contained and hp_section == Ip.hilbert_polynomial()
    if not contained:
        notes.append("section is not contained in I'")
    elif not section_ok:
        notes.append("section saturation differs from I'")
    xn = is_xn_lifting(I, Ip)
    if not xn:
        notes.append("not an x_n-lifting of I'")
    hp = I.hilbert_polynomial()
    delta_ok = hp.delta() == Ip.hilbert_polynomial()
    ok = saturated and generic and section_ok
    if ok and not delta_ok:  # cannot happen by the exact sequence; guard anyway
        raise AssertionError("lifting with wrong Hilbert polynomial difference")
    return LiftingReport(ok, saturated, generic, section_ok, xn, hp, hp_section, Ip.hilbert_polynomial(), delta_ok, notes)


def is_lifting(I_gens, Iprime_gens) -> bool:
    return verify_lifting(I_gens, Iprime_gens).is_lifting
