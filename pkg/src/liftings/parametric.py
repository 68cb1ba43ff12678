"""Parametric families of marked polynomials and the ideals cutting them out.

Both flavours share one representation: a list of heads x^α and, for each,
a tail ``{term: coefficient}`` supported on the sous-escalier of the head
ideal.  Coefficients are :class:`~liftings.params.PPoly` for generic families
and plain ``Fraction`` after specialization; every routine here works with
either, so a constraint evaluated at a point is computed by the very same code
that produced it symbolically.

* Gröbner flavour (strata): tails only below the head in degrevlex; reduction
  by any head dividing a term, with a selectable reducer choice.
* Marked flavour (Pommaret): tails over the whole sous-escalier in the head's
  degree; each term of the head ideal is rewritten with its unique Pommaret
  divisor, multiplied only by multiplicative variables.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .core import Poly, PolyRing, Term, coprime, degrevlex_key, divides, min_var, tdiv, tlcm, tmul, var_term
from .groebner import GroebnerBasis, buchberger, reduce_terms
from .linalg import CONST, Eliminator, rank, solve_linear
from .monomial import MonomialIdeal, NotQuasiStable, pommaret_cone_contains
from .params import ParamAlphabet, ParamPoly, PPoly


class ReductionLoop(RuntimeError):
    """Marked reduction revisited a term: the head set is not a Pommaret basis."""


# ---------- marked sets ----------

class MarkedSet:
    """Monic marked polynomials x^α + tail_α with pairwise distinct heads."""

    def __init__(self, ring: PolyRing, heads, tails, alpha: ParamAlphabet = None, kind="stratum", head_ideal=None):
        self.ring = ring
        self.heads = [tuple(h) for h in heads]
        self.tails = [dict(t) for t in tails]
        self.alpha = alpha
        self.kind = kind
        if len(set(self.heads)) != len(self.heads):
            raise ValueError("heads must be pairwise distinct")
        self.head_ideal = head_ideal or MonomialIdeal(ring, self.heads)
        self._index = {h: i for i, h in enumerate(self.heads)}

    def __len__(self):
        return len(self.heads)

    def tail(self, head: Term) -> dict:
        return self.tails[self._index[tuple(head)]]

    def is_symbolic(self) -> bool:
        return self.alpha is not None

    def polys(self) -> list:
        """ParamPoly (symbolic) or Poly (numeric) versions, heads included."""
        out = []
        for h, t in zip(self.heads, self.tails):
            if self.is_symbolic():
                terms = dict(t)
                terms[h] = self.alpha.const(1)
                out.append(ParamPoly(self.ring, self.alpha, terms))
            else:
                terms = dict(t)
                terms[h] = Fraction(1)
                out.append(Poly(self.ring, terms))
        return out

    def specialize(self, point) -> MarkedSet:
        """Substitute rational values for all parameters."""
        if not self.is_symbolic():
            return self
        tails = []
        for t in self.tails:
            nt = {}
            for s, c in t.items():
                v = c.evaluate(point)
                if v:
                    nt[s] = v
            tails.append(nt)
        return MarkedSet(self.ring, self.heads, tails, None, self.kind, self.head_ideal)

    def subs(self, mapping: dict) -> MarkedSet:
        """Substitute parameter polynomials for some parameters."""
        tails = []
        for t in self.tails:
            nt = {}
            for s, c in t.items():
                v = c.subs(mapping)
                if v:
                    nt[s] = v
            tails.append(nt)
        return MarkedSet(self.ring, self.heads, tails, self.alpha, self.kind, self.head_ideal)

    def variables(self) -> set:
        out = set()
        for t in self.tails:
            for c in t.values():
                out |= c.variables()
        return out

    def specialized_polys(self, point) -> list:
        return self.specialize(point).polys()

    def __str__(self):
        return "{" + ", ".join(str(p) for p in self.polys()) + "}"


def _make_alphabet(heads, tail_terms, prefix="c") -> ParamAlphabet:
    keys = [(h, g) for h, ts in zip(heads, tail_terms) for g in ts]
    return ParamAlphabet.positional(keys, prefix)


def generic_stratum_set(J: MonomialIdeal, prefix="c") -> MarkedSet:
    """One polynomial per minimal generator, tails over the smaller standard terms."""
    heads = list(J.gens)
    tail_terms = []
    for h in heads:
        below = degrevlex_key(h)
        tail_terms.append([g for g in J.sous_escalier(sum(h)) if degrevlex_key(g) < below])
    alpha = _make_alphabet(heads, tail_terms, prefix)
    tails = []
    k = 0
    for ts in tail_terms:
        tails.append({g: alpha.var(k + i) for i, g in enumerate(ts)})
        k += len(ts)
    return MarkedSet(J.ring, heads, tails, alpha, "stratum", J)


def generic_marked_set(J: MonomialIdeal, m: int = 0, prefix="c") -> MarkedSet:
    """Marked set over P(J_{>=m}); tails over all of N(J) in each head's degree."""
    if not J.is_quasi_stable():
        raise NotQuasiStable(f"{J} is not quasi-stable")
    T = J.truncate(m)
    heads = list(T.pommaret_basis())
    tail_terms = [J.sous_escalier(sum(h)) for h in heads]
    alpha = _make_alphabet(heads, tail_terms, prefix)
    tails = []
    k = 0
    for ts in tail_terms:
        tails.append({g: alpha.var(k + i) for i, g in enumerate(ts)})
        k += len(ts)
    return MarkedSet(J.ring, heads, tails, alpha, "marked", T)


# ---------- reduction ----------

def _is_zero(c) -> bool:
    return not c


def _acc(out: dict, t: Term, c) -> None:
    v = out.get(t)
    v = c if v is None else v + c
    if _is_zero(v):
        out.pop(t, None)
    else:
        out[t] = v


class Reducer:
    """Memoized per-term normal forms modulo a marked set.

    ``NF(x^δ) = -Σ c_γ NF(x^γ x^δ / x^β)`` for the chosen reducer x^β of x^δ;
    normal forms of polynomials are the linear extension.
    """

    def __init__(self, G: MarkedSet, strategy: str = "first"):
        self.G = G
        self.strategy = strategy
        self.cache = {}
        self._active = set()
        self.one = G.alpha.const(1) if G.is_symbolic() else Fraction(1)
        if G.kind == "marked":
            self.cone_min = {h: max(min_var(h), 0) for h in G.heads}
            self.min_degree = min((sum(h) for h in G.heads), default=0)

    def reducer(self, t: Term):
        G = self.G
        if G.kind == "marked":
            if sum(t) < self.min_degree:
                return None
            for h in G.heads:
                if pommaret_cone_contains(h, t):
                    return h
            return None
        cands = [h for h in G.heads if divides(h, t)]
        if not cands:
            return None
        return cands[0] if self.strategy == "first" else cands[-1]

    def term_nf(self, t: Term) -> dict:
        r = self.cache.get(t)
        if r is not None:
            return r
        h = self.reducer(t)
        if h is None:
            r = {t: self.one}
        else:
            if t in self._active:
                raise ReductionLoop(f"reduction of {self.G.ring.format_term(t)} loops")
            self._active.add(t)
            q = tdiv(t, h)
            r = {}
            for g, c in self.G.tail(h).items():
                for u, v in self.term_nf(tmul(g, q)).items():
                    _acc(r, u, -(c * v))
            self._active.discard(t)
        self.cache[t] = r
        return r

    def nf(self, f: dict) -> dict:
        out = {}
        for t, c in f.items():
            for u, v in self.term_nf(t).items():
                _acc(out, u, c * v)
        return out


def marked_reduce(f: dict, G: MarkedSet, strategy="first") -> dict:
    return Reducer(G, strategy).nf(f)


# ---------- constraint ideals ----------

def _primitive(c):
    """Scale a parameter polynomial to integer coefficients with content 1 and positive lead."""
    if not isinstance(c, PPoly) or not c.terms:
        return c
    den = 1
    for v in c.terms.values():
        den = den * v.denominator // gcd(den, v.denominator)
    nums = [int(v * den) for v in c.terms.values()]
    g = 0
    for x in nums:
        g = gcd(g, x)
    lead = max(c.terms, key=lambda mo: (c.alpha.mono_degree(mo), [(-i, e) for i, e in c.alpha.unpack(mo)]))
    s = Fraction(den, g)
    if c.terms[lead] < 0:
        s = -s
    return c * s


class ConstraintIdeal:
    """Generators in the parameter ring, each tagged with where it came from."""

    def __init__(self, alpha: ParamAlphabet, gens=(), provenance=()):
        self.alpha = alpha
        self.gens = []
        self.provenance = []
        self._seen = set()
        for g, p in zip(gens, provenance):
            self.add(g, p)

    def add(self, g, tag) -> None:
        if isinstance(g, PPoly):
            if not g:
                return
            g = _primitive(g)
            key = frozenset(g.terms.items())
        else:
            g = Fraction(g)
            if not g:
                return
            g = self.alpha.const(1)
            key = frozenset(g.terms.items())
        if key in self._seen:
            return
        self._seen.add(key)
        self.gens.append(g)
        self.provenance.append(tag)

    def extend(self, other: ConstraintIdeal) -> None:
        for g, p in zip(other.gens, other.provenance):
            self.add(g, p)

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def is_inconsistent(self) -> bool:
        return any(g.is_constant() for g in self.gens)

    def evaluate(self, point) -> list:
        return [g.evaluate(point) for g in self.gens]

    def holds_at(self, point) -> bool:
        return all(g.evaluate(point) == 0 for g in self.gens)

    def variables(self) -> set:
        out = set()
        for g in self.gens:
            out |= g.variables()
        return out

    def param_ring(self, variables=None) -> PolyRing:
        """Polynomial ring over the given parameters (default: all of the alphabet)."""
        if variables is None:
            return PolyRing(len(self.alpha), self.alpha.names)
        return PolyRing(len(variables), [self.alpha.names[i] for i in variables])

    def to_polys(self, ring: PolyRing = None, variables=None) -> list:
        if variables is None:
            variables = range(len(self.alpha))
        variables = list(variables)
        ring = ring or self.param_ring(variables)
        vm = {v: k for k, v in enumerate(variables)}
        return [g.to_poly(ring, vm) for g in self.gens]

    def groebner(self, variables=None, weights=None) -> GroebnerBasis:
        """Reduced Gröbner basis over the parameters that occur (or the given ones).

        With ``weights`` (parameter -> positive integer) each parameter c_i is
        replaced by y_i^w_i first.  K[y] is free over K[c], so ideal equality is
        unaffected; when the ideal is homogeneous for the weights the image is
        homogeneous and Buchberger proceeds degree by degree.
        """
        variables = sorted(self.variables() if variables is None else variables)
        ring = self.param_ring(variables)
        polys = self.to_polys(ring, variables)
        if weights:
            w = [max(int(weights.get(v, 1)), 1) for v in variables]
            polys = [Poly(ring, {tuple(e * k for e, k in zip(t, w)): c for t, c in f.terms.items()}) for f in polys]
        return buchberger(polys, ring)

    def same_ideal(self, other: ConstraintIdeal, weights=None) -> bool:
        if self.alpha != other.alpha:
            raise ValueError("different parameter rings")
        used = sorted(self.variables() | other.variables())
        return self.groebner(used, weights) == other.groebner(used, weights)

    def is_homogeneous(self, weights) -> bool:
        """Each generator is homogeneous for the given parameter weights."""
        for g in self.gens:
            if len({sum(weights.get(i, 1) * e for i, e in self.alpha.unpack(m)) for m in g.terms}) > 1:
                return False
        return True

    def strings(self) -> list:
        return [str(g) for g in self.gens]

    def __str__(self):
        return "<" + ", ".join(self.strings()) + ">"


def _coefficients(nf: dict):
    for t in sorted(nf, key=degrevlex_key, reverse=True):
        yield t, nf[t]


def _pair_order(G: MarkedSet):
    for i in range(len(G.heads)):
        for j in range(i + 1, len(G.heads)):
            yield i, j


def s_polynomial(G: MarkedSet, i: int, j: int) -> dict:
    """S(f_i, f_j) with the heads cancelled: (m/h_i) tail_i - (m/h_j) tail_j."""
    hi, hj = G.heads[i], G.heads[j]
    m = tlcm(hi, hj)
    qi, qj = tdiv(m, hi), tdiv(m, hj)
    out = {}
    for g, c in G.tails[i].items():
        _acc(out, tmul(g, qi), c)
    for g, c in G.tails[j].items():
        _acc(out, tmul(g, qj), -c)
    return out


def stratum_conditions(G: MarkedSet, strategy="first", skip_coprime=False):
    """Yield (coefficient, provenance) from the reduced S-polynomials of G."""
    red = Reducer(G, strategy)
    fmt = G.ring.format_term
    for i, j in _pair_order(G):
        if skip_coprime and coprime(G.heads[i], G.heads[j]):
            continue
        nf = red.nf(s_polynomial(G, i, j))
        for t, c in _coefficients(nf):
            yield c, f"S({fmt(G.heads[i])}, {fmt(G.heads[j])}) @ {fmt(t)}"


def torus_weights(alpha: ParamAlphabet, direction) -> dict:
    """Weight <direction, tail - head> of each parameter C[head][tail].

    Gröbner strata are stable under the torus acting on the variables, so
    their ideals are homogeneous for every such weight; the lifting charts
    keep the weight of the last variable, ``direction = e_n``.
    """
    out = {}
    for i, (h, t) in enumerate(alpha.keys):
        out[i] = sum(l * (a - b) for l, a, b in zip(direction, t, h))
    return out


def positive_direction(nvars: int, degree: int) -> list:
    """A weight making every degrevlex-smaller tail heavier than its head."""
    N = degree + 1  # |t_i - h_i| <= degree, so the last non-zero entry dominates
    return [N ** i for i in range(nvars)]


def stratum_ideal(J: MonomialIdeal = None, G: MarkedSet = None, strategy="first") -> ConstraintIdeal:
    """The ideal a_J of the Gröbner stratum (from the generic set, or a given family G)."""
    if G is None:
        G = generic_stratum_set(J)
    out = ConstraintIdeal(G.alpha)
    for c, tag in stratum_conditions(G, strategy):
        out.add(c, tag)
    return out


def non_multiplicative_prolongations(G: MarkedSet):
    for k, h in enumerate(G.heads):
        for j in range(max(min_var(h), 0)):
            yield k, j


def marked_conditions(G: MarkedSet, reducer: Reducer = None):
    """Yield (coefficient, provenance) from NF(x_j f_α), x_j non-multiplicative for x^α."""
    red = reducer or Reducer(G)
    n = G.ring.nvars
    fmt = G.ring.format_term
    for k, j in non_multiplicative_prolongations(G):
        h = G.heads[k]
        x = var_term(j, n)
        f = {tmul(h, x): red.one}
        for g, c in G.tails[k].items():
            _acc(f, tmul(g, x), c)
        nf = red.nf(f)
        for t, c in _coefficients(nf):
            yield c, f"x{j}*F[{fmt(h)}] @ {fmt(t)}"


def marked_family_ideal(J: MonomialIdeal, m: int = 0, G: MarkedSet = None) -> ConstraintIdeal:
    """The ideal making the generic marked set over P(J_{>=m}) a marked basis."""
    if G is None:
        G = generic_marked_set(J, m)
    out = ConstraintIdeal(G.alpha)
    for c, tag in marked_conditions(G):
        out.add(c, tag)
    return out


def is_marked_basis(G: MarkedSet) -> bool:
    """Numeric marked set: every non-multiplicative prolongation reduces to zero."""
    return all(_is_zero(c) for c, _ in marked_conditions(G))


def specialize(obj, point):
    """Specialize a marked set or constraint ideal at a rational point."""
    if isinstance(obj, MarkedSet):
        return obj.specialize(point)
    if isinstance(obj, ConstraintIdeal):
        return obj.evaluate(point)
    raise TypeError(type(obj).__name__)


# ---------- linear elimination ----------

def linear_system(gens, alpha: ParamAlphabet) -> list:
    """Rows for solve_linear from degree <= 1 parameter polynomials."""
    rows = []
    for g in gens:
        row = {CONST: g.constant()} if g.constant() else {}
        row.update(g.linear_coeffs())
        rows.append(row)
    return rows


def eliminate_linear(gens, alpha: ParamAlphabet):
    """Solve linear generators, later parameters first.

    Returns ``None`` if inconsistent, else ``{pivot: PPoly}`` expressing each
    pivot through the remaining parameters.
    """
    sol = solve_linear(linear_system(gens, alpha), order=lambda k: k)
    if sol is None:
        return None
    out = {}
    for piv, expr in sol.items():
        p = alpha.const(expr.get(CONST, 0))
        for k, v in expr.items():
            if k != CONST:
                p = p + alpha.var(k) * v
        out[piv] = p
    return out


def substitution_relations(mapping: dict, alpha: ParamAlphabet) -> list:
    """Generators c_k - expr for a substitution mapping."""
    return [alpha.var(k) - e for k, e in sorted(mapping.items())]


# ---------- per-degree linear algebra against a concrete ideal ----------

def direct_sum_point(G_I: GroebnerBasis, J: MonomialIdeal, heads, degrees=()) -> dict:
    """Tail coefficients of the marked polynomials of I over ``heads``.

    For each degree t checks R_t = I_t ⊕ <N(J)_t> and, for each head x^α of
    degree t, returns the unique f_α = x^α + Σ c_γ x^γ in I with x^γ ∈ N(J)_t
    as ``{head: {γ: c_γ}}``.  Returns ``None`` if the direct sum fails.
    """
    out = {}
    heads_by_deg = {}
    for h in heads:
        heads_by_deg.setdefault(sum(h), []).append(h)
    inI = G_I.initial_ideal()
    for t in sorted(set(degrees) | set(heads_by_deg)):
        N = J.sous_escalier(t)
        if len(N) != len(inI.sous_escalier(t)):
            return None
        images = [reduce_terms({g: Fraction(1)}, G_I.polys) for g in N]
        if rank([{u: c for u, c in img.items()} for img in images]) != len(N):
            return None
        for h in heads_by_deg.get(t, []):
            coeffs = _express(images, reduce_terms({h: Fraction(1)}, G_I.polys))
            if coeffs is None:
                return None
            out[h] = {N[k]: -a for k, a in coeffs.items() if a}
    return out


def _express(images, target):
    """Coefficients a_k with Σ a_k images[k] = target (images independent), or None."""
    elim = Eliminator(order=lambda key: (1, degrevlex_key(key[1])) if key[0] == "s" else (0, -key[1]))
    for k, img in enumerate(images):
        row = {("s", u): c for u, c in img.items()}
        row[("n", k)] = Fraction(1)
        elim.add(row)
    row = {("s", u): c for u, c in target.items()}
    red = elim.reduce(row)
    if any(k[0] == "s" for k in red):
        return None
    # red = target - Σ a_k img_k - (Σ a_k n_k)  with the s-part gone, so a_k = -red[n_k]
    return {k[1]: -v for k, v in red.items()}


def triangular_variable(g: PPoly):
    """(v, a, h) with g = a*v + h, a a non-zero constant and v not in h; largest such v, or None."""
    alpha = g.alpha
    lone = {}
    seen = {}
    for mo, c in g.terms.items():
        pairs = alpha.unpack(mo)
        for i, _ in pairs:
            seen[i] = seen.get(i, 0) + 1
        if len(pairs) == 1 and pairs[0][1] == 1:
            lone[pairs[0][0]] = (mo, c)
    cands = [i for i in lone if seen[i] == 1]
    if not cands:
        return None
    v = max(cands)
    mo, a = lone[v]
    h = PPoly(alpha, {m: c for m, c in g.terms.items() if m != mo})
    return v, a, h


def reduce_constraints(gens, tags, alpha: ParamAlphabet, mapping=None, triangular=True, max_terms=30):
    """Eliminate parameters that occur linearly, substituting into the other generators.

    Linear generators are solved as a system; with ``triangular`` a generator
    a*v + h(other parameters) also eliminates v := -h/a when h is small.  The
    ideal generated by the substitution relations and the remaining
    generators equals the original one.  Returns ``(mapping, ConstraintIdeal)``,
    or ``(None, tag)`` when some generator becomes a non-zero constant.
    """
    mapping = dict(mapping or {})
    rest = list(zip(gens, tags))
    step = mapping
    steps = [mapping] if mapping else []
    while True:
        if step:
            # generators never contain eliminated parameters, so only the new step applies
            rest = [(g.subs(step), t) for g, t in rest]
        rest = [(g, t) for g, t in rest if g]
        for g, t in rest:
            if g.is_constant():
                return None, t
        lin = [(g, t) for g, t in rest if g.total_degree() <= 1]
        step = None
        if lin:
            step = eliminate_linear([g for g, _ in lin], alpha)
            if step is None:
                return None, "inconsistent linear conditions: " + "; ".join(t for _, t in lin[:3])
        elif triangular:
            best = None
            for g, _ in rest:
                if len(g.terms) > max_terms:
                    continue
                tv = triangular_variable(g)
                if tv and (best is None or (len(g.terms), -tv[0]) < best[0]):
                    best = ((len(g.terms), -tv[0]), tv)
            if best is not None:
                v, a, h = best[1]
                step = {v: h * (-1 / a)}
        if step is None:
            break
        steps.append(step)
    out = ConstraintIdeal(alpha)
    for g, t in rest:
        out.add(g, t)
    return compose_steps(steps), out


def compose_steps(steps) -> dict:
    """Compose successive eliminations into one substitution.

    Each step expresses its parameters through parameters that are either
    free or eliminated by a later step, so resolving from the last step back
    needs one substitution per parameter.
    """
    resolved = {}
    for step in reversed(steps):
        for k, e in step.items():
            need = {i: resolved[i] for i in e.variables() if i in resolved}
            resolved[k] = e.subs(need) if need else e
    return resolved
