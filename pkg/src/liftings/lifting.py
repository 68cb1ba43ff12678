"""Families of liftings of a saturated ideal I' ⊂ K[x_0..x_{n-1}].

A lifting I ⊂ K[x_0..x_n] of I' is saturated, has x_n generic, and its
section by x_n = 0 saturates to I'.  In degrevlex, in(I) is then a saturated
quasi-stable monomial lifting J of in(I') with the same Hilbert polynomial,
so the liftings split into charts indexed by these J:

* ``lifting_gs``: one Gröbner stratum per J, cut by the S-polynomial
  conditions a_J and by the linear conditions b forcing the x_n-free tails
  into I'.
* ``lifting_ms``: one marked family per J over the Pommaret basis of
  J_{>=m-1} (m the satiety of the section of J), cut by the marked-basis
  conditions A and by the conditions B forcing the section of the family
  into I'.

Charts of the second kind are open in the lifting family; the strata of the
first kind are locally closed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .core import PolyRing, degrevlex_key, require_homogeneous
from .enumeration import NotAdmissible, enumerate_monomial_liftings
from .groebner import GroebnerBasis, PreconditionError, buchberger, is_saturated, reduce_terms
from .monomial import HilbertPoly, MonomialIdeal
from .parametric import (
    ConstraintIdeal,
    MarkedSet,
    Reducer,
    direct_sum_point,
    eliminate_linear,
    generic_marked_set,
    generic_stratum_set,
    marked_conditions,
    reduce_constraints,
    stratum_conditions,
    torus_weights,
)

log = logging.getLogger(__name__)


@dataclass
class LiftingProblem:
    """Saturated I' (as a reduced Gröbner basis) and the target Hilbert polynomial p."""

    Iprime: GroebnerBasis
    p: HilbertPoly

    def __post_init__(self):
        if not isinstance(self.Iprime, GroebnerBasis):
            gens = list(self.Iprime)
            require_homogeneous(gens)
            self.Iprime = buchberger(gens)
        if not is_saturated(self.Iprime):
            raise PreconditionError("I' is not saturated")
        if self.p.delta() != self.Iprime.hilbert_polynomial():
            raise NotAdmissible(
                f"Δ({self.p}) = {self.p.delta()} differs from the Hilbert polynomial "
                f"{self.Iprime.hilbert_polynomial()} of I'"
            )
        self.Jprime = self.Iprime.initial_ideal()
        if not self.Jprime.is_quasi_stable():
            raise PreconditionError(f"in(I') = {self.Jprime} is not quasi-stable: coordinates are not generic")
        self._lifts = None
        self.pool_size = None

    @property
    def ring_prime(self) -> PolyRing:
        return self.Iprime.ring

    @property
    def ring(self) -> PolyRing:
        return self.Iprime.ring.extend()

    def monomial_liftings(self) -> list:
        if self._lifts is None:
            self._lifts, self.pool_size = enumerate_monomial_liftings(self.Jprime, self.p)
        return list(self._lifts)

    def section_in_Iprime(self, f: dict) -> dict:
        """NF_{I'} of an x_n-free polynomial given as {term in K[x,x_n]: coeff}."""
        red = {}
        for t, c in f.items():
            if t[-1]:
                continue
            s = t[:-1]
            red[s] = red[s] + c if s in red else c
        return _nf_generic(red, self.Iprime)


def _nf_generic(f: dict, G: GroebnerBasis) -> dict:
    """Normal form with coefficients of any ring type (Fraction or PPoly) modulo a numeric basis.

    Reduction by a rational basis is Q-linear, so it is applied term by term.
    """
    out = {}
    for t, c in f.items():
        if not c:
            continue
        for u, v in reduce_terms({t: Fraction(1)}, G.polys).items():
            w = out.get(u)
            w = c * v if w is None else w + c * v
            if w:
                out[u] = w
            else:
                out.pop(u, None)
    return out


@dataclass
class LiftingChart:
    """One chart of the lifting family: a parametric family over J with its constraints."""

    kind: str  # "stratum" or "marked"
    J: MonomialIdeal
    family: MarkedSet  # after substituting the solved linear conditions
    constraints: ConstraintIdeal  # full ideal, including the substitution relations
    substitution: dict  # pivot parameter -> PPoly in the remaining ones
    m: int = None
    reduced: ConstraintIdeal = None  # non-linear part, in the free parameters only
    info: dict = field(default_factory=dict)

    @property
    def alpha(self):
        return self.family.alpha

    @property
    def empty(self) -> bool:
        return bool(self.info.get("empty"))

    def free_params(self) -> list:
        return sorted(self.family.variables() | self.reduced.variables())

    def full_point(self, values: dict) -> dict:
        """Extend values of the free parameters to all parameters through the substitution."""
        pt = {i: Fraction(0) for i in range(len(self.alpha))}
        pt.update({i: Fraction(v) for i, v in values.items()})
        for piv, expr in self.substitution.items():
            pt[piv] = expr.evaluate(pt)
        return pt

    def point_of(self, I) -> dict:
        """Coordinates of the ideal I in this chart, or ``None`` if I is outside its support."""
        G = I if isinstance(I, GroebnerBasis) else buchberger(list(I))
        if G.ring != self.J.ring:
            return None
        if self.kind == "stratum":
            if G.initial_ideal() != self.J:
                return None
            pt = {}
            heads = dict((g.lt(), g) for g in G.polys)
            for k, (h, t) in enumerate(self.alpha.keys):
                pt[k] = heads[h].coeff(t)
            # the reduced basis only has tails below the head; any stray term means
            # the basis is not in the shape of the generic set
            for h, g in heads.items():
                for t in g.support():
                    if t != h and (h, t) not in self._keyset:
                        return None
            return pt
        heads = self.family.heads
        tails = direct_sum_point(G, self.J, heads, range(self.m - 1 if self.m else 0, self._degree_bound(G) + 1))
        if tails is None:
            return None
        pt = {}
        for k, (h, t) in enumerate(self.alpha.keys):
            pt[k] = tails[h].get(t, Fraction(0))
        return pt

    @property
    def _keyset(self):
        ks = getattr(self, "_ks", None)
        if ks is None:
            ks = self._ks = set(self.alpha.keys)
        return ks

    def _degree_bound(self, G: GroebnerBasis) -> int:
        inI = G.initial_ideal()
        return max(inI.hilbert_regularity(), self.J.hilbert_regularity(), self.J.max_degree(), (self.m or 1) - 1) + 1

    def holds_at(self, pt: dict) -> bool:
        return self.constraints.holds_at(pt)

    def weights(self) -> dict:
        """Parameter weights for which the constraints are homogeneous (scaling of x_n)."""
        n = self.J.ring.nvars
        return torus_weights(self.alpha, [0] * (n - 1) + [1])

    def contains(self, I) -> bool:
        pt = self.point_of(I)
        return pt is not None and self.holds_at(pt)

    def specialize(self, pt: dict) -> list:
        """Polynomials of the family at a point (given on all parameters)."""
        G = MarkedSet(self.J.ring, self.family.heads, _orig_tails(self), self.alpha, self.family.kind, self.family.head_ideal)
        return G.specialize(pt).polys()

    def as_dict(self) -> dict:
        ring = self.J.ring
        fam = []
        for h, t in zip(self.family.heads, self.family.tails):
            fam.append(
                {
                    "head": ring.format_term(h),
                    "tail": [{"term": ring.format_term(s), "coeff_poly": str(t[s])} for s in sorted(t, key=degrevlex_key, reverse=True)],
                }
            )
        out = {
            "kind": self.kind,
            "J": str(self.J),
            "params": [
                {"name": self.alpha.names[i], "head": ring.format_term(h), "term": ring.format_term(t)}
                for i, (h, t) in enumerate(self.alpha.keys)
            ],
            "free_params": [self.alpha.names[i] for i in self.free_params()],
            "family": fam,
            "constraints": self.constraints.strings(),
            "provenance": list(self.constraints.provenance),
        }
        if self.m is not None:
            out["m"] = self.m
        out["symbolic"] = getattr(self, "symbolic", True)
        out.update({k: v for k, v in self.info.items() if isinstance(v, (int, str, bool, float, list))})
        return out


def _orig_tails(chart: LiftingChart) -> list:
    """Tails of the generic set (every parameter its own coefficient)."""
    alpha = chart.alpha
    tails = [dict() for _ in chart.family.heads]
    idx = {h: i for i, h in enumerate(chart.family.heads)}
    for k, (h, t) in enumerate(alpha.keys):
        tails[idx[h]][t] = alpha.var(k)
    return tails


def _simplify(gens, tags, alpha, mapping=None):
    return reduce_constraints(gens, tags, alpha, mapping, triangular=False)


def _empty_chart(kind, J, G, reason, m=None, info=None) -> LiftingChart:
    """A chart whose constraint ideal is the unit ideal: no lifting has this initial ideal."""
    alpha = G.alpha
    unit = ConstraintIdeal(alpha)
    unit.add(alpha.const(1), reason)
    info = dict(info or {})
    info["empty"] = True
    info["reason"] = reason
    log.info("%s chart over %s is empty: %s", kind, J, reason)
    return LiftingChart(kind, J, G, unit, {}, m, ConstraintIdeal(alpha), info)


# ---------- Gröbner strata ----------

def stratum_chart(problem: LiftingProblem, J: MonomialIdeal, strategy: str = "first", simplify: bool = True) -> LiftingChart:
    """The Gröbner-stratum chart of liftings with initial ideal J."""
    G = generic_stratum_set(J)
    alpha = G.alpha
    last = J.ring.last
    f_params = [k for k, (h, t) in enumerate(alpha.keys) if t[last] == 0]
    g_params = [k for k, (h, t) in enumerate(alpha.keys) if t[last] > 0]
    # b: x_n-free part of each element must lie in I'
    b_gens, b_tags = [], []
    for h, tail in zip(G.heads, G.tails):
        f = {t: c for t, c in tail.items() if t[last] == 0}
        f[h] = alpha.const(1)
        for u, c in problem.section_in_Iprime(f).items():
            b_gens.append(c)
            b_tags.append(f"b: NF_I'(f[{J.ring.format_term(h)}]) @ {problem.ring_prime.format_term(u)}")
    if any(g.total_degree() > 1 for g in b_gens):
        raise AssertionError("b conditions must be linear")
    info = {
        "empty": False,
        "b_linear": True,
        "n_params": len(alpha),
        "f_params": len(f_params),
        "g_params": len(g_params),
        "strategy": strategy,
    }
    b_sol = eliminate_linear(b_gens, alpha)
    if b_sol is None:
        return _empty_chart("stratum", J, G, "b: no x_n-free tails put the section into I'", None, info)
    Gb = G.subs(b_sol)
    a_gens, a_tags = [], []
    for c, tag in stratum_conditions(Gb, strategy):
        a_gens.append(c)
        a_tags.append(tag)
    if simplify:
        mapping, reduced = _simplify(a_gens, a_tags, alpha, b_sol)
        if mapping is None:
            return _empty_chart("stratum", J, G, reduced, None, info)
    else:
        mapping, reduced = b_sol, ConstraintIdeal(alpha, a_gens, a_tags)
    full = ConstraintIdeal(alpha)
    for k in sorted(mapping):
        tag = "b" if k in b_sol else "a (linear)"
        full.add(alpha.var(k) - mapping[k], f"{tag}: {alpha.names[k]}")
    full.extend(reduced)
    fam = G.subs(mapping)
    free_f = [k for k in f_params if k not in b_sol]
    info["free_f_params"] = len(free_f)
    chart = LiftingChart("stratum", J, fam, full, mapping, None, reduced, info)
    chart.b_solution = b_sol
    chart.f_params = f_params
    chart.g_params = g_params
    chart.free_f = free_f
    chart.raw_a = ConstraintIdeal(alpha, a_gens, a_tags)
    return chart


def _map(fn, items, jobs: int):
    """Ordered map, over a process pool when jobs > 1."""
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def _gs_one(args):
    return stratum_chart(*args)


def _ms_one(args):
    return marked_chart(*args)


def lifting_gs(problem: LiftingProblem, strategy: str = "first", simplify: bool = True, jobs: int = 1) -> list:
    """Gröbner-strata charts, one per monomial lifting of in(I').

    Strata containing no lifting are kept, with the unit constraint ideal.
    """
    return _map(_gs_one, [(problem, J, strategy, simplify) for J in problem.monomial_liftings()], jobs)


# ---------- marked families ----------

def marked_degree(J: MonomialIdeal) -> int:
    """m = satiety of the section of J; the family lives over J_{>=m-1}."""
    return J.section().satiety()


def _section_generators(G: MarkedSet, red: Reducer, m: int):
    """Generators of the section of (G)_{>=m}: marked polynomials of the x_n-free terms of J_m,
    and the family elements of degree > m, all with x_n := 0."""
    last = G.ring.last
    one = red.one
    J = G.head_ideal
    out = []
    for t in J.terms(m):
        if t[last]:
            continue
        f = {t: one}
        f.update({u: -c for u, c in red.term_nf(t).items() if not u[last]})
        out.append((t, f))
    for h, tail in zip(G.heads, G.tails):
        if sum(h) > m and not h[last]:
            f = {h: one}
            f.update({u: c for u, c in tail.items() if not u[last]})
            out.append((h, f))
    return out


def _marked_B(problem: LiftingProblem, G: MarkedSet, red: Reducer, m: int):
    fmt = G.ring.format_term
    for t, f in _section_generators(G, red, m):
        for u, c in problem.section_in_Iprime(f).items():
            yield c, f"B: NF_I'(F[{fmt(t)}]|x_n=0) @ {problem.ring_prime.format_term(u)}"


def marked_chart(problem: LiftingProblem, J: MonomialIdeal, simplify: bool = True, symbolic: bool = True) -> LiftingChart:
    """Marked-family chart over P(J_{>=m-1})."""
    m = marked_degree(J)
    G = generic_marked_set(J, max(m - 1, 0))
    alpha = G.alpha
    # linear part of B first: family elements of degree > m restricted to x_n = 0
    red0 = Reducer(G)
    lin_gens, lin_tags = [], []
    for c, tag in _marked_B(problem, G, red0, m):
        if c.total_degree() <= 1:
            lin_gens.append(c)
            lin_tags.append(tag)
    info = {"empty": False, "n_params": len(alpha), "pommaret_size": len(G.heads)}
    pre = eliminate_linear(lin_gens, alpha) if lin_gens else {}
    if pre is None:
        return _empty_chart("marked", J, G, "B: linear conditions are inconsistent", m, info)
    info["presolved"] = len(pre)
    Gs = G.subs(pre) if pre else G
    if not symbolic:
        chart = LiftingChart("marked", J, Gs, ConstraintIdeal(alpha), pre, m, ConstraintIdeal(alpha), info)
        chart.symbolic = False
        chart.problem = problem
        return chart
    red = Reducer(Gs)
    gens, tags = [], []
    for c, tag in marked_conditions(Gs, red):
        gens.append(c)
        tags.append(tag)
    for c, tag in _marked_B(problem, Gs, red, m):
        gens.append(c)
        tags.append(tag)
    if simplify:
        mapping, reduced = _simplify(gens, tags, alpha, pre)
        if mapping is None:
            return _empty_chart("marked", J, G, reduced, m, info)
    else:
        mapping, reduced = pre, ConstraintIdeal(alpha, gens, tags)
    full = ConstraintIdeal(alpha)
    for k in sorted(mapping):
        full.add(alpha.var(k) - mapping[k], f"linear: {alpha.names[k]}")
    full.extend(reduced)
    chart = LiftingChart("marked", J, G.subs(mapping), full, mapping, m, reduced, info)
    chart.symbolic = True
    chart.problem = problem
    return chart


def lifting_ms(problem: LiftingProblem, symbolic: bool = True, jobs: int = 1) -> list:
    """Marked-family charts, one per monomial lifting of in(I')."""
    return _map(_ms_one, [(problem, J, True, symbolic) for J in problem.monomial_liftings()], jobs)


# ---------- numeric checks ----------

def marked_point_conditions(problem: LiftingProblem, J: MonomialIdeal, m: int, tails: dict) -> bool:
    """A and B evaluated at a concrete marked set (tails as {head: {term: Fraction}})."""
    heads = MonomialIdeal(J.ring, J.gens).truncate(max(m - 1, 0)).pommaret_basis()
    G = MarkedSet(J.ring, heads, [tails.get(h, {}) for h in heads], None, "marked", J.truncate(max(m - 1, 0)))
    red = Reducer(G)
    if any(c for c, _ in marked_conditions(G, red)):
        return False
    return not any(c for c, _ in _marked_B(problem, G, red, m))


def chart_contains(chart: LiftingChart, I) -> bool:
    """Membership of I in a chart; marked charts without symbolic constraints are checked numerically."""
    if chart.kind == "marked" and not getattr(chart, "symbolic", True):
        pt = chart.point_of(I)
        if pt is None:
            return False
        tails = {}
        for k, (h, t) in enumerate(chart.alpha.keys):
            if pt[k]:
                tails.setdefault(h, {})[t] = pt[k]
        return marked_point_conditions(chart.problem, chart.J, chart.m, tails)
    return chart.contains(I)


def membership(I, charts) -> list:
    """For each chart, whether I lies in it."""
    G = I if isinstance(I, GroebnerBasis) else buchberger(list(I))
    return [chart_contains(ch, G) for ch in charts]


def chart_from_dict(d: dict, ring: PolyRing, problem: LiftingProblem = None) -> LiftingChart:
    """Rebuild a chart from its JSON form (the inverse of ``LiftingChart.as_dict``)."""
    from .params import ParamAlphabet
    from .parse import parse_monomial_ideal, parse_param_poly, parse_term

    J = parse_monomial_ideal(d["J"].strip().strip("()"), ring)
    names = [p["name"] for p in d["params"]]
    keys = [(parse_term(p["head"], ring), parse_term(p["term"], ring)) for p in d["params"]]
    alpha = ParamAlphabet(names, keys)
    heads, tails = [], []
    for f in d["family"]:
        heads.append(parse_term(f["head"], ring))
        tails.append({parse_term(t["term"], ring): parse_param_poly(t["coeff_poly"], alpha) for t in f["tail"]})
    m = d.get("m")
    kind = d["kind"]
    head_ideal = J.truncate(max(m - 1, 0)) if kind == "marked" else J
    fam = MarkedSet(ring, heads, tails, alpha, kind, head_ideal)
    cons = ConstraintIdeal(alpha)
    prov = d.get("provenance") or [""] * len(d["constraints"])
    for text, tag in zip(d["constraints"], prov):
        cons.add(parse_param_poly(text, alpha), tag)
    info = {k: d[k] for k in ("empty", "reason", "strategy") if k in d}
    chart = LiftingChart(kind, J, fam, cons, {}, m, cons, info)
    chart.symbolic = d.get("symbolic", True)
    chart.problem = problem
    return chart
