"""Acceptance criteria 1-7.

Each test prints one ``criterion N: PASS|FAIL`` line (visible in ``pytest -v``
output) and then asserts the same verdict.  Criteria 3 and 4 fail on purpose:
the expected values cannot be reproduced; the reasons are printed in the
detail text.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from liftings.core import PolyRing
from liftings.enumeration import enumerate_monomial_liftings
from liftings.groebner import buchberger, verify_lifting
from liftings.lifting import LiftingProblem, chart_contains, lifting_gs, marked_chart, stratum_chart
from liftings.parametric import ConstraintIdeal, generic_marked_set, marked_family_ideal, specialize
from liftings.sampling import sample_lifting, seeded

from conftest import DOUBLE_POINT, FINAL_I, IPRIME, hp, mono, polys
from oracles import is_quotient_basis, marked_point, random_point

J_NAMES = ["J^(1)", "J^(2)", "J^(3)", "J^(4)", "J^(5)"]
J_TEXT = [
    "x2*x0, x1*x0, x3*x0^2, x2*x1^2, x1^3, x0^3",
    "x2*x0, x0^2, x3*x1*x0, x2*x1^2, x1^3, x1^2*x0",
    "x1*x0, x0^2, x3*x2*x0, x2^2*x0, x2*x1^2, x1^3",
    "x2*x0, x1*x0, x0^2, x2*x1^2, x3*x1^3, x1^4",
    "x2*x0, x1*x0, x0^2, x1^3, x3*x2*x1^2, x2^2*x1^2",
]


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
        return ok

    return emit


@pytest.fixture(scope="module")
def main_problem():
    return LiftingProblem(polys(IPRIME, 4), hp("t^2+4*t+1"))


@pytest.fixture(scope="module")
def main_charts(main_problem):
    charts = lifting_gs(main_problem)
    # arrange in the order J^(1)..J^(5)
    by_J = {c.J: c for c in charts}
    return [by_J[mono(s, 5)] for s in J_TEXT]


@pytest.fixture(scope="module")
def lcm_problem():
    return LiftingProblem(polys(DOUBLE_POINT, 3), hp("2*t+2"))


def _lcm_J2_chart(P):
    return stratum_chart(P, mono("x0^2, x0*x1, x1^2, x0*x2", 4))


def _strs(ps):
    return sorted(str(p) for p in ps)


def test_criterion_1_groebner_golden(report):
    G = buchberger(polys(IPRIME, 4))
    expected = polys("x0*x2, x0*x1 + x1^2, x0^2, x1^2*x2, x1^3", 4)
    ok = _strs(G.polys) == _strs(expected) and G.initial_ideal() == mono("x0^2, x0*x1, x0*x2, x1^2*x2, x1^3", 4)
    assert report(1, ok, f"GB {{{', '.join(_strs(G.polys))}}}, in(I') = {G.initial_ideal()}")


def test_criterion_2_hilbert_golden(report):
    G = buchberger(polys(IPRIME, 4))
    h = [G.hilbert_function(t) for t in range(12)]
    Jp = G.initial_ideal()
    p5 = Jp.extend(PolyRing(5)).hilbert_polynomial()
    ok = h[:2] == [1, 4] and all(h[t] == 2 * t + 3 for t in range(2, 12)) and p5 == hp("t^2+4*t")
    assert report(2, ok, f"h = {h[:6]}..., HP of J'·K[x0..x4] = {p5}")


def test_criterion_3_enumeration_counts(report):
    Jp = mono("x0^2, x0*x1, x0*x2, x1^2*x2, x1^3", 4)
    lifts0, pool0 = enumerate_monomial_liftings(Jp, hp("t^2+4*t"))
    lifts1, pool1 = enumerate_monomial_liftings(Jp, hp("t^2+4*t+1"))
    checks = {
        "pool(t^2+4t) = 56": pool0 == 56,
        "pool(t^2+4t+1) = 176": pool1 == 176,
        "1 lifting for t^2+4t": len(lifts0) == 1,
        "5 liftings = J^(1..5)": set(lifts1) == {mono(s, 5) for s in J_TEXT} and len(lifts1) == 5,
    }
    failed = [k for k, v in checks.items() if not v]
    detail = f"pools {pool0}, {pool1}; liftings {len(lifts0)}, {len(lifts1)}"
    if failed:
        detail += f"; failed: {', '.join(failed)} (each of the {pool1} is distinct, saturated, quasi-stable, with the right Hilbert polynomial)"
    assert report(3, not failed, detail)


def _paper_family(k, coeffs):
    """The published section families over J^(k), built in K[x0..x3]."""
    P = {s: polys(s, 4)[0] for s in ("x0*x1 + x1^2", "x0*x2", "x0^2")}
    a = coeffs.get("a", 0)
    b = coeffs.get("b", 0)
    c = coeffs.get("c", 0)
    d = coeffs.get("d", 0)
    if k == 1:
        return polys("x2*x0, x0*x1 + x1^2, x3*x0^2, x2*x1^2, x1^3, x0^3", 4)
    if k == 2:
        return [P["x0^2"] + P["x0*x1 + x1^2"] * a] + polys("x2*x0, x0*x1*x3 + x1^2*x3, x2*x1^2, x1^3, x1^2*x0", 4)
    if k == 3:
        return [P["x0*x1 + x1^2"] + P["x0*x2"] * b, P["x0^2"] + P["x0*x2"] * c] + polys("x3*x2*x0, x0*x2^2, x2*x1^2, x1^3", 4)
    if k == 4:
        return polys("x2*x0, x0*x1 + x1^2, x0^2, x2*x1^2, x3*x1^3, x1^4", 4)
    return [polys("x1^3", 4)[0] + polys("x1^2*x2", 4)[0] * d] + polys("x0*x2, x0*x1 + x1^2, x0^2, x1^2*x2*x3, x1^2*x2^2", 4)


def _read_coefficients(k, gb):
    heads = {gb.ring.format_term(g.lt()): g for g in gb.polys}

    def t(s):
        return polys(s, 4)[0].lt()

    if k == 2:
        return {"a": heads["x0^2"].coeff(t("x0*x1"))}
    if k == 3:
        return {"b": heads["x0*x1"].coeff(t("x0*x2")), "c": heads["x0^2"].coeff(t("x0*x2"))}
    if k == 5:
        return {"d": heads["x1^3"].coeff(t("x1^2*x2"))}
    return {}


def test_criterion_4_algorithm1_golden(report, main_problem, main_charts):
    ring4 = main_problem.ring_prime
    expected_free = [0, 1, 2, 0, 1]
    rng = random.Random(4)
    verdicts = []
    for k, ch in enumerate(main_charts, start=1):
        name = J_NAMES[k - 1]
        if ch.empty:
            verdicts.append((name, False, f"stratum empty ({ch.info.get('reason')})"))
            continue
        ok = ch.info["free_f_params"] == expected_free[k - 1]
        for _ in range(3):
            pt = ch.full_point({j: Fraction(rng.randint(-5, 5)) for j in ch.free_f})
            ok &= ch.holds_at(pt)
            gb = buchberger([p.restrict(ring4) for p in ch.specialize(pt)], ring4)
            ok &= gb == buchberger(_paper_family(k, _read_coefficients(k, gb)), ring4)
        verdicts.append((name, ok, f"free {ch.info['free_f_params']}"))
    detail = "; ".join(f"{n} {'ok' if v else 'FAIL'} ({why})" for n, v, why in verdicts)
    assert report(4, all(v for _, v, _ in verdicts), detail)


def _lcm_paper_ideal(ch):
    A = ch.alpha
    R = ch.J.ring

    def C(h, t):
        return A.var(A.keys.index((mono(h, 4).gens[0], mono(t, 4).gens[0])))

    c1 = C("x0^2", "x0*x3")
    c2 = C("x0*x1", "x0*x3")
    c8 = C("x0*x1", "x1*x3")
    c3, c4, c5 = [C("x1^2", t) for t in ("x0*x3", "x1*x3", "x2*x3")]
    c6, c7 = [C("x0*x2", t) for t in ("x0*x3", "x1*x3")]
    half = Fraction(1, 2)
    gens = [
        c5 * c7, c3 * c7, c2 * c7 * 2 - c4 * c7, c1 * c7 - c7 * c8 * 2,
        C("x0^2", "x1*x3"), C("x0^2", "x2*x3"), C("x0*x1", "x2*x3"), C("x0*x2", "x2*x3") - c8,
        C("x0^2", "x3^2") - (c1 * c8 - c8 * c8), C("x0*x1", "x3^2") - c2 * c8,
        C("x1^2", "x3^2") - (c1 * c3 - c2 * c2 + c2 * c4 - c3 * c8 + c5 * c6),
        C("x0*x2", "x3^2") - (c4 * c7 * half + c6 * c8),
    ]
    # tails without x3 vanish (the section must be I' itself)
    gens += [A.var(k) for k, (h, t) in enumerate(A.keys) if t[R.last] == 0]
    return ConstraintIdeal(A, gens, ["published"] * len(gens))


def test_criterion_5_lcm_constraints(report, lcm_problem):
    ch = _lcm_J2_chart(lcm_problem)
    w = ch.weights()
    paper = _lcm_paper_ideal(ch)
    ok = paper.is_homogeneous(w) and paper.same_ideal(ch.constraints, w)
    assert report(5, ok, f"reduced GBs in the parameter ring {'agree' if ok else 'differ'} ({len(ch.alpha)} parameters)")


def test_criterion_6_marked_membership(report, main_problem):
    P = main_problem
    J2 = mono(J_TEXT[1], 5)
    I = polys(FINAL_I.format(e=1), 5)
    v = verify_lifting(I, P.Iprime)
    mk = marked_chart(P, J2)
    st = stratum_chart(P, J2)
    checks = {
        "verify": v.is_lifting and v.hp == P.p,
        "m = 3": mk.m == 3,
        "in marked chart": mk.contains(I),
        "not in stratum": not st.contains(I),
        "in(I) = J^(3)": buchberger(I).initial_ideal() == mono(J_TEXT[2], 5),
    }
    failed = [k for k, v in checks.items() if not v]
    assert report(6, not failed, "all checks hold" if not failed else f"failed: {', '.join(failed)}")


def _strategies_agree(P, J):
    """Exact GB equality where the torus weights are positive; otherwise GB equality on
    slices where the weight-0 parameters are fixed (the full computation does not finish)."""
    a, b = stratum_chart(P, J, "first"), stratum_chart(P, J, "last")
    if a.empty or b.empty:
        return a.empty and b.empty, "both <1>"
    if a.substitution != b.substitution:
        return a.constraints.same_ideal(b.constraints, a.weights()), "full ideals"
    w = a.weights()
    zero = sorted(i for i in a.reduced.variables() | b.reduced.variables() if w[i] == 0)
    if not zero:
        return a.reduced.same_ideal(b.reduced, w), "exact"
    ok = True
    for val in (1, -2, 3):
        fix = {i: a.alpha.const(Fraction(val)) for i in zero}
        A = ConstraintIdeal(a.alpha, [g.subs(fix) for g in a.reduced.gens], a.reduced.provenance)
        B = ConstraintIdeal(b.alpha, [g.subs(fix) for g in b.reduced.gens], b.reduced.provenance)
        ok &= A.same_ideal(B, w)
    return ok, f"3 slices of {len(zero)} weight-0 parameter(s)"


def test_criterion_7_properties(report, main_problem, main_charts, lcm_problem):
    P, L = main_problem, lcm_problem
    notes = []
    # soundness, quasi-stability propagation, stratum inside marked family
    lcm_J2 = _lcm_J2_chart(L)
    sources = [(P, ch, marked_chart(P, ch.J)) for ch in main_charts if not ch.empty]
    sources.append((L, lcm_J2, marked_chart(L, lcm_J2.J)))
    sources.append((P, marked_chart(P, mono(J_TEXT[1], 5)), None))
    enumerated = {id(P): set(P.monomial_liftings()), id(L): set(L.monomial_liftings())}
    rng = seeded(2024)
    sound = qs = inclusion = True
    for i in range(100):
        prob, ch, mk = sources[i % len(sources)]
        gens = sample_lifting(ch, rng)
        v = verify_lifting(gens, prob.Iprime)
        sound &= v.is_lifting and v.hp == prob.p
        inI = buchberger(gens).initial_ideal()
        qs &= inI.is_quasi_stable() and inI in enumerated[id(prob)]
        if mk is not None:
            inclusion &= chart_contains(mk, gens)
    notes += [f"soundness {sound}", f"qs-propagation {qs}", f"stratum⊆marked {inclusion}"]
    # b linearity
    b_lin = all(
        ch.info["b_linear"] and all(g.total_degree() <= 1 for g, tag in zip(ch.constraints.gens, ch.constraints.provenance) if tag.startswith("b"))
        for ch in main_charts + [lcm_J2]
    )
    notes.append(f"b-linear {b_lin}")
    # strategy independence on the lifting corpus
    corpus = [(P, J) for J in P.monomial_liftings()] + [(L, J) for J in L.monomial_liftings()]
    Q = LiftingProblem(polys(DOUBLE_POINT, 3), hp("2*t+1"))
    corpus += [(Q, J) for J in Q.monomial_liftings()]
    indep = True
    kinds = set()
    for prob, J in corpus:
        ok, how = _strategies_agree(prob, J)
        indep &= ok
        kinds.add(how)
    notes.append(f"strategy-independence {indep} on {len(corpus)} ideals ({'; '.join(sorted(kinds))})")
    # marked-basis oracle: exactly the points satisfying the constraints give quotient bases
    oracle = True
    orng = random.Random(20)
    for J, m in ((mono("x0^2, x0*x1, x1^2, x0*x2", 4), 2), (mono(J_TEXT[1], 5), 3)):
        A = marked_family_ideal(J, m)
        for k in range(10):
            if k % 2:
                G, pt = marked_point(J, m, orng)
            else:
                G = generic_marked_set(J, m)
                pt = random_point(G.alpha, orng)
            oracle &= A.holds_at(pt) == is_quotient_basis(specialize(G, pt), J.max_degree() + 2)
    notes.append(f"marked-basis oracle {oracle} (20 points)")
    ok = sound and qs and inclusion and b_lin and indep and oracle
    assert report(7, ok, "; ".join(notes))

