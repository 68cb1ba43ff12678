"""Independent oracles shared by the test modules."""

from __future__ import annotations

from fractions import Fraction

from liftings.core import terms_of_degree
from liftings.groebner import buchberger
from liftings.linalg import rank
from liftings.parametric import MarkedSet, direct_sum_point, generic_marked_set


def random_point(alpha, rng, box=3):
    return {i: Fraction(rng.randint(-box, box)) for i in range(len(alpha))}


def is_quotient_basis(G: MarkedSet, top: int) -> bool:
    """Brute force: in each degree t <= top, <N>_t is a complement of (G)_t (N = sous-escalier of the heads)."""
    T = G.head_ideal
    n = G.ring.nvars
    polys = G.polys()
    for t in range(min(sum(h) for h in G.heads), top + 1):
        rows = []
        for f in polys:
            d = t - f.degree()
            if d < 0:
                continue
            for u in terms_of_degree(n, d):
                rows.append(dict(f.mul_term(u).terms))
        outside = T.sous_escalier(t)
        r_ideal = rank(rows)
        if r_ideal != len(T.terms(t)):
            return False
        if rank(rows + [{s: 1} for s in outside]) != len(terms_of_degree(n, t)):
            return False
    return True


def unipotent_image(J, rng):
    """g(J) for x_i -> x_i + sum_{j>i} a_ij x_j: each term maps to itself plus smaller terms,
    so in(g(J)) = J and g(J) has a marked basis over J."""
    ring = J.ring
    n = ring.nvars
    images = [ring.gen(i) + sum((ring.gen(j) * rng.randint(-2, 2) for j in range(i + 1, n)), ring.zero()) for i in range(n)]
    gens = []
    for h in J.gens:
        f = ring.one()
        for i, e in enumerate(h):
            for _ in range(e):
                f = f * images[i]
        gens.append(f)
    return buchberger(gens, ring)


def marked_point(J, m, rng):
    G = generic_marked_set(J, m)
    I = unipotent_image(J, rng)
    low = min(sum(h) for h in G.heads)
    tails = direct_sum_point(I, J, G.heads, range(low, J.max_degree() + 3))
    assert tails is not None
    return G, {k: tails[h].get(t, Fraction(0)) for k, (h, t) in enumerate(G.alpha.keys)}
