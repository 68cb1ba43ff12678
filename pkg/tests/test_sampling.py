from __future__ import annotations

import pytest

from liftings.groebner import verify_lifting
from liftings.lifting import lifting_gs, lifting_ms, marked_chart
from liftings.sampling import SamplingFailed, sample_lifting, sample_marked_from_stratum, sample_point, seeded


def test_points_satisfy_constraints(double_point_problem):
    rng = seeded(3)
    for ch in lifting_gs(double_point_problem) + lifting_ms(double_point_problem):
        for _ in range(4):
            pt = sample_point(ch, rng)
            assert set(pt) == set(range(len(ch.alpha)))
            assert ch.holds_at(pt)


def test_samples_are_liftings(double_point_problem):
    P = double_point_problem
    rng = seeded(8)
    for ch in lifting_gs(P):
        gens = sample_lifting(ch, rng)
        v = verify_lifting(gens, P.Iprime)
        assert v.is_lifting and v.hp == P.p


def test_empty_chart_raises(quasi_stable_problem):
    empty = [c for c in lifting_gs(quasi_stable_problem) if c.empty]
    assert empty
    with pytest.raises(SamplingFailed):
        sample_point(empty[0], seeded(0))


def test_same_seed_same_point(double_point_problem):
    ch = lifting_gs(double_point_problem)[1]
    assert sample_point(ch, seeded(42)) == sample_point(ch, seeded(42))


def test_marked_point_from_stratum(double_point_problem):
    P = double_point_problem
    rng = seeded(4)
    for st in lifting_gs(P):
        mk = marked_chart(P, st.J)
        pt = sample_marked_from_stratum(st, mk, rng)
        assert mk.holds_at(pt)
