"""Random rational points on chart constraint varieties.

No decomposition of the variety is attempted.  Linear generators are solved
exactly; otherwise one parameter is fixed, to zero or to a small random
integer, and the process repeats.  Zeros are drawn often so that the smaller
components (where some product of parameters vanishes) get visited too.
Every point returned has been checked exactly against the full constraint
ideal.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .lifting import LiftingChart, chart_contains
from .parametric import compose_steps, reduce_constraints


class SamplingFailed(RuntimeError):
    pass


def _attempt(chart: LiftingChart, rng: random.Random, box: int, p_zero: float):
    alpha = chart.alpha

    def draw():
        return Fraction(0 if rng.random() < p_zero else rng.randint(-box, box))

    base = getattr(chart, "_sampling_base", None)
    if base is None:
        # the first elimination pass involves no random choice: do it once per chart
        base = chart._sampling_base = reduce_constraints(chart.reduced.gens, chart.reduced.provenance, alpha)
    mapping, rest = base
    if mapping is None:
        return None
    steps = [mapping]
    while not rest.is_zero():
        step = {rng.choice(sorted(rest.variables())): alpha.const(draw())}
        steps.append(step)
        mapping, rest = reduce_constraints([g.subs(step) for g in rest.gens], rest.provenance, alpha)
        if mapping is None:
            return None
        steps.append(mapping)
    mapping = compose_steps(steps)
    free = chart.free_params()
    values = {k: draw() for k in free if k not in mapping}
    for k, e in mapping.items():
        values[k] = e.evaluate(values)
    pt = chart.full_point({k: values[k] for k in free})
    return pt if chart.holds_at(pt) else None


def sample_point(chart: LiftingChart, rng: random.Random, box: int = 5, p_zero: float = 0.5, tries: int = 50) -> dict:
    """A rational point satisfying the chart constraints, on all parameters."""
    if chart.info.get("empty"):
        raise SamplingFailed(f"chart over {chart.J} is empty")
    for _ in range(tries):
        pt = _attempt(chart, rng, box, p_zero)
        if pt is not None:
            return pt
    raise SamplingFailed(f"no point found on the chart over {chart.J} after {tries} tries")


def sample_lifting(chart: LiftingChart, rng: random.Random, **kw) -> list:
    """Generators of a random member of the chart."""
    return chart.specialize(sample_point(chart, rng, **kw))


def sample_marked_from_stratum(stratum: LiftingChart, marked: LiftingChart, rng: random.Random, **kw):
    """A point of the marked chart obtained from a random stratum point (stratum ⊆ marked family)."""
    gens = sample_lifting(stratum, rng, **kw)
    pt = marked.point_of(gens)
    if pt is None or not chart_contains(marked, gens):
        raise SamplingFailed("stratum point is not in the marked chart")
    return pt


def seeded(seed: int) -> random.Random:
    return random.Random(seed)
