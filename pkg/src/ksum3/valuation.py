"""Exact 3-adic valuation of K(a) via the tripling walk on E(a).

The walk starts from the x-coordinate of a point that is not 3-divisible
and applies the x-only tripling map.  It ends in one of two ways:

  hit_order_three  the walk reaches a^{1/3} (the order-3 x-coordinate)
                   at step k; when k = m this means K(a) = 0.
  cycle            a value repeats; the pre-period has length exactly k
                   and the period r is the gap between the occurrences.

Either way 3^k exactly divides K(a).  The module also carries the cheap
divisibility tests (by 9 via the trace, by 27 via the z-parametrization)
and the level-by-level descent that rebuilds the cyclic 3-subgroup graph.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Tuple

from .curve import (
    CurveParams,
    div3_obstruction,
    sample_generator_candidate,
    solve_tripling_cubic,
    triple_x,
)
from .errors import (
    IterationCapExceeded,
    Ksum3Error,
    NotCycleCase,
    TraceNotZero,
    ZeroParameter,
)
from .field import Fe, Field

HIT_ORDER_THREE = "hit_order_three"
CYCLE = "cycle"


@dataclass
class ValuationReport:
    k: int
    case: str                      # HIT_ORDER_THREE or CYCLE
    r: Optional[int]               # cycle period, cycle case only
    trail: List[Fe]                # u_1, u_2, ... up to termination
    u1: Fe

    @property
    def kloosterman_is_zero(self) -> bool:
        return self.case == HIT_ORDER_THREE and self.k == self.trail[0].field.m


def kval(
    params: CurveParams,
    rng: Optional[random.Random] = None,
    u1: Optional[Fe] = None,
    max_attempts: int = 256,
) -> ValuationReport:
    """Valuation of K(a): run the tripling walk until it resolves.

    u1 defaults to a sampled non-3-divisible x-coordinate; passing it
    explicitly (it must satisfy the start condition) reproduces a given
    walk exactly.
    """
    f = params.field
    x0 = params.a_cuberoot
    if u1 is None:
        if rng is None:
            rng = random.Random(0)
        u1 = sample_generator_candidate(params, rng, max_attempts).x
    else:
        f._check(u1)
        if u1 != x0 and div3_obstruction(params, u1) == 0:
            raise ZeroParameter(f"u1={u1} is 3-divisible; start condition violated")
    cap = f.q + 1
    seen = {}
    trail: List[Fe] = []
    u = u1
    i = 1
    while True:
        trail.append(u)
        if u == x0:
            return ValuationReport(k=i, case=HIT_ORDER_THREE, r=None, trail=trail, u1=u1)
        first = seen.get(u.code)
        if first is not None:
            return ValuationReport(
                k=first - 1, case=CYCLE, r=i - first, trail=trail, u1=u1
            )
        seen[u.code] = i
        u = triple_x(params, u)
        i += 1
        if i > cap:
            raise IterationCapExceeded("tripling walk exceeded 3^m + 1 steps")


def is_kloosterman_zero(params: CurveParams, rng: Optional[random.Random] = None) -> bool:
    """K(a) = 0 iff the walk hits a^{1/3} exactly at step m."""
    return kval(params, rng).kloosterman_is_zero


def div9(field: Field, a: Fe) -> bool:
    """9 | K(a) iff trace(a) = 0."""
    field._check(a)
    if not a:
        raise ZeroParameter("a must be nonzero")
    return a.trace() == 0


def x0_x1_from_z(field: Field, z: Fe) -> Tuple[Fe, Fe]:
    """For a = z^27 - z^9: the first two descent x-coordinates,
    x_0 = z^9 - z^3 and x_1 = (z^4 - 1)(z^3 - 1) z^2."""
    field._check(z)
    return z ** 9 - z ** 3, (z ** 4 - 1) * (z ** 3 - 1) * z ** 2


def div27(field: Field, a: Fe) -> bool:
    """27 | K(a), decided from the z-parametrization of a = z^27 - z^9.

    Requires trace(a) = 0 (else the question is ill-posed and TraceNotZero
    is raised).  The predicate Tr(z^5 (z-1)(z+1)^7 / (z^2+1)^3) = 0 is
    evaluated for all three choices of z, which must agree; degenerate z
    (z^2 + 1 = 0, or x_1 = 0) falls back to the 3-divisibility
    obstruction at x_1, or to the tripling walk as a last resort.
    """
    field._check(a)
    if not a:
        raise ZeroParameter("a must be nonzero")
    if a.trace() != 0:
        raise TraceNotZero("27 | K(a) test requires trace(a) = 0")
    ws = field.solve_artin_schreier(a)
    verdicts = []
    fallbacks = []
    for w in ws:
        z = w.ninth_root()
        den = z ** 2 + 1
        x1 = (z ** 4 - 1) * (z ** 3 - 1) * z ** 2
        if not den or not x1:
            fallbacks.append(x1)
            continue
        expr = z ** 5 * (z - 1) * (z + 1) ** 7 / den ** 3
        verdicts.append(expr.trace() == 0)
    if verdicts:
        if len(set(verdicts)) != 1:
            raise Ksum3Error(
                f"z-choice disagreement in div27 for a={a}: {verdicts}"
            )
        return verdicts[0]
    params = CurveParams.make(field, a)
    for x1 in fallbacks:
        if x1:
            return div3_obstruction(params, x1) == 0
    return kval(params).k >= 3


@dataclass
class DescentGraph:
    """Levels of x-coordinates under repeated 3-division, rooted at a^{1/3}."""

    levels: List[List[Fe]]
    edges: List[Tuple[Fe, Fe]] = dc_field(default_factory=list)

    @property
    def t(self) -> int:
        return len(self.levels)

    def to_dot(self) -> str:
        """Plain DOT digraph; node names are trit strings, labels prefer
        the power-of-alpha form when the field supports it."""
        lines = ["digraph descent {"]
        for level in self.levels:
            for node in level:
                label = node.power_str or node.trit_str
                lines.append(f'  "{node.trit_str}" [label="{label}"];')
        for parent, child in self.edges:
            lines.append(f'  "{parent.trit_str}" -> "{child.trit_str}";')
        lines.append("}")
        return "\n".join(lines)


def descent(params: CurveParams, full: bool = False) -> DescentGraph:
    """Build the descent graph; its depth t equals the valuation of K(a).

    Default policy expands one node per level (the smallest in the
    canonical trit ordering); full=True expands every node, reproducing
    the complete graph of the cyclic 3-subgroup.
    """
    f = params.field
    levels: List[List[Fe]] = [[params.a_cuberoot]]
    edges: List[Tuple[Fe, Fe]] = []
    while True:
        frontier = levels[-1] if full else [levels[-1][0]]
        nxt: List[Fe] = []
        for node in frontier:
            children = solve_tripling_cubic(params, node)
            edges.extend((node, c) for c in children)
            nxt.extend(children)
        if not nxt:
            return DescentGraph(levels=levels, edges=edges)
        levels.append(nxt)
        if len(levels) > f.m + 1:
            raise IterationCapExceeded("descent deeper than m levels")


def cycle_bounds(report: ValuationReport, field: Field) -> Tuple[int, int]:
    """(3^k (2r + 1), 3^m - 3^k (2r + 1)) from a cycle report.

    The first entry is a valid lower bound on |E(a)|.  Since
    K(a) = |E(a)| - 3^m, what it implies for the sum is the lower bound
    K(a) >= -(second entry); the second entry bounds -K(a) from above,
    not K(a) itself (counterexamples with K > 0 exist at m = 4).
    """
    if report.case != CYCLE:
        raise NotCycleCase("bounds require a cycle-terminated report")
    lower = 3 ** report.k * (2 * report.r + 1)
    return lower, field.q - lower
