"""Radius-bounded bisimilarity of pointed, coloured, port-numbered graphs.

Two pointed instances are 0-bisimilar when the points agree on degree and
local input.  For radius r >= 1 they must additionally match neighbours in
both directions: every neighbour w of one point needs a neighbour w' of the
other with the same outgoing label back towards the point and (r-1)-bisimilar
to w.  The matching is an independent existence check per neighbour, not a
perfect matching: the definition quantifies each neighbour separately.

Generalised numberings are fine -- only the labels written towards the
points matter.  Graph backends may be lazy (family trees) or materialised;
a materialised backend raises instead of answering from a truncated ball.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .errors import BallExhaustedError
from .graphs import PortNumberedGraph


class MaterializedView:
    """Bisimilarity backend over an explicit graph.

    Degrees come from the declared (pre-truncation) values; probing the
    edges of a truncated boundary node raises ``BallExhaustedError`` so a
    short ball can never produce a wrong answer.
    """

    def __init__(self, graph: PortNumberedGraph, colouring: dict | None = None):
        self.graph = graph
        self.colouring = colouring if colouring is not None else graph.colours

    def degree(self, v) -> int:
        return self.graph.declared_degree(v)

    def local_input(self, v):
        return self.colouring.get(v)

    def back_edges(self, v):
        graph = self.graph
        if graph.degree(v) != graph.declared_degree(v):
            raise BallExhaustedError(
                f"node {v!r} is truncated ({graph.degree(v)} of "
                f"{graph.declared_degree(v)} edges materialised)")
        return [(u, graph.out_port(u, v)) for u in graph.neighbours(v)]


@dataclass(frozen=True)
class PointedInstance:
    """A graph backend plus a distinguished node."""

    view: Any
    point: Any


@dataclass
class BisimCache:
    """Exact memo of (point, point, radius) verdicts for one task.

    Entries record precisely what was computed; no monotonicity shortcut is
    baked in, so the downward-closure property stays testable from outside.
    """

    memo: dict = field(default_factory=dict)


def bisimilar(a: PointedInstance, b: PointedInstance, r: int,
              cache: BisimCache | None = None) -> bool:
    """Decide r-bisimilarity of two pointed instances."""
    if r < 0:
        raise ValueError("radius must be >= 0")
    if cache is None:
        cache = BisimCache()
    return _decide(a.view, a.point, b.view, b.point, r, cache.memo)


def _decide(va, x, vb, y, r, memo) -> bool:
    if va is vb and x == y:
        return True
    key = (id(va), id(vb), x, y, r)
    hit = memo.get(key)
    if hit is not None:
        return hit
    ok = va.degree(x) == vb.degree(y) and va.local_input(x) == vb.local_input(y)
    if ok and r > 0:
        ea = va.back_edges(x)
        eb = vb.back_edges(y)
        for w, a in ea:
            if not any(lab == a and _decide(va, w, vb, w2, r - 1, memo)
                       for w2, lab in eb):
                ok = False
                break
        if ok:
            for w2, lab in eb:
                if not any(a == lab and _decide(va, w, vb, w2, r - 1, memo)
                           for w, a in ea):
                    ok = False
                    break
    memo[key] = ok
    return ok


def max_bisim_radius(a: PointedInstance, b: PointedInstance, cap: int,
                     cache: BisimCache | None = None) -> int | None:
    """Largest r <= cap with the instances r-bisimilar.

    Returns None when every radius up to ``cap`` holds (read: ">= cap"),
    and -1 when the points are not even 0-bisimilar.
    """
    if cap < 0:
        raise ValueError("cap must be >= 0")
    if cache is None:
        cache = BisimCache()
    for r in range(cap + 1):
        if not bisimilar(a, b, r, cache):
            return r - 1
    return None
