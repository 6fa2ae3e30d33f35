"""Origin/destination augmentation and its yes/no duality.

Given a board with origin ``o`` and destination ``d``, the augmented
board adds a fresh origin that feeds ``o`` and a fresh sink that absorbs
the whole region from which ``d`` is unreachable:

* ``o_bar`` (new vertex ``n``): both slots point at the original origin;
  nothing points back at it, so any run from it leaves it exactly once.
* ``d_bar`` (new vertex ``n + 1``): a self-looped sink.
* every vertex with no directed path to ``d`` is rewired so both of its
  slots point at ``d_bar``;
* ``d`` itself becomes a self-looped sink; everything else is unchanged.

On the augmented board exactly one of the two runs -- toward ``d`` or
toward ``d_bar`` -- terminates, and which one it is matches whether the
original run terminates.  That turns non-termination into a reachability
event that can be certified by a flow, which is what the flow and
local-search layers build on.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import simulate as _sim
from .graphs import SwitchGraph, require_valid, reverse_reachable


@dataclass(frozen=True)
class AugmentedInstance:
    """The augmented board plus the bookkeeping of its construction.

    ``h`` keeps the original vertex ids, with ``o_bar = n`` and
    ``d_bar = n + 1``; its origin is ``o_bar`` and its recorded dest is
    the carried-over original destination.  The two decision instances
    derived from it are :meth:`to_dest` and :meth:`to_dbar`.
    """

    h: SwitchGraph
    o_bar: int
    d_bar: int
    x_d: frozenset[int]
    source_dest: int

    def to_dest(self) -> SwitchGraph:
        return self.h.with_route(dest=self.source_dest)

    def to_dbar(self) -> SwitchGraph:
        return self.h.with_route(dest=self.d_bar)

    @property
    def terminals(self) -> frozenset[int]:
        return frozenset((self.source_dest, self.d_bar))


def augment(g: SwitchGraph) -> AugmentedInstance:
    """Build the augmented board. Deterministic and structure-preserving."""
    require_valid(g)
    n = g.n
    o_bar, d_bar = n, n + 1
    x_d = frozenset(range(n)) - reverse_reachable(g, g.dest)

    even = list(g.even) + [g.origin, d_bar]
    odd = list(g.odd) + [g.origin, d_bar]
    # Case table, applied verbatim even when the origin lies in the
    # unreachable region (the run is then trivially convergent on d_bar).
    for v in range(n):
        if v == g.dest:
            even[v] = odd[v] = v
        elif v in x_d:
            even[v] = odd[v] = d_bar
    labels = None if g.labels is None else g.labels + ("o_bar", "d_bar")

    h = SwitchGraph(
        n=n + 2,
        even=tuple(even),
        odd=tuple(odd),
        origin=o_bar,
        dest=g.dest,
        labels=labels,
    )
    return AugmentedInstance(
        h=h, o_bar=o_bar, d_bar=d_bar, x_d=x_d, source_dest=g.dest
    )


@dataclass(frozen=True)
class DualityReport:
    """Verdicts of the three decision instances and whether they agree."""

    g_terminates: bool
    to_dest_terminates: bool
    to_dbar_terminates: bool

    @property
    def ok(self) -> bool:
        return (
            self.to_dest_terminates == self.g_terminates
            and self.to_dbar_terminates != self.g_terminates
        )


def check_duality(
    g: SwitchGraph, *, cycle_threshold: int = _sim.CYCLE_DETECTION_THRESHOLD
) -> DualityReport:
    """Decide all three instances and check the yes/no table.

    A failing report falsifies the augmentation's duality and indicates
    a library bug, never a property of the input.
    """
    aug = augment(g)
    return DualityReport(
        g_terminates=_sim.decide_arrival(g, cycle_threshold=cycle_threshold),
        to_dest_terminates=_sim.decide_arrival(
            aug.to_dest(), cycle_threshold=cycle_threshold
        ),
        to_dbar_terminates=_sim.decide_arrival(
            aug.to_dbar(), cycle_threshold=cycle_threshold
        ),
    )


def sidecar_doc(aug: AugmentedInstance) -> dict:
    """JSON-ready companion record emitted next to the augmented graph."""
    return {
        "o_bar": aug.o_bar,
        "d_bar": aug.d_bar,
        "x_d": sorted(aug.x_d),
    }
