"""Deterministic token runs and the termination decision.

The run starts at the graph's origin with every switch pointing at the
even successor.  Each step departs the current vertex through the slot
its switch points at, toggles that switch, and moves to the slot's head.
The run terminates when the destination is reached.

All switch positions are packed into one integer bitmask (bit ``v`` set
means vertex ``v`` departs through its odd successor next), so a full
simulation state is the hashable pair (vertex, switches) and the graph
itself is never mutated.  The state space has size ``n * 2**n``, which
makes cycle detection decisive at desk scale: either the destination is
reached or some state repeats.

Counters are plain Python integers, so profile entries and step counts
are exact at any magnitude.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple

from .graphs import EVEN, ODD, SwitchGraph, require_valid, slot_index

#: Above this vertex count the visited-state set is no longer kept and
#: simulation falls back to budget-only mode.
CYCLE_DETECTION_THRESHOLD = 20


class Verdict(str, Enum):
    TERMINATED = "terminated"
    NON_TERMINATING = "non-terminating"
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass(frozen=True)
class CycleWitness:
    """A repeated (vertex, switches) state and the two steps it occurred at."""

    vertex: int
    switches: int
    first_step: int
    second_step: int


@dataclass(frozen=True)
class RunOutcome:
    verdict: Verdict
    profile: tuple[int, ...]
    steps: int
    final_vertex: int
    cycle_witness: CycleWitness | None = None


class PrefixState(NamedTuple):
    """Simulation state after exactly t steps."""

    vertex: int
    profile: tuple[int, ...]
    switches: int


class TraceStep(NamedTuple):
    step: int
    tail: int
    parity: int
    head: int


def default_budget(n: int) -> int:
    """Step cap covering any terminating run: twice the per-slot ceiling 2**n."""
    return 2 * n * (1 << n)


def simulate(
    g: SwitchGraph,
    *,
    start: int | None = None,
    switches: int = 0,
    targets: Iterable[int] | None = None,
    budget: int | None = None,
    cycle_threshold: int = CYCLE_DETECTION_THRESHOLD,
    trace: list[TraceStep] | None = None,
) -> RunOutcome:
    """Run the token until a target vertex, a repeated state, or the budget.

    This is the engine behind :func:`run`, :func:`decide_arrival`, the
    flow-completion procedure, and the local-search oracles: it allows
    an arbitrary start vertex, initial switch positions, and a *set* of
    stopping vertices.  The graph is assumed valid.
    """
    n = g.n
    target_set = frozenset({g.dest} if targets is None else targets)
    if budget is None:
        budget = default_budget(n)
    v = g.origin if start is None else start
    profile = [0] * (2 * n)
    steps = 0
    even, odd = g.even, g.odd
    seen: dict[tuple[int, int], int] | None = {} if n <= cycle_threshold else None

    while True:
        if v in target_set:
            return RunOutcome(Verdict.TERMINATED, tuple(profile), steps, v)
        if seen is not None:
            key = (v, switches)
            first = seen.get(key)
            if first is not None:
                witness = CycleWitness(v, switches, first, steps)
                return RunOutcome(
                    Verdict.NON_TERMINATING, tuple(profile), steps, v, witness
                )
            seen[key] = steps
        if steps >= budget:
            return RunOutcome(Verdict.BUDGET_EXHAUSTED, tuple(profile), steps, v)
        bit = 1 << v
        parity = ODD if switches & bit else EVEN
        w = odd[v] if parity else even[v]
        profile[2 * v + parity] += 1
        switches ^= bit
        if trace is not None:
            trace.append(TraceStep(steps, v, parity, w))
        v = w
        steps += 1


def run(
    g: SwitchGraph,
    budget: int | None = None,
    *,
    cycle_threshold: int = CYCLE_DETECTION_THRESHOLD,
    trace: list[TraceStep] | None = None,
) -> RunOutcome:
    """Simulate the run from the graph's origin to its destination.

    Returns a decisive verdict whenever cycle detection is active
    (``n <= cycle_threshold``); otherwise a run that neither terminates
    nor exhausts the budget cannot occur, and the budget (default
    ``2n * 2**n``) is the only stopping rule besides arrival.
    """
    require_valid(g)
    return simulate(
        g, budget=budget, cycle_threshold=cycle_threshold, trace=trace
    )


def run_prefix(g: SwitchGraph, t: int) -> PrefixState:
    """Re-simulate from the start and stop after exactly ``t`` steps.

    Raises ValueError("prefix beyond termination ...") if the run
    reaches the destination in fewer than ``t`` steps.
    """
    require_valid(g)
    if t < 0:
        raise ValueError(f"step count must be nonnegative, got {t}")
    v = g.origin
    switches = 0
    profile = [0] * (2 * g.n)
    for step in range(t):
        if v == g.dest:
            raise ValueError(
                f"prefix beyond termination: run ended after {step} steps, {t} requested"
            )
        bit = 1 << v
        parity = ODD if switches & bit else EVEN
        profile[slot_index(v, parity)] += 1
        switches ^= bit
        v = g.odd[v] if parity else g.even[v]
    return PrefixState(v, tuple(profile), switches)


def decide_arrival(
    g: SwitchGraph, *, cycle_threshold: int = CYCLE_DETECTION_THRESHOLD
) -> bool:
    """True iff the run from origin reaches the destination.

    Always decisive: within ``n * 2**n + 1`` steps either the
    destination is reached or a (vertex, switches) state repeats, since
    that is the size of the whole state space.  Exact detection needs
    the visited-state set, so graphs above the cycle-detection
    threshold are rejected.
    """
    require_valid(g)
    if g.n > cycle_threshold:
        raise ValueError(
            f"n={g.n} exceeds the cycle-detection threshold {cycle_threshold}; "
            "the verdict would not be decisive"
        )
    outcome = simulate(
        g,
        budget=g.n * (1 << g.n) + 1,
        cycle_threshold=cycle_threshold,
    )
    assert outcome.verdict is not Verdict.BUDGET_EXHAUSTED
    return outcome.verdict is Verdict.TERMINATED


def format_trace(trace: Iterable[TraceStep]) -> str:
    """One deterministic line per step: ``step <i>: <v> -<parity>-> <w>``."""
    from .graphs import PARITY_NAMES

    return "\n".join(
        f"step {s.step}: {s.tail} -{PARITY_NAMES[s.parity]}-> {s.head}" for s in trace
    )


def outcome_to_doc(outcome: RunOutcome) -> dict:
    """JSON-ready dict with the profile in slot order."""
    doc: dict = {
        "verdict": outcome.verdict.value,
        "steps": outcome.steps,
        "final_vertex": outcome.final_vertex,
        "profile": list(outcome.profile),
    }
    if outcome.cycle_witness is not None:
        w = outcome.cycle_witness
        doc["cycle_witness"] = {
            "vertex": w.vertex,
            "switches": w.switches,
            "first_step": w.first_step,
            "second_step": w.second_step,
        }
    return doc
