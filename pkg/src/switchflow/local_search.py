"""The local-search formulation: find a flow certificate by hill climbing.

An augmented board with ``m`` vertices induces a neighborhood/potential
pair over states ``(vertex, flow)``, where the flow has one entry in
``[0, 2**m]`` per slot:

* the *neighbor* function replays one token step: if the flow is a valid
  switching flow from the fresh origin to the state's vertex and the
  vertex is not a terminal, the token departs through the slot selected
  by the flow's parity imbalance and that slot is incremented; terminal
  states and states with invalid flows map to the reset state (fresh
  origin, all-zero flow);
* the *potential* is -1 on invalid flows and the flow's entry sum
  otherwise, so every valid non-terminal step raises it by exactly 1.

A state is a local optimum when its potential is at least its
neighbor's.  The only local optima are terminal states carrying valid
flows, so walking the neighbor function from the reset state both
terminates (the potential is bounded) and lands on a certificate:
a flow to the original destination witnesses that the source run
terminates, a flow to the fresh sink witnesses that it does not.
Extracting either solves the search problem outright.

States encode to fixed-width bit strings (vertex index, then one
``m+1``-bit field per slot), so the pair also exists at the bit level;
``neighbor_bits`` and ``potential_bits`` evaluate it there, with the
potential shifted up by one to stay nonnegative.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from . import flows as _flows
from . import simulate as _sim
from .graphs import SwitchGraph, require_valid
from .reduction import AugmentedInstance, augment

TERMINATION = "termination"
NON_TERMINATION = "non-termination"


class WalkError(RuntimeError):
    """The walk budget ran out; contradicts the ascent bound, so a bug."""


class CertificateError(RuntimeError):
    """A claimed local optimum did not have the certified shape."""


@dataclass(frozen=True)
class SearchState:
    vertex: int
    flow: tuple[int, ...]


#: Designated invalid state: every malformed bit string decodes to this.
INVALID_STATE = SearchState(-1, ())


@dataclass(frozen=True)
class Certificate:
    """A switching-flow witness for the source instance's verdict."""

    kind: str  # TERMINATION or NON_TERMINATION
    flow: tuple[int, ...]
    origin: int  # the fresh origin of the augmented board
    dest: int  # the terminal the flow drains into


class WalkResult(NamedTuple):
    solution: SearchState
    steps: int


class LocalOptInstance:
    """Neighborhood and potential over the states of one augmented board.

    Both functions are total and deterministic; anything outside the
    domain (the designated invalid state, out-of-range vertex ids or
    entries) behaves like an invalid flow.  Instances are immutable and
    may be shared by concurrent walkers.
    """

    def __init__(self, aug: AugmentedInstance):
        self.aug = aug
        self.h = aug.h
        self.m = aug.h.n
        self.max_entry = 1 << self.m
        self.vertex_bits = (self.m - 1).bit_length()
        self.field_bits = self.m + 1
        self.total_bits = self.vertex_bits + 2 * self.m * self.field_bits
        self.reset = SearchState(aug.o_bar, (0,) * (2 * self.m))
        self._terminals = aug.terminals

    def _in_domain(self, state: SearchState) -> bool:
        return (
            0 <= state.vertex < self.m
            and len(state.flow) == 2 * self.m
            and all(0 <= e <= self.max_entry for e in state.flow)
        )

    def _flow_valid(self, state: SearchState) -> bool:
        return _flows.verify(
            self.h, self.aug.o_bar, state.vertex, state.flow
        ).valid

    def neighbor(self, state: SearchState) -> SearchState:
        if not self._in_domain(state) or not self._flow_valid(state):
            return self.reset
        v = state.vertex
        if v in self._terminals:
            return self.reset
        i = state.flow[2 * v] - state.flow[2 * v + 1]
        flow = list(state.flow)
        flow[2 * v + i] += 1
        return SearchState(self.h.successor(v, i), tuple(flow))

    def potential(self, state: SearchState) -> int:
        if not self._in_domain(state) or not self._flow_valid(state):
            return -1
        return sum(state.flow)

    def is_local_optimum(self, state: SearchState) -> bool:
        return self.potential(state) >= self.potential(self.neighbor(state))

    # -- fixed-width bit-string interface ---------------------------------

    def encode(self, state: SearchState) -> str:
        """Vertex index bits (big-endian), then one field per slot in slot order."""
        if not self._in_domain(state):
            raise ValueError(f"state outside the encodable domain: {state}")
        parts = [format(state.vertex, f"0{self.vertex_bits}b")]
        parts += [format(e, f"0{self.field_bits}b") for e in state.flow]
        return "".join(parts)

    def decode(self, bits: str) -> SearchState:
        """Total on strings of the instance width; malformations map to
        the designated invalid state rather than raising."""
        if len(bits) != self.total_bits or set(bits) - {"0", "1"}:
            raise ValueError(
                f"expected a bit string of width {self.total_bits}, got {bits!r}"
            )
        vertex = int(bits[: self.vertex_bits], 2)
        if vertex >= self.m:
            return INVALID_STATE
        flow = []
        pos = self.vertex_bits
        for _ in range(2 * self.m):
            entry = int(bits[pos : pos + self.field_bits], 2)
            if entry > self.max_entry:
                return INVALID_STATE
            flow.append(entry)
            pos += self.field_bits
        return SearchState(vertex, tuple(flow))

    def neighbor_bits(self, bits: str) -> str:
        return self.encode(self.neighbor(self.decode(bits)))

    def potential_bits(self, bits: str) -> int:
        """Potential shifted up by 1 so the bit-level range is nonnegative
        (invalid states score 0); the shift preserves every comparison."""
        return self.potential(self.decode(bits)) + 1

    def default_budget(self) -> int:
        # Strict ascent bounds any walk by the maximum potential 2m * 2**m.
        return 2 * self.m * (1 << self.m) + 2


def build_instance(aug: AugmentedInstance) -> LocalOptInstance:
    return LocalOptInstance(aug)


@dataclass(frozen=True)
class SinkOfPathInstance:
    """A neighborhood/potential pair plus the start state to iterate from."""

    localopt: LocalOptInstance
    start: SearchState


def walk_localopt(
    inst: LocalOptInstance,
    start: SearchState | None = None,
    budget: int | None = None,
) -> WalkResult:
    """Iterate the neighbor function until the potential stops rising.

    Returns the first state whose potential is at least its neighbor's,
    plus the number of neighbor applications taken to reach it.
    """
    state = inst.reset if start is None else start
    if budget is None:
        budget = inst.default_budget()
    current = inst.potential(state)
    for steps in range(budget + 1):
        nxt = inst.neighbor(state)
        upcoming = inst.potential(nxt)
        if current >= upcoming:
            return WalkResult(state, steps)
        state, current = nxt, upcoming
    raise WalkError(
        f"no local optimum within {budget} steps; "
        "contradicts the ascent bound and indicates a bug"
    )


def walk_sink_of_path(
    inst: SinkOfPathInstance, budget: int | None = None
) -> WalkResult:
    """Same iteration, anchored at the instance's start state; the step
    count doubles as the witness that the solution is reachable from it."""
    return walk_localopt(inst.localopt, inst.start, budget)


def extract_certificate(inst: LocalOptInstance, solution: SearchState) -> Certificate:
    """Read the certificate off a local optimum.

    Any conforming local optimum sits at a terminal with a valid flow;
    anything else falsifies the solution analysis and is rejected.
    """
    aug = inst.aug
    if solution.vertex not in (aug.source_dest, aug.d_bar):
        raise CertificateError(
            f"non-conforming local optimum: vertex {solution.vertex} "
            "is not a terminal"
        )
    report = _flows.verify(inst.h, aug.o_bar, solution.vertex, solution.flow)
    if not report.valid:
        raise CertificateError(
            "non-conforming local optimum: flow fails verification"
        )
    kind = TERMINATION if solution.vertex == aug.source_dest else NON_TERMINATION
    return Certificate(
        kind=kind, flow=solution.flow, origin=aug.o_bar, dest=solution.vertex
    )


def solve_s_arrival(g: SwitchGraph, budget: int | None = None) -> Certificate:
    """End to end: augment, build the instance, walk from reset, extract.

    The returned certificate's kind always matches the simulation
    verdict of ``g``: a termination witness iff the run reaches its
    destination.
    """
    require_valid(g)
    inst = build_instance(augment(g))
    solution, _ = walk_localopt(inst, budget=budget)
    return extract_certificate(inst, solution)


def certificate_doc(cert: Certificate) -> dict:
    """JSON-ready dict: the flow document plus the witness kind."""
    return {
        "origin": cert.origin,
        "dest": cert.dest,
        "counts": list(cert.flow),
        "kind": cert.kind,
    }


def state_doc(inst: LocalOptInstance, state: SearchState) -> dict:
    return {
        "vertex": state.vertex,
        "counts": list(state.flow),
        "potential": inst.potential(state),
    }


def hex_encode(inst: LocalOptInstance, state: SearchState) -> str:
    """Hex form of the encoded state, left-padded to a whole number of nibbles."""
    bits = inst.encode(state)
    width = (inst.total_bits + 3) // 4
    return format(int(bits, 2), f"0{width}x")


def hex_decode(inst: LocalOptInstance, text: str) -> SearchState:
    width = (inst.total_bits + 3) // 4
    if len(text) != width:
        raise ValueError(
            f"expected {width} hex digits for this instance, got {len(text)}"
        )
    value = int(text, 16)  # raises ValueError on non-hex input
    if value >= 1 << inst.total_bits:
        raise ValueError("encoded value exceeds the instance's bit width")
    return inst.decode(format(value, f"0{inst.total_bits}b"))
