"""Switch graphs: directed graphs with exactly two outgoing edge slots per vertex.

Every vertex has an *even* and an *odd* successor.  A token walking the
graph leaves each vertex through the slot its switch currently points
at, and the switch toggles after every departure, so departures from a
vertex alternate even, odd, even, ...  The graph record also carries the
origin and destination of the token run, because everything downstream
(simulation, certificates, the reduction) consumes the triple together.

Slot convention, used by every flow vector in this package: the slots of
a graph with ``n`` vertices are indexed ``0 .. 2n-1`` in the order
(vertex 0 even, vertex 0 odd, vertex 1 even, ...), i.e. slot ``2*v + p``
is vertex ``v`` with parity ``p``.  Parallel slots (even and odd
successor coinciding) stay distinct slots.

Graphs are immutable after construction and safe to share across
threads; all functions here are pure.  Construction does not validate --
call :func:`validate` (or :func:`require_valid`) to enforce invariants,
so that malformed records can be built and inspected in tests.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Iterator, NamedTuple

EVEN = 0
ODD = 1

PARITY_NAMES = ("even", "odd")

# JSON schema: fixed key order, "labels" optional.
_REQUIRED_KEYS = ("n", "origin", "dest", "even", "odd")
_ALL_KEYS = _REQUIRED_KEYS + ("labels",)


class GraphFormatError(ValueError):
    """Malformed or invalid graph document; message includes the position."""


class EdgeSlot(NamedTuple):
    """One of the 2n outgoing edge slots, identified by (tail, parity)."""

    tail: int
    parity: int

    @property
    def index(self) -> int:
        return 2 * self.tail + self.parity


def slot_index(tail: int, parity: int) -> int:
    return 2 * tail + parity


def slot_of(index: int) -> EdgeSlot:
    return EdgeSlot(index // 2, index % 2)


@dataclass(frozen=True)
class SwitchGraph:
    """A switch graph plus the origin/destination of the token run.

    ``even[v]`` / ``odd[v]`` are the two successors of vertex ``v``;
    vertices are dense integer ids ``0 .. n-1``.  Optional ``labels``
    carry external vertex names and live only in the JSON document.
    """

    n: int
    even: tuple[int, ...]
    odd: tuple[int, ...]
    origin: int
    dest: int
    labels: tuple[str, ...] | None = None

    def successor(self, v: int, parity: int) -> int:
        return self.odd[v] if parity else self.even[v]

    def head(self, slot: EdgeSlot) -> int:
        return self.successor(slot.tail, slot.parity)

    def slots(self) -> Iterator[EdgeSlot]:
        for v in range(self.n):
            yield EdgeSlot(v, EVEN)
            yield EdgeSlot(v, ODD)

    @property
    def slot_count(self) -> int:
        return 2 * self.n

    def with_route(self, origin: int | None = None, dest: int | None = None) -> "SwitchGraph":
        """Same board, different origin/dest."""
        return replace(
            self,
            origin=self.origin if origin is None else origin,
            dest=self.dest if dest is None else dest,
        )

    def predecessor_slots(self) -> list[list[int]]:
        """For each vertex, the slot indices whose head it is."""
        preds: list[list[int]] = [[] for _ in range(self.n)]
        for v in range(self.n):
            preds[self.even[v]].append(slot_index(v, EVEN))
            preds[self.odd[v]].append(slot_index(v, ODD))
        return preds


def graph(n: int, even, odd, origin: int, dest: int, labels=None) -> SwitchGraph:
    """Convenience constructor accepting any successor sequences."""
    return SwitchGraph(
        n=n,
        even=tuple(even),
        odd=tuple(odd),
        origin=origin,
        dest=dest,
        labels=None if labels is None else tuple(labels),
    )


def validate(g: SwitchGraph) -> list[str]:
    """Return every invariant violation; an empty list means the graph is valid."""
    violations = []
    if g.n < 1:
        violations.append(f"n: vertex count must be positive, found {g.n}")
        return violations
    for name, succ in (("even", g.even), ("odd", g.odd)):
        if len(succ) != g.n:
            violations.append(
                f"{name}: bad vertex count, expected {g.n} successors, found {len(succ)}"
            )
            continue
        for v, w in enumerate(succ):
            if not isinstance(w, int) or isinstance(w, bool) or not 0 <= w < g.n:
                violations.append(
                    f"{name}[{v}]: successor out of range ({w!r} not in 0..{g.n - 1})"
                )
    for name, v in (("origin", g.origin), ("dest", g.dest)):
        if not 0 <= v < g.n:
            violations.append(f"{name}: vertex out of range ({v} not in 0..{g.n - 1})")
    if g.origin == g.dest:
        violations.append("origin equals dest")
    if g.labels is not None and len(g.labels) != g.n:
        violations.append(
            f"labels: bad vertex count, expected {g.n} labels, found {len(g.labels)}"
        )
    return violations


def require_valid(g: SwitchGraph) -> SwitchGraph:
    violations = validate(g)
    if violations:
        raise ValueError("invalid switch graph: " + "; ".join(violations))
    return g


def reverse_reachable(g: SwitchGraph, target: int) -> set[int]:
    """All vertices with a directed path (length >= 0) to ``target``.

    The target itself is always included (empty path).  The complement
    of this set within the vertex set is the absorbing region that can
    never deliver the token to ``target``.
    """
    if not 0 <= target < g.n:
        raise ValueError(f"target out of range ({target} not in 0..{g.n - 1})")
    preds = g.predecessor_slots()
    reached = {target}
    frontier = [target]
    while frontier:
        w = frontier.pop()
        for si in preds[w]:
            v = si // 2
            if v not in reached:
                reached.add(v)
                frontier.append(v)
    return reached


def _expect(cond: bool, position: str, message: str) -> None:
    if not cond:
        raise GraphFormatError(f"{position}: {message}")


def _int_field(doc: dict, key: str) -> int:
    value = doc[key]
    _expect(
        isinstance(value, int) and not isinstance(value, bool),
        f"$.{key}",
        f"expected integer, found {value!r}",
    )
    return value


def _int_array(doc: dict, key: str, n: int) -> tuple[int, ...]:
    value = doc[key]
    _expect(isinstance(value, list), f"$.{key}", f"expected array, found {value!r}")
    _expect(len(value) == n, f"$.{key}", f"expected {n} entries, found {len(value)}")
    for i, item in enumerate(value):
        _expect(
            isinstance(item, int) and not isinstance(item, bool),
            f"$.{key}[{i}]",
            f"expected integer, found {item!r}",
        )
    return tuple(value)


def parse(text: str) -> SwitchGraph:
    """Parse the JSON graph document, rejecting anything malformed.

    Unknown fields, type errors, and invariant violations are all
    reported with their position in the document.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphFormatError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
    _expect(isinstance(doc, dict), "$", f"expected object, found {type(doc).__name__}")
    for key in doc:
        _expect(key in _ALL_KEYS, f"$.{key}", "unknown field")
    for key in _REQUIRED_KEYS:
        _expect(key in doc, f"$.{key}", "missing required field")

    n = _int_field(doc, "n")
    _expect(n >= 1, "$.n", f"vertex count must be positive, found {n}")
    labels = None
    if "labels" in doc:
        raw = doc["labels"]
        _expect(isinstance(raw, list), "$.labels", f"expected array, found {raw!r}")
        _expect(len(raw) == n, "$.labels", f"expected {n} entries, found {len(raw)}")
        for i, item in enumerate(raw):
            _expect(isinstance(item, str), f"$.labels[{i}]", f"expected string, found {item!r}")
        labels = tuple(raw)

    g = SwitchGraph(
        n=n,
        even=_int_array(doc, "even", n),
        odd=_int_array(doc, "odd", n),
        origin=_int_field(doc, "origin"),
        dest=_int_field(doc, "dest"),
        labels=labels,
    )
    violations = validate(g)
    if violations:
        raise GraphFormatError(
            "; ".join(f"$.{v}" if ":" in v else f"$: {v}" for v in violations)
        )
    return g


def serialize(g: SwitchGraph) -> str:
    """Byte-deterministic JSON: fixed key order, no whitespace."""
    doc: dict = {
        "n": g.n,
        "origin": g.origin,
        "dest": g.dest,
        "even": list(g.even),
        "odd": list(g.odd),
    }
    if g.labels is not None:
        doc["labels"] = list(g.labels)
    return json.dumps(doc, separators=(",", ":"))


def to_dot(g: SwitchGraph) -> str:
    """DOT export with one edge line per slot, tagged with its parity."""
    lines = ["digraph switch_graph {"]
    for v in range(g.n):
        attrs = []
        if g.labels is not None:
            attrs.append(f'label="{g.labels[v]}"')
        if v == g.origin:
            attrs.append('role="origin"')
        if v == g.dest:
            attrs.append('role="dest"')
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {v}{suffix};")
    for slot in g.slots():
        lines.append(
            f'  {slot.tail} -> {g.head(slot)} [parity="{PARITY_NAMES[slot.parity]}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
