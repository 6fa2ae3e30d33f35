"""Shared fixtures and independent oracles for the test suite.

The three canonical graphs exercise the three interesting shapes: a
direct hop (T1), a self-loop that forces a switch flip (T2), and a
closed pair that can never reach the destination (T3).

The oracles here are deliberately written with different algorithms and
data structures than the library (closure matrix instead of reverse BFS,
rotor deques instead of a switch bitmask, relaxation instead of BFS
levels), so agreement is evidence rather than tautology.
"""

from __future__ import annotations

import itertools
import random
from collections import deque

from switchflow.graphs import EVEN, ODD, SwitchGraph, graph

T1 = graph(2, [1, 1], [1, 1], 0, 1)
T2 = graph(2, [0, 1], [1, 1], 0, 1)
T3 = graph(3, [1, 0, 2], [1, 0, 2], 0, 2)

ACCEPTANCE_SEED = 20260819


def counter_chain(n: int) -> SwitchGraph:
    """Deep deterministic family: even restarts at 0, odd advances.

    The run from 0 to n-1 behaves like a binary counter and takes
    2 * 2**(n-1) - 2 steps, so slot counts actually approach the
    per-slot ceilings instead of staying near 1.
    """
    even = [0] * (n - 1) + [n - 1]
    odd = list(range(1, n)) + [n - 1]
    return graph(n, even, odd, 0, n - 1)


def bouncer_chain(n: int) -> SwitchGraph:
    """Quadratic family: interior vertices bounce back on even, advance
    on odd, giving a profile graded against head-to-dest distance."""
    even = [1] + [v - 1 for v in range(1, n - 1)] + [n - 1]
    odd = [1] + [v + 1 for v in range(1, n - 1)] + [n - 1]
    return graph(n, even, odd, 0, n - 1)


def random_graph(rng: random.Random, n: int) -> SwitchGraph:
    """Uniform successor maps; origin 0, dest n-1."""
    return graph(
        n,
        [rng.randrange(n) for _ in range(n)],
        [rng.randrange(n) for _ in range(n)],
        0,
        n - 1,
    )


def closure_reachable(g: SwitchGraph, target: int) -> set[int]:
    """Brute-force oracle for reverse_reachable: iterate a boolean
    reachability matrix to its fixed point."""
    reach = [[v == w for w in range(g.n)] for v in range(g.n)]
    changed = True
    while changed:
        changed = False
        for v in range(g.n):
            for w in (g.even[v], g.odd[v]):
                for t in range(g.n):
                    if reach[w][t] and not reach[v][t]:
                        reach[v][t] = True
                        changed = True
    return {v for v in range(g.n) if reach[v][target]}


def rotor_run(g: SwitchGraph, max_steps: int = 1_000_000):
    """Independent RUN oracle: each vertex holds a two-slot rotor deque
    that rotates after every departure.

    Returns (profile, steps) for a terminating run and None when a
    (vertex, rotor positions) state repeats.
    """
    rotors = [deque(((v, EVEN), (v, ODD))) for v in range(g.n)]
    profile = [0] * (2 * g.n)
    v = g.origin
    steps = 0
    seen = set()
    while v != g.dest:
        key = (v, tuple(r[0][1] for r in rotors))
        if key in seen:
            return None
        seen.add(key)
        tail, parity = rotors[v][0]
        rotors[v].rotate(1)
        profile[2 * tail + parity] += 1
        v = g.successor(tail, parity)
        steps += 1
        if steps > max_steps:
            raise RuntimeError("oracle budget exhausted")
    return tuple(profile), steps


def relaxed_distances(g: SwitchGraph, dest: int) -> list[int | None]:
    """Desperation oracle: per-vertex shortest distance to dest by
    repeated edge relaxation instead of BFS levels."""
    inf = float("inf")
    dist: list[float] = [inf] * g.n
    dist[dest] = 0
    for _ in range(g.n):
        for v in range(g.n):
            for w in (g.even[v], g.odd[v]):
                if dist[w] + 1 < dist[v]:
                    dist[v] = dist[w] + 1
    return [None if d == inf else int(d) for d in dist]


def all_two_vertex_graphs() -> list[SwitchGraph]:
    """Every successor map over 2 vertices, origin 0, dest 1."""
    out = []
    for e0, e1, o0, o1 in itertools.product(range(2), repeat=4):
        out.append(graph(2, [e0, e1], [o0, o1], 0, 1))
    return out


def acceptance_instances() -> list[SwitchGraph]:
    """The shared acceptance suite: seeded random instances with n <= 10
    in both generator models, the canonical graphs, and the two deep
    deterministic families."""
    from switchflow.generate import instance_stream

    randoms = [g for _, g in instance_stream(10, 2500, ACCEPTANCE_SEED)]
    deep = [counter_chain(n) for n in range(4, 11)]
    deep += [bouncer_chain(n) for n in range(4, 11)]
    return randoms + [T1, T2, T3] + deep
