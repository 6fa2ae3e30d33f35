"""Flow verification, desperation, completion, and the slot ceilings."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from switchflow.flows import (
    BoundViolation,
    ConservationViolation,
    ParityViolation,
    bound_report_doc,
    check_bounds,
    complete,
    desperation,
    parse_flow,
    report_doc,
    serialize_flow,
    verify,
)
from switchflow.graphs import graph
from switchflow.reduction import augment
from switchflow.simulate import run_prefix
from switchflow.suite import prefix_states

from helpers import T1, T2, T3, random_graph, relaxed_distances


@st.composite
def switch_graphs(draw, max_n=7):
    n = draw(st.integers(min_value=2, max_value=max_n))
    even = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    odd = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    return graph(n, even, odd, 0, n - 1)


def test_run_profile_is_a_valid_flow():
    assert verify(T2, 0, 1, (1, 1, 0, 0)).valid


def test_zero_flow_cannot_source_a_unit():
    report = verify(T1, 0, 1, (0, 0, 0, 0))
    assert not report.valid
    assert ConservationViolation(0, 0, 1) in report.conservation_violations
    assert ConservationViolation(1, 0, -1) in report.conservation_violations
    assert report.parity_violations == ()


def test_degenerate_route_accepts_the_zero_flow():
    assert verify(T1, 0, 0, (0, 0, 0, 0)).valid
    assert verify(T3, 2, 2, (0, 0, 0, 0, 0, 0)).valid


def test_odd_before_even_is_a_parity_violation():
    report = verify(T1, 0, 1, (0, 1, 0, 0))
    assert report.conservation_violations == ()
    assert report.parity_violations == (ParityViolation(0, 0, 1),)


def test_even_running_two_ahead_is_a_parity_violation():
    report = verify(T1, 0, 1, (2, 0, 0, 1))
    assert ParityViolation(0, 2, 0) in report.parity_violations


def test_negative_counts_are_parity_violations():
    report = verify(T1, 0, 1, (1, -1, 0, 0))
    assert ParityViolation(0, 1, -1) in report.parity_violations


def test_verify_rejects_malformed_arguments():
    with pytest.raises(ValueError, match="entries"):
        verify(T1, 0, 1, (0, 0))
    with pytest.raises(ValueError, match="origin out of range"):
        verify(T1, 9, 1, (0, 0, 0, 0))
    with pytest.raises(ValueError, match="dest out of range"):
        verify(T1, 0, -1, (0, 0, 0, 0))


def test_report_doc_shape():
    doc = report_doc(verify(T1, 0, 1, (0, 0, 0, 0)))
    assert doc["valid"] is False
    assert {"vertex": 0, "found": 0, "required": 1} in doc["conservation_violations"]
    assert doc["parity_violations"] == []


@given(switch_graphs())
@settings(deadline=None)
def test_terminating_profiles_verify_on_both_boards(g):
    aug = augment(g)
    states = prefix_states(aug.h, aug.terminals)
    full = states[-1]
    assert verify(aug.h, aug.o_bar, full.vertex, full.profile).valid
    from switchflow.simulate import Verdict, run

    outcome = run(g)
    if outcome.verdict is Verdict.TERMINATED:
        assert verify(g, g.origin, g.dest, outcome.profile).valid


@given(switch_graphs())
@settings(deadline=None)
def test_every_prefix_is_a_flow_to_the_current_vertex(g):
    aug = augment(g)
    for state in prefix_states(aug.h, aug.terminals):
        assert verify(aug.h, aug.o_bar, state.vertex, state.profile).valid


def test_desperation_on_the_canonical_graphs():
    assert desperation(T1, 1) == (0, 0, 0, 0)
    assert desperation(T2, 1) == (1, 0, 0, 0)
    assert desperation(T3, 2) == (None, None, None, None, 0, 0)


def test_desperation_rejects_bad_dest():
    with pytest.raises(ValueError, match="dest out of range"):
        desperation(T1, 5)


@given(switch_graphs(), st.integers(0, 6))
@settings(deadline=None)
def test_desperation_matches_the_relaxation_oracle(g, dest):
    dest %= g.n
    dist = relaxed_distances(g, dest)
    got = desperation(g, dest)
    for si in range(g.slot_count):
        assert got[si] == dist[g.successor(si // 2, si % 2)]


def test_completing_the_first_prefix_reproduces_the_full_run():
    aug = augment(T1)
    state = run_prefix(aug.h, 1)
    assert state.vertex == 0
    assert state.profile == (0, 0, 0, 0, 1, 0, 0, 0)
    completion = complete(aug, state.vertex, state.profile)
    assert completion.reached == 1
    assert completion.flow == (1, 0, 0, 0, 1, 0, 0, 0)


def test_completing_a_full_flow_only_strips_self_loops():
    aug = augment(T1)
    completion = complete(aug, 1, (1, 0, 0, 0, 1, 0, 0, 0))
    assert completion == (1, (1, 0, 0, 0, 1, 0, 0, 0))
    # Self-loop units at a terminal cancel in both conditions and are
    # dropped rather than carried.
    completion = complete(aug, 1, (1, 0, 5, 5, 1, 0, 0, 0))
    assert completion == (1, (1, 0, 0, 0, 1, 0, 0, 0))


def test_completion_from_the_unreachable_region_drains_to_the_sink():
    aug = augment(T3)
    state = run_prefix(aug.h, 1)
    assert state.vertex == 0
    completion = complete(aug, state.vertex, state.profile)
    assert completion.reached == aug.d_bar
    assert completion.flow == (1, 0, 0, 0, 0, 0, 1, 0, 0, 0)


def test_complete_rejects_flows_ending_at_the_fresh_origin():
    aug = augment(T1)
    with pytest.raises(ValueError, match="fresh origin"):
        complete(aug, aug.o_bar, (0,) * 8)


def test_complete_rejects_non_flows():
    aug = augment(T1)
    with pytest.raises(ValueError, match="not a switching flow"):
        complete(aug, 0, (7, 0, 0, 0, 1, 0, 0, 0))


def test_completion_on_random_cutoffs():
    rng = random.Random(5)
    for _ in range(120):
        g = random_graph(rng, rng.randrange(2, 8))
        aug = augment(g)
        states = prefix_states(aug.h, aug.terminals)
        full = states[-1]
        zeroed = {2 * t + p for t in (aug.source_dest, aug.d_bar) for p in (0, 1)}
        for _ in range(2):
            state = states[rng.randrange(1, len(states))]
            completion = complete(aug, state.vertex, state.profile)
            assert completion.reached == full.vertex
            assert completion.flow == full.profile
            assert verify(aug.h, aug.o_bar, completion.reached, completion.flow).valid
            assert all(
                z >= x
                for si, (z, x) in enumerate(zip(completion.flow, state.profile))
                if si not in zeroed
            )


def test_bounds_accept_completed_flows():
    aug = augment(T1)
    report = check_bounds(aug, (1, 0, 0, 0, 1, 0, 0, 0), 1)
    assert report.ok
    assert report.violations == () and report.flags == ()


def test_slot_ceiling_rule():
    aug = augment(T1)
    report = check_bounds(aug, (16, 0, 0, 0, 1, 0, 0, 0), 1)
    assert BoundViolation("slot-ceiling", 0, 16, 15) in report.violations


def test_fresh_origin_rule():
    aug = augment(T1)
    report = check_bounds(aug, (0, 0, 0, 0, 2, 0, 0, 0), 1)
    assert report.violations == (BoundViolation("fresh-origin", 4, 2, 1),)


def test_drained_region_rule_toward_the_sink():
    aug = augment(T3)
    # A unit on a slot pointing at the original destination cannot occur
    # in any flow that drains to the fresh sink.
    counts = [0] * 10
    counts[4] = 1
    report = check_bounds(aug, counts, aug.d_bar)
    assert BoundViolation("drained-region", 4, 1, 0) in report.violations


def test_drained_region_rule_toward_the_dest():
    aug = augment(T3)
    counts = [0] * 10
    counts[1] = 1  # this slot heads into the fresh sink
    report = check_bounds(aug, counts, aug.source_dest)
    assert BoundViolation("drained-region", 1, 1, 0) in report.violations


def test_desperation_rule():
    aug = augment(T1)
    report = check_bounds(aug, (2, 0, 0, 0, 1, 0, 0, 0), 1)
    assert report.violations == (BoundViolation("desperation", 0, 2, 1),)


def test_reached_terminal_slots_are_flagged_not_failed():
    aug = augment(T1)
    report = check_bounds(aug, (1, 0, 16, 0, 1, 0, 0, 0), 1)
    assert report.ok
    assert any(f.rule == "slot-ceiling" and f.slot == 2 for f in report.flags)


def test_check_bounds_rejects_malformed_arguments():
    aug = augment(T1)
    with pytest.raises(ValueError, match="terminals"):
        check_bounds(aug, (0,) * 8, 0)
    with pytest.raises(ValueError, match="slots"):
        check_bounds(aug, (0,) * 4, 1)


def test_bound_report_doc_shape():
    aug = augment(T1)
    doc = bound_report_doc(check_bounds(aug, (2, 0, 0, 0, 1, 0, 0, 0), 1))
    assert doc["ok"] is False
    assert doc["violations"] == [
        {"rule": "desperation", "slot": 0, "tail": 0, "parity": 0, "value": 2, "limit": 1}
    ]
    assert doc["flags"] == []


@given(switch_graphs())
@settings(deadline=None)
def test_full_profiles_and_completions_respect_the_bounds(g):
    aug = augment(g)
    states = prefix_states(aug.h, aug.terminals)
    full = states[-1]
    assert check_bounds(aug, full.profile, full.vertex).ok
    mid = states[len(states) // 2] if len(states) > 1 else None
    if mid is not None and mid.vertex != aug.o_bar:
        completion = complete(aug, mid.vertex, mid.profile)
        assert check_bounds(aug, completion.flow, completion.reached).ok


def test_flow_document_round_trip():
    text = serialize_flow(2, 1, (1, 0, 0, 0, 1, 0, 0, 0))
    assert text == '{"origin":2,"dest":1,"counts":[1,0,0,0,1,0,0,0]}'
    assert parse_flow(text) == (2, 1, (1, 0, 0, 0, 1, 0, 0, 0))


def test_parse_flow_rejects_malformed_documents():
    with pytest.raises(ValueError, match="line 1 column"):
        parse_flow("{nope")
    with pytest.raises(ValueError, match=r"\$: expected object"):
        parse_flow("[]")
    with pytest.raises(ValueError, match=r"\$\.extra: unknown field"):
        parse_flow('{"origin":0,"dest":1,"counts":[],"extra":1}')
    with pytest.raises(ValueError, match=r"\$\.counts: missing required field"):
        parse_flow('{"origin":0,"dest":1}')
    with pytest.raises(ValueError, match=r"\$\.origin: expected integer"):
        parse_flow('{"origin":"0","dest":1,"counts":[]}')
    with pytest.raises(ValueError, match=r"\$\.counts\[1\]: expected integer"):
        parse_flow('{"origin":0,"dest":1,"counts":[0,true]}')
