"""Switching flows: run profiles you can check without re-running.

A run's edge profile satisfies two local conditions at every vertex:
conservation (one unit flows from the origin to wherever the token
stands) and parity (each even slot is used as often as its odd partner,
or once more).  Any profile satisfying both is a switching flow, and a
switching flow into a terminal certifies the run's verdict on its own.

The script verifies a genuine profile, breaks it to show the report,
completes a cut-off run into a full certificate, and audits the
per-slot ceilings that every produced flow respects.
"""

from switchflow import augment, check_bounds, complete, graph, verify
from switchflow.flows import bound_report_doc, serialize_flow
from switchflow.suite import prefix_states


def main() -> None:
    g = graph(2, [0, 1], [1, 1], 0, 1)
    aug = augment(g)
    h = aug.h
    states = prefix_states(h, sorted(aug.terminals))
    full = states[-1]
    print(f"augmented run: {len(states) - 1} steps, ends at vertex {full.vertex}")
    print(f"final profile: {list(full.profile)}")

    report = verify(h, aug.o_bar, full.vertex, full.profile)
    print(f"verifies as a switching flow: {report.valid}")

    # Corrupt one slot (the origin's odd edge): conservation breaks at
    # both endpoints of the extra edge and parity breaks at its tail,
    # and the report names the exact vertices.
    broken = list(full.profile)
    broken[1] += 1
    report = verify(h, aug.o_bar, full.vertex, broken)
    print(f"after adding one phantom traversal: valid={report.valid}")
    for c in report.conservation_violations:
        print(f"  vertex {c.vertex}: net flow {c.found}, required {c.required}")
    for p in report.parity_violations:
        print(f"  vertex {p.vertex}: even slot {p.even_count}, odd slot {p.odd_count}")

    # Cut the run off mid-way and rebuild the certificate from the
    # partial profile alone.
    cutoff = states[1]
    print(
        f"\ncut-off after 1 step: token at {cutoff.vertex}, "
        f"profile {list(cutoff.profile)}"
    )
    completion = complete(aug, cutoff.vertex, cutoff.profile)
    print(f"completed to terminal {completion.reached}: {list(completion.flow)}")
    print(f"matches the full run: {completion.flow == full.profile}")
    print("as a document: " + serialize_flow(aug.o_bar, completion.reached, completion.flow))

    # Every produced flow respects hard per-slot ceilings; the audit
    # lists violations (none here) and informational findings.
    audit = check_bounds(aug, completion.flow, completion.reached)
    print(f"\nbound audit ok: {audit.ok}")
    print(f"audit document: {bound_report_doc(audit)}")

    # A profile that walks a slot twice before its partner is not a
    # flow at all; parity catches it.
    report = verify(g, g.origin, g.dest, (2, 0, 0, 1))
    print(f"\nparity violations in a forged profile: {list(report.parity_violations)}")


if __name__ == "__main__":
    main()
