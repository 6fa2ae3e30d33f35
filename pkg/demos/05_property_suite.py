"""One command to cross-check every layer against every other.

The property suite generates seeded random instances and replays four
check families on each: the termination dichotomy, prefix profiles
verifying as flows, completions matching the full run, and the
local-search walk reproducing the simulation state by state.  A failure
report carries the generator spec and the serialized graph, so any
counterexample reproduces in isolation.

The suite should also be able to fail: a self-test wires in a corrupted
flow verifier and demands that the corruption surfaces.
"""

import argparse

from switchflow import run_checks
from switchflow.suite import self_test


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=20260819)
    parser.add_argument("--count", type=int, default=150)
    parser.add_argument("--n-max", type=int, default=8)
    args = parser.parse_args()

    report = run_checks(args.n_max, args.count, args.seed)
    print(f"instances: {report.instances}")
    for family in sorted(report.passed):
        print(f"  {family}: {report.passed[family]} passed")
    print(f"result: {'ok' if report.ok else 'FALSIFIED'}")
    if report.failure is not None:
        f = report.failure
        print(f"  family: {f.family}")
        print(f"  reproduce with: {f.spec}")
        print(f"  graph: {f.graph_json}")
        print(f"  detail: {f.detail}")

    print(f"\ncorrupted verifier surfaces: {self_test(args.seed)}")


if __name__ == "__main__":
    main()
