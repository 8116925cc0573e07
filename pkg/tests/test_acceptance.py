"""End-to-end acceptance checks on the two-vertex example and the small
fixtures.  Every check is exact; each test prints one PASS/FAIL line.

The lines are collected into an "acceptance criteria" section at the end
of the pytest run; ``siltlab verify-example7`` prints the same table.
"""

import json

import pytest

from siltlab.suite import CHECKS, run_check

NAMES = [
    "hom_tables_of_the_families",
    "graded_self_homs",
    "spherical_twists",
    "silting_quiver_ball",
    "mutation_involution",
    "hom_duality",
    "rickard_round_trip",
    "bb_tilting_matches_mutation",
    "order_isomorphism",
    "structural_invariants",
]


@pytest.mark.parametrize("number", range(1, len(CHECKS) + 1), ids=NAMES)
def test_criterion(number, acceptance_lines):
    res = run_check(number)
    acceptance_lines.append(res.line())
    print()
    print(res.line())
    assert res.ok, json.dumps(res.as_dict(), indent=2, default=str)
