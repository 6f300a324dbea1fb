"""Full acceptance gate: every numbered criterion at its stated tolerance.

The whole battery runs once per session; each test then asserts one
criterion and echoes its pass/fail line to the real terminal so the gate
reads as twelve explicit verdicts.
"""

import pytest

from curvmoduli.acceptance import CRITERIA, run_all

IDS = [f"{number:02d}-{name.replace(' ', '-')}" for number, name, _, _ in CRITERIA]


@pytest.fixture(scope="module")
def battery():
    results = run_all(seed=7)
    return {r.number: r for r in results}


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=IDS)
def test_criterion(number, battery, capsys):
    result = battery[number]
    with capsys.disabled():
        print(result.line())
    assert result.passed, result.details
