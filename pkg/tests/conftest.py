import dataclasses
import re

import pytest

from roadcall import load_scenario

CRITERION_LABELS = {
    1: "expected-risk table reproduction",
    2: "reduction ratios",
    3: "decision statements at km 200",
    4: "penalty-onset jump in the wr availability curve",
    5: "RUL accuracy trend",
    6: "cancellation-bound relief",
    7: "second-workshop effect",
    8: "sampling-oracle equivalence",
    9: "incomplete-gamma correctness",
    10: "invariant suite",
}


def pytest_terminal_summary(terminalreporter):
    """One pass/fail line per acceptance criterion."""
    lines = {}
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            match = re.search(r"test_acceptance\.py::test_c(\d+)", report.nodeid)
            if match:
                number = int(match.group(1))
                lines[number] = "PASS" if outcome == "passed" else "FAIL"
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(lines):
        label = CRITERION_LABELS.get(number, "")
        terminalreporter.write_line(f"criterion {number:2d} {lines[number]}  {label}")


@pytest.fixture(scope="session")
def basic():
    return load_scenario("paper-basic")


@pytest.fixture(scope="session")
def calibrated():
    return load_scenario("paper-calibrated")


@pytest.fixture()
def make_scenario(basic):
    """Variant builder over the basic preset: pass section=replacement kwargs."""

    def build(**overrides):
        scenario = basic
        for section, fields in overrides.items():
            current = getattr(scenario, section)
            scenario = dataclasses.replace(scenario, **{section: dataclasses.replace(current, **fields)})
        return scenario

    return build
