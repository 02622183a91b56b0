import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

_TITLES = {
    1: "Hausdorff metric oracle equivalence and metric axioms",
    2: "ex42 Hausdorff divergence against the closed form",
    3: "ex42 Vietoris divergence off the origin, convergence at it",
    4: "ex42 Fell convergence and meet oracle",
    5: "ex41 Vietoris divergence with Fell and Hausdorff convergence",
    6: "ex35 join oracle with meet discontinuity and Fell divergence",
    7: "ex36 inverse map discontinuity with revalidated escapes",
    8: "ex25 classification and closure escape",
    9: "Open-box positive suite in dimensions 2 and 3",
    10: "Constructive interval bound, order box and boundary point",
    11: "Scene DSL round trip and membership with fuzz totality",
    12: "Determinism of repro all",
}

_results: dict[int, str] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.split("::")[-1]
    if not name.startswith("test_ac"):
        return
    num = int(name[7:9])
    if report.failed:
        _results[num] = "FAIL"
    elif report.when == "call" and num not in _results:
        _results[num] = "PASS" if report.passed else report.outcome.upper()


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_results):
        terminalreporter.write_line(f"AC{num:<2d} {_results[num]:4s}  {_TITLES.get(num, '')}")
