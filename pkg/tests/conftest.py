import sys
from pathlib import Path

import frobtrans.bent as bt

sys.path.insert(0, str(Path(__file__).parent))

_criteria: dict[str, str] = {}


def pytest_configure(config):
    # every certificate built anywhere in the run is re-checked by criterion 10
    bt.certificate_log = []


def pytest_collection_modifyitems(session, config, items):
    last = [it for it in items if it.name.startswith("test_criterion_10")]
    items[:] = [it for it in items if it not in last] + last


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1].split("[", 1)[0]
    if not name.startswith("test_criterion_"):
        return
    if report.when == "call" or report.failed:
        prev = _criteria.get(name)
        _criteria[name] = "FAIL" if report.failed or prev == "FAIL" else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria):
        num = name.split("_")[2]
        title = " ".join(name.split("_")[3:])
        terminalreporter.write_line(f"criterion {num}: {_criteria[name]}  ({title})")
