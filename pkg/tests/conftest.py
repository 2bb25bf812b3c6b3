import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m:
            item.user_properties.append(("criterion", m.args))


def pytest_runtest_logreport(report):
    for key, value in report.user_properties:
        if key != "criterion":
            continue
        number, title = value
        if report.when == "call" or report.outcome != "passed":
            prev = _criteria.get(number, (title, "PASS"))[1]
            status = "FAIL" if report.outcome != "passed" or prev == "FAIL" else "PASS"
            _criteria[number] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_criteria):
        title, status = _criteria[number]
        tr.write_line(f"ACCEPTANCE criterion {number}: {status} {title}")
    passed = sum(s == "PASS" for _, s in _criteria.values())
    tr.write_line(f"ACCEPTANCE {passed}/{len(_criteria)} criteria pass")
