from collections import defaultdict

_outcomes = defaultdict(list)


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or report.outcome == "failed":
        _outcomes[crit].append(report.passed)


def pytest_collection_modifyitems(items):
    for item in items:
        marker = item.get_closest_marker("criterion")
        if marker is not None:
            item.user_properties.append(("criterion", marker.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_outcomes):
        results = _outcomes[crit]
        status = "PASS" if results and all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {crit:>2}: {status} ({sum(results)}/{len(results)} checks)")
