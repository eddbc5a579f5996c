import re

_results = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)$", report.nodeid)
    if not m:
        return
    cid = int(m.group(1))
    if report.when == "call" or report.outcome != "passed":
        msg = ""
        if report.failed:
            msg = str(report.longrepr.reprcrash.message) if hasattr(report.longrepr, "reprcrash") else ""
        _results[cid] = (report.outcome, msg)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for cid in sorted(_results):
        outcome, msg = _results[cid]
        line = f"criterion {cid} ({CRITERIA[cid]}): {'PASS' if outcome == 'passed' else 'FAIL'}"
        if msg:
            line += f"  [{msg.splitlines()[0]}]"
        terminalreporter.write_line(line)
