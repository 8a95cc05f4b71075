import re

_CRITERION = re.compile(r"test_criterion_(\d+)_")


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when != "call" and outcome == "passed":
                continue
            m = _CRITERION.search(rep.nodeid)
            if m:
                lines.append((int(m.group(1)), "PASS" if outcome == "passed" else "FAIL", rep.nodeid.split("::")[-1]))
    if lines:
        terminalreporter.section("acceptance criteria")
        for number, status, name in sorted(set(lines)):
            terminalreporter.write_line(f"criterion {number}: {status}  ({name})")
