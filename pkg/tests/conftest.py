"""Shared test plumbing: the acceptance criteria scoreboard."""

CRITERIA = []


def record_criterion(number, name, ok, detail=""):
    CRITERIA.append((number, name, bool(ok), detail))
    return bool(ok)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria")
    for number, name, ok, detail in sorted(CRITERIA):
        verdict = "PASS" if ok else "FAIL"
        line = f"  [{verdict}] criterion {number:2d} ({name})"
        if detail:
            line += f": {detail}"
        terminalreporter.write_line(line)
