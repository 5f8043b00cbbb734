import time

ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}
_SESSION_START = time.perf_counter()


def record(criterion: int, passed: bool, detail: str) -> None:
    ACCEPTANCE_RESULTS[criterion] = (passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE_RESULTS):
        passed, detail = ACCEPTANCE_RESULTS[crit]
        terminalreporter.write_line(f"criterion {crit:>2}: {'PASS' if passed else 'FAIL'}  {detail}")
    terminalreporter.write_line(f"session wall-clock: {time.perf_counter() - _SESSION_START:.1f} s")
