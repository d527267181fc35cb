import time

from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

# filled by test_acceptance.record
CRITERIA: dict[int, str] = {}
_START = time.perf_counter()


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        terminalreporter.write_line(CRITERIA[num])
    terminalreporter.write_line(f"total session time {time.perf_counter() - _START:.1f} s (limit 600 s)")
