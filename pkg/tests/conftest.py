import sys


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(results):
        terminalreporter.write_line(
            f"{'PASS' if ok else 'FAIL'}  {number}. {title}: {detail}"
        )
