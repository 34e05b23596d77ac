def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.REPORT):
        terminalreporter.write_line(mod.REPORT[num])
