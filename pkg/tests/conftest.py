import sys


def pytest_report_header(config):
    from toricgkz import BACKEND
    return f"toricgkz kernels: {BACKEND}"


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "REPORT", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
