import pytest


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "acceptance(label): top-level acceptance criterion; prints one PASS/FAIL line",
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when != "call":
        return
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    label = marker.args[0]
    tr = item.config.pluginmanager.get_plugin("terminalreporter")
    if tr is not None:
        tr.write_line(f"[{'PASS' if rep.passed else 'FAIL'}] {label}")
