import pytest

_ACCEPTANCE = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if not item.name.startswith("test_criterion_"):
        return
    key = item.name
    doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
    prev = _ACCEPTANCE.get(key, (doc, "PASS"))
    if rep.failed or (rep.when == "call" and rep.skipped):
        _ACCEPTANCE[key] = (doc, "FAIL")
    elif rep.when == "call":
        _ACCEPTANCE[key] = (doc, prev[1])


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE):
        doc, status = _ACCEPTANCE[key]
        num = key.split("_")[2]
        terminalreporter.write_line(f"{status}  criterion {int(num):2d}: {doc}")
