import pytest

_RESULTS: dict[int, tuple[bool, str]] = {}


class CriterionRecorder:
    def __init__(self):
        self.number = None
        self.details: list[str] = []
        self.ok = True

    def check(self, cond: bool, what: str) -> None:
        if not cond:
            self.ok = False
            self.details.append(f"FAILED {what}")

    def note(self, text: str) -> None:
        self.details.append(text)


@pytest.fixture
def criterion(request):
    rec = CriterionRecorder()
    yield rec
    failed = request.node.rep_call.failed if hasattr(request.node, "rep_call") else True
    ok = rec.ok and not failed
    line = f"criterion {rec.number}: {'PASS' if ok else 'FAIL'} ({'; '.join(rec.details)})"
    print(line)
    _RESULTS[rec.number] = (ok, line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        terminalreporter.write_line(_RESULTS[n][1])
