import pytest

ACCEPTANCE = {}


def record(num, title, passed, detail=""):
    ACCEPTANCE[num] = (title, passed, detail)


@pytest.fixture
def criterion():
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[num]
        mark = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{mark}] {num:>2}. {title}  {detail}".rstrip())
