from pathlib import Path

import numpy as np
import pytest

from ciprng import SeedKey

DATA = Path(__file__).parent / "data"

_criteria: dict[int, tuple[str, str]] = {}
NOT_RUN = {8: "external TestU01/NIST batteries and rendered plots (use the export files)"}


def read_hex_words(path) -> list[int]:
    """Words from a file of concatenated or one-per-line 8-digit hex numbers."""
    text = "".join(path.read_text().split())
    return [int(text[i:i + 8], 16) for i in range(0, len(text), 8)]


@pytest.fixture
def rng():
    return np.random.default_rng(20100321)


@pytest.fixture
def key():
    return SeedKey(x0=0x1234ABCD, isaac_key=b"unit-test key", xorshift_seed=0xC0FFEE)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        verdict = "PASS" if report.outcome == "passed" else "FAIL"
        _criteria[number] = (title, verdict)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, verdict = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {verdict}  {title}")
    for number, title in NOT_RUN.items():
        terminalreporter.write_line(f"criterion {number}: NOT RUN  {title}")
