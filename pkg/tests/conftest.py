from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from locgpd import core

DATA = Path(__file__).resolve().parent.parent / "data"

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CORPUS = sorted(p.stem for p in DATA.glob("*.json"))
TOTAL = {"z3", "z4", "complete3"}


def load(name: str) -> core.FiniteLocalGroupoid:
    return core.load(DATA / f"{name}.json")


@pytest.fixture(scope="session")
def corpus() -> dict[str, core.FiniteLocalGroupoid]:
    return {name: load(name) for name in CORPUS}


# acceptance reporting: one line per criterion at the end of the run

_CRITERIA: dict[int, tuple[str, str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    n, title = mark.args
    detail = "; ".join(str(v) for k, v in item.user_properties if k == "detail")
    _CRITERIA[n] = (title, "PASS" if rep.passed else "FAIL", detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, verdict, detail = _CRITERIA[n]
        line = f"criterion {n:2d} {verdict}  {title}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
