import re
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from tamagawa.curve import parse_curve

DATA = Path(__file__).parent / "data"

# every property suite runs at least 200 cases
settings.register_profile("default", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def load_localdata_fixture():
    rows = []
    for line in (DATA / "localdata_pari.txt").read_text().splitlines():
        if line.startswith("#") or not line.strip():
            continue
        raw, minimal, N, tau, locs = (s.strip() for s in line.split("|"))
        local = []
        for item in locs.split():
            p, kod, f, c, kind = item.split(":")
            local.append((int(p), kod, int(f), int(c), kind))
        rows.append((parse_curve(raw), parse_curve(minimal), int(N), int(tau), local))
    return rows


def load_isogeny_fixture():
    rows = []
    for line in (DATA / "isogeny_pari.txt").read_text().splitlines():
        if line.startswith("#") or not line.strip():
            continue
        curve, order, structure, codomains = (s.strip() for s in line.split("|"))
        rows.append((parse_curve(curve), int(order), structure,
                     sorted(re.findall(r"\[[^\]]*\]", codomains))))
    return rows


@pytest.fixture(scope="session")
def localdata_rows():
    return load_localdata_fixture()


@pytest.fixture(scope="session")
def isogeny_rows():
    return load_isogeny_fixture()
