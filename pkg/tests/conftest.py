import gzip
import json
from functools import lru_cache
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from qknots.knotdata import load_census
from qknots.laurent import BiLaurentPoly, LaurentPoly

DATA = Path(__file__).parent / "data"

settings.register_profile(
    "qknots", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("qknots")

TREFOIL = "PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]"
FIGURE_EIGHT = "PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]"
HOPF = "PD[X[4,1,3,2],X[2,3,1,4]]"
KINK = "PD[X[1,1,2,2]]"


@lru_cache(maxsize=None)
def reference() -> dict:
    """Census invariants from KnotInfo (Jones in t = q, Khovanov as [[q, t, c]])."""
    with gzip.open(DATA / "knotinfo_reference.json.gz", "rt", encoding="utf-8") as f:
        rows = json.load(f)
    out = {}
    for r in rows:
        out[r["name"]] = {
            "jones": LaurentPoly({e: c for e, c in r["jones"]}),
            "alexander": LaurentPoly({e: c for e, c in r["alexander"]}),
            "khovanov": BiLaurentPoly({(a, b): c for a, b, c in r["khovanov"]}),
        }
    return out


@lru_cache(maxsize=None)
def published() -> dict:
    with open(DATA / "published_tables.json", encoding="utf-8") as f:
        return json.load(f)


@lru_cache(maxsize=None)
def census(max_crossings: int):
    return load_census(max_crossings)


@pytest.fixture(scope="session")
def census8():
    return census(8)


# one PASS/FAIL line per acceptance criterion in the terminal summary
_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if not name.startswith("test_criterion_"):
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        num = int(name.split("_")[2])
        label = name.split("_", 3)[3].replace("_", " ")
        _CRITERIA[num] = (label, "PASS" if report.outcome == "passed" else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        label, outcome = _CRITERIA[num]
        terminalreporter.write_line(f"criterion {num}: {outcome}  {label}")
