import mpmath
import pytest

from discrot.dynamics import RotationParams
from discrot.exact import FieldElement

mpmath.mp.dps = 60

LAMBDAS = {
    "1/2": "rat:1/2",
    "sqrt2": "quad:0,1,1,2",
    "sqrt3": "quad:0,1,1,3",
    "golden": "quad:1,1,2,5",
}

PROVEN = [
    "rat:0/1",
    "rat:1/1",
    "rat:-1/1",
    "quad:0,1,1,2",
    "quad:0,-1,1,2",
    "quad:0,1,1,3",
    "quad:0,-1,1,3",
    "quad:1,1,2,5",
    "quad:1,-1,2,5",
    "quad:-1,1,2,5",
    "quad:-1,-1,2,5",
]

# ten parameter sets, four with a nonzero shift
PARAM_SETS = [
    ("rat:0/1", "rat:0/1"),
    ("rat:1/2", "rat:0/1"),
    ("rat:-7/4", "rat:0/1"),
    ("quad:0,1,1,2", "rat:0/1"),
    ("quad:1,1,2,5", "rat:0/1"),
    ("quad:0,-1,1,3", "rat:0/1"),
    ("quad:1,1,2,5", "rat:1/1"),
    ("rat:1/3", "rat:2/5"),
    ("quad:0,1,1,2", "quad:1,1,3,2"),
    ("quad:1,3,10,7", "rat:-13/3"),
]


def mp_value(v: FieldElement):
    """High-precision value of an exact element; the independent oracle."""
    if v.d is None:
        return mpmath.mpf(v.a) / v.c
    return (v.a + v.b * mpmath.sqrt(v.d)) / v.c


def params(lam: str, eta: str = "rat:0/1") -> RotationParams:
    return RotationParams.from_text(lam, eta)


@pytest.fixture(params=PARAM_SETS, ids=lambda ps: f"{ps[0]}|{ps[1]}")
def any_params(request):
    return params(*request.param)


# -- acceptance bookkeeping: one PASS/FAIL line per criterion ----------------

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number n")


def pytest_runtest_logreport(report):
    crit = getattr(report, "criterion", None)
    if crit is None:
        return
    n, title = crit
    entry = _criteria.setdefault(n, {"title": title, "ok": True, "ran": False})
    if report.when == "call":
        entry["ran"] = True
    if report.failed:
        entry["ok"] = False


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        outcome.get_result().criterion = tuple(mark.args)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        e = _criteria[n]
        verdict = "PASS" if e["ok"] and e["ran"] else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d}: {verdict}  {e['title']}")
