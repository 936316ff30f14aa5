import functools
import os

import pytest
from hypothesis import settings

from affhecke.config import load_datum
from affhecke.root_datum import build_root_datum
from affhecke.weyl import diagram_automorphisms, extended_group, weyl_group

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

DATUMS = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "datums")


def datum_path(name: str) -> str:
    return os.path.join(DATUMS, name)


@functools.lru_cache(maxsize=None)
def rd(spec: str, lattice: str = "adjoint"):
    return build_root_datum(spec, lattice)


@functools.lru_cache(maxsize=None)
def W(spec: str, lattice: str = "adjoint"):
    return weyl_group(rd(spec, lattice))


@functools.lru_cache(maxsize=None)
def swap_group(spec: str = "A2"):
    r = rd(spec)
    gam = tuple(a for a in diagram_automorphisms(r) if a.perm != tuple(range(r.semisimple_rank)))
    return gam, extended_group(r, gam)


@functools.lru_cache(maxsize=None)
def cfg(spec: str):
    return load_datum(spec)


# -- acceptance summary: one line per criterion ---------------------------------------------

_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    name = item.name
    if "test_acceptance" in item.nodeid and name.startswith("test_criterion_"):
        doc = (item.function.__doc__ or "").strip().splitlines()[0] if item.function.__doc__ else name
        prev = _CRITERIA.get(name, (doc, True))
        failed = report.failed or (report.when == "call" and not report.passed)
        _CRITERIA[name] = (doc, prev[1] and not failed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda n: int(n.split("_")[2])):
        doc, ok = _CRITERIA[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {doc}")
