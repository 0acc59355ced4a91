import time
import zlib

import numpy as np
import pytest

_ACCEPTANCE: dict[str, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(key, title): numbered acceptance criterion")


@pytest.fixture
def rng(request):
    # one independent stream per test, stable across runs
    return np.random.default_rng(zlib.crc32(request.node.nodeid.encode()))


@pytest.fixture
def timer():
    class Timer:
        def __init__(self):
            self.samples = []

        def __call__(self, fn, *args, repeat=1, **kwargs):
            out = None
            for _ in range(repeat):
                t0 = time.perf_counter()
                out = fn(*args, **kwargs)
                self.samples.append(time.perf_counter() - t0)
            return out

        @property
        def median(self):
            return float(np.median(self.samples))

    return Timer()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    key, title = marker.args
    entry = _ACCEPTANCE.setdefault(key, {"title": title, "passed": True, "notes": []})
    if rep.failed:
        entry["passed"] = False
    if rep.when == "call":
        entry["notes"] += [v for k, v in item.user_properties if k == "note"]


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=lambda k: int(k[2:])):
        e = _ACCEPTANCE[key]
        notes = "; ".join(e["notes"])
        line = f"{key:<5} {'PASS' if e['passed'] else 'FAIL'}  {e['title']}"
        terminalreporter.write_line(line + (f"  [{notes}]" if notes else ""))
