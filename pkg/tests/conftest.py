import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from varsurf import SurfaceSpec, build_rule, get_entry, iterate  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

RUNS = {
    "hump": ("hump", {}, None, 2),
    "bilinear": ("bilinear", {}, None, 2),
    "hemi_unit": ("hemiellipsoid", {}, "unit_H_first_step", 3),
    "hemi_true": ("hemiellipsoid", {}, "true_H", 2),
}
_cache = {}


def catalog_run(key):
    """Default-settings catalog run, computed once per session."""
    if key not in _cache:
        name, params, mode, steps = RUNS[key]
        entry = get_entry(name, params, mode)
        _cache[key] = iterate(SurfaceSpec(entry), steps, build_rule(32, entry.domain))
    return _cache[key]


@pytest.fixture(params=sorted(RUNS))
def any_run(request):
    return catalog_run(request.param)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
