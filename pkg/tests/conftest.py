import functools

import pytest

from hankelet.audit.battery import build_grids
from hankelet.config import DEFAULT_GRID, bundled_config_path, load_config
from hankelet.wavelet import make_bessel_hat

# one line per acceptance criterion, printed in the terminal summary
CRITERIA_LINES = []


def record_criterion(number, title, ok, detail=""):
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}: {title}"
    if detail:
        line += f" ({detail})"
    CRITERIA_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA_LINES:
            terminalreporter.write_line(line)


@functools.lru_cache(maxsize=None)
def audit_grids(alpha, a_min=None, a_max=None):
    """Position and scale-space grids of the bundled audit config, optionally with another band."""
    g = dict(DEFAULT_GRID)
    if a_min is not None:
        g["a_min"] = a_min
    if a_max is not None:
        g["a_max"] = a_max
    return build_grids(alpha, g)


@functools.lru_cache(maxsize=None)
def wavelet(alpha, k, sigma):
    return make_bessel_hat(alpha, k, sigma)


@pytest.fixture(scope="session")
def default_config():
    return load_config(bundled_config_path())
