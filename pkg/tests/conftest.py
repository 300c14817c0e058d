import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from magicnoise import (
    Dimension,
    canonical_mub_frame,
    gross_wigner_frame,
    magic_state,
)

settings.register_profile(
    "default",
    deadline=None,
    derandomize=True,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def d3() -> Dimension:
    return Dimension(3)


@pytest.fixture(scope="session")
def strange(d3):
    return magic_state("strange", d3)


@pytest.fixture(scope="session")
def norrell(d3):
    return magic_state("norrell", d3)


@pytest.fixture(scope="session")
def gross3(d3):
    return gross_wigner_frame(d3)


@pytest.fixture(scope="session")
def mub3(d3):
    return canonical_mub_frame(d3)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240816)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Replay the one-line acceptance verdicts so they survive output capture."""
    lines = set()
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, []):
            for section_name, content in getattr(report, "sections", []):
                if "stdout" not in section_name:
                    continue
                for line in content.splitlines():
                    if line.startswith("[ACCEPTANCE]"):
                        lines.add(line)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
