import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from medsynth.pipeline import fit_profile, load_config, load_real  # noqa: E402
from medsynth.table import ColumnSchema, DatasetTable  # noqa: E402

# Lines recorded by the acceptance checks, echoed in the terminal summary.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def bundled_cfg():
    return load_config()


@pytest.fixture(scope="session")
def fixture_table(bundled_cfg):
    return load_real(bundled_cfg)


@pytest.fixture(scope="session")
def fixture_profile(bundled_cfg, fixture_table):
    return fit_profile(bundled_cfg, fixture_table)


@pytest.fixture
def cfg_factory(tmp_path):
    """Bundled configuration redirected into a temporary output directory."""
    def make(**overrides):
        overrides.setdefault("output_dir", str(tmp_path / "out"))
        return load_config(None, overrides)
    return make


TOY_SCHEMA = (
    ColumnSchema("x", "numeric"),
    ColumnSchema("y", "numeric"),
    ColumnSchema("g", "binary"),
    ColumnSchema("c", "categorical"),
)


@pytest.fixture
def toy_table():
    rng = np.random.default_rng(0)
    n = 40
    x = rng.normal(size=n)
    return DatasetTable(TOY_SCHEMA, {
        "x": x,
        "y": 2 * x + rng.normal(scale=0.1, size=n),
        "g": (x > 0).astype(float),
        "c": list(rng.choice(["a", "b", "c"], size=n)),
    }, label_column="g")
