import json
from pathlib import Path

import pytest

from intgrass.classify import build, iter_grid
from intgrass.faces import verify_smooth
from intgrass.grading import GradingData

DATA = Path(__file__).parent / "data"

# criterion number -> (passed, message); filled by the acceptance module
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def load_json(name: str):
    return json.loads((DATA / name).read_text())


def table_rows() -> list[dict]:
    return load_json("fano_table.json")["rows"]


def grading_from_matrix(n: int, matrix, m: int = 0) -> GradingData:
    cols = [tuple(c) for c in zip(*matrix)]
    nt = n * (n - 1) // 2
    return GradingData(n, m, tuple(cols[:nt]), tuple(cols[nt:]))


def row_grading(no: int) -> GradingData:
    row = table_rows()[no - 1]
    return grading_from_matrix(row["n"], row["matrix"])


@pytest.fixture(scope="session")
def grid():
    return list(iter_grid())


@pytest.fixture(scope="session")
def grid_built(grid):
    return [(v, build(v)) for v in grid]


@pytest.fixture(scope="session")
def grid_verdicts(grid_built):
    return [(v, b, verify_smooth(b.grading, b.u)) for v, b in grid_built]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for no in sorted(ACCEPTANCE):
        ok, msg = ACCEPTANCE[no]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {no}: {msg}")
