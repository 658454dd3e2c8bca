from __future__ import annotations

import os
import sys
from pathlib import Path

import pytest

from cdlattice import build, cd_lattice, enumerate_subgroups, is_dense_cd

sys.path.insert(0, str(Path(__file__).parent))

GOLDEN = Path(__file__).parent / "golden"

# criterion number -> (passed, one-line detail); filled by tests/test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


class Pipeline:
    """Group, lattice, CD result and density verdict for one spec, computed once."""

    def __init__(self, spec: str):
        self.spec = spec
        self.G = build(spec)
        self.L = enumerate_subgroups(self.G)
        self.cd = cd_lattice(self.G, self.L)
        self.verdict = is_dense_cd(self.G, self.L, self.cd)


_PIPELINES: dict[str, Pipeline] = {}


def pipeline(spec: str) -> Pipeline:
    if spec not in _PIPELINES:
        _PIPELINES[spec] = Pipeline(spec)
    return _PIPELINES[spec]


@pytest.fixture
def run():
    return pipeline


def stretch_enabled() -> bool:
    return os.environ.get("CDLATTICE_STRETCH", "1") != "0"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
