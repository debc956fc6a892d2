from __future__ import annotations

from pathlib import Path

import pytest

from hinmotif.ingest import read_graph
from hinmotif.motifs import MotifInstance
from hinmotif.query import MetaPath, parse_query

DATA = Path(__file__).parent / "data"
G1_PATH = DATA / "g1.tsv"
G1_QUERY_PATH = DATA / "g1_query.json"

ATA = MetaPath(("author", "term", "author"))
TAT = MetaPath(("term", "author", "term"))


@pytest.fixture
def g1():
    return read_graph(G1_PATH).freeze()


@pytest.fixture
def g1_spec():
    return parse_query(G1_QUERY_PATH.read_text())


@pytest.fixture
def m1(g1_spec):
    return MotifInstance(g1_spec.pattern, ("a1", "a2", "t1"))


@pytest.fixture
def m2(g1_spec):
    return MotifInstance(g1_spec.pattern, ("a2", "a3", "t3"))


# -- acceptance summary ---------------------------------------------------------

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
