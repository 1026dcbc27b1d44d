import random
import sys

import pytest
from hypothesis import settings, strategies as st

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")

# "나는 꼬냑(Cognac)을 들이켰다." with its phrase-level particles
COGNAC_TREE = (r"(S (NP+는/jxt (NP 나/npp)) (NP+을/jco (NP 꼬냑/ncn+\(/sl+Cognac/f+\)/sr)) "
        r"(VP 들이켰다.=들이키/pvg+였/ep+다/ef+./sf))")

# "세포 및 세균을 파괴하고 죽인다" (destroy and kill cells and bacteria)
COORD_TREE = ("(S (NP+을/jco (NP 세포/ncn) (ADVP 및/maj) (NP 세균/ncn)) "
        "(VP (VP 파괴하/pvg+고/ecc) (VP 죽인다=죽이/pvg+ㄴ다/ef)))")

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@pytest.fixture
def rng():
    return random.Random(1234)


def pytest_terminal_summary(terminalreporter):
    results = sys.modules.get("test_acceptance")
    if results is None or not results.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results.RESULTS):
        terminalreporter.write_line(results.RESULTS[number])
