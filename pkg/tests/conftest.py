import sys
import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from nlbdistill.boxes import class_box, correlated_box, local_vertices, mix
from nlbdistill.wiring import FinalFunction, PartyWiring, StageFunction, WiringProtocol

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

OUTPUT_BITS = list(itertools.product((0, 1), repeat=3))

unit_fractions = st.fractions(min_value=0, max_value=1, max_denominator=64)
signed_fractions = st.fractions(min_value=-1, max_value=1, max_denominator=64)


@st.composite
def depth2_protocols(draw):
    parts = tuple(
        PartyWiring((StageFunction(draw(st.integers(0, 15))),), FinalFunction(2, draw(st.integers(0, 255))))
        for _ in range(3)
    )
    return WiringProtocol(2, parts)


def random_ns_box(rng: random.Random):
    """Random no-signaling box: a mixture of class boxes and local vertices."""
    pool = [class_box(44), class_box(45), class_box(46), correlated_box()] + rng.sample(local_vertices(), 4)
    raw = [rng.randint(0, 5) for _ in pool]
    if not any(raw):
        raw[0] = 1
    total = sum(raw)
    return mix([(Fraction(w, total), b) for w, b in zip(raw, pool) if w])


@pytest.fixture
def rng():
    return random.Random(20241016)


def pytest_terminal_summary(terminalreporter):
    results = getattr(sys.modules.get("test_acceptance"), "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        ok, detail = results[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
